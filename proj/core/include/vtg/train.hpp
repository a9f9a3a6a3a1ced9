#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "vtg/adam.hpp"
#include "vtg/grid.hpp"
#include "vtg/net.hpp"
#include "vtg/triplet.hpp"

namespace vtg {

// Which observation grid feeds the network.
enum class TrainMode { depth_only, tactile_and_depth, tactile_only };

const char* to_string(TrainMode mode);
TrainMode train_mode_from_string(const std::string& name);

// The grid a mode presents to the network (merged = bitwise union).
VoxelGrid select_input(const ObservationTriplet& triplet, TrainMode mode);

// Single-sample forward pass; output shares the input frame and holds
// occupancy probabilities strictly inside (0,1).
ScalarGrid forward(const NetParams& params, const NetConfig& cfg, const VoxelGrid& input);

// Mean cross-entropy between a probability grid and a binary target, with
// probabilities clamped to [eps, 1-eps] inside the logs.
double loss(const ScalarGrid& pred, const VoxelGrid& target, double eps = 1e-7);

struct EpochStats {
    int epoch = 0;               // 1-based
    double mean_loss = 0.0;      // mean training loss over the epoch's batches
    double holdout_jaccard = 0;  // NaN when no holdout set was given
};

struct TrainResult {
    NetParams final_params;
    NetParams best_params;  // highest holdout Jaccard (final params if no holdout)
    std::vector<EpochStats> history;
    int best_epoch = 0;  // 1-based; 0 when training ran zero epochs
    double best_holdout_jaccard = 0.0;
};

// Mini-batch Adam training. Batches are reshuffled every epoch from the
// config seed; the final partial batch is trained on. After each epoch the
// holdout set is scored by Jaccard at threshold 0.5 and the best-scoring
// parameters are retained. Single-threaded and bit-reproducible.
// `progress`, when given, receives one JSON line per epoch.
TrainResult train(const std::vector<ObservationTriplet>& train_set,
                  const std::vector<ObservationTriplet>& holdout_set, const NetConfig& net_cfg,
                  const TrainConfig& train_cfg, TrainMode mode,
                  std::ostream* progress = nullptr);

}  // namespace vtg
