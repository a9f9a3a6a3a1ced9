#include "vtg/train.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>

#include "vtg/grid_ops.hpp"
#include "vtg/rng.hpp"

namespace vtg {

const char* to_string(TrainMode mode) {
    switch (mode) {
        case TrainMode::depth_only: return "depth_only";
        case TrainMode::tactile_and_depth: return "tactile_and_depth";
        case TrainMode::tactile_only: return "tactile_only";
    }
    throw InvalidInputError("to_string: unknown train mode");
}

TrainMode train_mode_from_string(const std::string& name) {
    if (name == "depth_only" || name == "depth") return TrainMode::depth_only;
    if (name == "tactile_and_depth" || name == "both") return TrainMode::tactile_and_depth;
    if (name == "tactile_only" || name == "tactile") return TrainMode::tactile_only;
    throw InvalidInputError("unknown train mode: " + name);
}

VoxelGrid select_input(const ObservationTriplet& triplet, TrainMode mode) {
    switch (mode) {
        case TrainMode::depth_only: return triplet.depth;
        case TrainMode::tactile_and_depth: return merge_grids(triplet.depth, triplet.tactile);
        case TrainMode::tactile_only: return triplet.tactile;
    }
    throw InvalidInputError("select_input: unknown train mode");
}

namespace {

using MatF = Eigen::MatrixXf;

void require_net_frame(const NetConfig& cfg, const GridFrame& frame, const char* what) {
    if (frame.dims.x() != cfg.grid_dim || frame.dims.y() != cfg.grid_dim ||
        frame.dims.z() != cfg.grid_dim)
        throw DimensionMismatchError(std::string(what) +
                                     ": grid dims do not match NetConfig.grid_dim");
}

void fill_column(MatF& m, Eigen::Index col, const VoxelGrid& grid) {
    const std::size_t n = grid.frame().voxel_count();
    for (std::size_t i = 0; i < n; ++i)
        m(static_cast<Eigen::Index>(i), col) = grid.test(i) ? 1.0f : 0.0f;
}

double grid_jaccard_from_column(const MatF& pred, Eigen::Index col, const VoxelGrid& target) {
    std::size_t inter = 0, uni = 0;
    const std::size_t n = target.frame().voxel_count();
    for (std::size_t i = 0; i < n; ++i) {
        const bool p = pred(static_cast<Eigen::Index>(i), col) >= 0.5f;
        const bool t = target.test(i);
        inter += (p && t);
        uni += (p || t);
    }
    return uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

}  // namespace

ScalarGrid forward(const NetParams& params, const NetConfig& cfg, const VoxelGrid& input) {
    cfg.require_valid();
    require_net_frame(cfg, input.frame(), "forward");
    MatF in(cfg.out_dim(), 1);
    fill_column(in, 0, input);
    NetCache<float> cache;
    net_forward(params, cfg, in, cache);
    ScalarGrid out(input.frame());
    for (std::size_t i = 0; i < input.frame().voxel_count(); ++i)
        out.set(i, cache.p(static_cast<Eigen::Index>(i), 0));
    return out;
}

double loss(const ScalarGrid& pred, const VoxelGrid& target, double eps) {
    require_same_frame(pred.frame(), target.frame(), "loss");
    if (!(eps > 0.0 && eps < 0.5)) throw InvalidInputError("loss: eps must lie in (0, 0.5)");
    double sum = 0.0;
    const std::size_t n = pred.frame().voxel_count();
    for (std::size_t i = 0; i < n; ++i) {
        const double q = std::min(1.0 - eps, std::max(eps, static_cast<double>(pred.at(i))));
        const double y = target.test(i) ? 1.0 : 0.0;
        sum -= y * std::log(q) + (1.0 - y) * std::log(1.0 - q);
    }
    return sum / static_cast<double>(n);
}

TrainResult train(const std::vector<ObservationTriplet>& train_set,
                  const std::vector<ObservationTriplet>& holdout_set, const NetConfig& net_cfg,
                  const TrainConfig& train_cfg, TrainMode mode, std::ostream* progress) {
    net_cfg.require_valid();
    train_cfg.require_valid();
    if (train_set.empty()) throw TrainingError("train: empty training set");

    // Extract inputs/targets once; grids are small relative to activations.
    std::vector<VoxelGrid> inputs, targets;
    inputs.reserve(train_set.size());
    targets.reserve(train_set.size());
    for (const auto& t : train_set) {
        require_net_frame(net_cfg, t.ground_truth.frame(), "train");
        require_same_frame(t.depth.frame(), t.ground_truth.frame(), "train");
        require_same_frame(t.tactile.frame(), t.ground_truth.frame(), "train");
        inputs.push_back(select_input(t, mode));
        targets.push_back(t.ground_truth);
    }
    std::vector<VoxelGrid> holdout_inputs;
    holdout_inputs.reserve(holdout_set.size());
    for (const auto& t : holdout_set) {
        require_net_frame(net_cfg, t.ground_truth.frame(), "train holdout");
        holdout_inputs.push_back(select_input(t, mode));
    }

    TrainResult result;
    result.final_params = init_params(net_cfg, train_cfg.seed);
    AdamState adam = make_adam_state<float>(net_cfg);
    result.best_holdout_jaccard = -1.0;

    const Eigen::Index dim = net_cfg.out_dim();
    const std::size_t n = inputs.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});

    NetCache<float> cache;
    NetParams grads;
    MatF batch_in, batch_target;

    auto holdout_jaccard = [&]() -> double {
        if (holdout_set.empty()) return std::numeric_limits<double>::quiet_NaN();
        double sum = 0.0;
        const std::size_t bs = static_cast<std::size_t>(train_cfg.batch_size);
        for (std::size_t start = 0; start < holdout_set.size(); start += bs) {
            const std::size_t count = std::min(bs, holdout_set.size() - start);
            batch_in.resize(dim, static_cast<Eigen::Index>(count));
            for (std::size_t j = 0; j < count; ++j)
                fill_column(batch_in, static_cast<Eigen::Index>(j), holdout_inputs[start + j]);
            net_forward(result.final_params, net_cfg, batch_in, cache);
            for (std::size_t j = 0; j < count; ++j)
                sum += grid_jaccard_from_column(cache.p, static_cast<Eigen::Index>(j),
                                                holdout_set[start + j].ground_truth);
        }
        return sum / static_cast<double>(holdout_set.size());
    };

    for (int epoch = 1; epoch <= train_cfg.epochs; ++epoch) {
        // Seeded Fisher-Yates reshuffle, one derived stream per epoch.
        Rng shuffle_rng(derive_seed(train_cfg.seed, static_cast<uint64_t>(epoch), 1));
        for (std::size_t i = n; i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(shuffle_rng.uniform_int(i));
            std::swap(order[i - 1], order[j]);
        }

        double loss_sum = 0.0;
        const std::size_t bs = static_cast<std::size_t>(train_cfg.batch_size);
        for (std::size_t start = 0; start < n; start += bs) {
            const std::size_t count = std::min(bs, n - start);
            batch_in.resize(dim, static_cast<Eigen::Index>(count));
            batch_target.resize(dim, static_cast<Eigen::Index>(count));
            for (std::size_t j = 0; j < count; ++j) {
                fill_column(batch_in, static_cast<Eigen::Index>(j), inputs[order[start + j]]);
                fill_column(batch_target, static_cast<Eigen::Index>(j),
                            targets[order[start + j]]);
            }
            net_forward(result.final_params, net_cfg, batch_in, cache);
            loss_sum +=
                bce_loss(cache.p, batch_target, train_cfg.clamp_eps) * static_cast<double>(count);
            net_backward(result.final_params, net_cfg, cache, batch_target,
                         train_cfg.clamp_eps, grads);
            adam_step(adam, result.final_params, grads, train_cfg);
        }

        EpochStats stats;
        stats.epoch = epoch;
        stats.mean_loss = loss_sum / static_cast<double>(n);
        stats.holdout_jaccard = holdout_jaccard();
        result.history.push_back(stats);
        if (!holdout_set.empty() && stats.holdout_jaccard > result.best_holdout_jaccard) {
            result.best_holdout_jaccard = stats.holdout_jaccard;
            result.best_params = result.final_params;
            result.best_epoch = epoch;
        }
        if (progress) {
            (*progress) << "{\"epoch\":" << epoch << ",\"mean_loss\":" << stats.mean_loss
                        << ",\"holdout_jaccard\":" << stats.holdout_jaccard << "}\n";
            progress->flush();
        }
    }

    if (result.best_epoch == 0) {  // no holdout set, or zero epochs
        result.best_params = result.final_params;
        result.best_epoch = result.history.empty() ? 0 : result.history.back().epoch;
        result.best_holdout_jaccard = std::numeric_limits<double>::quiet_NaN();
    }
    return result;
}

}  // namespace vtg
