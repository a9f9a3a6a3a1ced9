#pragma once

#include <map>
#include <string>

#include "vtg/adam.hpp"
#include "vtg/net.hpp"

namespace vtg {

// Trained-network snapshot: JSON header (configs, epoch, metrics, mode) plus
// a raw little-endian f32 blob of all parameter tensors in declaration order.
struct Checkpoint {
    NetConfig net;
    TrainConfig train;
    NetParams params;
    int epoch = 0;
    std::string mode;  // training mode name, e.g. "tactile_and_depth"
    std::map<std::string, double> metrics;
};

void save_checkpoint(const std::string& path, const Checkpoint& ckpt);
Checkpoint load_checkpoint(const std::string& path);

}  // namespace vtg
