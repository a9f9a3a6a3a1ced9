#include "vtg/grid_ops.hpp"

#include <bit>

#include "vtg/error.hpp"

namespace vtg {

VoxelGrid merge_grids(const VoxelGrid& depth, const VoxelGrid& tactile) {
    require_same_frame(depth.frame(), tactile.frame(), "merge_grids");
    VoxelGrid out = depth;
    auto& dst = out.bytes();
    const auto& src = tactile.bytes();
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] |= src[i];
    return out;
}

double jaccard(const VoxelGrid& a, const VoxelGrid& b) {
    require_same_frame(a.frame(), b.frame(), "jaccard");
    const auto& ba = a.bytes();
    const auto& bb = b.bytes();
    std::size_t inter = 0, uni = 0;
    for (std::size_t i = 0; i < ba.size(); ++i) {
        inter += std::popcount(static_cast<uint8_t>(ba[i] & bb[i]));
        uni += std::popcount(static_cast<uint8_t>(ba[i] | bb[i]));
    }
    if (uni == 0) return 1.0;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

VoxelGrid binarize(const ScalarGrid& pred, double threshold) {
    if (!(threshold > 0.0 && threshold < 1.0))
        throw InvalidInputError("binarize threshold must lie in (0,1)");
    VoxelGrid out(pred.frame());
    const auto& v = pred.values();
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (static_cast<double>(v[i]) >= threshold) out.set(i);
    }
    return out;
}

bool is_subset(const VoxelGrid& inner, const VoxelGrid& outer) {
    require_same_frame(inner.frame(), outer.frame(), "is_subset");
    const auto& bi = inner.bytes();
    const auto& bo = outer.bytes();
    for (std::size_t i = 0; i < bi.size(); ++i) {
        if (bi[i] & ~bo[i]) return false;
    }
    return true;
}

}  // namespace vtg
