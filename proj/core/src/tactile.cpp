#include "vtg/tactile.hpp"

#include <unordered_set>
#include <vector>

#include "vtg/error.hpp"
#include "vtg/rng.hpp"

namespace vtg {

PointCloud sample_tactile(const VoxelGrid& vox_gt, const TactileSampleConfig& cfg) {
    const GridFrame& frame = vox_gt.frame();
    frame.require_valid();
    const long long columns =
        static_cast<long long>(frame.dims.x()) * static_cast<long long>(frame.dims.y());
    if (cfg.npts <= 0 || cfg.npts > columns)
        throw InvalidInputError("sample_tactile: npts must lie in [1, dims.x*dims.y]");

    Rng rng(cfg.seed);
    std::vector<int> xs(cfg.npts), ys(cfg.npts);
    for (int i = 0; i < cfg.npts; ++i)
        xs[i] = static_cast<int>(rng.uniform_int(static_cast<uint64_t>(frame.dims.x())));
    for (int i = 0; i < cfg.npts; ++i)
        ys[i] = static_cast<int>(rng.uniform_int(static_cast<uint64_t>(frame.dims.y())));

    PointCloud cloud;
    std::unordered_set<std::size_t> seen;
    for (int i = 0; i < cfg.npts; ++i) {
        for (int z = frame.dims.z() - 1; z >= 0; --z) {
            if (!vox_gt.test(xs[i], ys[i], z)) continue;
            const std::size_t idx = frame.linear_index(xs[i], ys[i], z);
            if (seen.insert(idx).second)
                cloud.points.push_back(frame.voxel_center(xs[i], ys[i], z));
            break;  // the probe halts at first contact
        }
    }
    return cloud;
}

}  // namespace vtg
