#include "vtg/complete.hpp"

#include "vtg/error.hpp"
#include "vtg/hull.hpp"
#include "vtg/marching_cubes.hpp"
#include "vtg/smooth.hpp"
#include "vtg/voxelize.hpp"

namespace vtg {

TriMesh partial_completion(const PointCloud& depth, const PointCloud& tactile,
                           const GridFrame& eval_frame) {
    const PointCloud combined = PointCloud::concat(depth, tactile);
    if (combined.empty()) throw DegenerateInputError("partial_completion: empty cloud");
    const VoxelGrid occupancy = voxelize_points(combined, eval_frame).grid;
    if (occupancy.count() == 0)
        throw DegenerateInputError("partial_completion: no point falls inside the frame");
    const TriMesh shell = marching_cubes(indicator_field(occupancy, 1), 0.5);
    return laplacian_smooth(shell, kSmoothIterations, kSmoothLambda);
}

TriMesh convex_hull_completion(const PointCloud& depth, const PointCloud& tactile) {
    const PointCloud combined = PointCloud::concat(depth, tactile);
    const TriMesh hull = convex_hull(combined.points);
    return laplacian_smooth(hull, kSmoothIterations, kSmoothLambda);
}

TriMesh cnn_completion(const NetParams& params, const NetConfig& net_cfg,
                       const VoxelGrid& depth, const VoxelGrid& tactile, TrainMode mode) {
    require_same_frame(depth.frame(), tactile.frame(), "cnn_completion");
    ObservationTriplet t;
    t.depth = depth;
    t.tactile = tactile;
    const VoxelGrid input = select_input(t, mode);
    const ScalarGrid probability = forward(params, net_cfg, input);
    // Pad with "empty" so the isosurface closes at the frame boundary.
    const TriMesh mesh = marching_cubes(pad_field(probability, 0.0f, 1), 0.5);
    return laplacian_smooth(mesh, kSmoothIterations, kSmoothLambda);
}

}  // namespace vtg
