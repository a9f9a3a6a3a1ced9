#pragma once

#include "vtg/gpis.hpp"
#include "vtg/grid.hpp"
#include "vtg/mesh.hpp"
#include "vtg/net.hpp"
#include "vtg/pointcloud.hpp"
#include "vtg/train.hpp"

namespace vtg {

// Smoothing applied to completion meshes (the isosurface and hull outputs).
inline constexpr int kSmoothIterations = 3;
inline constexpr double kSmoothLambda = 0.5;

/// Meshes exactly what was observed: the combined cloud voxelized on
// `eval_frame`, isosurfaced, and smoothed. No completion of hidden geometry.
TriMesh partial_completion(const PointCloud& depth, const PointCloud& tactile,
                           const GridFrame& eval_frame);

// Convex hull of the combined cloud, smoothed.
TriMesh convex_hull_completion(const PointCloud& depth, const PointCloud& tactile);

/// Trained-network completion: mode-selected input grid -> probability grid
// -> 0.5 isosurface -> smoothed mesh.
TriMesh cnn_completion(const NetParams& params, const NetConfig& net_cfg,
                       const VoxelGrid& depth, const VoxelGrid& tactile, TrainMode mode);

}  // namespace vtg
