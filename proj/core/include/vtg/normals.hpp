#pragma once

#include <Eigen/Core>

#include "vtg/pointcloud.hpp"

namespace vtg {

// PCA surface normals: for each point, the smallest-eigenvector of the
// covariance of its k nearest neighbors (the point included), sign-flipped
// so normal . (camera_origin - p) > 0. Neighborhoods that do not span a
// plane (fewer than 3 points or rank < 2) get normal_valid = 0.
// Suitable for dense camera clouds.
PointCloud estimate_normals(const PointCloud& cloud, int k,
                            const Eigen::Vector3d& camera_origin);

// Sparse contact clouds: normal = normalize(camera_origin - p) directly.
// Points coincident with the camera origin get normal_valid = 0.
PointCloud tactile_normals(const PointCloud& cloud, const Eigen::Vector3d& camera_origin);

}  // namespace vtg
