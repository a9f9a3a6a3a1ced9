#pragma once

#include <Eigen/Core>
#include <vector>

#include "vtg/mesh.hpp"

namespace vtg {

// Exact 3D convex hull (quickhull). Output triangles wind outward; vertices
// are the hull's extreme points only. Throws DegenerateInputError when the
// input has fewer than 4 points or is affinely degenerate (coplanar or
// collinear).
TriMesh convex_hull(const std::vector<Eigen::Vector3d>& points);

}  // namespace vtg
