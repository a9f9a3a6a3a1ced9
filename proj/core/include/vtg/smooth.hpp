#pragma once

#include "vtg/mesh.hpp"

namespace vtg {

// Uniform-weight Laplacian smoothing: `iterations` synchronous passes of
// v <- v + lambda * (mean of 1-ring neighbors - v). Connectivity, vertex and
// face counts are unchanged; isolated vertices stay put.
TriMesh laplacian_smooth(const TriMesh& mesh, int iterations = 3, double lambda = 0.5);

}  // namespace vtg
