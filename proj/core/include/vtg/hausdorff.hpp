#pragma once

#include <cstdint>
#include <vector>

#include "vtg/bvh.hpp"
#include "vtg/mesh.hpp"

namespace vtg {

// Surface-to-surface distance summary. All distances in millimeters.
struct HausdorffReport {
    double mean_a_to_b = 0.0;
    double mean_b_to_a = 0.0;
    double symmetric_mean = 0.0;  // mean of the two directed means
    double max_a_to_b = 0.0;
    double max_b_to_a = 0.0;
    int samples_a = 0;
    int samples_b = 0;
};

// Area-uniform surface samples; deterministic for a fixed (mesh, n, seed).
std::vector<Eigen::Vector3d> sample_surface(const TriMesh& mesh, int n, uint64_t seed);

// Directed mean/max distance from `samples` to the surface behind `target`.
void directed_distances(const std::vector<Eigen::Vector3d>& samples, const TriangleBvh& target,
                        double& mean_out, double& max_out);

// Sampled symmetric Hausdorff (mean variant): `samples` area-uniform points
// per direction, exact point-to-triangle distances. Both directions use the
// same seed, so hausdorff(a, b) and hausdorff(b, a) agree exactly.
HausdorffReport hausdorff(const TriMesh& a, const TriMesh& b, int samples = 10000,
                          uint64_t seed = 0x9d2c5680u);

}  // namespace vtg
