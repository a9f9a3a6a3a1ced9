#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "vtg/grid.hpp"
#include "vtg/mesh.hpp"
#include "vtg/pointcloud.hpp"

namespace vtg {

struct GpisConfig {
    int downsample = 300;         // M: camera-cloud points kept
    double noise = 0.001;         // s: observation noise
    int grid_n = 40;              // n: implicit-field sampling resolution
    double offset = 0.0005;       // d: signed offset distance, meters
    int k_normals = 10;           // neighbors for camera-cloud normals
    double length_scale_fraction = 0.2;  // of the combined cloud's bbox diagonal
    uint64_t seed = 0;            // downsampling seed

    void require_valid() const;
};

// Observation set for Gaussian-process implicit-surface regression: every
// valid-normal point contributes f(p) = 0, f(p + d*n) = +d (outside), and
// f(p - d*n) = -d (inside).
struct GpisObservations {
    std::vector<Eigen::Vector3d> x;
    std::vector<double> y;
    double length_scale = 0.0;
};

// Canonically sorts, seeds, and downsamples `cloud` to at most m points
// (order-independent for identical point sets).
PointCloud downsample_cloud(const PointCloud& cloud, int m, uint64_t seed);

// Builds the offset observation set from clouds that already carry normals.
GpisObservations make_gpis_observations(const PointCloud& surface, double offset,
                                        double length_scale_fraction);

// GP posterior mean of the implicit function on the centers of `frame`
// (squared-exponential kernel, unit signal variance, zero prior mean,
// noise variance s^2). Cholesky failures escalate jitter up to 1e-4*s^2
// before throwing NumericalError.
ScalarGrid gpis_posterior_mean(const GpisObservations& obs, double noise,
                               const GridFrame& frame);

// Same posterior, evaluated at arbitrary query points.
std::vector<double> gpis_posterior_mean_at(const GpisObservations& obs, double noise,
                                           const std::vector<Eigen::Vector3d>& queries);

// Full pipeline: camera-cloud normals by PCA (oriented toward the camera),
// contact-cloud normals toward the camera, seeded downsampling to M, offset
// observations, GP regression on an n^3 grid spanning `eval_frame`, and the
// zero isosurface of the posterior mean.
TriMesh gpis_completion(const PointCloud& depth, const PointCloud& tactile,
                        const GpisConfig& cfg, const Eigen::Vector3d& camera_origin,
                        const GridFrame& eval_frame);

}  // namespace vtg
