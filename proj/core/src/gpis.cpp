#include "vtg/gpis.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <limits>

#include "vtg/error.hpp"
#include "vtg/marching_cubes.hpp"
#include "vtg/normals.hpp"
#include "vtg/rng.hpp"

namespace vtg {

void GpisConfig::require_valid() const {
    if (downsample < 4) throw InvalidInputError("GpisConfig: downsample >= 4");
    if (!(noise > 0.0)) throw InvalidInputError("GpisConfig: noise > 0");
    if (grid_n < 8) throw InvalidInputError("GpisConfig: grid_n >= 8");
    if (!(offset > 0.0)) throw InvalidInputError("GpisConfig: offset > 0");
    if (k_normals < 1) throw InvalidInputError("GpisConfig: k_normals >= 1");
    if (!(length_scale_fraction > 0.0 && length_scale_fraction <= 1.0))
        throw InvalidInputError("GpisConfig: length_scale_fraction in (0, 1]");
}

PointCloud downsample_cloud(const PointCloud& cloud, int m, uint64_t seed) {
    if (m < 0) throw InvalidInputError("downsample_cloud: m >= 0");
    const std::size_t n = cloud.size();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    // Canonical sort first so the draw depends on the point set, not on the
    // order the caller assembled it in.
    const auto by_coords = [&](std::size_t a, std::size_t b) {
        const auto& pa = cloud.points[a];
        const auto& pb = cloud.points[b];
        if (pa.x() != pb.x()) return pa.x() < pb.x();
        if (pa.y() != pb.y()) return pa.y() < pb.y();
        if (pa.z() != pb.z()) return pa.z() < pb.z();
        return a < b;
    };
    std::sort(order.begin(), order.end(), by_coords);
    if (n > static_cast<std::size_t>(m)) {
        Rng rng(seed);
        for (std::size_t i = n - 1; i > 0; --i) {
            const std::size_t j = static_cast<std::size_t>(rng.uniform_int(i + 1));
            std::swap(order[i], order[j]);
        }
        order.resize(static_cast<std::size_t>(m));
        // Canonical output order too, so the result sequence (not just the
        // set) is independent of the caller's assembly order.
        std::sort(order.begin(), order.end(), by_coords);
    }
    PointCloud out;
    const bool with_normals = cloud.has_normals();
    for (std::size_t idx : order) {
        out.points.push_back(cloud.points[idx]);
        if (with_normals) {
            out.normals.push_back(cloud.normals[idx]);
            out.normal_valid.push_back(
                cloud.normal_valid.empty() ? uint8_t{1} : cloud.normal_valid[idx]);
        }
    }
    return out;
}

GpisObservations make_gpis_observations(const PointCloud& surface, double offset,
                                        double length_scale_fraction) {
    if (!(offset > 0.0)) throw InvalidInputError("make_gpis_observations: offset > 0");
    GpisObservations obs;
    Eigen::Vector3d lo = Eigen::Vector3d::Constant(std::numeric_limits<double>::max());
    Eigen::Vector3d hi = -lo;
    for (std::size_t i = 0; i < surface.size(); ++i) {
        if (!surface.normal_valid.empty() && !surface.normal_valid[i]) continue;
        const Eigen::Vector3d& p = surface.points[i];
        const Eigen::Vector3d& n = surface.normals[i];
        obs.x.push_back(p);
        obs.y.push_back(0.0);
        obs.x.push_back(p + offset * n);  // toward the sensor: outside
        obs.y.push_back(offset);
        obs.x.push_back(p - offset * n);  // behind the surface: inside
        obs.y.push_back(-offset);
        lo = lo.cwiseMin(p);
        hi = hi.cwiseMax(p);
    }
    if (obs.x.empty())
        throw DegenerateInputError("make_gpis_observations: no valid-normal points");
    const double diag = (hi - lo).norm();
    obs.length_scale = length_scale_fraction * (diag > 0.0 ? diag : 1.0);
    return obs;
}

namespace {

// Weights of the posterior mean: alpha = (K + s^2 I)^-1 y, with escalating
// diagonal jitter when the factorization fails.
Eigen::VectorXd gpis_solve_alpha(const GpisObservations& obs, double noise) {
    if (obs.x.empty()) throw InvalidInputError("gpis_posterior_mean: no observations");
    if (!(noise > 0.0)) throw InvalidInputError("gpis_posterior_mean: noise > 0");
    if (!(obs.length_scale > 0.0))
        throw InvalidInputError("gpis_posterior_mean: length scale > 0");
    const Eigen::Index n = static_cast<Eigen::Index>(obs.x.size());
    const double inv_2l2 = 1.0 / (2.0 * obs.length_scale * obs.length_scale);
    const double s2 = noise * noise;

    Eigen::MatrixXd gram(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) {
            const double d2 =
                (obs.x[static_cast<std::size_t>(i)] - obs.x[static_cast<std::size_t>(j)])
                    .squaredNorm();
            gram(i, j) = std::exp(-d2 * inv_2l2);
        }
    }

    const Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(obs.y.data(), n);
    double jitter = 0.0;
    for (;;) {
        Eigen::MatrixXd sys = gram;
        sys.diagonal().array() += s2 + jitter;
        const Eigen::LLT<Eigen::MatrixXd> llt(sys);
        if (llt.info() == Eigen::Success) return llt.solve(y);
        jitter = (jitter == 0.0) ? 1e-8 * s2 : jitter * 10.0;
        if (jitter > 1e-4 * s2)
            throw NumericalError("gpis_posterior_mean: kernel system not positive definite");
    }
}

double gpis_eval_one(const Eigen::MatrixXd& pts, const Eigen::VectorXd& alpha, double inv_2l2,
                     const Eigen::Vector3d& q, Eigen::VectorXd& work) {
    work = (pts.colwise() - q).colwise().squaredNorm().transpose();
    return ((work.array() * -inv_2l2).exp() * alpha.array()).sum();
}

}  // namespace

ScalarGrid gpis_posterior_mean(const GpisObservations& obs, double noise,
                               const GridFrame& frame) {
    frame.require_valid();
    const Eigen::VectorXd alpha = gpis_solve_alpha(obs, noise);
    const double inv_2l2 = 1.0 / (2.0 * obs.length_scale * obs.length_scale);
    const Eigen::Index n = alpha.size();

    ScalarGrid field(frame);
    Eigen::MatrixXd pts(3, n);
    for (Eigen::Index i = 0; i < n; ++i) pts.col(i) = obs.x[static_cast<std::size_t>(i)];
    Eigen::VectorXd work(n);
    for (int z = 0; z < frame.dims.z(); ++z)
        for (int yv = 0; yv < frame.dims.y(); ++yv)
            for (int x = 0; x < frame.dims.x(); ++x) {
                const double value =
                    gpis_eval_one(pts, alpha, inv_2l2, frame.voxel_center(x, yv, z), work);
                field.set(frame.linear_index(x, yv, z), static_cast<float>(value));
            }
    return field;
}

std::vector<double> gpis_posterior_mean_at(const GpisObservations& obs, double noise,
                                           const std::vector<Eigen::Vector3d>& queries) {
    const Eigen::VectorXd alpha = gpis_solve_alpha(obs, noise);
    const double inv_2l2 = 1.0 / (2.0 * obs.length_scale * obs.length_scale);
    const Eigen::Index n = alpha.size();

    Eigen::MatrixXd pts(3, n);
    for (Eigen::Index i = 0; i < n; ++i) pts.col(i) = obs.x[static_cast<std::size_t>(i)];
    Eigen::VectorXd work(n);
    std::vector<double> out;
    out.reserve(queries.size());
    for (const Eigen::Vector3d& q : queries)
        out.push_back(gpis_eval_one(pts, alpha, inv_2l2, q, work));
    return out;
}

TriMesh gpis_completion(const PointCloud& depth, const PointCloud& tactile,
                        const GpisConfig& cfg, const Eigen::Vector3d& camera_origin,
                        const GridFrame& eval_frame) {
    cfg.require_valid();
    eval_frame.require_valid();
    if (depth.empty() && tactile.empty())
        throw DegenerateInputError("gpis_completion: both clouds empty");

    PointCloud surface;
    if (!depth.empty()) {
        PointCloud with_normals = estimate_normals(depth, cfg.k_normals, camera_origin);
        surface.append(downsample_cloud(with_normals, cfg.downsample, cfg.seed));
    }
    if (!tactile.empty()) surface.append(tactile_normals(tactile, camera_origin));

    const GpisObservations obs =
        make_gpis_observations(surface, cfg.offset, cfg.length_scale_fraction);

    // Field grid: n^3 voxel centers spanning the same cube as the
    // evaluation frame.
    const double edge =
        static_cast<double>(eval_frame.voxel_size) * eval_frame.dims.x();
    const Eigen::Vector3d center =
        eval_frame.origin.cast<double>() + 0.5 * Eigen::Vector3d::Constant(edge);
    const GridFrame gp_frame = GridFrame::cube(cfg.grid_n, edge, center);

    ScalarGrid mean = gpis_posterior_mean(obs, cfg.noise, gp_frame);
    // The regressed function is positive outside; marching cubes treats
    // values >= iso as inside, so negate and pad with "outside".
    ScalarGrid inside(gp_frame);
    for (std::size_t i = 0; i < gp_frame.voxel_count(); ++i) inside.set(i, -mean.at(i));
    const ScalarGrid padded = pad_field(inside, static_cast<float>(-cfg.offset), 1);
    return marching_cubes(padded, 0.0);
}

}  // namespace vtg
