#include "vtg/hausdorff.hpp"

#include <algorithm>
#include <cmath>

#include "vtg/error.hpp"
#include "vtg/rng.hpp"

namespace vtg {

std::vector<Eigen::Vector3d> sample_surface(const TriMesh& mesh, int n, uint64_t seed) {
    if (mesh.faces.empty()) throw InvalidInputError("sample_surface: empty mesh");
    if (n < 1) throw InvalidInputError("sample_surface: need at least one sample");

    // Cumulative area table for area-proportional face selection.
    std::vector<double> cum(mesh.faces.size());
    double total = 0.0;
    for (std::size_t i = 0; i < mesh.faces.size(); ++i) {
        const auto& f = mesh.faces[i];
        total += triangle_area(mesh.vertices[f[0]], mesh.vertices[f[1]], mesh.vertices[f[2]]);
        cum[i] = total;
    }
    if (!(total > 0.0)) throw InvalidInputError("sample_surface: mesh has zero area");

    Rng rng(seed);
    std::vector<Eigen::Vector3d> out;
    out.reserve(n);
    for (int s = 0; s < n; ++s) {
        const double r = rng.uniform_double() * total;
        const auto it = std::upper_bound(cum.begin(), cum.end(), r);
        const std::size_t fi = std::min(static_cast<std::size_t>(it - cum.begin()),
                                        mesh.faces.size() - 1);
        const auto& f = mesh.faces[fi];
        // Uniform barycentric point via the square-root trick.
        const double r1 = std::sqrt(rng.uniform_double());
        const double r2 = rng.uniform_double();
        const double u = 1.0 - r1;
        const double v = r1 * (1.0 - r2);
        const double w = r1 * r2;
        out.push_back(u * mesh.vertices[f[0]] + v * mesh.vertices[f[1]] +
                      w * mesh.vertices[f[2]]);
    }
    return out;
}

void directed_distances(const std::vector<Eigen::Vector3d>& samples, const TriangleBvh& target,
                        double& mean_out, double& max_out) {
    double sum = 0.0;
    double mx = 0.0;
    for (const auto& p : samples) {
        const double d = target.distance(p);
        sum += d;
        mx = std::max(mx, d);
    }
    mean_out = sum / static_cast<double>(samples.size());
    max_out = mx;
}

HausdorffReport hausdorff(const TriMesh& a, const TriMesh& b, int samples, uint64_t seed) {
    if (a.faces.empty() || b.faces.empty())
        throw InvalidInputError("hausdorff: undefined for empty meshes");
    const auto sa = sample_surface(a, samples, seed);
    const auto sb = sample_surface(b, samples, seed);
    const TriangleBvh bvh_a(a);
    const TriangleBvh bvh_b(b);

    constexpr double kMm = 1000.0;
    HausdorffReport rep;
    double mean = 0.0, mx = 0.0;
    directed_distances(sa, bvh_b, mean, mx);
    rep.mean_a_to_b = mean * kMm;
    rep.max_a_to_b = mx * kMm;
    directed_distances(sb, bvh_a, mean, mx);
    rep.mean_b_to_a = mean * kMm;
    rep.max_b_to_a = mx * kMm;
    rep.symmetric_mean = 0.5 * (rep.mean_a_to_b + rep.mean_b_to_a);
    rep.samples_a = samples;
    rep.samples_b = samples;
    return rep;
}

}  // namespace vtg
