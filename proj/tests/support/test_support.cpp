#include "test_support.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace vtg::testing {

TriMesh make_icosphere(double radius, const Eigen::Vector3d& center, int subdivisions) {
    const double t = (1.0 + std::sqrt(5.0)) / 2.0;
    TriMesh mesh;
    mesh.vertices = {{-1, t, 0}, {1, t, 0},  {-1, -t, 0}, {1, -t, 0},
                     {0, -1, t}, {0, 1, t},  {0, -1, -t}, {0, 1, -t},
                     {t, 0, -1}, {t, 0, 1},  {-t, 0, -1}, {-t, 0, 1}};
    mesh.faces = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                  {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                  {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                  {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};

    for (int level = 0; level < subdivisions; ++level) {
        std::map<std::pair<int, int>, int> midpoints;
        auto midpoint = [&](int a, int b) {
            const auto key = std::minmax(a, b);
            const auto it = midpoints.find(key);
            if (it != midpoints.end()) return it->second;
            mesh.vertices.push_back((mesh.vertices[a] + mesh.vertices[b]) / 2.0);
            const int idx = static_cast<int>(mesh.vertices.size()) - 1;
            midpoints.emplace(key, idx);
            return idx;
        };
        std::vector<std::array<int, 3>> faces;
        faces.reserve(mesh.faces.size() * 4);
        for (const auto& f : mesh.faces) {
            const int ab = midpoint(f[0], f[1]);
            const int bc = midpoint(f[1], f[2]);
            const int ca = midpoint(f[2], f[0]);
            faces.push_back({f[0], ab, ca});
            faces.push_back({f[1], bc, ab});
            faces.push_back({f[2], ca, bc});
            faces.push_back({ab, bc, ca});
        }
        mesh.faces = std::move(faces);
    }

    for (auto& v : mesh.vertices) v = center + radius * v.normalized();
    return mesh;
}

TriMesh make_box_mesh(const Eigen::Vector3d& lo, const Eigen::Vector3d& hi) {
    TriMesh mesh;
    mesh.vertices = {{lo.x(), lo.y(), lo.z()}, {hi.x(), lo.y(), lo.z()},
                     {hi.x(), hi.y(), lo.z()}, {lo.x(), hi.y(), lo.z()},
                     {lo.x(), lo.y(), hi.z()}, {hi.x(), lo.y(), hi.z()},
                     {hi.x(), hi.y(), hi.z()}, {lo.x(), hi.y(), hi.z()}};
    mesh.faces = {{0, 2, 1}, {0, 3, 2}, {4, 5, 6}, {4, 6, 7}, {0, 1, 5}, {0, 5, 4},
                  {1, 2, 6}, {1, 6, 5}, {2, 3, 7}, {2, 7, 6}, {3, 0, 4}, {3, 4, 7}};
    return mesh;
}

VoxelGrid ellipsoid_solid(const GridFrame& frame, const Eigen::Vector3d& center,
                          const Eigen::Vector3d& radii) {
    VoxelGrid grid(frame);
    for (int z = 0; z < frame.dims.z(); ++z)
        for (int y = 0; y < frame.dims.y(); ++y)
            for (int x = 0; x < frame.dims.x(); ++x) {
                const Eigen::Vector3d d = frame.voxel_center(x, y, z) - center;
                const double q = d.x() * d.x() / (radii.x() * radii.x()) +
                                 d.y() * d.y() / (radii.y() * radii.y()) +
                                 d.z() * d.z() / (radii.z() * radii.z());
                if (q <= 1.0) grid.set(x, y, z);
            }
    return grid;
}

VoxelGrid box_solid(const GridFrame& frame, const Eigen::Vector3d& lo,
                    const Eigen::Vector3d& hi) {
    VoxelGrid grid(frame);
    for (int z = 0; z < frame.dims.z(); ++z)
        for (int y = 0; y < frame.dims.y(); ++y)
            for (int x = 0; x < frame.dims.x(); ++x) {
                const Eigen::Vector3d c = frame.voxel_center(x, y, z);
                if ((c.array() >= lo.array()).all() && (c.array() <= hi.array()).all())
                    grid.set(x, y, z);
            }
    return grid;
}

namespace {

double point_triangle_dist(const Eigen::Vector3d& p, const Eigen::Vector3d& a,
                           const Eigen::Vector3d& b, const Eigen::Vector3d& c) {
    // Project onto the plane, then clamp to the triangle via the three edge
    // half-spaces; fall back to segment distances when outside.
    const Eigen::Vector3d ab = b - a, ac = c - a, ap = p - a;
    const double d1 = ab.dot(ap), d2 = ac.dot(ap);
    if (d1 <= 0.0 && d2 <= 0.0) return (p - a).norm();

    const Eigen::Vector3d bp = p - b;
    const double d3 = ab.dot(bp), d4 = ac.dot(bp);
    if (d3 >= 0.0 && d4 <= d3) return (p - b).norm();

    const double vc = d1 * d4 - d3 * d2;
    if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0)
        return (p - (a + ab * (d1 / (d1 - d3)))).norm();

    const Eigen::Vector3d cp = p - c;
    const double d5 = ab.dot(cp), d6 = ac.dot(cp);
    if (d6 >= 0.0 && d5 <= d6) return (p - c).norm();

    const double vb = d5 * d2 - d1 * d6;
    if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0)
        return (p - (a + ac * (d2 / (d2 - d6)))).norm();

    const double va = d3 * d6 - d5 * d4;
    if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0)
        return (p - (b + (c - b) * ((d4 - d3) / ((d4 - d3) + (d5 - d6))))).norm();

    const double denom = 1.0 / (va + vb + vc);
    return (p - (a + ab * (vb * denom) + ac * (vc * denom))).norm();
}

std::vector<Eigen::Vector3d> area_uniform_points(const TriMesh& mesh, int n,
                                                 std::mt19937_64& gen) {
    std::vector<double> areas;
    areas.reserve(mesh.faces.size());
    for (const auto& f : mesh.faces) {
        const Eigen::Vector3d e1 = mesh.vertices[f[1]] - mesh.vertices[f[0]];
        const Eigen::Vector3d e2 = mesh.vertices[f[2]] - mesh.vertices[f[0]];
        areas.push_back(0.5 * e1.cross(e2).norm());
    }
    std::discrete_distribution<int> pick(areas.begin(), areas.end());
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::vector<Eigen::Vector3d> pts;
    pts.reserve(n);
    for (int i = 0; i < n; ++i) {
        const auto& f = mesh.faces[pick(gen)];
        const double su = std::sqrt(uni(gen));
        const double v = uni(gen);
        const double wa = 1.0 - su, wb = su * (1.0 - v), wc = su * v;
        pts.push_back(wa * mesh.vertices[f[0]] + wb * mesh.vertices[f[1]] +
                      wc * mesh.vertices[f[2]]);
    }
    return pts;
}

double directed_mean(const std::vector<Eigen::Vector3d>& pts, const TriMesh& target) {
    double sum = 0.0;
    for (const auto& p : pts) {
        double best = std::numeric_limits<double>::max();
        for (const auto& f : target.faces)
            best = std::min(best, point_triangle_dist(p, target.vertices[f[0]],
                                                      target.vertices[f[1]],
                                                      target.vertices[f[2]]));
        sum += best;
    }
    return sum / static_cast<double>(pts.size());
}

}  // namespace

double brute_symmetric_mean_mm(const TriMesh& a, const TriMesh& b, int samples_per_side,
                               uint64_t seed) {
    std::mt19937_64 gen(seed);
    const auto pts_a = area_uniform_points(a, samples_per_side, gen);
    const auto pts_b = area_uniform_points(b, samples_per_side, gen);
    return 1000.0 * 0.5 * (directed_mean(pts_a, b) + directed_mean(pts_b, a));
}

std::vector<double> naive_net_forward(const NetParamsT<double>& params, const NetConfig& cfg,
                                      const std::vector<double>& input) {
    const int d = cfg.grid_dim;
    const int s1 = cfg.spatial1(), s2 = cfg.spatial2();
    const int c1 = cfg.conv1_channels, c2 = cfg.conv2_channels;

    auto conv = [](const std::vector<double>& in, int in_ch, int s_in,
                   const Eigen::MatrixXd& w, const Eigen::VectorXd& bias) {
        const int s_out = s_in / 2;
        const int out_ch = static_cast<int>(w.rows());
        std::vector<double> out(static_cast<std::size_t>(out_ch) * s_out * s_out * s_out);
        for (int oc = 0; oc < out_ch; ++oc)
            for (int oz = 0; oz < s_out; ++oz)
                for (int oy = 0; oy < s_out; ++oy)
                    for (int ox = 0; ox < s_out; ++ox) {
                        double acc = bias(oc);
                        for (int ic = 0; ic < in_ch; ++ic)
                            for (int kz = 0; kz < 4; ++kz)
                                for (int ky = 0; ky < 4; ++ky)
                                    for (int kx = 0; kx < 4; ++kx) {
                                        const int ix = 2 * ox - 1 + kx;
                                        const int iy = 2 * oy - 1 + ky;
                                        const int iz = 2 * oz - 1 + kz;
                                        if (ix < 0 || iy < 0 || iz < 0 || ix >= s_in ||
                                            iy >= s_in || iz >= s_in)
                                            continue;
                                        const std::size_t src =
                                            static_cast<std::size_t>(ic) * s_in * s_in * s_in +
                                            ix + static_cast<std::size_t>(s_in) *
                                                     (iy + static_cast<std::size_t>(s_in) * iz);
                                        acc += w(oc, ic * 64 + kz * 16 + ky * 4 + kx) * in[src];
                                    }
                        const std::size_t dst =
                            static_cast<std::size_t>(oc) * s_out * s_out * s_out + ox +
                            static_cast<std::size_t>(s_out) *
                                (oy + static_cast<std::size_t>(s_out) * oz);
                        out[dst] = std::max(acc, 0.0);
                    }
        return out;
    };

    (void)d;
    const std::vector<double> f1 = conv(input, 1, d, params.conv1_w, params.conv1_b);
    const std::vector<double> f2 = conv(f1, c1, s1, params.conv2_w, params.conv2_b);
    (void)c2;

    std::vector<double> h(static_cast<std::size_t>(cfg.hidden));
    for (int i = 0; i < cfg.hidden; ++i) {
        double acc = params.fc1_b(i);
        for (std::size_t j = 0; j < f2.size(); ++j)
            acc += params.fc1_w(i, static_cast<Eigen::Index>(j)) * f2[j];
        h[static_cast<std::size_t>(i)] = std::max(acc, 0.0);
    }

    std::vector<double> out(static_cast<std::size_t>(cfg.out_dim()));
    for (long long i = 0; i < cfg.out_dim(); ++i) {
        double acc = params.fc2_b(static_cast<Eigen::Index>(i));
        for (int j = 0; j < cfg.hidden; ++j)
            acc += params.fc2_w(static_cast<Eigen::Index>(i), j) * h[static_cast<std::size_t>(j)];
        out[static_cast<std::size_t>(i)] = detail::sigmoid_strict(acc);
    }
    (void)s2;
    return out;
}

}  // namespace vtg::testing
