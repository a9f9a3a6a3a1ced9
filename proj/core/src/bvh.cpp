#include "vtg/bvh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace vtg {

Eigen::Vector3d closest_point_on_triangle(const Eigen::Vector3d& p, const Eigen::Vector3d& a,
                                          const Eigen::Vector3d& b, const Eigen::Vector3d& c) {
    const Eigen::Vector3d ab = b - a;
    const Eigen::Vector3d ac = c - a;
    const Eigen::Vector3d ap = p - a;

    const double d1 = ab.dot(ap);
    const double d2 = ac.dot(ap);
    if (d1 <= 0.0 && d2 <= 0.0) return a;

    const Eigen::Vector3d bp = p - b;
    const double d3 = ab.dot(bp);
    const double d4 = ac.dot(bp);
    if (d3 >= 0.0 && d4 <= d3) return b;

    const double vc = d1 * d4 - d3 * d2;
    if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) {
        const double v = d1 / (d1 - d3);
        return a + v * ab;
    }

    const Eigen::Vector3d cp = p - c;
    const double d5 = ab.dot(cp);
    const double d6 = ac.dot(cp);
    if (d6 >= 0.0 && d5 <= d6) return c;

    const double vb = d5 * d2 - d1 * d6;
    if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) {
        const double w = d2 / (d2 - d6);
        return a + w * ac;
    }

    const double va = d3 * d6 - d5 * d4;
    if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0) {
        const double w = (d4 - d3) / ((d4 - d3) + (d5 - d6));
        return b + w * (c - b);
    }

    const double denom = 1.0 / (va + vb + vc);
    const double v = vb * denom;
    const double w = vc * denom;
    return a + ab * v + ac * w;
}

std::optional<double> ray_triangle(const Eigen::Vector3d& origin, const Eigen::Vector3d& dir,
                                   const Eigen::Vector3d& a, const Eigen::Vector3d& b,
                                   const Eigen::Vector3d& c) {
    constexpr double kEps = 1e-13;
    const Eigen::Vector3d e1 = b - a;
    const Eigen::Vector3d e2 = c - a;
    const Eigen::Vector3d pvec = dir.cross(e2);
    const double det = e1.dot(pvec);
    if (std::abs(det) < kEps) return std::nullopt;
    const double inv_det = 1.0 / det;
    const Eigen::Vector3d tvec = origin - a;
    const double u = tvec.dot(pvec) * inv_det;
    if (u < 0.0 || u > 1.0) return std::nullopt;
    const Eigen::Vector3d qvec = tvec.cross(e1);
    const double v = dir.dot(qvec) * inv_det;
    if (v < 0.0 || u + v > 1.0) return std::nullopt;
    return e2.dot(qvec) * inv_det;
}

namespace {

// Slab test against an axis-aligned box; true if [t_min, t_max] overlaps.
bool ray_box(const Eigen::AlignedBox3d& box, const Eigen::Vector3d& origin,
             const Eigen::Vector3d& inv_dir, double t_min, double t_max) {
    for (int k = 0; k < 3; ++k) {
        double t0 = (box.min()[k] - origin[k]) * inv_dir[k];
        double t1 = (box.max()[k] - origin[k]) * inv_dir[k];
        if (inv_dir[k] < 0.0) std::swap(t0, t1);
        t_min = std::max(t_min, t0);
        t_max = std::min(t_max, t1);
        if (t_max < t_min) return false;
    }
    return true;
}

double box_distance_sq(const Eigen::AlignedBox3d& box, const Eigen::Vector3d& p) {
    double d2 = 0.0;
    for (int k = 0; k < 3; ++k) {
        const double lo = box.min()[k], hi = box.max()[k];
        if (p[k] < lo)
            d2 += (lo - p[k]) * (lo - p[k]);
        else if (p[k] > hi)
            d2 += (p[k] - hi) * (p[k] - hi);
    }
    return d2;
}

}  // namespace

TriangleBvh::TriangleBvh(const TriMesh& mesh) {
    const int n = static_cast<int>(mesh.faces.size());
    tri_a_.resize(n);
    tri_b_.resize(n);
    tri_c_.resize(n);
    order_.resize(n);
    std::vector<Eigen::Vector3d> centroids(n);
    for (int i = 0; i < n; ++i) {
        const auto& f = mesh.faces[i];
        tri_a_[i] = mesh.vertices[f[0]];
        tri_b_[i] = mesh.vertices[f[1]];
        tri_c_[i] = mesh.vertices[f[2]];
        order_[i] = i;
        centroids[i] = (tri_a_[i] + tri_b_[i] + tri_c_[i]) / 3.0;
    }
    if (n > 0) {
        nodes_.reserve(static_cast<std::size_t>(2 * n));
        root_ = build(0, n, centroids);
    }
}

int TriangleBvh::build(int begin, int end, std::vector<Eigen::Vector3d>& centroids) {
    Node node;
    for (int i = begin; i < end; ++i) {
        const int t = order_[i];
        node.box.extend(tri_a_[t]);
        node.box.extend(tri_b_[t]);
        node.box.extend(tri_c_[t]);
    }
    constexpr int kLeafSize = 4;
    if (end - begin <= kLeafSize) {
        node.begin = begin;
        node.end = end;
        nodes_.push_back(node);
        return static_cast<int>(nodes_.size()) - 1;
    }
    int axis = 0;
    const Eigen::Vector3d extent = node.box.sizes();
    if (extent.y() > extent.x()) axis = 1;
    if (extent.z() > extent[axis]) axis = 2;
    const int mid = (begin + end) / 2;
    std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                     [&](int a, int b) { return centroids[a][axis] < centroids[b][axis]; });
    const int left = build(begin, mid, centroids);
    const int right = build(mid, end, centroids);
    node.left = left;
    node.right = right;
    nodes_.push_back(node);
    return static_cast<int>(nodes_.size()) - 1;
}

void TriangleBvh::intersect_node(int node_idx, const Eigen::Vector3d& origin,
                                 const Eigen::Vector3d& dir, double t_min, double& best,
                                 int& best_tri) const {
    const Node& node = nodes_[node_idx];
    const Eigen::Vector3d inv_dir = dir.cwiseInverse();
    if (!ray_box(node.box, origin, inv_dir, t_min, best)) return;
    if (node.left < 0) {
        for (int i = node.begin; i < node.end; ++i) {
            const int t = order_[i];
            const auto hit = ray_triangle(origin, dir, tri_a_[t], tri_b_[t], tri_c_[t]);
            if (hit && *hit > t_min && *hit < best) {
                best = *hit;
                best_tri = t;
            }
        }
        return;
    }
    intersect_node(node.left, origin, dir, t_min, best, best_tri);
    intersect_node(node.right, origin, dir, t_min, best, best_tri);
}

std::optional<RayHit> TriangleBvh::intersect(const Eigen::Vector3d& origin,
                                             const Eigen::Vector3d& dir, double t_min,
                                             double t_max) const {
    if (root_ < 0) return std::nullopt;
    double best = t_max;
    int best_tri = -1;
    intersect_node(root_, origin, dir, t_min, best, best_tri);
    if (best_tri < 0) return std::nullopt;
    return RayHit{best, best_tri};
}

void TriangleBvh::distance_node(int node_idx, const Eigen::Vector3d& p, double& best) const {
    const Node& node = nodes_[node_idx];
    if (box_distance_sq(node.box, p) >= best * best) return;
    if (node.left < 0) {
        for (int i = node.begin; i < node.end; ++i) {
            const int t = order_[i];
            const double d = (closest_point_on_triangle(p, tri_a_[t], tri_b_[t], tri_c_[t]) - p).norm();
            best = std::min(best, d);
        }
        return;
    }
    // Visit the nearer child first for tighter pruning.
    const double dl = box_distance_sq(nodes_[node.left].box, p);
    const double dr = box_distance_sq(nodes_[node.right].box, p);
    if (dl <= dr) {
        distance_node(node.left, p, best);
        distance_node(node.right, p, best);
    } else {
        distance_node(node.right, p, best);
        distance_node(node.left, p, best);
    }
}

double TriangleBvh::distance(const Eigen::Vector3d& p) const {
    if (root_ < 0) return std::numeric_limits<double>::infinity();
    double best = std::numeric_limits<double>::infinity();
    distance_node(root_, p, best);
    return best;
}

}  // namespace vtg
