#include "vtg/normals.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <numeric>
#include <vector>

#include "vtg/error.hpp"

namespace vtg {

namespace {

// Minimal 3D kd-tree over cloud indices for k-nearest-neighbor queries.
class KdTree {
public:
    explicit KdTree(const std::vector<Eigen::Vector3d>& pts) : pts_(pts) {
        order_.resize(pts.size());
        std::iota(order_.begin(), order_.end(), 0);
        if (!order_.empty()) build(0, order_.size(), 0);
    }

    // Indices of the k nearest points to `q` (including exact matches),
    // nearest first.
    std::vector<int> knn(const Eigen::Vector3d& q, int k) const {
        Heap heap;
        heap.reserve(static_cast<std::size_t>(k));
        if (!order_.empty()) search(0, order_.size(), 0, q, static_cast<std::size_t>(k), heap);
        std::sort(heap.begin(), heap.end(),
                  [](const Entry& a, const Entry& b) { return a.dist_sq < b.dist_sq; });
        std::vector<int> out;
        out.reserve(heap.size());
        for (const Entry& e : heap) out.push_back(e.index);
        return out;
    }

private:
    struct Entry {
        double dist_sq;
        int index;
    };
    using Heap = std::vector<Entry>;  // max-heap on dist_sq

    static bool heap_less(const Entry& a, const Entry& b) { return a.dist_sq < b.dist_sq; }

    void build(std::size_t begin, std::size_t end, int depth) {
        if (end - begin <= 1) return;
        const std::size_t mid = (begin + end) / 2;
        const int axis = depth % 3;
        std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                         [&](int a, int b) {
                             if (pts_[a][axis] != pts_[b][axis])
                                 return pts_[a][axis] < pts_[b][axis];
                             return a < b;  // deterministic tie order
                         });
        build(begin, mid, depth + 1);
        build(mid + 1, end, depth + 1);
    }

    void search(std::size_t begin, std::size_t end, int depth, const Eigen::Vector3d& q,
                std::size_t k, Heap& heap) const {
        if (begin >= end) return;
        const std::size_t mid = (begin + end) / 2;
        const int idx = order_[mid];
        const double d2 = (pts_[static_cast<std::size_t>(idx)] - q).squaredNorm();
        if (heap.size() < k) {
            heap.push_back({d2, idx});
            std::push_heap(heap.begin(), heap.end(), heap_less);
        } else if (d2 < heap.front().dist_sq) {
            std::pop_heap(heap.begin(), heap.end(), heap_less);
            heap.back() = {d2, idx};
            std::push_heap(heap.begin(), heap.end(), heap_less);
        }
        const int axis = depth % 3;
        const double delta = q[axis] - pts_[static_cast<std::size_t>(idx)][axis];
        const bool go_left_first = delta < 0.0;
        const auto visit = [&](bool left) {
            if (left)
                search(begin, mid, depth + 1, q, k, heap);
            else
                search(mid + 1, end, depth + 1, q, k, heap);
        };
        visit(go_left_first);
        if (heap.size() < k || delta * delta < heap.front().dist_sq) visit(!go_left_first);
    }

    const std::vector<Eigen::Vector3d>& pts_;
    std::vector<int> order_;
};

}  // namespace

PointCloud estimate_normals(const PointCloud& cloud, int k,
                            const Eigen::Vector3d& camera_origin) {
    if (k < 1) throw InvalidInputError("estimate_normals: k must be positive");
    PointCloud out;
    out.points = cloud.points;
    out.normals.assign(cloud.size(), Eigen::Vector3d::Zero());
    out.normal_valid.assign(cloud.size(), 0);
    if (cloud.empty()) return out;

    const KdTree tree(cloud.points);
    const int k_eff = std::min<int>(k, static_cast<int>(cloud.size()));
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const std::vector<int> nbrs = tree.knn(cloud.points[i], k_eff);
        if (nbrs.size() < 3) continue;

        Eigen::Vector3d mean = Eigen::Vector3d::Zero();
        for (int j : nbrs) mean += cloud.points[static_cast<std::size_t>(j)];
        mean /= static_cast<double>(nbrs.size());
        Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
        for (int j : nbrs) {
            const Eigen::Vector3d d = cloud.points[static_cast<std::size_t>(j)] - mean;
            cov += d * d.transpose();
        }
        cov /= static_cast<double>(nbrs.size());

        Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(cov);
        if (eig.info() != Eigen::Success) continue;
        const Eigen::Vector3d evals = eig.eigenvalues();  // ascending
        // Rank < 2 neighborhoods (collinear or coincident) have no plane.
        if (!(evals[1] > 1e-12 * std::max(evals[2], 0.0)) || !(evals[2] > 0.0)) continue;
        Eigen::Vector3d n = eig.eigenvectors().col(0);
        const double len = n.norm();
        if (!(len > 0.0) || !n.allFinite()) continue;
        n /= len;
        if (n.dot(camera_origin - cloud.points[i]) < 0.0) n = -n;
        out.normals[i] = n;
        out.normal_valid[i] = 1;
    }
    return out;
}

PointCloud tactile_normals(const PointCloud& cloud, const Eigen::Vector3d& camera_origin) {
    PointCloud out;
    out.points = cloud.points;
    out.normals.assign(cloud.size(), Eigen::Vector3d::Zero());
    out.normal_valid.assign(cloud.size(), 0);
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        Eigen::Vector3d n = camera_origin - cloud.points[i];
        const double len = n.norm();
        if (!(len > 0.0)) continue;
        out.normals[i] = n / len;
        out.normal_valid[i] = 1;
    }
    return out;
}

}  // namespace vtg
