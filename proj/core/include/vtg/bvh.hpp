#pragma once

#include <optional>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "vtg/mesh.hpp"

namespace vtg {

struct RayHit {
    double t = 0.0;  // ray parameter: hit = origin + t * dir
    int triangle = -1;
};

// Closest point on a single triangle (Ericson's region test).
Eigen::Vector3d closest_point_on_triangle(const Eigen::Vector3d& p, const Eigen::Vector3d& a,
                                          const Eigen::Vector3d& b, const Eigen::Vector3d& c);

// Möller–Trumbore, no backface culling. Returns the ray parameter or nothing.
std::optional<double> ray_triangle(const Eigen::Vector3d& origin, const Eigen::Vector3d& dir,
                                   const Eigen::Vector3d& a, const Eigen::Vector3d& b,
                                   const Eigen::Vector3d& c);

// Static median-split BVH over a mesh's triangles. Holds its own copy of the
// triangle data, so the source mesh may be discarded after construction.
class TriangleBvh {
public:
    explicit TriangleBvh(const TriMesh& mesh);

    // Nearest intersection with t in (t_min, t_max).
    std::optional<RayHit> intersect(const Eigen::Vector3d& origin, const Eigen::Vector3d& dir,
                                    double t_min, double t_max) const;

    // Distance from p to the closest point on any triangle.
    double distance(const Eigen::Vector3d& p) const;

    std::size_t triangle_count() const { return tri_a_.size(); }

private:
    struct Node {
        Eigen::AlignedBox3d box;
        int left = -1;   // child node, or -1 for leaves
        int right = -1;
        int begin = 0;   // leaf triangle range in order_
        int end = 0;
    };

    int build(int begin, int end, std::vector<Eigen::Vector3d>& centroids);
    void intersect_node(int node, const Eigen::Vector3d& origin, const Eigen::Vector3d& dir,
                        double t_min, double& best, int& best_tri) const;
    void distance_node(int node, const Eigen::Vector3d& p, double& best) const;

    std::vector<Eigen::Vector3d> tri_a_, tri_b_, tri_c_;
    std::vector<int> order_;  // triangle indices, leaf ranges index into this
    std::vector<Node> nodes_;
    int root_ = -1;
};

}  // namespace vtg
