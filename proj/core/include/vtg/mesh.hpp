#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "vtg/transform.hpp"

namespace vtg {

// Indexed triangle mesh, vertices in meters.
struct TriMesh {
    std::vector<Eigen::Vector3d> vertices;
    std::vector<std::array<int, 3>> faces;

    std::size_t vertex_count() const { return vertices.size(); }
    std::size_t face_count() const { return faces.size(); }
    bool empty() const { return faces.empty(); }

    Eigen::AlignedBox3d bounds() const;

    double area() const;

    // Divergence-theorem volume; positive for closed meshes with outward
    // orientation.
    double signed_volume() const;

    void apply(const RigidTransform& tf);
    void translate(const Eigen::Vector3d& t);
    void scale(double s, const Eigen::Vector3d& about = Eigen::Vector3d::Zero());

    void append(const TriMesh& other);
};

double triangle_area(const Eigen::Vector3d& a, const Eigen::Vector3d& b,
                     const Eigen::Vector3d& c);

// Connectivity summary from the directed-edge map.
struct MeshTopology {
    bool closed = false;      // every directed edge is matched by its reverse
    bool manifold = false;    // no directed edge repeats; every undirected edge on exactly 2 faces
    long long euler_characteristic = 0;  // V - E + F over referenced vertices
};

MeshTopology analyze_topology(const TriMesh& mesh);

// Closed, consistently oriented 2-manifold with no degenerate faces: the
// precondition for solid voxelization.
bool is_watertight(const TriMesh& mesh);

// Drop faces with (near) zero area or repeated vertex indices.
TriMesh remove_degenerate_faces(const TriMesh& mesh, double area_eps = 0.0);

// Generalized winding number at p (1 inside, 0 outside for watertight
// meshes); robust point-in-solid test.
double winding_number(const TriMesh& mesh, const Eigen::Vector3d& p);

}  // namespace vtg
