#include "vtg/mesh.hpp"

#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <unordered_set>

namespace vtg {

Eigen::AlignedBox3d TriMesh::bounds() const {
    Eigen::AlignedBox3d box;
    for (const auto& v : vertices) box.extend(v);
    return box;
}

double triangle_area(const Eigen::Vector3d& a, const Eigen::Vector3d& b,
                     const Eigen::Vector3d& c) {
    return 0.5 * (b - a).cross(c - a).norm();
}

double TriMesh::area() const {
    double total = 0.0;
    for (const auto& f : faces)
        total += triangle_area(vertices[f[0]], vertices[f[1]], vertices[f[2]]);
    return total;
}

double TriMesh::signed_volume() const {
    double total = 0.0;
    for (const auto& f : faces) {
        const auto& a = vertices[f[0]];
        const auto& b = vertices[f[1]];
        const auto& c = vertices[f[2]];
        total += a.dot(b.cross(c));
    }
    return total / 6.0;
}

void TriMesh::apply(const RigidTransform& tf) {
    for (auto& v : vertices) v = tf.apply(v);
}

void TriMesh::translate(const Eigen::Vector3d& t) {
    for (auto& v : vertices) v += t;
}

void TriMesh::scale(double s, const Eigen::Vector3d& about) {
    for (auto& v : vertices) v = about + s * (v - about);
}

void TriMesh::append(const TriMesh& other) {
    const int base = static_cast<int>(vertices.size());
    vertices.insert(vertices.end(), other.vertices.begin(), other.vertices.end());
    faces.reserve(faces.size() + other.faces.size());
    for (const auto& f : other.faces)
        faces.push_back({f[0] + base, f[1] + base, f[2] + base});
}

namespace {

inline uint64_t edge_key(int a, int b) {
    return (static_cast<uint64_t>(static_cast<uint32_t>(a)) << 32) | static_cast<uint32_t>(b);
}

}  // namespace

MeshTopology analyze_topology(const TriMesh& mesh) {
    MeshTopology topo;
    std::unordered_map<uint64_t, int> directed;
    directed.reserve(mesh.faces.size() * 3);
    std::unordered_set<int> used;
    used.reserve(mesh.vertices.size());
    bool repeated_directed = false;
    for (const auto& f : mesh.faces) {
        for (int k = 0; k < 3; ++k) {
            const int a = f[k];
            const int b = f[(k + 1) % 3];
            if (++directed[edge_key(a, b)] > 1) repeated_directed = true;
            used.insert(a);
        }
    }
    bool closed = !mesh.faces.empty();
    std::unordered_set<uint64_t> undirected;
    undirected.reserve(directed.size());
    for (const auto& [key, n] : directed) {
        const int a = static_cast<int>(key >> 32);
        const int b = static_cast<int>(key & 0xffffffffu);
        if (n != 1 || directed.find(edge_key(b, a)) == directed.end()) closed = false;
        undirected.insert(a < b ? edge_key(a, b) : edge_key(b, a));
    }
    topo.closed = closed;
    topo.manifold = closed && !repeated_directed;
    topo.euler_characteristic = static_cast<long long>(used.size()) -
                                static_cast<long long>(undirected.size()) +
                                static_cast<long long>(mesh.faces.size());
    return topo;
}

bool is_watertight(const TriMesh& mesh) {
    if (mesh.faces.empty()) return false;
    for (const auto& f : mesh.faces) {
        if (f[0] == f[1] || f[1] == f[2] || f[0] == f[2]) return false;
    }
    const MeshTopology topo = analyze_topology(mesh);
    return topo.closed && topo.manifold;
}

TriMesh remove_degenerate_faces(const TriMesh& mesh, double area_eps) {
    TriMesh out;
    out.vertices = mesh.vertices;
    out.faces.reserve(mesh.faces.size());
    for (const auto& f : mesh.faces) {
        if (f[0] == f[1] || f[1] == f[2] || f[0] == f[2]) continue;
        if (triangle_area(mesh.vertices[f[0]], mesh.vertices[f[1]], mesh.vertices[f[2]]) <=
            area_eps)
            continue;
        out.faces.push_back(f);
    }
    return out;
}

double winding_number(const TriMesh& mesh, const Eigen::Vector3d& p) {
    // Van Oosterom & Strackee signed solid angle, summed over faces.
    double total = 0.0;
    for (const auto& f : mesh.faces) {
        const Eigen::Vector3d a = mesh.vertices[f[0]] - p;
        const Eigen::Vector3d b = mesh.vertices[f[1]] - p;
        const Eigen::Vector3d c = mesh.vertices[f[2]] - p;
        const double la = a.norm(), lb = b.norm(), lc = c.norm();
        const double num = a.dot(b.cross(c));
        const double den = la * lb * lc + a.dot(b) * lc + b.dot(c) * la + c.dot(a) * lb;
        total += 2.0 * std::atan2(num, den);
    }
    return total / (4.0 * M_PI);
}

}  // namespace vtg
