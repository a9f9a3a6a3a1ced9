#include "vtg/hull.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <unordered_map>
#include <vector>

#include "vtg/error.hpp"

namespace vtg {

namespace {

struct Face {
    int a, b, c;
    Eigen::Vector3d normal;  // unit outward
    double offset;           // plane: normal . x = offset
    std::vector<int> outside;
    int farthest = -1;
    double farthest_dist = 0.0;
    bool alive = true;

    double dist(const Eigen::Vector3d& p) const { return normal.dot(p) - offset; }
};

Eigen::Vector3d face_normal(const Eigen::Vector3d& a, const Eigen::Vector3d& b,
                            const Eigen::Vector3d& c) {
    return (b - a).cross(c - a);
}

}  // namespace

TriMesh convex_hull(const std::vector<Eigen::Vector3d>& points) {
    const int n = static_cast<int>(points.size());
    if (n < 4) throw DegenerateInputError("convex_hull: need at least 4 points");
    for (const auto& p : points)
        if (!p.allFinite()) throw InvalidInputError("convex_hull: non-finite point");

    Eigen::Vector3d lo = points[0], hi = points[0];
    for (const auto& p : points) {
        lo = lo.cwiseMin(p);
        hi = hi.cwiseMax(p);
    }
    const double scale = std::max((hi - lo).norm(), 1e-30);
    const double tol = 1e-12 * std::max(scale, 1.0);

    // Initial simplex: spread along the widest axis, then farthest from the
    // line, then farthest from the plane.
    int i0 = 0, i1 = 0;
    {
        int axis;
        (hi - lo).maxCoeff(&axis);
        for (int i = 0; i < n; ++i) {
            if (points[i][axis] < points[i0][axis]) i0 = i;
            if (points[i][axis] > points[i1][axis]) i1 = i;
        }
    }
    if ((points[i1] - points[i0]).norm() <= tol)
        throw DegenerateInputError("convex_hull: all points coincident");
    int i2 = -1;
    {
        double best = tol;
        const Eigen::Vector3d d = (points[i1] - points[i0]).normalized();
        for (int i = 0; i < n; ++i) {
            const Eigen::Vector3d r = points[i] - points[i0];
            const double dist = (r - d * d.dot(r)).norm();
            if (dist > best) {
                best = dist;
                i2 = i;
            }
        }
    }
    if (i2 < 0) throw DegenerateInputError("convex_hull: points are collinear");
    int i3 = -1;
    {
        double best = tol;
        Eigen::Vector3d nrm = face_normal(points[i0], points[i1], points[i2]);
        nrm.normalize();
        for (int i = 0; i < n; ++i) {
            const double dist = std::abs(nrm.dot(points[i] - points[i0]));
            if (dist > best) {
                best = dist;
                i3 = i;
            }
        }
    }
    if (i3 < 0) throw DegenerateInputError("convex_hull: points are coplanar");

    std::vector<Face> faces;
    auto make_face = [&](int a, int b, int c, const Eigen::Vector3d& inside, bool allow_flip) {
        Face f;
        f.a = a;
        f.b = b;
        f.c = c;
        f.normal = face_normal(points[a], points[b], points[c]);
        const double len = f.normal.norm();
        if (!(len > 0.0)) throw NumericalError("convex_hull: degenerate face");
        f.normal /= len;
        f.offset = f.normal.dot(points[a]);
        if (f.dist(inside) > 0.0) {
            // Only the seed tetrahedron may be reoriented; horizon faces are
            // wound by construction and a flip would corrupt adjacency.
            if (!allow_flip) throw NumericalError("convex_hull: inverted horizon face");
            std::swap(f.b, f.c);
            f.normal = -f.normal;
            f.offset = -f.offset;
        }
        faces.push_back(std::move(f));
        return static_cast<int>(faces.size() - 1);
    };

    const Eigen::Vector3d centroid =
        (points[i0] + points[i1] + points[i2] + points[i3]) / 4.0;
    make_face(i0, i1, i2, centroid, true);
    make_face(i0, i1, i3, centroid, true);
    make_face(i0, i2, i3, centroid, true);
    make_face(i1, i2, i3, centroid, true);

    auto assign_point = [&](int pi, const std::vector<int>& candidates) {
        for (int fi : candidates) {
            Face& f = faces[static_cast<std::size_t>(fi)];
            if (!f.alive) continue;
            const double d = f.dist(points[pi]);
            if (d > tol) {
                f.outside.push_back(pi);
                if (d > f.farthest_dist) {
                    f.farthest_dist = d;
                    f.farthest = pi;
                }
                return;
            }
        }
    };
    {
        std::vector<int> initial = {0, 1, 2, 3};
        for (int i = 0; i < n; ++i) {
            if (i == i0 || i == i1 || i == i2 || i == i3) continue;
            assign_point(i, initial);
        }
    }

    // Directed-edge adjacency: key (u,v) -> face owning that directed edge.
    auto edge_key = [](int u, int v) {
        return (static_cast<uint64_t>(static_cast<uint32_t>(u)) << 32) |
               static_cast<uint32_t>(v);
    };
    std::unordered_map<uint64_t, int> edge_face;
    auto register_face = [&](int fi) {
        const Face& f = faces[static_cast<std::size_t>(fi)];
        edge_face[edge_key(f.a, f.b)] = fi;
        edge_face[edge_key(f.b, f.c)] = fi;
        edge_face[edge_key(f.c, f.a)] = fi;
    };
    for (int fi = 0; fi < 4; ++fi) register_face(fi);

    const int max_iterations = 16 * n + 64;
    for (int iter = 0; iter < max_iterations; ++iter) {
        int best_face = -1;
        double best_dist = tol;
        for (std::size_t fi = 0; fi < faces.size(); ++fi)
            if (faces[fi].alive && faces[fi].farthest >= 0 &&
                faces[fi].farthest_dist > best_dist) {
                best_dist = faces[fi].farthest_dist;
                best_face = static_cast<int>(fi);
            }
        if (best_face < 0) break;
        const int apex = faces[static_cast<std::size_t>(best_face)].farthest;
        const Eigen::Vector3d& p = points[apex];

        // Flood-fill the faces visible from the apex.
        std::vector<int> visible = {best_face};
        faces[static_cast<std::size_t>(best_face)].alive = false;
        std::vector<std::pair<int, int>> horizon;  // directed edges (u,v)
        for (std::size_t qi = 0; qi < visible.size(); ++qi) {
            const Face f = faces[static_cast<std::size_t>(visible[qi])];
            const int edges[3][2] = {{f.a, f.b}, {f.b, f.c}, {f.c, f.a}};
            for (const auto& e : edges) {
                const auto it = edge_face.find(edge_key(e[1], e[0]));
                if (it == edge_face.end())
                    throw NumericalError("convex_hull: broken adjacency");
                Face& nbr = faces[static_cast<std::size_t>(it->second)];
                if (!nbr.alive) continue;  // already visible (or horizon twin)
                if (nbr.dist(p) > tol) {
                    nbr.alive = false;
                    visible.push_back(it->second);
                } else {
                    horizon.emplace_back(e[0], e[1]);
                }
            }
        }

        // Collect orphaned points before the visible faces are dropped.
        std::vector<int> orphans;
        for (int fi : visible) {
            Face& f = faces[static_cast<std::size_t>(fi)];
            for (int pi : f.outside)
                if (pi != apex) orphans.push_back(pi);
            f.outside.clear();
            edge_face.erase(edge_key(f.a, f.b));
            edge_face.erase(edge_key(f.b, f.c));
            edge_face.erase(edge_key(f.c, f.a));
        }

        std::vector<int> created;
        for (const auto& [u, v] : horizon) {
            const int fi = make_face(u, v, apex, centroid, false);
            register_face(fi);
            created.push_back(fi);
        }
        for (int pi : orphans) assign_point(pi, created);
    }

    // Compact to hull vertices only.
    std::vector<int> remap(points.size(), -1);
    TriMesh mesh;
    for (const Face& f : faces) {
        if (!f.alive) continue;
        std::array<int, 3> tri{};
        const int src[3] = {f.a, f.b, f.c};
        for (int k = 0; k < 3; ++k) {
            int& id = remap[static_cast<std::size_t>(src[k])];
            if (id < 0) {
                id = static_cast<int>(mesh.vertices.size());
                mesh.vertices.push_back(points[static_cast<std::size_t>(src[k])]);
            }
            tri[static_cast<std::size_t>(k)] = id;
        }
        mesh.faces.push_back(tri);
    }
    if (mesh.faces.size() < 4) throw NumericalError("convex_hull: collapsed hull");
    return mesh;
}

}  // namespace vtg
