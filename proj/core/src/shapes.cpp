#include "vtg/shapes.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "vtg/error.hpp"

namespace vtg {

const char* to_string(Primitive p) {
    switch (p) {
        case Primitive::box: return "box";
        case Primitive::cylinder: return "cylinder";
        case Primitive::sphere: return "sphere";
        case Primitive::wedge: return "wedge";
    }
    throw InvalidInputError("to_string: unknown primitive");
}

Primitive primitive_from_string(const std::string& name) {
    if (name == "box") return Primitive::box;
    if (name == "cylinder") return Primitive::cylinder;
    if (name == "sphere") return Primitive::sphere;
    if (name == "wedge") return Primitive::wedge;
    throw InvalidInputError("unknown primitive name: " + name);
}

void ShapePairSpec::require_valid() const {
    auto positive = [](double x) { return std::isfinite(x) && x > 0.0; };
    if (!positive(half_x) || !positive(half_y))
        throw InvalidInputError("ShapePairSpec: footprint half-extents must be positive");
    if (!positive(front_depth) || !positive(back_depth))
        throw InvalidInputError("ShapePairSpec: depths must be positive");
    if (cells < 2) throw InvalidInputError("ShapePairSpec: cells must be >= 2");
}

double primitive_profile(Primitive p, double u, double v) {
    switch (p) {
        case Primitive::box:
            return 1.0;
        case Primitive::wedge:
            return 1.0 - std::abs(v);
        case Primitive::cylinder:
            return std::sqrt(std::max(0.0, 1.0 - v * v));
        case Primitive::sphere:
            // Spherical cap whose support circumscribes the footprint: the
            // height vanishes only at the four corners, never on an interior
            // edge, which keeps the stitched mesh manifold for any pairing.
            return std::sqrt(std::max(0.0, 2.0 - u * u - v * v) / 2.0);
    }
    throw InvalidInputError("primitive_profile: unknown primitive");
}

namespace {

struct SheetIds {
    std::vector<int> bottom;  // front-sheet vertex per footprint node
    std::vector<int> top;     // back-sheet vertex (== bottom where welded)
    std::vector<char> welded;
};

void push_face(TriMesh& mesh, int a, int b, int c) {
    if (a == b || b == c || a == c) return;
    mesh.faces.push_back({a, b, c});
}

}  // namespace

TriMesh gen_shape_pair(const ShapePairSpec& spec) {
    spec.require_valid();
    const int k = spec.cells;
    const int n = k + 1;
    auto node = [n](int i, int j) { return j * n + i; };

    TriMesh mesh;
    SheetIds ids;
    ids.bottom.resize(static_cast<std::size_t>(n) * n);
    ids.top.resize(static_cast<std::size_t>(n) * n);
    ids.welded.resize(static_cast<std::size_t>(n) * n);

    for (int j = 0; j < n; ++j) {
        const double v = (2.0 * j - k) / k;
        const double y = v * spec.half_y;
        for (int i = 0; i < n; ++i) {
            const double u = (2.0 * i - k) / k;
            const double x = u * spec.half_x;
            const double hf = spec.front_depth * primitive_profile(spec.front, u, v);
            const double hb = spec.back_depth * primitive_profile(spec.back, u, v);
            const int id = node(i, j);
            ids.welded[id] = (hf == 0.0 && hb == 0.0);
            ids.bottom[id] = static_cast<int>(mesh.vertices.size());
            mesh.vertices.emplace_back(x, y, -hf);
            if (ids.welded[id]) {
                ids.top[id] = ids.bottom[id];
            } else {
                ids.top[id] = static_cast<int>(mesh.vertices.size());
                mesh.vertices.emplace_back(x, y, hb);
            }
        }
    }

    auto all_welded = [&](int a, int b, int c) {
        return ids.welded[a] && ids.welded[b] && ids.welded[c];
    };

    for (int j = 0; j < k; ++j) {
        for (int i = 0; i < k; ++i) {
            const int n00 = node(i, j), n10 = node(i + 1, j);
            const int n11 = node(i + 1, j + 1), n01 = node(i, j + 1);
            // Back sheet faces +z, front sheet faces -z; triangles whose
            // corners are all welded span zero volume and are dropped from
            // both sheets, the surviving sheet seals against its mirror.
            if (!all_welded(n00, n10, n11))
                push_face(mesh, ids.top[n00], ids.top[n10], ids.top[n11]);
            if (!all_welded(n00, n11, n01))
                push_face(mesh, ids.top[n00], ids.top[n11], ids.top[n01]);
            if (!all_welded(n00, n11, n10))
                push_face(mesh, ids.bottom[n00], ids.bottom[n11], ids.bottom[n10]);
            if (!all_welded(n00, n01, n11))
                push_face(mesh, ids.bottom[n00], ids.bottom[n01], ids.bottom[n11]);
        }
    }

    // Perimeter walls. Boundary nodes in counterclockwise order viewed from
    // +z; for each directed boundary edge p->q the wall quad
    // (bottom_p, bottom_q, top_q, top_p) then faces outward.
    std::vector<int> ring;
    for (int i = 0; i < k; ++i) ring.push_back(node(i, 0));
    for (int j = 0; j < k; ++j) ring.push_back(node(k, j));
    for (int i = k; i > 0; --i) ring.push_back(node(i, k));
    for (int j = k; j > 0; --j) ring.push_back(node(0, j));
    for (std::size_t e = 0; e < ring.size(); ++e) {
        const int p = ring[e];
        const int q = ring[(e + 1) % ring.size()];
        push_face(mesh, ids.bottom[p], ids.bottom[q], ids.top[q]);
        push_face(mesh, ids.bottom[p], ids.top[q], ids.top[p]);
    }

    const MeshTopology topo = analyze_topology(mesh);
    if (!topo.closed || !topo.manifold)
        throw DegenerateInputError("gen_shape_pair: stitched halves are not watertight");
    return mesh;
}

}  // namespace vtg
