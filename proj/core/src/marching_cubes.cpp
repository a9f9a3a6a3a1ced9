#include "vtg/marching_cubes.hpp"

#include <algorithm>
#include <cstdint>
#include <unordered_map>

#include "vtg/detail/mc_tables.hpp"
#include "vtg/error.hpp"

namespace vtg {

namespace {

// Cell corner layout matching the tables: 0-3 ring the z face, 4-7 the z+1
// face, corner i+4 directly above corner i.
constexpr int kCorner[8][3] = {
    {0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0},
    {0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1},
};

constexpr int kEdgeCorner[12][2] = {
    {0, 1}, {1, 2}, {2, 3}, {3, 0},
    {4, 5}, {5, 6}, {6, 7}, {7, 4},
    {0, 4}, {1, 5}, {2, 6}, {3, 7},
};

// Keep interpolated vertices strictly off the lattice nodes so node-valued
// fields (e.g. where a corner equals iso exactly) cannot produce zero-area
// faces.
constexpr double kTClampLo = 1e-6;
constexpr double kTClampHi = 1.0 - 1e-6;

}  // namespace

TriMesh marching_cubes(const ScalarGrid& field, double iso) {
    const GridFrame& frame = field.frame();
    frame.require_valid();
    field.require_finite();
    const int nx = frame.dims.x();
    const int ny = frame.dims.y();
    const int nz = frame.dims.z();

    TriMesh mesh;
    if (nx < 2 || ny < 2 || nz < 2) return mesh;

    // Welded vertex per crossed lattice edge: key = base node * 3 + axis.
    std::unordered_map<uint64_t, int> edge_vertex;
    edge_vertex.reserve(1024);

    const auto node_id = [&](int x, int y, int z) {
        return static_cast<uint64_t>(frame.linear_index(x, y, z));
    };

    const auto vertex_on_edge = [&](int bx, int by, int bz, int e) {
        const int* ca = kCorner[kEdgeCorner[e][0]];
        const int* cb = kCorner[kEdgeCorner[e][1]];
        int ax = bx + ca[0], ay = by + ca[1], az = bz + ca[2];
        int ox = bx + cb[0], oy = by + cb[1], oz = bz + cb[2];
        int axis = 0;
        if (ay != oy) axis = 1;
        if (az != oz) axis = 2;
        // Canonical direction: from the lower node along +axis.
        if (ox < ax || oy < ay || oz < az) {
            std::swap(ax, ox);
            std::swap(ay, oy);
            std::swap(az, oz);
        }
        const uint64_t key = node_id(ax, ay, az) * 3 + static_cast<uint64_t>(axis);
        const auto it = edge_vertex.find(key);
        if (it != edge_vertex.end()) return it->second;

        const double f0 = field.at(ax, ay, az);
        const double f1 = field.at(ox, oy, oz);
        double t = (iso - f0) / (f1 - f0);
        t = std::clamp(t, kTClampLo, kTClampHi);
        const Eigen::Vector3d p0 = frame.voxel_center(ax, ay, az);
        const Eigen::Vector3d p1 = frame.voxel_center(ox, oy, oz);
        const int idx = static_cast<int>(mesh.vertices.size());
        mesh.vertices.push_back(p0 + t * (p1 - p0));
        edge_vertex.emplace(key, idx);
        return idx;
    };

    for (int z = 0; z + 1 < nz; ++z) {
        for (int y = 0; y + 1 < ny; ++y) {
            for (int x = 0; x + 1 < nx; ++x) {
                int code = 0;
                for (int i = 0; i < 8; ++i) {
                    const double v = field.at(x + kCorner[i][0], y + kCorner[i][1],
                                              z + kCorner[i][2]);
                    if (v < iso) code |= 1 << i;
                }
                if (detail::kMcEdgeTable[code] == 0) continue;
                int edge_ids[12];
                for (int e = 0; e < 12; ++e) {
                    if (detail::kMcEdgeTable[code] & (1 << e))
                        edge_ids[e] = vertex_on_edge(x, y, z, e);
                }
                const int* row = detail::kMcTriTable[code];
                for (int k = 0; row[k] != -1; k += 3) {
                    // Table order already winds faces outward (normals toward
                    // lower values) under the inside = value >= iso rule.
                    mesh.faces.push_back(
                        {edge_ids[row[k]], edge_ids[row[k + 1]], edge_ids[row[k + 2]]});
                }
            }
        }
    }
    return mesh;
}

ScalarGrid indicator_field(const VoxelGrid& solid, int pad) {
    if (pad < 0) throw InvalidInputError("indicator_field: pad must be >= 0");
    const GridFrame& f = solid.frame();
    const double h = f.voxel_size;
    const GridFrame grown = GridFrame::make(
        f.dims + Eigen::Vector3i::Constant(2 * pad),
        h, f.min_corner() - Eigen::Vector3d::Constant(pad * h));
    ScalarGrid out(grown, 0.0f);
    for (int z = 0; z < f.dims.z(); ++z)
        for (int y = 0; y < f.dims.y(); ++y)
            for (int x = 0; x < f.dims.x(); ++x)
                if (solid.test(x, y, z)) out.set(x + pad, y + pad, z + pad, 1.0f);
    return out;
}

ScalarGrid pad_field(const ScalarGrid& field, float boundary, int pad) {
    if (pad < 0) throw InvalidInputError("pad_field: pad must be >= 0");
    const GridFrame& f = field.frame();
    const double h = f.voxel_size;
    const GridFrame grown = GridFrame::make(
        f.dims + Eigen::Vector3i::Constant(2 * pad),
        h, f.min_corner() - Eigen::Vector3d::Constant(pad * h));
    ScalarGrid out(grown, boundary);
    for (int z = 0; z < f.dims.z(); ++z)
        for (int y = 0; y < f.dims.y(); ++y)
            for (int x = 0; x < f.dims.x(); ++x)
                out.set(x + pad, y + pad, z + pad, field.at(x, y, z));
    return out;
}

}  // namespace vtg
