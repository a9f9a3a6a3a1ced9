#include "vtg/voxelize.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "vtg/error.hpp"

namespace vtg {

PointVoxelization voxelize_points(const PointCloud& cloud, const GridFrame& frame) {
    frame.require_valid();
    PointVoxelization out{VoxelGrid(frame), 0};
    for (const auto& p : cloud.points) {
        if (!p.allFinite()) throw InvalidInputError("voxelize_points: non-finite point");
        const Eigen::Vector3i v = frame.point_to_voxel(p);
        if (!frame.contains(v.x(), v.y(), v.z())) {
            ++out.dropped;
            continue;
        }
        out.grid.set(v.x(), v.y(), v.z());
    }
    return out;
}

namespace {

bool axis_separates(const Eigen::Vector3d& axis, const Eigen::Vector3d& v0,
                    const Eigen::Vector3d& v1, const Eigen::Vector3d& v2,
                    const Eigen::Vector3d& half) {
    const double p0 = axis.dot(v0);
    const double p1 = axis.dot(v1);
    const double p2 = axis.dot(v2);
    const double r = half.x() * std::abs(axis.x()) + half.y() * std::abs(axis.y()) +
                     half.z() * std::abs(axis.z());
    const double mn = std::min({p0, p1, p2});
    const double mx = std::max({p0, p1, p2});
    return mn > r || mx < -r;
}

}  // namespace

bool triangle_box_overlap(const Eigen::Vector3d& center, const Eigen::Vector3d& half,
                          const Eigen::Vector3d& a, const Eigen::Vector3d& b,
                          const Eigen::Vector3d& c) {
    // Akenine-Möller separating-axis test: 3 box axes, the triangle normal,
    // and the 9 edge cross products.
    const Eigen::Vector3d v0 = a - center;
    const Eigen::Vector3d v1 = b - center;
    const Eigen::Vector3d v2 = c - center;

    for (int k = 0; k < 3; ++k) {
        const double mn = std::min({v0[k], v1[k], v2[k]});
        const double mx = std::max({v0[k], v1[k], v2[k]});
        if (mn > half[k] || mx < -half[k]) return false;
    }

    const Eigen::Vector3d e0 = v1 - v0;
    const Eigen::Vector3d e1 = v2 - v1;
    const Eigen::Vector3d e2 = v0 - v2;

    const Eigen::Vector3d normal = e0.cross(e1);
    if (axis_separates(normal, v0, v1, v2, half)) return false;

    static const Eigen::Vector3d kAxes[3] = {Eigen::Vector3d::UnitX(), Eigen::Vector3d::UnitY(),
                                             Eigen::Vector3d::UnitZ()};
    for (const auto& e : {e0, e1, e2}) {
        for (const auto& u : kAxes) {
            const Eigen::Vector3d axis = u.cross(e);
            if (axis.squaredNorm() < 1e-30) continue;
            if (axis_separates(axis, v0, v1, v2, half)) return false;
        }
    }
    return true;
}

namespace {

// 2D edge function in the xy plane, evaluated in a canonical vertex order so
// the two triangles sharing an edge compute bit-identical values. Returns
// > 0 left of a->b, < 0 right, 0 on the line.
double edge_function(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                     const Eigen::Vector2d& p) {
    const bool swap = (b.x() < a.x()) || (b.x() == a.x() && b.y() < a.y());
    const Eigen::Vector2d& lo = swap ? b : a;
    const Eigen::Vector2d& hi = swap ? a : b;
    const double e = (hi.x() - lo.x()) * (p.y() - lo.y()) - (hi.y() - lo.y()) * (p.x() - lo.x());
    return swap ? -e : e;
}

// Boundary tie rule for parity counting: of the two triangles sharing an
// edge, exactly one accepts a point on that edge. For counterclockwise
// triangles this accepts "top" and "left" edges.
bool edge_accepts_boundary(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
    const double dy = b.y() - a.y();
    const double dx = b.x() - a.x();
    return dy > 0.0 || (dy == 0.0 && dx < 0.0);
}

struct ColumnCrossing {
    double z;
};

// Fill voxels whose center lies inside the mesh: for each (x,y) column, cast
// a +z ray through the voxel centers and count surface crossings above each
// center. Triangles are rasterized in 2D with a top-left style tie rule so
// shared edges are counted exactly once.
void parity_fill(const TriMesh& mesh, const GridFrame& frame, VoxelGrid& grid) {
    const int nx = frame.dims.x();
    const int ny = frame.dims.y();
    const int nz = frame.dims.z();
    const double h = frame.voxel_size;
    const Eigen::Vector3d org = frame.min_corner();

    // Bin triangles by the columns their xy bounding box touches.
    std::vector<std::vector<int>> bins(static_cast<std::size_t>(nx) * ny);
    for (int t = 0; t < static_cast<int>(mesh.faces.size()); ++t) {
        const auto& f = mesh.faces[t];
        const auto& a = mesh.vertices[f[0]];
        const auto& b = mesh.vertices[f[1]];
        const auto& c = mesh.vertices[f[2]];
        const double min_x = std::min({a.x(), b.x(), c.x()});
        const double max_x = std::max({a.x(), b.x(), c.x()});
        const double min_y = std::min({a.y(), b.y(), c.y()});
        const double max_y = std::max({a.y(), b.y(), c.y()});
        // Column centers are at org + (i+0.5)h, so the touched index range is
        // derived from center coordinates.
        int x0 = static_cast<int>(std::floor((min_x - org.x()) / h - 0.5));
        int x1 = static_cast<int>(std::ceil((max_x - org.x()) / h - 0.5));
        int y0 = static_cast<int>(std::floor((min_y - org.y()) / h - 0.5));
        int y1 = static_cast<int>(std::ceil((max_y - org.y()) / h - 0.5));
        x0 = std::max(x0, 0);
        y0 = std::max(y0, 0);
        x1 = std::min(x1, nx - 1);
        y1 = std::min(y1, ny - 1);
        for (int y = y0; y <= y1; ++y)
            for (int x = x0; x <= x1; ++x)
                bins[static_cast<std::size_t>(y) * nx + x].push_back(t);
    }

    std::vector<double> crossings;
    for (int y = 0; y < ny; ++y) {
        for (int x = 0; x < nx; ++x) {
            const auto& bin = bins[static_cast<std::size_t>(y) * nx + x];
            if (bin.empty()) continue;
            const Eigen::Vector2d col(org.x() + (x + 0.5) * h, org.y() + (y + 0.5) * h);
            crossings.clear();
            for (int t : bin) {
                const auto& f = mesh.faces[t];
                Eigen::Vector3d a = mesh.vertices[f[0]];
                Eigen::Vector3d b = mesh.vertices[f[1]];
                Eigen::Vector3d c = mesh.vertices[f[2]];
                Eigen::Vector2d a2(a.x(), a.y()), b2(b.x(), b.y()), c2(c.x(), c.y());
                const double area2 =
                    (b2.x() - a2.x()) * (c2.y() - a2.y()) - (b2.y() - a2.y()) * (c2.x() - a2.x());
                if (area2 == 0.0) continue;  // projects to a segment: no transversal crossing
                if (area2 < 0.0) {
                    std::swap(b, c);
                    std::swap(b2, c2);
                }
                bool inside = true;
                const Eigen::Vector2d* e2[3][2] = {{&a2, &b2}, {&b2, &c2}, {&c2, &a2}};
                for (auto& e : e2) {
                    const double val = edge_function(*e[0], *e[1], col);
                    if (val < 0.0 || (val == 0.0 && !edge_accepts_boundary(*e[0], *e[1]))) {
                        inside = false;
                        break;
                    }
                }
                if (!inside) continue;
                // Interpolate z on the triangle plane at the column position.
                const Eigen::Vector3d n = (b - a).cross(c - a);
                if (n.z() == 0.0) continue;
                const double z =
                    a.z() - (n.x() * (col.x() - a.x()) + n.y() * (col.y() - a.y())) / n.z();
                crossings.push_back(z);
            }
            if (crossings.empty()) continue;
            std::sort(crossings.begin(), crossings.end());
            // Voxel center is inside iff an odd number of crossings lies
            // strictly above it. Centers exactly on the surface belong to
            // voxels the surface pass already marked.
            std::size_t k = crossings.size();  // crossings at or below the current center
            for (int z = nz - 1; z >= 0; --z) {
                const double cz = org.z() + (z + 0.5) * h;
                while (k > 0 && crossings[k - 1] > cz) --k;
                const std::size_t above = crossings.size() - k;
                if (above & 1u) grid.set(x, y, z);
            }
        }
    }
}

}  // namespace

MeshVoxelization voxelize_mesh(const TriMesh& mesh, const GridFrame& frame, FillMode mode) {
    frame.require_valid();
    MeshVoxelization out{VoxelGrid(frame), false, false};
    if (mesh.faces.empty()) return out;
    for (const auto& v : mesh.vertices) {
        if (!v.allFinite()) throw InvalidInputError("voxelize_mesh: non-finite vertex");
    }
    out.watertight = is_watertight(mesh);

    const int nx = frame.dims.x();
    const int ny = frame.dims.y();
    const int nz = frame.dims.z();
    const double h = frame.voxel_size;
    const Eigen::Vector3d org = frame.min_corner();
    // Cells are shrunk symmetrically so a triangle lying exactly on a cell
    // boundary plane marks only the cell whose interior it bounds.
    const double eps = 1e-7 * h;
    const Eigen::Vector3d half = Eigen::Vector3d::Constant(0.5 * h - eps);

    for (const auto& f : mesh.faces) {
        const auto& a = mesh.vertices[f[0]];
        const auto& b = mesh.vertices[f[1]];
        const auto& c = mesh.vertices[f[2]];
        Eigen::Vector3d lo = a.cwiseMin(b).cwiseMin(c);
        Eigen::Vector3d hi = a.cwiseMax(b).cwiseMax(c);
        int x0 = std::max(static_cast<int>(std::floor((lo.x() - org.x()) / h)), 0);
        int y0 = std::max(static_cast<int>(std::floor((lo.y() - org.y()) / h)), 0);
        int z0 = std::max(static_cast<int>(std::floor((lo.z() - org.z()) / h)), 0);
        int x1 = std::min(static_cast<int>(std::floor((hi.x() - org.x()) / h)), nx - 1);
        int y1 = std::min(static_cast<int>(std::floor((hi.y() - org.y()) / h)), ny - 1);
        int z1 = std::min(static_cast<int>(std::floor((hi.z() - org.z()) / h)), nz - 1);
        for (int z = z0; z <= z1; ++z) {
            for (int y = y0; y <= y1; ++y) {
                for (int x = x0; x <= x1; ++x) {
                    if (out.grid.test(x, y, z)) continue;
                    const Eigen::Vector3d center =
                        org + h * Eigen::Vector3d(x + 0.5, y + 0.5, z + 0.5);
                    if (triangle_box_overlap(center, half, a, b, c)) out.grid.set(x, y, z);
                }
            }
        }
    }

    const bool fill = mode == FillMode::force_solid ||
                      (mode == FillMode::auto_solid && out.watertight);
    if (fill)
        parity_fill(mesh, frame, out.grid);
    else
        out.surface_only = true;
    return out;
}

VoxelGrid mesh_to_eval_grid(const TriMesh& mesh, const GridFrame& frame, bool* watertight) {
    MeshVoxelization vox = voxelize_mesh(mesh, frame, FillMode::force_solid);
    if (watertight) *watertight = vox.watertight;
    return std::move(vox.grid);
}

}  // namespace vtg
