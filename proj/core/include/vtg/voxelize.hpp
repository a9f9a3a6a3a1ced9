#pragma once

#include "vtg/grid.hpp"
#include "vtg/mesh.hpp"
#include "vtg/pointcloud.hpp"

namespace vtg {

struct PointVoxelization {
    VoxelGrid grid;
    std::size_t dropped = 0;  // points outside the frame, silently skipped
};

// Occupied iff at least one point maps into the voxel. Out-of-range points
// are dropped and counted; non-finite coordinates are rejected.
PointVoxelization voxelize_points(const PointCloud& cloud, const GridFrame& frame);

enum class FillMode {
    auto_solid,    // solid fill for watertight meshes, surface only otherwise
    surface_only,  // never fill
    force_solid,   // fill regardless of the watertight check
};

struct MeshVoxelization {
    VoxelGrid grid;
    bool watertight = false;    // result of the directed-edge check
    bool surface_only = false;  // set when the interior fill was skipped
};

// Occupied iff the solid bounded by the mesh overlaps the voxel cell with
// positive volume: surface voxels via triangle/box overlap (cells shrunk by
// a relative epsilon so touching at a face does not count), interior voxels
// via parity ray casting through voxel centers along +z.
MeshVoxelization voxelize_mesh(const TriMesh& mesh, const GridFrame& frame,
                               FillMode mode = FillMode::auto_solid);

// Voxelization at the evaluation resolution (80^3 frames by default in the
// benchmark). Completions that are not watertight still get the interior
// fill; `watertight` reports the check for callers that want to warn.
VoxelGrid mesh_to_eval_grid(const TriMesh& mesh, const GridFrame& frame,
                            bool* watertight = nullptr);

// Exact triangle / axis-aligned-box overlap test (separating axes).
bool triangle_box_overlap(const Eigen::Vector3d& center, const Eigen::Vector3d& half,
                          const Eigen::Vector3d& a, const Eigen::Vector3d& b,
                          const Eigen::Vector3d& c);

}  // namespace vtg
