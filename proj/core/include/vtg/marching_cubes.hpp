#pragma once

#include "vtg/grid.hpp"
#include "vtg/mesh.hpp"

namespace vtg {

// Standard 256-case marching cubes with linear edge interpolation. Lattice
// nodes sit at voxel centers; a node is inside when value >= iso. Vertices
// are welded per lattice edge, so closed level sets come out as watertight
// meshes with outward orientation (normals point toward lower values).
//
// The surface is clipped at the lattice boundary: fields whose level set
// touches the boundary produce open meshes. Pad first (indicator_field /
// pad_field) when a closed result is required.
TriMesh marching_cubes(const ScalarGrid& field, double iso);

// 0/1 field of a voxel solid, padded by `pad` empty voxels per side so the
// level set closes around solids touching the grid boundary.
ScalarGrid indicator_field(const VoxelGrid& solid, int pad = 1);

// Grow a field by `pad` voxels per side, filling new cells with `boundary`.
ScalarGrid pad_field(const ScalarGrid& field, float boundary, int pad = 1);

}  // namespace vtg
