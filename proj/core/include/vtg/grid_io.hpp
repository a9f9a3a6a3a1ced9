#pragma once

#include <filesystem>

#include "vtg/grid.hpp"

namespace vtg {

// Binary grid files. Layout (all little-endian):
//   magic "VTGR" | u32 version | u32 dims x,y,z | f32 voxel_size | f32 origin x,y,z | payload
// version 1 (.vtg): payload = ceil(x*y*z/8) occupancy bytes, x-fastest,
//                   LSB-first within each byte.
// version 2 (.vtf): payload = x*y*z f32 values, same order.

void write_grid(const std::filesystem::path& path, const VoxelGrid& grid);
VoxelGrid read_grid(const std::filesystem::path& path);

void write_field(const std::filesystem::path& path, const ScalarGrid& field);
ScalarGrid read_field(const std::filesystem::path& path);

}  // namespace vtg
