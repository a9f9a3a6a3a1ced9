#pragma once

#include <cstdint>

#include "vtg/grid.hpp"
#include "vtg/pointcloud.hpp"

namespace vtg {

// Guarded-probe sampling configuration: npts (x,y) columns are probed with
// the seeded generator.
struct TactileSampleConfig {
    int npts = 40;
    uint64_t seed = 0;
};

// Simulated guarded touches against a ground-truth occupancy grid: draws
// npts x coordinates, then npts y coordinates (two separate batches from the
// seeded stream), scans each column from z = dims.z-1 downward, and records
// the first occupied voxel before stopping that column — a probe halts on
// contact. Recorded voxels are deduplicated (first occurrence kept) and
// returned as voxel-center points. Empty columns contribute nothing.
PointCloud sample_tactile(const VoxelGrid& vox_gt, const TactileSampleConfig& cfg);

}  // namespace vtg
