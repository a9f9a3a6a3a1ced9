#pragma once

#include "vtg/grid.hpp"

namespace vtg {

// Voxelwise union of two occupancy grids sharing one frame.
VoxelGrid merge_grids(const VoxelGrid& depth, const VoxelGrid& tactile);

// Intersection over union of the occupied sets. Both-empty pairs compare as
// identical and return 1.0.
double jaccard(const VoxelGrid& a, const VoxelGrid& b);

// Occupied iff value >= threshold.
VoxelGrid binarize(const ScalarGrid& pred, double threshold = 0.5);

// True iff every occupied voxel of `inner` is occupied in `outer`.
bool is_subset(const VoxelGrid& inner, const VoxelGrid& outer);

}  // namespace vtg
