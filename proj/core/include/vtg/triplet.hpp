#pragma once

#include <cstdint>
#include <string>

#include "vtg/camera.hpp"
#include "vtg/grid.hpp"
#include "vtg/mesh.hpp"
#include "vtg/tactile.hpp"

namespace vtg {

// Which bucket a sample belongs to when splitting generated data.
enum class SplitTag { train_view, holdout_view, holdout_mesh };

const char* to_string(SplitTag tag);
SplitTag split_from_string(const std::string& name);

struct TripletMeta {
    std::string mesh_id;
    std::string view_id;
    uint64_t seed = 0;  // tactile sampling seed
    SplitTag split = SplitTag::train_view;
};

// One aligned observation: what the camera saw, what the probe touched, and
// the full solid, all on a single shared frame.
struct ObservationTriplet {
    VoxelGrid depth;
    VoxelGrid tactile;
    VoxelGrid ground_truth;
    TripletMeta meta;
};

// Cubic frame enclosing the mesh: centered on the bounding-box center with
// edge length = padding x the largest bounding-box extent, n voxels per axis.
GridFrame frame_for_mesh(const TriMesh& mesh, int n, double padding = 1.1);

// Renders a depth cloud, voxelizes the solid, and probes the solid grid
// top-down; all three grids share `frame`. Points falling outside the frame
// are dropped silently (the frame is sized to the object, not the scene).
ObservationTriplet make_triplet(const TriMesh& mesh, const CameraModel& cam,
                                const TactileSampleConfig& cfg, const GridFrame& frame);

}  // namespace vtg
