#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vtg/camera.hpp"
#include "vtg/shapes.hpp"
#include "vtg/triplet.hpp"

namespace vtg {

// Procedural two-shape dataset: `num_meshes` seeded shape pairs, the first
// `train_meshes` of them training meshes, the rest a held-out mesh split.
// Each mesh is observed from `views_per_mesh` poses; on training meshes the
// last `holdout_views_per_mesh` poses form the held-out view split.
struct DatasetConfig {
    std::string out_dir;
    int num_meshes = 40;
    int train_meshes = 30;
    int views_per_mesh = 8;
    int holdout_views_per_mesh = 1;
    int resolution = 20;  // voxels per axis of every grid
    int npts = 40;        // tactile probes per sample
    uint64_t seed = 1;
    double object_distance = 0.8;  // meters in front of the camera
    bool canonical_views_only = false;  // identity pose for every view
    CameraModel camera = CameraModel::desk_default();

    void require_valid() const;
};

// One generated sample; everything needed to reload its grids or to rebuild
// its mesh deterministically.
struct SampleRef {
    std::string mesh_id;  // "m012"
    std::string view_id;  // "v03"
    int mesh_index = 0;
    int view_index = 0;
    SplitTag split = SplitTag::train_view;
    ShapePairSpec spec;
    bool canonical = false;  // identity pose instead of the structured one
    uint64_t tactile_seed = 0;
    GridFrame frame;
    std::string depth_path, tactile_path, gt_path;  // relative to the manifest dir
};

struct DatasetIndex {
    std::string root;  // directory containing the manifest
    DatasetConfig config;
    std::vector<SampleRef> samples;

    std::vector<SampleRef> split(SplitTag tag) const;
};

// Object pose for a view: a structured azimuth/elevation rotation about the
// mesh's bounding-box center followed by translation onto the camera axis.
RigidTransform view_transform(const TriMesh& mesh, int view_index, int views_per_mesh,
                              bool canonical, double object_distance);

// Rebuilds the posed ground-truth mesh for a sample.
TriMesh mesh_for_sample(const SampleRef& ref, const DatasetConfig& cfg);

// Generates every sample, writes grids + manifest.json under cfg.out_dir,
// and returns the index.
DatasetIndex generate_dataset(const DatasetConfig& cfg);

// Reads a manifest written by generate_dataset.
DatasetIndex load_dataset(const std::string& manifest_path);

// Loads the three grids of one sample.
ObservationTriplet load_triplet(const DatasetIndex& index, const SampleRef& ref);

}  // namespace vtg
