#include "vtg/dataset.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>

#include <json.hpp>

#include "vtg/error.hpp"
#include "vtg/grid_io.hpp"
#include "vtg/rng.hpp"

namespace vtg {

namespace fs = std::filesystem;
using nlohmann::json;

void DatasetConfig::require_valid() const {
    if (out_dir.empty()) throw InvalidInputError("DatasetConfig: out_dir is empty");
    if (num_meshes < 1) throw InvalidInputError("DatasetConfig: num_meshes >= 1");
    if (train_meshes < 0 || train_meshes > num_meshes)
        throw InvalidInputError("DatasetConfig: train_meshes must lie in [0, num_meshes]");
    if (views_per_mesh < 1) throw InvalidInputError("DatasetConfig: views_per_mesh >= 1");
    if (holdout_views_per_mesh < 0 || holdout_views_per_mesh >= views_per_mesh)
        throw InvalidInputError(
            "DatasetConfig: holdout_views_per_mesh must lie in [0, views_per_mesh)");
    if (resolution < 4) throw InvalidInputError("DatasetConfig: resolution >= 4");
    if (npts < 1) throw InvalidInputError("DatasetConfig: npts >= 1");
    if (!(object_distance > 0.0) || !std::isfinite(object_distance))
        throw InvalidInputError("DatasetConfig: object_distance must be positive");
    camera.require_valid();
}

namespace {

std::string mesh_id_string(int i) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "m%03d", i);
    return buf;
}

std::string view_id_string(int v) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "v%02d", v);
    return buf;
}

ShapePairSpec spec_for_mesh(uint64_t dataset_seed, int mesh_index) {
    const uint64_t seed = derive_seed(dataset_seed, static_cast<uint64_t>(mesh_index), 0);
    Rng rng(seed);
    constexpr Primitive kAll[4] = {Primitive::box, Primitive::cylinder, Primitive::sphere,
                                   Primitive::wedge};
    ShapePairSpec spec;
    spec.front = kAll[rng.uniform_int(4)];
    spec.back = kAll[rng.uniform_int(4)];
    spec.half_x = rng.uniform_double(0.04, 0.07);
    spec.half_y = rng.uniform_double(0.04, 0.07);
    spec.front_depth = rng.uniform_double(0.03, 0.07);
    spec.back_depth = rng.uniform_double(0.03, 0.07);
    spec.seed = seed;
    return spec;
}

json frame_to_json(const GridFrame& f) {
    return json{{"dims", {f.dims.x(), f.dims.y(), f.dims.z()}},
                {"voxel_size", static_cast<double>(f.voxel_size)},
                {"origin",
                 {static_cast<double>(f.origin.x()), static_cast<double>(f.origin.y()),
                  static_cast<double>(f.origin.z())}}};
}

GridFrame frame_from_json(const json& j) {
    const auto& d = j.at("dims");
    const auto& o = j.at("origin");
    return GridFrame::make({d.at(0).get<int>(), d.at(1).get<int>(), d.at(2).get<int>()},
                           j.at("voxel_size").get<double>(),
                           {o.at(0).get<double>(), o.at(1).get<double>(),
                            o.at(2).get<double>()});
}

json camera_to_json(const CameraModel& c) {
    json pose;
    for (int r = 0; r < 3; ++r)
        for (int col = 0; col < 3; ++col) pose["r"].push_back(c.pose.R(r, col));
    for (int r = 0; r < 3; ++r) pose["t"].push_back(c.pose.t(r));
    return json{{"width", c.width},   {"height", c.height}, {"fx", c.fx},
                {"fy", c.fy},         {"cx", c.cx},         {"cy", c.cy},
                {"z_near", c.z_near}, {"z_far", c.z_far},   {"pose", pose}};
}

CameraModel camera_from_json(const json& j) {
    CameraModel c;
    c.width = j.at("width").get<int>();
    c.height = j.at("height").get<int>();
    c.fx = j.at("fx").get<double>();
    c.fy = j.at("fy").get<double>();
    c.cx = j.at("cx").get<double>();
    c.cy = j.at("cy").get<double>();
    c.z_near = j.at("z_near").get<double>();
    c.z_far = j.at("z_far").get<double>();
    const auto& pose = j.at("pose");
    for (int r = 0; r < 3; ++r)
        for (int col = 0; col < 3; ++col)
            c.pose.R(r, col) = pose.at("r").at(3 * r + col).get<double>();
    for (int r = 0; r < 3; ++r) c.pose.t(r) = pose.at("t").at(r).get<double>();
    return c;
}

json spec_to_json(const ShapePairSpec& s) {
    return json{{"front", to_string(s.front)},
                {"back", to_string(s.back)},
                {"half_x", s.half_x},
                {"half_y", s.half_y},
                {"front_depth", s.front_depth},
                {"back_depth", s.back_depth},
                {"cells", s.cells},
                {"seed", s.seed}};
}

ShapePairSpec spec_from_json(const json& j) {
    ShapePairSpec s;
    s.front = primitive_from_string(j.at("front").get<std::string>());
    s.back = primitive_from_string(j.at("back").get<std::string>());
    s.half_x = j.at("half_x").get<double>();
    s.half_y = j.at("half_y").get<double>();
    s.front_depth = j.at("front_depth").get<double>();
    s.back_depth = j.at("back_depth").get<double>();
    s.cells = j.at("cells").get<int>();
    s.seed = j.at("seed").get<uint64_t>();
    return s;
}

}  // namespace

RigidTransform view_transform(const TriMesh& mesh, int view_index, int views_per_mesh,
                              bool canonical, double object_distance) {
    if (view_index < 0 || view_index >= views_per_mesh)
        throw InvalidInputError("view_transform: view_index out of range");
    const Eigen::Vector3d center = mesh.bounds().center();
    Eigen::Matrix3d r = Eigen::Matrix3d::Identity();
    if (!canonical) {
        const double azimuth = 2.0 * std::numbers::pi * view_index / views_per_mesh;
        const double elevation = (view_index % 2 == 0) ? -0.3 : 0.3;
        r = (Eigen::AngleAxisd(elevation, Eigen::Vector3d::UnitX()) *
             Eigen::AngleAxisd(azimuth, Eigen::Vector3d::UnitY()))
                .toRotationMatrix();
    }
    RigidTransform tf;
    tf.R = r;
    tf.t = Eigen::Vector3d(0.0, 0.0, object_distance) - r * center;
    return tf;
}

TriMesh mesh_for_sample(const SampleRef& ref, const DatasetConfig& cfg) {
    TriMesh mesh = gen_shape_pair(ref.spec);
    mesh.apply(view_transform(mesh, ref.view_index, cfg.views_per_mesh, ref.canonical,
                              cfg.object_distance));
    return mesh;
}

std::vector<SampleRef> DatasetIndex::split(SplitTag tag) const {
    std::vector<SampleRef> out;
    for (const auto& s : samples)
        if (s.split == tag) out.push_back(s);
    return out;
}

DatasetIndex generate_dataset(const DatasetConfig& cfg) {
    cfg.require_valid();
    DatasetIndex index;
    index.root = cfg.out_dir;
    index.config = cfg;

    for (SplitTag tag :
         {SplitTag::train_view, SplitTag::holdout_view, SplitTag::holdout_mesh})
        fs::create_directories(fs::path(cfg.out_dir) / to_string(tag));

    json samples_json = json::array();
    for (int i = 0; i < cfg.num_meshes; ++i) {
        const ShapePairSpec spec = spec_for_mesh(cfg.seed, i);
        const TriMesh base = gen_shape_pair(spec);
        for (int v = 0; v < cfg.views_per_mesh; ++v) {
            SampleRef ref;
            ref.mesh_id = mesh_id_string(i);
            ref.view_id = view_id_string(v);
            ref.mesh_index = i;
            ref.view_index = v;
            ref.spec = spec;
            ref.canonical = cfg.canonical_views_only;
            ref.tactile_seed =
                derive_seed(cfg.seed, static_cast<uint64_t>(i) * 1000 + v, 2);
            if (i >= cfg.train_meshes)
                ref.split = SplitTag::holdout_mesh;
            else if (v >= cfg.views_per_mesh - cfg.holdout_views_per_mesh)
                ref.split = SplitTag::holdout_view;
            else
                ref.split = SplitTag::train_view;

            TriMesh mesh = base;
            mesh.apply(view_transform(base, v, cfg.views_per_mesh, ref.canonical,
                                      cfg.object_distance));
            ref.frame = frame_for_mesh(mesh, cfg.resolution);

            ObservationTriplet triplet = make_triplet(
                mesh, cfg.camera,
                TactileSampleConfig{cfg.npts, ref.tactile_seed}, ref.frame);

            const std::string stem = ref.mesh_id + "_" + ref.view_id;
            const std::string dir = to_string(ref.split);
            ref.depth_path = dir + "/" + stem + "_depth.vtg";
            ref.tactile_path = dir + "/" + stem + "_tactile.vtg";
            ref.gt_path = dir + "/" + stem + "_gt.vtg";
            write_grid(cfg.out_dir + "/" + ref.depth_path, triplet.depth);
            write_grid(cfg.out_dir + "/" + ref.tactile_path, triplet.tactile);
            write_grid(cfg.out_dir + "/" + ref.gt_path, triplet.ground_truth);

            samples_json.push_back(json{{"mesh_id", ref.mesh_id},
                                        {"view_id", ref.view_id},
                                        {"mesh_index", ref.mesh_index},
                                        {"view_index", ref.view_index},
                                        {"split", to_string(ref.split)},
                                        {"canonical", ref.canonical},
                                        {"tactile_seed", ref.tactile_seed},
                                        {"spec", spec_to_json(ref.spec)},
                                        {"frame", frame_to_json(ref.frame)},
                                        {"files",
                                         {{"depth", ref.depth_path},
                                          {"tactile", ref.tactile_path},
                                          {"gt", ref.gt_path}}}});
            index.samples.push_back(std::move(ref));
        }
    }

    json manifest;
    manifest["version"] = 1;
    manifest["config"] = {{"num_meshes", cfg.num_meshes},
                          {"train_meshes", cfg.train_meshes},
                          {"views_per_mesh", cfg.views_per_mesh},
                          {"holdout_views_per_mesh", cfg.holdout_views_per_mesh},
                          {"resolution", cfg.resolution},
                          {"npts", cfg.npts},
                          {"seed", cfg.seed},
                          {"object_distance", cfg.object_distance},
                          {"canonical_views_only", cfg.canonical_views_only},
                          {"camera", camera_to_json(cfg.camera)}};
    manifest["samples"] = std::move(samples_json);
    std::ofstream os(fs::path(cfg.out_dir) / "manifest.json");
    if (!os) throw IoError("generate_dataset: cannot write manifest in " + cfg.out_dir);
    os << manifest.dump(2) << "\n";
    if (!os) throw IoError("generate_dataset: manifest write failed");
    return index;
}

DatasetIndex load_dataset(const std::string& manifest_path) {
    std::ifstream is(manifest_path);
    if (!is) throw IoError("load_dataset: cannot open " + manifest_path);
    json manifest;
    try {
        is >> manifest;
    } catch (const json::exception& e) {
        throw IoError(std::string("load_dataset: malformed manifest: ") + e.what());
    }

    DatasetIndex index;
    index.root = fs::path(manifest_path).parent_path().string();
    if (index.root.empty()) index.root = ".";
    try {
        const auto& c = manifest.at("config");
        index.config.out_dir = index.root;
        index.config.num_meshes = c.at("num_meshes").get<int>();
        index.config.train_meshes = c.at("train_meshes").get<int>();
        index.config.views_per_mesh = c.at("views_per_mesh").get<int>();
        index.config.holdout_views_per_mesh = c.at("holdout_views_per_mesh").get<int>();
        index.config.resolution = c.at("resolution").get<int>();
        index.config.npts = c.at("npts").get<int>();
        index.config.seed = c.at("seed").get<uint64_t>();
        index.config.object_distance = c.at("object_distance").get<double>();
        index.config.canonical_views_only = c.at("canonical_views_only").get<bool>();
        index.config.camera = camera_from_json(c.at("camera"));
        for (const auto& s : manifest.at("samples")) {
            SampleRef ref;
            ref.mesh_id = s.at("mesh_id").get<std::string>();
            ref.view_id = s.at("view_id").get<std::string>();
            ref.mesh_index = s.at("mesh_index").get<int>();
            ref.view_index = s.at("view_index").get<int>();
            ref.split = split_from_string(s.at("split").get<std::string>());
            ref.canonical = s.at("canonical").get<bool>();
            ref.tactile_seed = s.at("tactile_seed").get<uint64_t>();
            ref.spec = spec_from_json(s.at("spec"));
            ref.frame = frame_from_json(s.at("frame"));
            const auto& files = s.at("files");
            ref.depth_path = files.at("depth").get<std::string>();
            ref.tactile_path = files.at("tactile").get<std::string>();
            ref.gt_path = files.at("gt").get<std::string>();
            index.samples.push_back(std::move(ref));
        }
    } catch (const json::exception& e) {
        throw IoError(std::string("load_dataset: manifest missing fields: ") + e.what());
    }
    index.config.require_valid();
    return index;
}

ObservationTriplet load_triplet(const DatasetIndex& index, const SampleRef& ref) {
    ObservationTriplet t;
    t.depth = read_grid(index.root + "/" + ref.depth_path);
    t.tactile = read_grid(index.root + "/" + ref.tactile_path);
    t.ground_truth = read_grid(index.root + "/" + ref.gt_path);
    require_same_frame(t.depth.frame(), t.ground_truth.frame(), "load_triplet");
    require_same_frame(t.tactile.frame(), t.ground_truth.frame(), "load_triplet");
    t.meta.mesh_id = ref.mesh_id;
    t.meta.view_id = ref.view_id;
    t.meta.seed = ref.tactile_seed;
    t.meta.split = ref.split;
    return t;
}

}  // namespace vtg
