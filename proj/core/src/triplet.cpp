#include "vtg/triplet.hpp"

#include "vtg/error.hpp"
#include "vtg/render.hpp"
#include "vtg/voxelize.hpp"

namespace vtg {

const char* to_string(SplitTag tag) {
    switch (tag) {
        case SplitTag::train_view: return "train_view";
        case SplitTag::holdout_view: return "holdout_view";
        case SplitTag::holdout_mesh: return "holdout_mesh";
    }
    throw InvalidInputError("to_string: unknown split tag");
}

SplitTag split_from_string(const std::string& name) {
    if (name == "train_view") return SplitTag::train_view;
    if (name == "holdout_view") return SplitTag::holdout_view;
    if (name == "holdout_mesh") return SplitTag::holdout_mesh;
    throw InvalidInputError("unknown split tag: " + name);
}

GridFrame frame_for_mesh(const TriMesh& mesh, int n, double padding) {
    if (mesh.empty()) throw InvalidInputError("frame_for_mesh: empty mesh");
    if (n <= 0) throw InvalidInputError("frame_for_mesh: n must be positive");
    if (!(padding > 0.0) || !std::isfinite(padding))
        throw InvalidInputError("frame_for_mesh: padding must be positive");
    const Eigen::AlignedBox3d box = mesh.bounds();
    const double edge = padding * box.sizes().maxCoeff();
    if (!(edge > 0.0))
        throw DegenerateInputError("frame_for_mesh: mesh has zero extent");
    return GridFrame::cube(n, edge, box.center());
}

ObservationTriplet make_triplet(const TriMesh& mesh, const CameraModel& cam,
                                const TactileSampleConfig& cfg, const GridFrame& frame) {
    ObservationTriplet out;
    const PointCloud depth_cloud = render_depth(mesh, cam);
    out.depth = voxelize_points(depth_cloud, frame).grid;
    out.ground_truth = voxelize_mesh(mesh, frame).grid;
    out.tactile = voxelize_points(sample_tactile(out.ground_truth, cfg), frame).grid;
    out.meta.seed = cfg.seed;
    return out;
}

}  // namespace vtg
