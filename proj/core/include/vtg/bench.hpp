#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "vtg/checkpoint.hpp"
#include "vtg/complete.hpp"
#include "vtg/dataset.hpp"
#include "vtg/gpis.hpp"

namespace vtg {

// Everything a completion method may consume for one sample, precomputed so
// timings cover only the completion call itself.
struct BenchmarkSample {
    SampleRef ref;
    ObservationTriplet grids;    // at the dataset (network) resolution
    PointCloud depth_cloud;      // rendered camera cloud
    PointCloud tactile_cloud;    // contact points (same probes as grids.tactile)
    TriMesh gt_mesh;             // posed ground-truth mesh
    GridFrame eval_frame;        // evaluation-resolution frame, same cube
    VoxelGrid gt_eval;           // ground truth voxelized on eval_frame
    Eigen::Vector3d camera_origin = Eigen::Vector3d::Zero();
};

// Rebuilds the sample's mesh and observations from the manifest entry.
// `eval_resolution` is the metric grid (80 by default).
BenchmarkSample make_benchmark_sample(const DatasetIndex& index, const SampleRef& ref,
                                      int eval_resolution = 80);

struct MethodSpec {
    std::string name;
    std::function<TriMesh(const BenchmarkSample&)> run;
};

// Individual completion methods. The gpis method derives a per-sample
// downsampling seed from the sample's tactile seed; the cnn method runs the
// checkpoint in its recorded training mode under the given record name.
MethodSpec partial_method();
MethodSpec hull_method();
MethodSpec gpis_method(const GpisConfig& cfg);
MethodSpec cnn_method(const std::string& name, const Checkpoint& ckpt);

// The five completion methods of the evaluation: partial, hull, gpis,
// cnn-depth (depth-only network), cnn-tactile (tactile+depth network).
std::vector<MethodSpec> standard_methods(const Checkpoint& cnn_depth,
                                         const Checkpoint& cnn_tactile,
                                         const GpisConfig& gpis_cfg);

struct EvalRecord {
    std::string method;
    std::string split;
    std::string mesh_id;
    std::string view_id;
    bool failed = false;
    std::string error;
    double jaccard = 0.0;        // at the evaluation resolution
    double hausdorff_mm = 0.0;   // symmetric mean
    double seconds = 0.0;        // completion call only, median of timing runs
};

// Runs every (sample, method) pair: completion, Jaccard against the
// evaluation-resolution ground truth, symmetric Hausdorff against the
// ground-truth mesh, and a median-of-`timing_runs` wall-clock timing of the
// completion call. Failures are recorded, not thrown. Records stream to
// `jsonl` as they finish when given. Deterministic apart from `seconds`.
std::vector<EvalRecord> run_benchmark(const DatasetIndex& index,
                                      const std::vector<SampleRef>& samples,
                                      const std::vector<MethodSpec>& methods,
                                      int eval_resolution = 80, int timing_runs = 3,
                                      std::ostream* jsonl = nullptr,
                                      int hausdorff_samples = 10000);

struct AggregateRow {
    std::string method;
    std::string split;
    int count = 0;     // successful records
    int failures = 0;
    double mean_jaccard = 0.0;
    double mean_hausdorff_mm = 0.0;
    double mean_seconds = 0.0;
};

// Mean metrics per (method, split), methods in first-seen order, splits in
// train_view / holdout_view / holdout_mesh order. Failed records are
// excluded from means and counted.
std::vector<AggregateRow> aggregate_records(const std::vector<EvalRecord>& records);

struct DeltaRow {
    std::string split;
    double mean_a = 0.0;  // first method (tactile+depth network)
    double mean_b = 0.0;  // second method (depth-only network)
    double delta = 0.0;   // mean_a - mean_b
};

// Per-split mean-Jaccard difference between two methods, split order
// train_view -> holdout_view -> holdout_mesh. Throws when either method has
// no successful records.
std::vector<DeltaRow> delta_report(const std::vector<EvalRecord>& records,
                                   const std::string& method_a = "cnn-tactile",
                                   const std::string& method_b = "cnn-depth");

// JSON-lines record IO and CSV tables.
void write_record_jsonl(std::ostream& os, const EvalRecord& record);
std::vector<EvalRecord> read_records_jsonl(const std::string& path);
void write_aggregate_csv(std::ostream& os, const std::vector<AggregateRow>& rows);
// method x split matrix of one metric ("jaccard", "hausdorff_mm", "seconds").
void write_metric_table_csv(std::ostream& os, const std::vector<EvalRecord>& records,
                            const std::string& metric);
void write_delta_csv(std::ostream& os, const std::vector<DeltaRow>& rows);

}  // namespace vtg
