#include "vtg/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <ostream>

#include <json.hpp>

#include "vtg/error.hpp"
#include "vtg/grid_ops.hpp"
#include "vtg/hausdorff.hpp"
#include "vtg/render.hpp"
#include "vtg/rng.hpp"
#include "vtg/tactile.hpp"
#include "vtg/voxelize.hpp"

namespace vtg {

namespace {

const char* kSplitOrder[3] = {"train_view", "holdout_view", "holdout_mesh"};

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

BenchmarkSample make_benchmark_sample(const DatasetIndex& index, const SampleRef& ref,
                                      int eval_resolution) {
    if (eval_resolution < 2)
        throw InvalidInputError("make_benchmark_sample: eval_resolution must be >= 2");
    ref.frame.require_valid();
    if (ref.frame.dims.x() != ref.frame.dims.y() || ref.frame.dims.x() != ref.frame.dims.z())
        throw InvalidInputError("make_benchmark_sample: sample frame must be cubic");

    BenchmarkSample s;
    s.ref = ref;
    s.grids = load_triplet(index, ref);
    s.gt_mesh = mesh_for_sample(ref, index.config);
    s.depth_cloud = render_depth(s.gt_mesh, index.config.camera);
    s.tactile_cloud = sample_tactile(s.grids.ground_truth,
                                     TactileSampleConfig{index.config.npts, ref.tactile_seed});

    // Same cube as the sample's grid frame, re-divided at the evaluation
    // resolution, so evaluation geometry depends only on the manifest.
    const double edge = static_cast<double>(ref.frame.voxel_size) * ref.frame.dims.x();
    const Eigen::Vector3d center =
        ref.frame.origin.cast<double>() + Eigen::Vector3d::Constant(edge / 2.0);
    s.eval_frame = GridFrame::cube(eval_resolution, edge, center);
    s.gt_eval = mesh_to_eval_grid(s.gt_mesh, s.eval_frame);
    s.camera_origin = index.config.camera.position();
    return s;
}

MethodSpec partial_method() {
    return {"partial", [](const BenchmarkSample& s) {
                return partial_completion(s.depth_cloud, s.tactile_cloud, s.eval_frame);
            }};
}

MethodSpec hull_method() {
    return {"hull", [](const BenchmarkSample& s) {
                return convex_hull_completion(s.depth_cloud, s.tactile_cloud);
            }};
}

MethodSpec gpis_method(const GpisConfig& cfg) {
    cfg.require_valid();
    return {"gpis", [cfg](const BenchmarkSample& s) {
                GpisConfig per_sample = cfg;
                per_sample.seed = derive_seed(s.ref.tactile_seed, 1, 1);
                return gpis_completion(s.depth_cloud, s.tactile_cloud, per_sample,
                                       s.camera_origin, s.eval_frame);
            }};
}

MethodSpec cnn_method(const std::string& name, const Checkpoint& ckpt) {
    const TrainMode mode = train_mode_from_string(ckpt.mode);
    return {name, [ckpt, mode](const BenchmarkSample& s) {
                return cnn_completion(ckpt.params, ckpt.net, s.grids.depth, s.grids.tactile,
                                      mode);
            }};
}

std::vector<MethodSpec> standard_methods(const Checkpoint& cnn_depth,
                                         const Checkpoint& cnn_tactile,
                                         const GpisConfig& gpis_cfg) {
    std::vector<MethodSpec> methods;
    methods.push_back(partial_method());
    methods.push_back(hull_method());
    methods.push_back(gpis_method(gpis_cfg));
    methods.push_back(cnn_method("cnn-depth", cnn_depth));
    methods.push_back(cnn_method("cnn-tactile", cnn_tactile));
    return methods;
}

std::vector<EvalRecord> run_benchmark(const DatasetIndex& index,
                                      const std::vector<SampleRef>& samples,
                                      const std::vector<MethodSpec>& methods,
                                      int eval_resolution, int timing_runs, std::ostream* jsonl,
                                      int hausdorff_samples) {
    if (timing_runs < 1) throw InvalidInputError("run_benchmark: timing_runs must be >= 1");
    if (hausdorff_samples < 1)
        throw InvalidInputError("run_benchmark: hausdorff_samples must be >= 1");

    std::vector<EvalRecord> records;
    records.reserve(samples.size() * methods.size());
    for (const SampleRef& ref : samples) {
        const BenchmarkSample sample = make_benchmark_sample(index, ref, eval_resolution);
        for (const MethodSpec& method : methods) {
            EvalRecord rec;
            rec.method = method.name;
            rec.split = to_string(ref.split);
            rec.mesh_id = ref.mesh_id;
            rec.view_id = ref.view_id;
            try {
                TriMesh mesh;
                std::vector<double> times(static_cast<std::size_t>(timing_runs));
                for (int r = 0; r < timing_runs; ++r) {
                    const auto t0 = std::chrono::steady_clock::now();
                    TriMesh out = method.run(sample);
                    const auto t1 = std::chrono::steady_clock::now();
                    times[static_cast<std::size_t>(r)] =
                        std::chrono::duration<double>(t1 - t0).count();
                    if (r == 0) mesh = std::move(out);
                }
                rec.seconds = median(std::move(times));
                rec.jaccard = jaccard(mesh_to_eval_grid(mesh, sample.eval_frame), sample.gt_eval);
                rec.hausdorff_mm = hausdorff(mesh, sample.gt_mesh, hausdorff_samples)
                                       .symmetric_mean;
            } catch (const std::exception& e) {
                rec.failed = true;
                rec.error = e.what();
                rec.jaccard = 0.0;
                rec.hausdorff_mm = 0.0;
                rec.seconds = 0.0;
            }
            if (jsonl) write_record_jsonl(*jsonl, rec);
            records.push_back(std::move(rec));
        }
    }
    return records;
}

std::vector<AggregateRow> aggregate_records(const std::vector<EvalRecord>& records) {
    std::vector<std::string> method_order;
    for (const EvalRecord& r : records)
        if (std::find(method_order.begin(), method_order.end(), r.method) == method_order.end())
            method_order.push_back(r.method);

    std::vector<AggregateRow> rows;
    for (const std::string& method : method_order) {
        for (const char* split : kSplitOrder) {
            AggregateRow row;
            row.method = method;
            row.split = split;
            bool seen = false;
            for (const EvalRecord& r : records) {
                if (r.method != method || r.split != split) continue;
                seen = true;
                if (r.failed) {
                    ++row.failures;
                    continue;
                }
                ++row.count;
                row.mean_jaccard += r.jaccard;
                row.mean_hausdorff_mm += r.hausdorff_mm;
                row.mean_seconds += r.seconds;
            }
            if (!seen) continue;
            if (row.count > 0) {
                row.mean_jaccard /= row.count;
                row.mean_hausdorff_mm /= row.count;
                row.mean_seconds /= row.count;
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::vector<DeltaRow> delta_report(const std::vector<EvalRecord>& records,
                                   const std::string& method_a, const std::string& method_b) {
    int total_a = 0, total_b = 0;
    for (const EvalRecord& r : records) {
        if (r.failed) continue;
        if (r.method == method_a) ++total_a;
        if (r.method == method_b) ++total_b;
    }
    if (total_a == 0)
        throw InvalidInputError("delta_report: no successful records for " + method_a);
    if (total_b == 0)
        throw InvalidInputError("delta_report: no successful records for " + method_b);

    std::vector<DeltaRow> rows;
    for (const char* split : kSplitOrder) {
        double sum_a = 0.0, sum_b = 0.0;
        int n_a = 0, n_b = 0;
        for (const EvalRecord& r : records) {
            if (r.failed || r.split != split) continue;
            if (r.method == method_a) {
                sum_a += r.jaccard;
                ++n_a;
            } else if (r.method == method_b) {
                sum_b += r.jaccard;
                ++n_b;
            }
        }
        if (n_a == 0 || n_b == 0) continue;
        DeltaRow row;
        row.split = split;
        row.mean_a = sum_a / n_a;
        row.mean_b = sum_b / n_b;
        row.delta = row.mean_a - row.mean_b;
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_record_jsonl(std::ostream& os, const EvalRecord& r) {
    nlohmann::json j{{"method", r.method},     {"split", r.split},
                     {"mesh_id", r.mesh_id},   {"view_id", r.view_id},
                     {"failed", r.failed},     {"error", r.error},
                     {"jaccard", r.jaccard},   {"hausdorff_mm", r.hausdorff_mm},
                     {"seconds", r.seconds}};
    os << j.dump() << '\n';
}

std::vector<EvalRecord> read_records_jsonl(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::vector<EvalRecord> records;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw IoError(path + ":" + std::to_string(line_no) + ": " + e.what());
        }
        EvalRecord r;
        r.method = j.value("method", std::string());
        r.split = j.value("split", std::string());
        r.mesh_id = j.value("mesh_id", std::string());
        r.view_id = j.value("view_id", std::string());
        r.failed = j.value("failed", false);
        r.error = j.value("error", std::string());
        r.jaccard = j.value("jaccard", 0.0);
        r.hausdorff_mm = j.value("hausdorff_mm", 0.0);
        r.seconds = j.value("seconds", 0.0);
        records.push_back(std::move(r));
    }
    return records;
}

void write_aggregate_csv(std::ostream& os, const std::vector<AggregateRow>& rows) {
    os << "method,split,count,failures,mean_jaccard,mean_hausdorff_mm,mean_seconds\n";
    char buf[160];
    for (const AggregateRow& row : rows) {
        std::snprintf(buf, sizeof(buf), "%d,%d,%.6f,%.6f,%.6f", row.count, row.failures,
                      row.mean_jaccard, row.mean_hausdorff_mm, row.mean_seconds);
        os << row.method << ',' << row.split << ',' << buf << '\n';
    }
}

void write_metric_table_csv(std::ostream& os, const std::vector<EvalRecord>& records,
                            const std::string& metric) {
    double EvalRecord::*field = nullptr;
    if (metric == "jaccard")
        field = &EvalRecord::jaccard;
    else if (metric == "hausdorff_mm")
        field = &EvalRecord::hausdorff_mm;
    else if (metric == "seconds")
        field = &EvalRecord::seconds;
    else
        throw InvalidInputError("write_metric_table_csv: unknown metric " + metric);

    std::vector<std::string> method_order;
    for (const EvalRecord& r : records)
        if (std::find(method_order.begin(), method_order.end(), r.method) == method_order.end())
            method_order.push_back(r.method);

    os << "method";
    for (const char* split : kSplitOrder) os << ',' << split;
    os << '\n';
    char buf[32];
    for (const std::string& method : method_order) {
        os << method;
        for (const char* split : kSplitOrder) {
            double sum = 0.0;
            int n = 0;
            for (const EvalRecord& r : records) {
                if (r.failed || r.method != method || r.split != split) continue;
                sum += r.*field;
                ++n;
            }
            os << ',';
            if (n > 0) {
                std::snprintf(buf, sizeof(buf), "%.6f", sum / n);
                os << buf;
            }
        }
        os << '\n';
    }
}

void write_delta_csv(std::ostream& os, const std::vector<DeltaRow>& rows) {
    os << "split,method_a_mean,method_b_mean,delta\n";
    char buf[96];
    for (const DeltaRow& row : rows) {
        std::snprintf(buf, sizeof(buf), "%.6f,%.6f,%+.6f", row.mean_a, row.mean_b, row.delta);
        os << row.split << ',' << buf << '\n';
    }
}

}  // namespace vtg
