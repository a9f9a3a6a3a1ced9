// vtg: shape-pair generation, dataset synthesis, network training, and the
// completion benchmark, as subcommands over the core library.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vtg/bench.hpp"
#include "vtg/checkpoint.hpp"
#include "vtg/complete.hpp"
#include "vtg/dataset.hpp"
#include "vtg/error.hpp"
#include "vtg/grid_ops.hpp"
#include "vtg/hausdorff.hpp"
#include "vtg/mesh_io.hpp"
#include "vtg/train.hpp"
#include "vtg/voxelize.hpp"

namespace {

using namespace vtg;

std::vector<SampleRef> pick_samples(const DatasetIndex& index,
                                    const std::vector<std::string>& split_names, int limit) {
    std::vector<SplitTag> tags;
    for (const std::string& name : split_names) tags.push_back(split_from_string(name));
    std::vector<SampleRef> out;
    for (const SplitTag tag : tags) {
        int taken = 0;
        for (const SampleRef& ref : index.samples) {
            if (ref.split != tag) continue;
            if (limit > 0 && taken >= limit) break;
            out.push_back(ref);
            ++taken;
        }
    }
    return out;
}

void print_aggregates(const std::vector<AggregateRow>& rows) {
    std::printf("%-12s %-13s %6s %5s %10s %14s %10s\n", "method", "split", "count", "fail",
                "jaccard", "hausdorff_mm", "seconds");
    for (const AggregateRow& row : rows)
        std::printf("%-12s %-13s %6d %5d %10.4f %14.3f %10.4f\n", row.method.c_str(),
                    row.split.c_str(), row.count, row.failures, row.mean_jaccard,
                    row.mean_hausdorff_mm, row.mean_seconds);
}

int cmd_gen_shapes(const std::string& front, const std::string& back, double half_x,
                   double half_y, double front_depth, double back_depth, int cells,
                   uint64_t seed, const std::string& out) {
    ShapePairSpec spec;
    spec.front = primitive_from_string(front);
    spec.back = primitive_from_string(back);
    spec.half_x = half_x;
    spec.half_y = half_y;
    spec.front_depth = front_depth;
    spec.back_depth = back_depth;
    spec.cells = cells;
    spec.seed = seed;
    const TriMesh mesh = gen_shape_pair(spec);
    write_obj(out, mesh);
    std::printf("%s: %zu vertices, %zu faces, volume %.6e m^3\n", out.c_str(),
                mesh.vertices.size(), mesh.faces.size(), mesh.signed_volume());
    return 0;
}

int cmd_gen_dataset(const DatasetConfig& cfg) {
    const DatasetIndex index = generate_dataset(cfg);
    int counts[3] = {0, 0, 0};
    for (const SampleRef& ref : index.samples) ++counts[static_cast<int>(ref.split)];
    std::printf("%s: %zu samples (train_view %d, holdout_view %d, holdout_mesh %d)\n",
                (std::filesystem::path(cfg.out_dir) / "manifest.json").c_str(),
                index.samples.size(), counts[0], counts[1], counts[2]);
    return 0;
}

int cmd_train(const std::string& manifest, const std::string& mode_name, const TrainConfig& tc,
              const std::string& holdout_split, const std::string& out,
              const std::string& history_path) {
    const DatasetIndex index = load_dataset(manifest);
    const TrainMode mode = train_mode_from_string(mode_name);

    std::vector<ObservationTriplet> train_set, holdout_set;
    for (const SampleRef& ref : index.samples) {
        if (ref.split == SplitTag::train_view)
            train_set.push_back(load_triplet(index, ref));
        else if (holdout_split != "none" && ref.split == split_from_string(holdout_split))
            holdout_set.push_back(load_triplet(index, ref));
    }
    std::printf("training on %zu samples, holdout %zu (%s), mode %s\n", train_set.size(),
                holdout_set.size(), holdout_split.c_str(), to_string(mode));

    NetConfig net;
    net.grid_dim = index.config.resolution;

    std::ofstream history;
    if (!history_path.empty()) {
        history.open(history_path);
        if (!history) throw IoError("cannot open " + history_path);
    }
    const TrainResult result =
        train(train_set, holdout_set, net, tc, mode, history.is_open() ? &history : &std::cout);

    Checkpoint ckpt;
    ckpt.net = net;
    ckpt.train = tc;
    ckpt.params = result.best_params;
    ckpt.epoch = result.best_epoch;
    ckpt.mode = to_string(mode);
    ckpt.metrics["best_holdout_jaccard"] = result.best_holdout_jaccard;
    ckpt.metrics["best_epoch"] = result.best_epoch;
    if (!result.history.empty()) ckpt.metrics["final_loss"] = result.history.back().mean_loss;
    save_checkpoint(out, ckpt);
    std::printf("saved %s (best epoch %d, holdout jaccard %.4f)\n", out.c_str(),
                result.best_epoch, result.best_holdout_jaccard);
    return 0;
}

MethodSpec method_by_name(const std::string& name, const std::string& ckpt_path,
                          const GpisConfig& gpis_cfg) {
    if (name == "partial") return partial_method();
    if (name == "hull") return hull_method();
    if (name == "gpis") return gpis_method(gpis_cfg);
    if (name == "cnn-depth" || name == "cnn-tactile") {
        if (ckpt_path.empty())
            throw InvalidInputError("method " + name + " requires --checkpoint");
        return cnn_method(name, load_checkpoint(ckpt_path));
    }
    throw InvalidInputError("unknown method: " + name);
}

int cmd_complete(const std::string& manifest, const std::string& sample_id,
                 const std::string& method_name, const std::string& ckpt_path,
                 int eval_resolution, const std::string& out) {
    const DatasetIndex index = load_dataset(manifest);
    const SampleRef* ref = nullptr;
    for (const SampleRef& r : index.samples)
        if (r.mesh_id + "_" + r.view_id == sample_id) ref = &r;
    if (!ref) throw InvalidInputError("sample not found: " + sample_id);

    const BenchmarkSample sample = make_benchmark_sample(index, *ref, eval_resolution);
    const MethodSpec method = method_by_name(method_name, ckpt_path, GpisConfig{});
    const TriMesh mesh = method.run(sample);
    write_obj(out, mesh);

    const double j = jaccard(mesh_to_eval_grid(mesh, sample.eval_frame), sample.gt_eval);
    const HausdorffReport h = hausdorff(mesh, sample.gt_mesh);
    std::printf("%s %s -> %s: %zu vertices, %zu faces, jaccard %.4f, hausdorff %.3f mm\n",
                sample_id.c_str(), method.name.c_str(), out.c_str(), mesh.vertices.size(),
                mesh.faces.size(), j, h.symmetric_mean);
    return 0;
}

int cmd_eval(const std::string& manifest, const std::string& ckpt_depth,
             const std::string& ckpt_tactile, const std::vector<std::string>& split_names,
             int limit, int eval_resolution, int timing_runs, int hausdorff_samples,
             const std::string& out) {
    const DatasetIndex index = load_dataset(manifest);
    const std::vector<SampleRef> samples = pick_samples(index, split_names, limit);
    if (samples.empty()) throw InvalidInputError("no samples selected");

    std::vector<MethodSpec> methods = {partial_method(), hull_method(),
                                       gpis_method(GpisConfig{})};
    if (!ckpt_depth.empty())
        methods.push_back(cnn_method("cnn-depth", load_checkpoint(ckpt_depth)));
    if (!ckpt_tactile.empty())
        methods.push_back(cnn_method("cnn-tactile", load_checkpoint(ckpt_tactile)));

    std::ofstream jsonl(out);
    if (!jsonl) throw IoError("cannot open " + out);
    std::printf("evaluating %zu samples x %zu methods -> %s\n", samples.size(), methods.size(),
                out.c_str());
    const std::vector<EvalRecord> records = run_benchmark(
        index, samples, methods, eval_resolution, timing_runs, &jsonl, hausdorff_samples);
    print_aggregates(aggregate_records(records));
    return 0;
}

int cmd_report(const std::string& records_path, const std::string& out_dir) {
    const std::vector<EvalRecord> records = read_records_jsonl(records_path);
    std::printf("%zu records\n", records.size());
    const std::vector<AggregateRow> rows = aggregate_records(records);
    print_aggregates(rows);

    bool has_depth = false, has_tactile = false;
    for (const EvalRecord& r : records) {
        if (r.method == "cnn-depth" && !r.failed) has_depth = true;
        if (r.method == "cnn-tactile" && !r.failed) has_tactile = true;
    }
    std::vector<DeltaRow> deltas;
    if (has_depth && has_tactile) {
        deltas = delta_report(records);
        std::printf("\njaccard delta (cnn-tactile - cnn-depth)\n");
        for (const DeltaRow& d : deltas)
            std::printf("%-13s %8.4f - %8.4f = %+8.4f\n", d.split.c_str(), d.mean_a, d.mean_b,
                        d.delta);
    }

    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        const std::filesystem::path dir(out_dir);
        auto write_with = [&](const std::string& name, auto&& writer) {
            std::ofstream os(dir / name);
            if (!os) throw IoError("cannot open " + (dir / name).string());
            writer(os);
        };
        write_with("aggregate.csv",
                   [&](std::ostream& os) { write_aggregate_csv(os, rows); });
        for (const char* metric : {"jaccard", "hausdorff_mm", "seconds"})
            write_with(std::string(metric) + ".csv", [&](std::ostream& os) {
                write_metric_table_csv(os, records, metric);
            });
        if (!deltas.empty())
            write_with("delta.csv",
                       [&](std::ostream& os) { write_delta_csv(os, deltas); });
        std::printf("\ntables written to %s\n", out_dir.c_str());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"voxel-grid shape completion from depth and tactile observations"};
    app.require_subcommand(1);

    // gen-shapes
    auto* gen_shapes = app.add_subcommand("gen-shapes", "generate one two-shape mesh");
    std::string front = "box", back = "sphere", shapes_out = "pair.obj";
    double half_x = 0.05, half_y = 0.05, front_depth = 0.05, back_depth = 0.05;
    int cells = 48;
    uint64_t shapes_seed = 0;
    gen_shapes->add_option("--front", front, "front primitive: box|wedge|cylinder|sphere");
    gen_shapes->add_option("--back", back, "back primitive");
    gen_shapes->add_option("--half-x", half_x, "footprint half extent x (m)");
    gen_shapes->add_option("--half-y", half_y, "footprint half extent y (m)");
    gen_shapes->add_option("--front-depth", front_depth, "front shape depth (m)");
    gen_shapes->add_option("--back-depth", back_depth, "back shape depth (m)");
    gen_shapes->add_option("--cells", cells, "sheet tessellation cells per axis");
    gen_shapes->add_option("--seed", shapes_seed, "provenance tag recorded with the spec");
    gen_shapes->add_option("-o,--out", shapes_out, "output mesh (.obj)");

    // gen-dataset
    auto* gen_ds = app.add_subcommand("gen-dataset", "generate a dataset of triplets");
    DatasetConfig ds_cfg;
    gen_ds->add_option("-o,--out", ds_cfg.out_dir, "output directory")->required();
    gen_ds->add_option("--meshes", ds_cfg.num_meshes, "total meshes");
    gen_ds->add_option("--train-meshes", ds_cfg.train_meshes, "training meshes");
    gen_ds->add_option("--views", ds_cfg.views_per_mesh, "views per mesh");
    gen_ds->add_option("--holdout-views", ds_cfg.holdout_views_per_mesh,
                       "held-out views per training mesh");
    gen_ds->add_option("--resolution", ds_cfg.resolution, "voxels per axis");
    gen_ds->add_option("--npts", ds_cfg.npts, "tactile probes per sample");
    gen_ds->add_option("--seed", ds_cfg.seed, "dataset seed");
    gen_ds->add_option("--distance", ds_cfg.object_distance, "object distance (m)");
    gen_ds->add_flag("--canonical", ds_cfg.canonical_views_only, "identity pose for all views");

    // train
    auto* train_cmd = app.add_subcommand("train", "train a completion network");
    std::string train_manifest, train_mode, train_out = "net.vtn", history_path;
    std::string holdout_split = "holdout_mesh";
    TrainConfig tc;
    train_cmd->add_option("--dataset", train_manifest, "manifest.json path")->required();
    train_cmd->add_option("--mode", train_mode, "depth|tactile|both")->required();
    train_cmd->add_option("--epochs", tc.epochs, "training epochs");
    train_cmd->add_option("--batch", tc.batch_size, "batch size");
    train_cmd->add_option("--lr", tc.learning_rate, "Adam learning rate");
    train_cmd->add_option("--seed", tc.seed, "shuffle/init seed");
    train_cmd->add_option("--holdout", holdout_split,
                          "model-selection split: holdout_mesh|holdout_view|none");
    train_cmd->add_option("-o,--out", train_out, "checkpoint output path");
    train_cmd->add_option("--history", history_path, "per-epoch JSON-lines log");

    // complete
    auto* complete_cmd = app.add_subcommand("complete", "run one completion method");
    std::string c_manifest, c_sample, c_method, c_ckpt, c_out = "completion.obj";
    int c_res = 80;
    complete_cmd->add_option("--dataset", c_manifest, "manifest.json path")->required();
    complete_cmd->add_option("--sample", c_sample, "sample id, e.g. m000_v00")->required();
    complete_cmd
        ->add_option("--method", c_method, "partial|hull|gpis|cnn-depth|cnn-tactile")
        ->required();
    complete_cmd->add_option("--checkpoint", c_ckpt, "checkpoint for cnn methods");
    complete_cmd->add_option("--eval-resolution", c_res, "evaluation voxels per axis");
    complete_cmd->add_option("-o,--out", c_out, "output mesh (.obj)");

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "run the completion benchmark");
    std::string e_manifest, e_ckpt_depth, e_ckpt_tactile, e_out = "records.jsonl";
    std::vector<std::string> e_splits = {"train_view", "holdout_view", "holdout_mesh"};
    int e_limit = 0, e_res = 80, e_timing = 3, e_hsamples = 10000;
    eval_cmd->add_option("--dataset", e_manifest, "manifest.json path")->required();
    eval_cmd->add_option("--checkpoint-depth", e_ckpt_depth, "depth-only checkpoint");
    eval_cmd->add_option("--checkpoint-tactile", e_ckpt_tactile, "tactile+depth checkpoint");
    eval_cmd->add_option("--splits", e_splits, "splits to evaluate");
    eval_cmd->add_option("--limit", e_limit, "max samples per split (0 = all)");
    eval_cmd->add_option("--eval-resolution", e_res, "evaluation voxels per axis");
    eval_cmd->add_option("--timing-runs", e_timing, "timing repetitions per method");
    eval_cmd->add_option("--hausdorff-samples", e_hsamples, "surface samples per direction");
    eval_cmd->add_option("-o,--out", e_out, "JSON-lines record output");

    // report
    auto* report_cmd = app.add_subcommand("report", "aggregate benchmark records");
    std::string r_records, r_out_dir;
    report_cmd->add_option("--records", r_records, "records.jsonl path")->required();
    report_cmd->add_option("--out-dir", r_out_dir, "directory for CSV tables");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen_shapes->parsed())
            return cmd_gen_shapes(front, back, half_x, half_y, front_depth, back_depth, cells,
                                  shapes_seed, shapes_out);
        if (gen_ds->parsed()) return cmd_gen_dataset(ds_cfg);
        if (train_cmd->parsed())
            return cmd_train(train_manifest, train_mode, tc, holdout_split, train_out,
                             history_path);
        if (complete_cmd->parsed())
            return cmd_complete(c_manifest, c_sample, c_method, c_ckpt, c_res, c_out);
        if (eval_cmd->parsed())
            return cmd_eval(e_manifest, e_ckpt_depth, e_ckpt_tactile, e_splits, e_limit, e_res,
                            e_timing, e_hsamples, e_out);
        if (report_cmd->parsed()) return cmd_report(r_records, r_out_dir);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
