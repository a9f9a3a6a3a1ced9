#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "vtg/bench.hpp"
#include "vtg/error.hpp"
#include "vtg/grid_ops.hpp"
#include "vtg/voxelize.hpp"

using namespace vtg;

namespace {

// One tiny generated dataset shared by every case in this binary.
const DatasetIndex& fixture() {
    static const DatasetIndex index = [] {
        DatasetConfig cfg;
        cfg.out_dir =
            (std::filesystem::temp_directory_path() / "vtg_bench_fixture").string();
        cfg.num_meshes = 3;
        cfg.train_meshes = 2;
        cfg.views_per_mesh = 2;
        cfg.holdout_views_per_mesh = 1;
        cfg.resolution = 12;
        cfg.npts = 15;
        cfg.seed = 5;
        return generate_dataset(cfg);
    }();
    return index;
}

MethodSpec oracle_method() {
    return {"oracle", [](const BenchmarkSample& s) { return s.gt_mesh; }};
}

MethodSpec broken_method() {
    return {"broken", [](const BenchmarkSample&) -> TriMesh {
                throw NumericalError("deliberate failure");
            }};
}

EvalRecord make_record(const std::string& method, const std::string& split,
                       double jaccard_value, bool failed = false) {
    EvalRecord r;
    r.method = method;
    r.split = split;
    r.mesh_id = "m000";
    r.view_id = "v00";
    r.failed = failed;
    if (failed) r.error = "synthetic";
    r.jaccard = jaccard_value;
    r.hausdorff_mm = 10.0 * jaccard_value;
    r.seconds = 0.25;
    return r;
}

}  // namespace

TEST_CASE("benchmark samples re-divide the sample cube for evaluation") {
    const DatasetIndex& index = fixture();
    REQUIRE(index.samples.size() == 6);
    const SampleRef& ref = index.samples.front();

    const BenchmarkSample s = make_benchmark_sample(index, ref, 32);
    CHECK(s.eval_frame.dims == Eigen::Vector3i(32, 32, 32));
    const double edge = static_cast<double>(ref.frame.voxel_size) * ref.frame.dims.x();
    CHECK(s.eval_frame.voxel_size == doctest::Approx(edge / 32).epsilon(1e-6));
    CHECK((s.eval_frame.min_corner() - ref.frame.min_corner()).norm() < 1e-6);
    CHECK((s.eval_frame.max_corner() - ref.frame.max_corner()).norm() < 1e-6);

    CHECK(s.gt_eval.frame() == s.eval_frame);
    CHECK(s.gt_eval.count() > 0);
    CHECK_FALSE(s.gt_mesh.empty());
    CHECK_FALSE(s.depth_cloud.empty());
    CHECK(s.tactile_cloud.size() <= 15);
    CHECK(s.tactile_cloud.size() > 0);
    CHECK(s.grids.depth.frame() == ref.frame);
    CHECK(s.grids.tactile.frame() == ref.frame);
    CHECK(s.grids.ground_truth.frame() == ref.frame);
    CHECK((s.camera_origin - index.config.camera.position()).norm() < 1e-12);

    // The ground truth on the evaluation grid is the posed mesh, re-voxelized.
    const VoxelGrid direct = mesh_to_eval_grid(s.gt_mesh, s.eval_frame);
    CHECK(jaccard(direct, s.gt_eval) == 1.0);

    CHECK_THROWS_AS(make_benchmark_sample(index, ref, 1), InvalidInputError);
    SampleRef bad = ref;
    bad.frame = GridFrame::make({12, 12, 13}, 0.01, {0, 0, 0});
    CHECK_THROWS_AS(make_benchmark_sample(index, bad, 32), InvalidInputError);
}

TEST_CASE("an oracle method scores perfect jaccard and zero distance") {
    const DatasetIndex& index = fixture();
    const std::vector<SampleRef> two(index.samples.begin(), index.samples.begin() + 2);

    const auto records =
        run_benchmark(index, two, {oracle_method()}, 24, 1, nullptr, 2000);
    REQUIRE(records.size() == 2);
    for (const EvalRecord& r : records) {
        CHECK_FALSE(r.failed);
        CHECK(r.method == "oracle");
        CHECK(r.jaccard == 1.0);
        CHECK(r.hausdorff_mm <= 1e-9);
        CHECK(r.seconds >= 0.0);
    }
}

TEST_CASE("failures are recorded without aborting the run") {
    const DatasetIndex& index = fixture();
    const std::vector<SampleRef> two(index.samples.begin(), index.samples.begin() + 2);

    const auto records =
        run_benchmark(index, two, {broken_method(), oracle_method()}, 16, 1, nullptr, 500);
    REQUIRE(records.size() == 4);  // samples x methods, failures included
    int failed = 0;
    for (const EvalRecord& r : records) {
        if (r.method == "broken") {
            CHECK(r.failed);
            CHECK(r.error.find("deliberate") != std::string::npos);
            CHECK(r.jaccard == 0.0);
            CHECK(r.hausdorff_mm == 0.0);
            CHECK(r.seconds == 0.0);
            ++failed;
        } else {
            CHECK_FALSE(r.failed);
        }
    }
    CHECK(failed == 2);

    const auto rows = aggregate_records(records);
    for (const AggregateRow& row : rows) {
        if (row.method == "broken") {
            CHECK(row.count == 0);
            CHECK(row.failures >= 1);
            CHECK(row.mean_jaccard == 0.0);
        } else {
            CHECK(row.failures == 0);
            CHECK(row.count >= 1);
        }
    }
}

TEST_CASE("the observation-only method underfills the volume") {
    const DatasetIndex& index = fixture();
    const std::vector<SampleRef> one(index.samples.begin(), index.samples.begin() + 1);

    const auto records = run_benchmark(index, one, {partial_method()}, 40, 1, nullptr, 1000);
    REQUIRE(records.size() == 1);
    CHECK_FALSE(records[0].failed);
    CHECK(records[0].jaccard > 0.0);
    CHECK(records[0].jaccard < 0.5);  // a surface shell cannot cover the solid
    CHECK(records[0].hausdorff_mm > 0.0);
}

TEST_CASE("the standard method list is ordered and complete") {
    Checkpoint depth_ckpt;
    depth_ckpt.net.grid_dim = 12;
    depth_ckpt.net.conv1_channels = 2;
    depth_ckpt.net.conv2_channels = 2;
    depth_ckpt.net.hidden = 8;
    depth_ckpt.params = init_params(depth_ckpt.net, 3);
    depth_ckpt.mode = "depth_only";
    Checkpoint tactile_ckpt = depth_ckpt;
    tactile_ckpt.mode = "tactile_and_depth";

    GpisConfig gpis_cfg;
    gpis_cfg.downsample = 80;
    gpis_cfg.grid_n = 16;

    const auto methods = standard_methods(depth_ckpt, tactile_ckpt, gpis_cfg);
    REQUIRE(methods.size() == 5);
    CHECK(methods[0].name == "partial");
    CHECK(methods[1].name == "hull");
    CHECK(methods[2].name == "gpis");
    CHECK(methods[3].name == "cnn-depth");
    CHECK(methods[4].name == "cnn-tactile");

    // All five run end to end on one sample; the untrained networks may
    // legitimately produce an empty mesh (recorded as a failure), the
    // geometric methods must succeed.
    const DatasetIndex& index = fixture();
    const std::vector<SampleRef> one(index.samples.begin(), index.samples.begin() + 1);
    const auto records = run_benchmark(index, one, methods, 16, 1, nullptr, 500);
    REQUIRE(records.size() == 5);
    CHECK_FALSE(records[0].failed);
    CHECK_FALSE(records[1].failed);
    CHECK_FALSE(records[2].failed);
    for (const EvalRecord& r : records) {
        CHECK(r.jaccard >= 0.0);
        CHECK(r.jaccard <= 1.0);
    }
}

TEST_CASE("benchmark reruns agree on everything but the clock") {
    const DatasetIndex& index = fixture();
    std::vector<SampleRef> picks = {index.samples[0], index.samples[4]};

    const auto a = run_benchmark(index, picks, {partial_method(), hull_method()}, 20, 1,
                                 nullptr, 800);
    const auto b = run_benchmark(index, picks, {partial_method(), hull_method()}, 20, 1,
                                 nullptr, 800);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].method == b[i].method);
        CHECK(a[i].split == b[i].split);
        CHECK(a[i].mesh_id == b[i].mesh_id);
        CHECK(a[i].view_id == b[i].view_id);
        CHECK(a[i].failed == b[i].failed);
        CHECK(a[i].jaccard == b[i].jaccard);            // bit-identical
        CHECK(a[i].hausdorff_mm == b[i].hausdorff_mm);  // bit-identical
    }

    CHECK_THROWS_AS(run_benchmark(index, picks, {partial_method()}, 20, 0), InvalidInputError);
    CHECK_THROWS_AS(run_benchmark(index, picks, {partial_method()}, 20, 1, nullptr, 0),
                    InvalidInputError);
}

TEST_CASE("aggregation groups by method then split in fixed order") {
    std::vector<EvalRecord> records;
    records.push_back(make_record("beta", "holdout_mesh", 0.4));
    records.push_back(make_record("alpha", "train_view", 0.5));
    records.push_back(make_record("alpha", "train_view", 0.7));
    records.push_back(make_record("alpha", "holdout_view", 0.2));
    records.push_back(make_record("beta", "train_view", 0.0, true));
    records.push_back(make_record("beta", "train_view", 0.9));

    const auto rows = aggregate_records(records);
    REQUIRE(rows.size() == 4);  // beta: train+holdout_mesh, alpha: train+holdout_view
    CHECK(rows[0].method == "beta");  // first seen
    CHECK(rows[0].split == "train_view");
    CHECK(rows[0].count == 1);
    CHECK(rows[0].failures == 1);
    CHECK(rows[0].mean_jaccard == doctest::Approx(0.9).epsilon(1e-12));
    CHECK(rows[1].method == "beta");
    CHECK(rows[1].split == "holdout_mesh");
    CHECK(rows[2].method == "alpha");
    CHECK(rows[2].split == "train_view");
    CHECK(rows[2].count == 2);
    CHECK(rows[2].mean_jaccard == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(rows[2].mean_hausdorff_mm == doctest::Approx(6.0).epsilon(1e-12));
    CHECK(rows[3].method == "alpha");
    CHECK(rows[3].split == "holdout_view");

    CHECK(aggregate_records({}).empty());
}

TEST_CASE("delta report compares two methods split by split") {
    std::vector<EvalRecord> records;
    records.push_back(make_record("cnn-tactile", "train_view", 0.8));
    records.push_back(make_record("cnn-tactile", "train_view", 0.9));
    records.push_back(make_record("cnn-depth", "train_view", 0.7));
    records.push_back(make_record("cnn-tactile", "holdout_view", 0.75));
    records.push_back(make_record("cnn-depth", "holdout_view", 0.6));
    records.push_back(make_record("cnn-tactile", "holdout_mesh", 0.65));
    records.push_back(make_record("cnn-depth", "holdout_mesh", 0.7));
    records.push_back(make_record("cnn-depth", "holdout_mesh", 0.0, true));  // excluded

    const auto rows = delta_report(records);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].split == "train_view");
    CHECK(rows[0].mean_a == doctest::Approx(0.85).epsilon(1e-12));
    CHECK(rows[0].mean_b == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(rows[0].delta == doctest::Approx(0.15).epsilon(1e-12));
    CHECK(rows[1].split == "holdout_view");
    CHECK(rows[1].delta == doctest::Approx(0.15).epsilon(1e-12));
    CHECK(rows[2].split == "holdout_mesh");
    CHECK(rows[2].delta == doctest::Approx(-0.05).epsilon(1e-12));

    // A method compared against itself reports exact zeros.
    const auto self_rows = delta_report(records, "cnn-depth", "cnn-depth");
    for (const DeltaRow& row : self_rows) CHECK(row.delta == 0.0);

    CHECK_THROWS_AS(delta_report(records, "cnn-tactile", "missing"), InvalidInputError);
    CHECK_THROWS_AS(delta_report({}, "cnn-tactile", "cnn-depth"), InvalidInputError);

    // Failed-only records count as missing.
    std::vector<EvalRecord> only_failed;
    only_failed.push_back(make_record("cnn-tactile", "train_view", 0.5));
    only_failed.push_back(make_record("cnn-depth", "train_view", 0.0, true));
    CHECK_THROWS_AS(delta_report(only_failed), InvalidInputError);
}

TEST_CASE("records roundtrip through json lines") {
    std::vector<EvalRecord> records;
    records.push_back(make_record("partial", "train_view", 1.0 / 3.0));
    records.push_back(make_record("hull", "holdout_mesh", 0.123456789012345));
    EvalRecord failed = make_record("gpis", "holdout_view", 0.0, true);
    failed.error = "kernel system \"not\" positive definite\n";
    records.push_back(failed);

    std::ostringstream os;
    for (const EvalRecord& r : records) write_record_jsonl(os, r);
    const std::string text = os.str();
    CHECK(std::count(text.begin(), text.end(), '\n') == 3);

    const auto path = std::filesystem::temp_directory_path() / "vtg_records.jsonl";
    {
        std::ofstream out(path);
        out << text;
    }
    const auto back = read_records_jsonl(path.string());
    REQUIRE(back.size() == records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        CHECK(back[i].method == records[i].method);
        CHECK(back[i].split == records[i].split);
        CHECK(back[i].mesh_id == records[i].mesh_id);
        CHECK(back[i].view_id == records[i].view_id);
        CHECK(back[i].failed == records[i].failed);
        CHECK(back[i].error == records[i].error);
        CHECK(back[i].jaccard == records[i].jaccard);  // exact double roundtrip
        CHECK(back[i].hausdorff_mm == records[i].hausdorff_mm);
        CHECK(back[i].seconds == records[i].seconds);
    }
    std::filesystem::remove(path);

    CHECK_THROWS_AS(read_records_jsonl("/tmp/missing_vtg_records.jsonl"), IoError);
    const auto bad = std::filesystem::temp_directory_path() / "vtg_bad.jsonl";
    {
        std::ofstream out(bad);
        out << "{not json\n";
    }
    CHECK_THROWS_AS(read_records_jsonl(bad.string()), IoError);
    std::filesystem::remove(bad);
}

TEST_CASE("benchmark streams records as they finish") {
    const DatasetIndex& index = fixture();
    const std::vector<SampleRef> one(index.samples.begin(), index.samples.begin() + 1);

    std::ostringstream stream;
    const auto records =
        run_benchmark(index, one, {oracle_method(), broken_method()}, 16, 1, &stream, 500);
    const std::string text = stream.str();
    CHECK(std::count(text.begin(), text.end(), '\n') ==
          static_cast<long>(records.size()));
    CHECK(text.find("\"oracle\"") != std::string::npos);
    CHECK(text.find("\"broken\"") != std::string::npos);
}

TEST_CASE("csv writers emit fixed headers and six-decimal cells") {
    std::vector<EvalRecord> records;
    records.push_back(make_record("alpha", "train_view", 0.5));
    records.push_back(make_record("alpha", "holdout_mesh", 0.25));
    records.push_back(make_record("beta", "train_view", 1.0));

    std::ostringstream agg;
    write_aggregate_csv(agg, aggregate_records(records));
    std::istringstream lines(agg.str());
    std::string line;
    std::getline(lines, line);
    CHECK(line == "method,split,count,failures,mean_jaccard,mean_hausdorff_mm,mean_seconds");
    std::getline(lines, line);
    CHECK(line == "alpha,train_view,1,0,0.500000,5.000000,0.250000");

    std::ostringstream table;
    write_metric_table_csv(table, records, "jaccard");
    std::istringstream tlines(table.str());
    std::getline(tlines, line);
    CHECK(line == "method,train_view,holdout_view,holdout_mesh");
    std::getline(tlines, line);
    CHECK(line == "alpha,0.500000,,0.250000");  // empty cell for the unseen split
    std::getline(tlines, line);
    CHECK(line == "beta,1.000000,,");

    std::ostringstream bad;
    CHECK_THROWS_AS(write_metric_table_csv(bad, records, "volume"), InvalidInputError);

    DeltaRow row;
    row.split = "train_view";
    row.mean_a = 0.8;
    row.mean_b = 0.85;
    row.delta = -0.05;
    std::ostringstream delta;
    write_delta_csv(delta, {row});
    std::istringstream dlines(delta.str());
    std::getline(dlines, line);
    CHECK(line == "split,method_a_mean,method_b_mean,delta");
    std::getline(dlines, line);
    CHECK(line == "train_view,0.800000,0.850000,-0.050000");
}
