#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "qens/bench/experiment.hpp"
#include "qens/bench/report.hpp"
#include "qens/qnn/circuit.hpp"

using namespace qens;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::filesystem::path fresh_dir(const std::string& tag) {
    const std::filesystem::path dir =
        std::filesystem::temp_directory_path() / ("qens_bench_" + tag);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

ExperimentConfig tiny_grid_config(const std::string& out_dir) {
    ExperimentConfig config;
    config.dataset.name = "linear";
    config.dataset.n_rows = 30;
    config.dataset.n_features = 2;
    config.dataset.sigma = 0.1;
    config.models = {ModelSpec::parse("FM"), ModelSpec::parse("Bag_0.8_0.5")};
    config.layers = {1};
    config.repeats = 2;
    config.seed = 4242;
    config.n_estimators = 2;
    config.train.epochs = 2;
    config.output_dir = out_dir;
    config.jobs = 1;
    return config;
}

}  // namespace

TEST_CASE("model id parsing covers the whole grid") {
    const ModelSpec fm = ModelSpec::parse("FM");
    CHECK(fm.kind == ModelSpec::Kind::fm);
    CHECK(fm.id == "FM");

    const ModelSpec boost = ModelSpec::parse("AdaBoost");
    CHECK(boost.kind == ModelSpec::Kind::adaboost);

    const ModelSpec bag = ModelSpec::parse("Bag_0.8_0.2");
    CHECK(bag.kind == ModelSpec::Kind::bagging);
    CHECK(bag.feature_ratio == 0.8);
    CHECK(bag.sample_ratio == 0.2);
    CHECK(bag.id == "Bag_0.8_0.2");

    const ModelSpec full = ModelSpec::parse("Bag_1.0_1.0");
    CHECK(full.feature_ratio == 1.0);
    CHECK(full.sample_ratio == 1.0);

    for (const char* bad : {"fm", "Bag_0.8", "Bag_a_b", "Bag_0_0.5", "Bag_1.5_0.2",
                            "Bag_0.5_-0.1", "", "Boost", "Bag__"})
        CHECK_THROWS_AS(ModelSpec::parse(bad), std::invalid_argument);
}

TEST_CASE("run seeds are stable and distinct across cells") {
    CHECK(run_seed(7, "FM", 3, 2) == run_seed(7, "FM", 3, 2));
    std::set<std::uint64_t> seen;
    for (const char* id : {"FM", "Bag_0.8_0.2", "AdaBoost"})
        for (int layers : {1, 2, 3})
            for (int repeat = 0; repeat < 4; ++repeat)
                seen.insert(run_seed(7, id, layers, repeat));
    CHECK(seen.size() == 3u * 3u * 4u);
    CHECK(run_seed(8, "FM", 3, 2) != run_seed(7, "FM", 3, 2));
}

TEST_CASE("prepare_data splits once and scales into the unit box") {
    DatasetSpec spec;
    spec.n_rows = 250;
    spec.n_features = 5;
    const PreparedData data = prepare_data(spec, 99);
    CHECK(data.train.n_rows == 200);
    CHECK(data.test.n_rows == 50);
    CHECK(data.train.n_cols == 5);
    CHECK(data.scaler.scale_target);
    for (double x : data.train.features) {
        CHECK(x >= -1.0);
        CHECK(x <= 1.0);
    }
    for (double y : data.train.targets) {
        CHECK(y >= -1.0);
        CHECK(y <= 1.0);
    }
    // same root seed -> identical split and scaling
    const PreparedData again = prepare_data(spec, 99);
    CHECK(again.train.features == data.train.features);
    CHECK(again.test.targets == data.test.targets);
    const PreparedData other = prepare_data(spec, 100);
    CHECK(other.train.features != data.train.features);
}

TEST_CASE("prepare_data reads classification CSV files") {
    const std::filesystem::path dir = fresh_dir("csv_in");
    const std::string path = (dir / "toy.csv").string();
    std::ofstream out(path);
    out << "a,b,c,label\n";
    for (int r = 0; r < 12; ++r)
        out << 0.1 * r << ',' << 0.2 * r << ',' << 0.3 * r << ',' << (r % 2 ? "yes" : "no")
            << '\n';
    out.close();

    DatasetSpec spec;
    spec.name = "toy";
    spec.csv_path = path;
    spec.task = TaskKind::classification;
    const PreparedData data = prepare_data(spec, 5);
    CHECK(data.train.task == TaskKind::classification);
    CHECK(data.train.n_rows == 9);  // floor(0.8 * 12)
    CHECK(data.test.n_rows == 3);
    CHECK(data.train.n_classes == 2);
    CHECK_FALSE(data.scaler.scale_target);
    std::filesystem::remove_all(dir);
}

TEST_CASE("resource table follows the closed-form circuit counts") {
    ExperimentConfig config;
    config.models = {ModelSpec::parse("FM"), ModelSpec::parse("Bag_0.3_1.0"),
                     ModelSpec::parse("Bag_0.8_0.2"), ModelSpec::parse("AdaBoost")};
    config.layers = {1, 3};
    config.n_estimators = 10;
    config.subspace_rounding = SubspaceRounding::half_up;

    const std::vector<SummaryRow> rows = resource_rows(config, 5);
    REQUIRE(rows.size() == 8);  // model-major x layers
    for (const SummaryRow& row : rows) {
        // the defining relation: three rotations per qubit per layer
        CHECK(row.member_resources.trainable_params ==
              3 * row.layers * row.member_resources.n_qubits);
        CHECK(row.member_resources.rotation_gates ==
              row.member_resources.n_qubits + row.member_resources.trainable_params);
        CHECK(row.member_resources.cnot_gates ==
              2 * row.layers * (row.member_resources.n_qubits - 1));
    }

    CHECK(rows[0].model == "FM");
    CHECK(rows[0].layers == 1);
    CHECK(rows[0].n_members == 1);
    CHECK(rows[0].member_resources.n_qubits == 5);
    CHECK(rows[0].member_resources.trainable_params == 15);
    CHECK(rows[0].member_resources.rotation_gates == 20);
    CHECK(rows[0].member_resources.cnot_gates == 8);

    // 0.3 * 5 = 1.5 rounds up to 2 qubits under half_up
    CHECK(rows[2].model == "Bag_0.3_1.0");
    CHECK(rows[2].n_members == 10);
    CHECK(rows[2].member_resources.n_qubits == 2);

    // 0.8 * 5 = 4
    CHECK(rows[4].model == "Bag_0.8_0.2");
    CHECK(rows[4].member_resources.n_qubits == 4);

    // boosting always keeps the full feature set
    CHECK(rows[6].model == "AdaBoost");
    CHECK(rows[6].member_resources.n_qubits == 5);
    CHECK(rows[6].n_members == 10);

    config.subspace_rounding = SubspaceRounding::floor;
    const std::vector<SummaryRow> floored = resource_rows(config, 5);
    CHECK(floored[2].member_resources.n_qubits == 1);  // 1.5 floors, min one qubit
    CHECK(floored[2].member_resources.cnot_gates == 0);
    CHECK(floored[2].member_resources.trainable_params == 3 * floored[2].layers);
}

TEST_CASE("records CSV round-trips and sanitizes error text") {
    RunRecord good;
    good.model_id = "FM";
    good.dataset = "linear";
    good.layers = 2;
    good.repeat = 1;
    good.seed = 987654321;
    good.train_metric = 0.012345678901234567;
    good.test_metric = 0.07;
    good.wall_time = 1.25;
    good.n_members = 1;
    good.member_resources = resource_report(QnnConfig::regression(5, 2));

    RunRecord bad;
    bad.model_id = "Bag_0.5_0.2";
    bad.dataset = "linear";
    bad.layers = 1;
    bad.repeat = 0;
    bad.seed = 11;
    bad.n_members = 10;
    bad.member_resources = resource_report(QnnConfig::regression(3, 1));
    bad.ok = false;
    bad.error = "boom, with commas\nand a newline";

    const std::filesystem::path dir = fresh_dir("records_io");
    const std::string path = (dir / "records.csv").string();
    {
        std::ofstream out(path);
        write_records_header(out);
        append_record(out, good);
        append_record(out, bad);
    }
    const std::vector<RunRecord> back = read_records_csv(path);
    REQUIRE(back.size() == 2);
    CHECK(back[0].model_id == "FM");
    CHECK(back[0].layers == 2);
    CHECK(back[0].repeat == 1);
    CHECK(back[0].seed == 987654321);
    CHECK(back[0].train_metric == good.train_metric);  // shortest round-trip form
    CHECK(back[0].test_metric == good.test_metric);
    CHECK(back[0].wall_time == good.wall_time);
    CHECK(back[0].member_resources.n_qubits == 5);
    CHECK(back[0].member_resources.trainable_params == 30);
    CHECK(back[0].ok);
    CHECK(back[1].model_id == "Bag_0.5_0.2");
    CHECK_FALSE(back[1].ok);
    CHECK(back[1].error == "boom; with commas;and a newline");

    CHECK_THROWS_AS(read_records_csv((dir / "missing.csv").string()), std::runtime_error);
    std::filesystem::remove_all(dir);
}

TEST_CASE("summarize groups in first-appearance order with population stats") {
    std::vector<RunRecord> records;
    auto make = [](const std::string& id, int layers, int repeat, double train_m,
                   double test_m, bool ok) {
        RunRecord r;
        r.model_id = id;
        r.dataset = "linear";
        r.layers = layers;
        r.repeat = repeat;
        r.train_metric = train_m;
        r.test_metric = test_m;
        r.n_members = id == "FM" ? 1 : 4;
        r.member_resources = resource_report(QnnConfig::regression(2, layers));
        r.ok = ok;
        if (!ok) r.error = "failed";
        return r;
    };
    records.push_back(make("B", 1, 0, 0.5, 1.0, true));
    records.push_back(make("B", 1, 1, 0.7, 2.0, true));
    records.push_back(make("B", 1, 2, 0.9, 3.0, true));
    records.push_back(make("A", 1, 0, 0.1, 0.2, true));
    records.push_back(make("A", 1, 1, 0.0, 0.0, false));  // excluded from stats

    const std::vector<SummaryRow> rows = summarize(records);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].model == "B");  // first appearance wins
    CHECK(rows[0].n_runs == 3);
    CHECK(rows[0].failed == 0);
    CHECK(rows[0].test_mean == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(rows[0].test_std == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-12));
    CHECK(rows[0].train_mean == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(rows[1].model == "A");
    CHECK(rows[1].n_runs == 1);
    CHECK(rows[1].failed == 1);
    CHECK(rows[1].test_std == 0.0);
}

TEST_CASE("grid run writes every artifact and reruns byte-identically") {
    const std::filesystem::path dir = fresh_dir("grid");
    ExperimentConfig config = tiny_grid_config(dir.string());

    const std::vector<RunRecord> records = run_experiment(config);
    REQUIRE(records.size() == 4);  // 2 models x 1 layer x 2 repeats
    for (const RunRecord& r : records) {
        CHECK(r.ok);
        CHECK(r.error.empty());
        CHECK(r.test_metric >= 0.0);
        CHECK(r.wall_time > 0.0);
    }
    CHECK(records[0].model_id == "FM");
    CHECK(records[0].n_members == 1);
    CHECK(records[2].model_id == "Bag_0.8_0.5");
    CHECK(records[2].n_members == 2);
    CHECK(records[2].member_resources.n_qubits == 2);  // 0.8 * 2 rounds to 2

    for (const std::string name :
         {"records.csv", "summary.csv", "summary.json", "resources.csv", "metric_vs_layers.svg"})
        CHECK(std::filesystem::exists(dir / name));

    // the streamed records file reads back to the in-memory results
    const std::vector<RunRecord> streamed = read_records_csv((dir / "records.csv").string());
    REQUIRE(streamed.size() == records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        CHECK(streamed[i].model_id == records[i].model_id);
        CHECK(streamed[i].seed == records[i].seed);
        CHECK(streamed[i].train_metric == records[i].train_metric);
        CHECK(streamed[i].test_metric == records[i].test_metric);
    }

    // a single cell rerun in isolation reproduces the pooled result exactly
    const PreparedData data = prepare_data(config.dataset, config.seed);
    const RunRecord solo = run_cell(data, config, config.models[1], 1, 1);
    CHECK(solo.test_metric == records[3].test_metric);
    CHECK(solo.train_metric == records[3].train_metric);
    CHECK(solo.seed == records[3].seed);

    const std::string summary_csv = read_file((dir / "summary.csv").string());
    const std::string summary_json = read_file((dir / "summary.json").string());
    const std::string resources_csv = read_file((dir / "resources.csv").string());

    run_experiment(config);  // overwrite in place
    CHECK(read_file((dir / "summary.csv").string()) == summary_csv);
    CHECK(read_file((dir / "summary.json").string()) == summary_json);
    CHECK(read_file((dir / "resources.csv").string()) == resources_csv);

    // summary statistics recompute from the records
    const std::vector<SummaryRow> rows = summarize(records);
    REQUIRE(rows.size() == 2);
    const double fm_mean = (records[0].test_metric + records[1].test_metric) / 2.0;
    CHECK(rows[0].test_mean == doctest::Approx(fm_mean).epsilon(1e-12));
    std::filesystem::remove_all(dir);
}

TEST_CASE("failed cells are recorded, not thrown") {
    const std::filesystem::path dir = fresh_dir("failures");
    const std::string csv = (dir / "blobs.csv").string();
    {
        std::ofstream out(csv);
        out << "a,b,c,label\n";
        for (int r = 0; r < 15; ++r)
            out << 0.1 * r << ',' << 0.2 * r << ',' << -0.1 * r << ',' << r % 3 << '\n';
    }
    ExperimentConfig config = tiny_grid_config(dir.string());
    config.dataset.name = "blobs";
    config.dataset.csv_path = csv;
    config.dataset.task = TaskKind::classification;
    // a one-qubit subspace cannot host three heads: every cell fails at fit time
    config.models = {ModelSpec::parse("Bag_0.3_1.0")};
    const std::vector<RunRecord> records = run_experiment(config);
    REQUIRE(records.size() == 2);
    for (const RunRecord& r : records) {
        CHECK_FALSE(r.ok);
        CHECK(r.error.find("fewer qubits than classes") != std::string::npos);
    }
    // summary still emits a row, flagged as all-failed
    const std::vector<SummaryRow> rows = summarize(records);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].n_runs == 0);
    CHECK(rows[0].failed == 2);
    std::filesystem::remove_all(dir);
}

TEST_CASE("noise comparison with zero error rates matches the exact backend") {
    const std::filesystem::path dir = fresh_dir("noise");
    ExperimentConfig config = tiny_grid_config(dir.string());
    config.mode = "noise_comparison";
    config.repeats = 2;
    config.train.gradient_method = GradientMethod::parameter_shift;
    NoiseModel silent;  // all rates zero
    config.backend = Backend::with_noise(silent, 1, 0);

    const NoiseComparison result = noise_comparison(config);
    REQUIRE(result.fm_mse.size() == 2);
    REQUIRE(result.bag_mse.size() == 2);
    CHECK(result.fm_mean ==
          doctest::Approx((result.fm_mse[0] + result.fm_mse[1]) / 2.0).epsilon(1e-12));
    CHECK(result.mean_ratio == doctest::Approx(result.bag_mean / result.fm_mean).epsilon(1e-12));
    CHECK(result.var_ratio == doctest::Approx(result.bag_var / result.fm_var).epsilon(1e-12));
    CHECK(std::filesystem::exists(dir / "noise_comparison.csv"));
    CHECK(std::filesystem::exists(dir / "noise_comparison.json"));

    // zero-rate trajectories reproduce the exact statevector, so an exact-backend
    // cell run must land on the same numbers
    ExperimentConfig exact = config;
    exact.mode = "grid";
    exact.backend = Backend::exact();
    const PreparedData data = prepare_data(exact.dataset, exact.seed);
    const RunRecord fm0 = run_cell(data, exact, ModelSpec::parse("FM"), 1, 0);
    REQUIRE(fm0.ok);
    CHECK(result.fm_mse[0] == doctest::Approx(fm0.test_metric).epsilon(1e-9));
    const RunRecord bag0 = run_cell(data, exact, ModelSpec::parse("Bag_0.8_0.2"), 1, 0);
    REQUIRE(bag0.ok);
    CHECK(result.bag_mse[0] == doctest::Approx(bag0.test_metric).epsilon(1e-9));
    std::filesystem::remove_all(dir);
}

TEST_CASE("config files parse with defaults and fail loudly") {
    const std::filesystem::path dir = fresh_dir("config");
    const std::string path = (dir / "exp.json").string();
    {
        std::ofstream out(path);
        out << R"({
  "mode": "grid",
  "seed": 31,
  "output_dir": ")" << (dir / "out").string() << R"(",
  "dataset": {"name": "linear", "n_rows": 40, "n_features": 3, "sigma": 0.05},
  "models": ["FM", "Bag_0.5_0.2", "AdaBoost"],
  "layers": [1, 2],
  "repeats": 3,
  "ensemble": {"n_estimators": 4, "subspace_rounding": "floor"},
  "train": {"epochs": 7, "learning_rate": 0.05, "gradient_method": "parameter_shift"},
  "backend": {"kind": "shots", "shots": 256}
})";
    }
    const ExperimentConfig config = ExperimentConfig::from_json_file(path);
    CHECK(config.seed == 31);
    CHECK(config.dataset.n_rows == 40);
    CHECK(config.dataset.n_features == 3);
    REQUIRE(config.models.size() == 3);
    CHECK(config.models[1].kind == ModelSpec::Kind::bagging);
    CHECK(config.models[1].sample_ratio == 0.2);
    CHECK(config.layers == std::vector<int>{1, 2});
    CHECK(config.repeats == 3);
    CHECK(config.n_estimators == 4);
    CHECK(config.subspace_rounding == SubspaceRounding::floor);
    CHECK(config.train.epochs == 7);
    CHECK(config.train.learning_rate == 0.05);
    CHECK(config.train.gradient_method == GradientMethod::parameter_shift);
    CHECK(config.backend.kind == Backend::Kind::shots);
    CHECK(config.backend.shots == 256);
    CHECK_NOTHROW(config.validate());

    const std::string broken = (dir / "broken.json").string();
    std::ofstream(broken) << "{ not json";
    CHECK_THROWS_WITH_AS(ExperimentConfig::from_json_file(broken), doctest::Contains("broken.json"),
                         std::runtime_error);
    CHECK_THROWS_AS(ExperimentConfig::from_json_file((dir / "missing.json").string()),
                    std::runtime_error);
    std::filesystem::remove_all(dir);
}

TEST_CASE("config validation catches structural mistakes") {
    ExperimentConfig config = tiny_grid_config("out");
    CHECK_NOTHROW(config.validate());
    ExperimentConfig no_models = config;
    no_models.models.clear();
    CHECK_THROWS_AS(no_models.validate(), std::invalid_argument);
    ExperimentConfig no_layers = config;
    no_layers.layers.clear();
    CHECK_THROWS_AS(no_layers.validate(), std::invalid_argument);
    ExperimentConfig zero_layer = config;
    zero_layer.layers = {0};
    CHECK_THROWS_AS(zero_layer.validate(), std::invalid_argument);
    ExperimentConfig bad_mode = config;
    bad_mode.mode = "sideways";
    CHECK_THROWS_AS(bad_mode.validate(), std::invalid_argument);
    ExperimentConfig no_repeats = config;
    no_repeats.repeats = 0;
    CHECK_THROWS_AS(no_repeats.validate(), std::invalid_argument);
}
