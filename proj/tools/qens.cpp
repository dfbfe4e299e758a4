#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qens/bench/experiment.hpp"
#include "qens/bench/report.hpp"
#include "qens/data/csv.hpp"

namespace {

qens::Backend override_backend(const qens::Backend& current, const std::string& kind) {
    using qens::Backend;
    if (kind == "exact") return Backend::exact();
    if (kind == "shots") {
        const int shots = current.kind == Backend::Kind::shots ? current.shots : 1024;
        return Backend::with_shots(shots, 0);
    }
    const int trajectories = current.kind == Backend::Kind::noisy ? current.trajectories : 100;
    const qens::NoiseModel noise =
        current.kind == Backend::Kind::noisy ? current.noise : qens::NoiseModel::lagos();
    return Backend::with_noise(noise, trajectories, 0);
}

int cmd_run(qens::ExperimentConfig config) {
    if (config.mode == "noise_comparison") {
        const qens::NoiseComparison result = qens::noise_comparison(config);
        std::printf("noise comparison (%d pairs) -> %s\n", static_cast<int>(result.fm_mse.size()),
                    config.output_dir.c_str());
        std::printf("  FM   mean MSE %.6f  var %.3e\n", result.fm_mean, result.fm_var);
        std::printf("  Bag  mean MSE %.6f  var %.3e\n", result.bag_mean, result.bag_var);
        std::printf("  mean ratio %.4f  var ratio %.4f\n", result.mean_ratio, result.var_ratio);
        return 0;
    }

    const std::vector<qens::RunRecord> records = qens::run_experiment(config);
    int failed = 0;
    for (const qens::RunRecord& r : records)
        if (!r.ok) ++failed;
    std::printf("%d records -> %s\n", static_cast<int>(records.size()),
                config.output_dir.c_str());
    if (failed > 0) {
        std::printf("%d run(s) failed; see records.csv for details\n", failed);
        for (const qens::RunRecord& r : records)
            if (!r.ok)
                std::fprintf(stderr, "  %s layers=%d repeat=%d: %s\n", r.model_id.c_str(),
                             r.layers, r.repeat, r.error.c_str());
    }
    return 0;
}

int cmd_report(const std::string& records_dir, const std::string& metric_label) {
    const auto path = std::filesystem::path(records_dir) / "records.csv";
    const std::vector<qens::RunRecord> records = qens::read_records_csv(path.string());
    if (records.empty()) {
        std::fprintf(stderr, "no records in %s\n", path.string().c_str());
        return 1;
    }
    qens::emit_report(records, records_dir, records.front().dataset, metric_label);
    std::printf("report for %d records -> %s\n", static_cast<int>(records.size()),
                records_dir.c_str());
    return 0;
}

int cmd_resources(const qens::ExperimentConfig& config, const std::string& out_path) {
    int n_features = config.dataset.n_features;
    if (!config.dataset.csv_path.empty()) {
        qens::CsvSchema schema;
        schema.task = config.dataset.task;
        schema.target_column = config.dataset.target_column;
        n_features = qens::load_csv(config.dataset.csv_path, schema).n_cols;
    }

    const std::vector<qens::SummaryRow> rows = qens::resource_rows(config, n_features);
    std::printf("%-14s %6s %8s %7s %7s %10s %6s %13s\n", "model", "layers", "members", "qubits",
                "params", "rotations", "cnots", "total_params");
    for (const qens::SummaryRow& row : rows) {
        const qens::ResourceReport& r = row.member_resources;
        std::printf("%-14s %6d %8d %7d %7lld %10lld %6lld %13lld\n", row.model.c_str(),
                    row.layers, row.n_members, r.n_qubits, r.trainable_params, r.rotation_gates,
                    r.cnot_gates, row.n_members * r.trainable_params);
    }
    if (!out_path.empty()) {
        qens::write_resource_csv(out_path, rows);
        std::printf("resource table -> %s\n", out_path.c_str());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ensemble QNN training and benchmark harness"};
    app.require_subcommand(1);

    std::string config_path;
    std::string records_dir;
    std::string out_dir;
    std::string backend_name;
    std::string metric_label = "test metric";
    std::string resources_out;
    std::uint64_t seed = 0;
    int jobs = -1;

    CLI::App* run = app.add_subcommand("run", "run a configured experiment");
    run->add_option("config", config_path, "JSON experiment config")
        ->required()
        ->check(CLI::ExistingFile);
    CLI::Option* seed_opt = run->add_option("--seed", seed, "override the root seed");
    run->add_option("--jobs", jobs, "worker threads (0 = all hardware threads)");
    run->add_option("--backend", backend_name, "override the backend kind")
        ->check(CLI::IsMember({"exact", "shots", "noisy"}));
    run->add_option("--out", out_dir, "override the output directory");

    CLI::App* report = app.add_subcommand("report", "rebuild summary files from records.csv");
    report->add_option("records-dir", records_dir, "directory holding records.csv")
        ->required()
        ->check(CLI::ExistingDirectory);
    report->add_option("--metric-label", metric_label, "label for the plotted test metric");

    CLI::App* resources = app.add_subcommand("resources", "print the circuit resource table");
    resources->add_option("config", config_path, "JSON experiment config")
        ->required()
        ->check(CLI::ExistingFile);
    resources->add_option("--out", resources_out, "also write the table as CSV");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            qens::ExperimentConfig config = qens::ExperimentConfig::from_json_file(config_path);
            if (seed_opt->count() > 0) config.seed = seed;
            if (jobs >= 0) config.jobs = jobs;
            if (!backend_name.empty()) config.backend = override_backend(config.backend, backend_name);
            if (!out_dir.empty()) config.output_dir = out_dir;
            config.train.backend = config.backend;
            return cmd_run(std::move(config));
        }
        if (report->parsed()) return cmd_report(records_dir, metric_label);
        if (resources->parsed())
            return cmd_resources(qens::ExperimentConfig::from_json_file(config_path),
                                 resources_out);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
