#include "qens/bench/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <utility>

#include "json.hpp"
#include "qens/bench/report.hpp"
#include "qens/data/csv.hpp"
#include "qens/data/synthetic.hpp"
#include "qens/rng.hpp"

namespace qens {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

double parse_ratio(const std::string& text) {
    std::size_t used = 0;
    double value = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument("bad ratio '" + text + "'");
    return value;
}

Backend backend_from_json(const json& node) {
    const std::string kind = node.value("kind", "exact");
    if (kind == "exact") return Backend::exact();
    if (kind == "shots") {
        const int shots = node.value("shots", 1024);
        return Backend::with_shots(shots, 0);
    }
    if (kind == "noisy") {
        NoiseModel noise = NoiseModel::lagos();
        if (node.contains("noise")) {
            const json& nn = node.at("noise");
            const std::string preset = nn.value("preset", "lagos");
            if (preset != "lagos") throw std::invalid_argument("unknown noise preset '" + preset + "'");
            noise.single_qubit_error = nn.value("single_qubit_error", noise.single_qubit_error);
            noise.two_qubit_error = nn.value("two_qubit_error", noise.two_qubit_error);
            if (nn.contains("topology")) {
                noise.topology.clear();
                for (const auto& edge : nn.at("topology"))
                    noise.topology.push_back({edge.at(0).get<int>(), edge.at(1).get<int>()});
            }
        }
        const int trajectories = node.value("trajectories", 100);
        return Backend::with_noise(noise, trajectories, 0);
    }
    throw std::invalid_argument("unknown backend kind '" + kind + "'");
}

// per-ensemble evaluation backend with a seed derived from the run seed, so
// stochastic evaluations are reproducible and distinct from training draws
Backend eval_backend(const Backend& base, std::uint64_t seed, const char* label) {
    if (base.is_exact()) return base;
    return base.reseeded(derive_seed(seed, label));
}

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

double population_var(const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    const double m = mean_of(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return s / static_cast<double>(v.size());
}

}  // namespace

void DatasetSpec::validate() const {
    if (name.empty()) throw std::invalid_argument("dataset name must not be empty");
    if (csv_path.empty()) {
        if (name != "linear")
            throw std::invalid_argument("unknown built-in dataset '" + name +
                                        "' (built-ins: linear; otherwise set csv_path)");
        if (task != TaskKind::regression)
            throw std::invalid_argument("built-in linear dataset is a regression task");
        if (n_rows < 5) throw std::invalid_argument("dataset n_rows must be >= 5");
        if (n_features < 1) throw std::invalid_argument("dataset n_features must be >= 1");
        if (sigma < 0.0) throw std::invalid_argument("dataset sigma must be >= 0");
    }
}

ModelSpec ModelSpec::parse(const std::string& text) {
    ModelSpec spec;
    spec.id = text;
    if (text == "FM") {
        spec.kind = Kind::fm;
        return spec;
    }
    if (text == "AdaBoost") {
        spec.kind = Kind::adaboost;
        return spec;
    }
    if (text.rfind("Bag_", 0) == 0) {
        const std::string rest = text.substr(4);
        const std::size_t sep = rest.find('_');
        if (sep != std::string::npos) {
            spec.kind = Kind::bagging;
            spec.feature_ratio = parse_ratio(rest.substr(0, sep));
            spec.sample_ratio = parse_ratio(rest.substr(sep + 1));
            if (spec.feature_ratio <= 0.0 || spec.feature_ratio > 1.0 ||
                spec.sample_ratio <= 0.0 || spec.sample_ratio > 1.0)
                throw std::invalid_argument("model '" + text + "' has ratios outside (0,1]");
            return spec;
        }
    }
    throw std::invalid_argument("invalid model id '" + text +
                                "' (expected FM, Bag_<rf>_<rn>, or AdaBoost)");
}

void ExperimentConfig::validate() const {
    dataset.validate();
    if (models.empty()) throw std::invalid_argument("model list must not be empty");
    if (layers.empty()) throw std::invalid_argument("layer list must not be empty");
    for (int l : layers)
        if (l < 1) throw std::invalid_argument("layer counts must be >= 1");
    if (repeats < 1) throw std::invalid_argument("repeats must be >= 1");
    if (n_estimators < 1) throw std::invalid_argument("n_estimators must be >= 1");
    if (jobs < 0) throw std::invalid_argument("jobs must be >= 0");
    if (mode != "grid" && mode != "noise_comparison")
        throw std::invalid_argument("mode must be 'grid' or 'noise_comparison'");
    if (output_dir.empty()) throw std::invalid_argument("output_dir must not be empty");
    train.validate();
    backend.validate();
}

ExperimentConfig ExperimentConfig::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
    json root;
    try {
        root = json::parse(in);
    } catch (const json::exception& e) {
        throw std::runtime_error("config '" + path + "': " + e.what());
    }

    ExperimentConfig config;
    try {
        config.mode = root.value("mode", "grid");
        config.seed = root.value("seed", std::uint64_t{0});
        config.output_dir = root.value("output_dir", "");
        config.repeats = root.value("repeats", 10);
        config.jobs = root.value("jobs", 0);

        if (root.contains("dataset")) {
            const json& ds = root.at("dataset");
            config.dataset.name = ds.value("name", "linear");
            config.dataset.csv_path = ds.value("csv_path", "");
            const std::string task = ds.value("task", "regression");
            if (task == "regression") config.dataset.task = TaskKind::regression;
            else if (task == "classification") config.dataset.task = TaskKind::classification;
            else throw std::invalid_argument("dataset task must be regression or classification");
            config.dataset.target_column = ds.value("target_column", -1);
            config.dataset.n_rows = ds.value("n_rows", 250);
            config.dataset.n_features = ds.value("n_features", 5);
            config.dataset.sigma = ds.value("sigma", 0.1);
        }

        if (root.contains("models")) {
            config.models.clear();
            for (const auto& entry : root.at("models"))
                config.models.push_back(ModelSpec::parse(entry.get<std::string>()));
        }

        if (root.contains("layers")) {
            config.layers.clear();
            for (const auto& entry : root.at("layers")) config.layers.push_back(entry.get<int>());
        }

        if (root.contains("ensemble")) {
            const json& en = root.at("ensemble");
            config.n_estimators = en.value("n_estimators", 10);
            const std::string rounding = en.value("subspace_rounding", "half_up");
            if (rounding == "half_up") config.subspace_rounding = SubspaceRounding::half_up;
            else if (rounding == "floor") config.subspace_rounding = SubspaceRounding::floor;
            else throw std::invalid_argument("subspace_rounding must be half_up or floor");
        }

        if (root.contains("train")) {
            const json& tr = root.at("train");
            config.train.epochs = tr.value("epochs", config.train.epochs);
            config.train.learning_rate = tr.value("learning_rate", config.train.learning_rate);
            const std::string method = tr.value("gradient_method", "adjoint");
            if (method == "adjoint") config.train.gradient_method = GradientMethod::adjoint;
            else if (method == "parameter_shift")
                config.train.gradient_method = GradientMethod::parameter_shift;
            else throw std::invalid_argument("gradient_method must be adjoint or parameter_shift");
        }

        if (root.contains("backend")) config.backend = backend_from_json(root.at("backend"));
        config.train.backend = config.backend;
    } catch (const json::exception& e) {
        throw std::runtime_error("config '" + path + "': " + e.what());
    }

    // CSV paths are resolved relative to the working directory first, then to
    // the config file's own directory
    if (!config.dataset.csv_path.empty() && !std::filesystem::exists(config.dataset.csv_path)) {
        const auto beside = std::filesystem::path(path).parent_path() / config.dataset.csv_path;
        if (std::filesystem::exists(beside)) config.dataset.csv_path = beside.string();
    }

    // output directory: config value, then the QENS_OUT_DIR environment
    // variable, then ./results
    if (config.output_dir.empty()) {
        const char* env = std::getenv("QENS_OUT_DIR");
        config.output_dir = (env != nullptr && *env != '\0') ? env : "results";
    }

    config.validate();
    return config;
}

std::uint64_t run_seed(std::uint64_t root, const std::string& model_id, int layers,
                       int repeat) {
    const std::uint64_t per_model = derive_seed(root, model_id, static_cast<std::uint64_t>(layers));
    return derive_seed(per_model, "repeat", static_cast<std::uint64_t>(repeat));
}

PreparedData prepare_data(const DatasetSpec& spec, std::uint64_t root_seed) {
    spec.validate();
    Dataset full;
    if (spec.csv_path.empty()) {
        full = generate_linear(spec.n_rows, spec.n_features, spec.sigma,
                               derive_seed(root_seed, "dataset"));
    } else {
        CsvSchema schema;
        schema.task = spec.task;
        schema.target_column = spec.target_column;
        full = load_csv(spec.csv_path, schema);
    }

    auto [train_raw, test_raw] = train_test_split(full, 0.8, derive_seed(root_seed, "data"));
    PreparedData data;
    data.scaler = fit_scaler(train_raw);
    data.train = apply_scaler(train_raw, data.scaler);
    data.test = apply_scaler(test_raw, data.scaler);
    return data;
}

RunRecord run_cell(const PreparedData& data, const ExperimentConfig& config,
                   const ModelSpec& model, int layers, int repeat) {
    RunRecord record;
    record.model_id = model.id;
    record.dataset = config.dataset.name;
    record.layers = layers;
    record.repeat = repeat;
    record.seed = run_seed(config.seed, model.id, layers, repeat);

    const Dataset& train_set = data.train;
    const int d = train_set.n_cols;
    const bool regression = train_set.task == TaskKind::regression;

    TrainConfig tr = config.train;
    tr.seed = record.seed;
    tr.backend = config.backend;

    const auto started = std::chrono::steady_clock::now();
    try {
        Backend train_eval = eval_backend(config.backend, record.seed, "eval.train");
        Backend test_eval = eval_backend(config.backend, record.seed, "eval.test");

        if (model.kind == ModelSpec::Kind::fm) {
            QnnModel qnn;
            qnn.config = regression ? QnnConfig::regression(d, layers)
                                    : QnnConfig::classification(d, layers, train_set.n_classes);
            train(qnn, train_set, tr);
            record.n_members = 1;
            record.member_resources = resource_report(qnn.config);
            if (regression) {
                record.train_metric = dataset_mse(qnn, train_set, train_eval);
                record.test_metric = dataset_mse(qnn, data.test, test_eval);
            } else {
                record.train_metric = dataset_accuracy(qnn, train_set, train_eval);
                record.test_metric = dataset_accuracy(qnn, data.test, test_eval);
            }
        } else {
            EnsembleConfig ens;
            ens.n_estimators = config.n_estimators;
            ens.seed = record.seed;
            ens.subspace_rounding = config.subspace_rounding;
            EnsembleModel fitted;
            if (model.kind == ModelSpec::Kind::bagging) {
                ens.scheme = EnsembleScheme::bagging;
                ens.sample_ratio = model.sample_ratio;
                ens.feature_ratio = model.feature_ratio;
                ens.rule = CombinationRule::average;
                fitted = fit_bagging(train_set, ens, tr, layers);
            } else if (regression) {
                ens.scheme = EnsembleScheme::adaboost_r2;
                ens.rule = CombinationRule::weighted_average;
                fitted = fit_adaboost_r2(train_set, ens, tr, layers);
            } else {
                ens.scheme = EnsembleScheme::adaboost_samme_r;
                ens.rule = CombinationRule::weighted_average;
                fitted = fit_adaboost_samme_r(train_set, ens, tr, layers);
            }
            record.n_members = static_cast<int>(fitted.members.size());
            record.member_resources = fitted.members.empty()
                                          ? ResourceReport{}
                                          : resource_report(fitted.members.front().model.config);
            if (regression) {
                record.train_metric = ensemble_mse(fitted, train_set, train_eval);
                record.test_metric = ensemble_mse(fitted, data.test, test_eval);
            } else {
                record.train_metric = ensemble_accuracy(fitted, train_set, train_eval);
                record.test_metric = ensemble_accuracy(fitted, data.test, test_eval);
            }
        }
    } catch (const std::exception& e) {
        record.ok = false;
        record.error = e.what();
    }
    record.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return record;
}

std::vector<RunRecord> run_experiment(const ExperimentConfig& config) {
    config.validate();
    if (config.mode == "noise_comparison") {
        noise_comparison(config);
        return {};
    }

    const PreparedData data = prepare_data(config.dataset, config.seed);

    std::filesystem::create_directories(config.output_dir);
    const auto records_path = std::filesystem::path(config.output_dir) / "records.csv";
    std::ofstream records_out(records_path, std::ios::trunc);
    if (!records_out) throw std::runtime_error("cannot write " + records_path.string());
    write_records_header(records_out);
    records_out.flush();

    struct Cell {
        const ModelSpec* model;
        int layers;
        int repeat;
    };
    std::vector<Cell> cells;
    for (const ModelSpec& model : config.models)
        for (int layers : config.layers)
            for (int repeat = 0; repeat < config.repeats; ++repeat)
                cells.push_back({&model, layers, repeat});

    std::vector<RunRecord> records(cells.size());
    std::atomic<std::size_t> next{0};
    std::mutex write_mutex;

    auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= cells.size()) return;
            const Cell& cell = cells[i];
            RunRecord record = run_cell(data, config, *cell.model, cell.layers, cell.repeat);
            {
                std::lock_guard<std::mutex> lock(write_mutex);
                append_record(records_out, record);
                records_out.flush();
            }
            records[i] = std::move(record);
        }
    };

    unsigned n_workers = config.jobs > 0 ? static_cast<unsigned>(config.jobs)
                                         : std::thread::hardware_concurrency();
    if (n_workers == 0) n_workers = 1;
    n_workers = std::min<unsigned>(n_workers, static_cast<unsigned>(cells.size()));

    if (n_workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (unsigned t = 0; t < n_workers; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }
    records_out.close();

    const bool regression = config.dataset.task == TaskKind::regression;
    emit_report(records, config.output_dir, config.dataset.name,
                regression ? "test MSE" : "test accuracy");
    return records;
}

NoiseComparison noise_comparison(const ExperimentConfig& config) {
    config.validate();
    if (config.dataset.task != TaskKind::regression)
        throw std::invalid_argument("noise comparison needs a regression dataset");

    const PreparedData data = prepare_data(config.dataset, config.seed);
    const ModelSpec fm = ModelSpec::parse("FM");
    const ModelSpec bag = ModelSpec::parse("Bag_0.8_0.2");
    const int layers = config.layers.size() == 1 ? config.layers.front() : 1;

    std::filesystem::create_directories(config.output_dir);
    const auto csv_path = std::filesystem::path(config.output_dir) / "noise_comparison.csv";
    std::ofstream csv(csv_path, std::ios::trunc);
    if (!csv) throw std::runtime_error("cannot write " + csv_path.string());
    csv << "repeat,fm_test_mse,bag_test_mse\n";
    csv.flush();

    NoiseComparison result;
    for (int repeat = 0; repeat < config.repeats; ++repeat) {
        const RunRecord fm_record = run_cell(data, config, fm, layers, repeat);
        if (!fm_record.ok)
            throw std::runtime_error("FM pair " + std::to_string(repeat) + ": " + fm_record.error);
        const RunRecord bag_record = run_cell(data, config, bag, layers, repeat);
        if (!bag_record.ok)
            throw std::runtime_error("Bag pair " + std::to_string(repeat) + ": " +
                                     bag_record.error);
        result.fm_mse.push_back(fm_record.test_metric);
        result.bag_mse.push_back(bag_record.test_metric);
        csv << repeat << ',' << format_double(fm_record.test_metric) << ','
            << format_double(bag_record.test_metric) << '\n';
        csv.flush();
    }

    result.fm_mean = mean_of(result.fm_mse);
    result.bag_mean = mean_of(result.bag_mse);
    result.fm_var = population_var(result.fm_mse);
    result.bag_var = population_var(result.bag_mse);
    result.mean_ratio = result.fm_mean != 0.0 ? result.bag_mean / result.fm_mean : 0.0;
    result.var_ratio = result.fm_var != 0.0 ? result.bag_var / result.fm_var : 0.0;

    ordered_json out;
    out["dataset"] = config.dataset.name;
    out["layers"] = layers;
    out["repeats"] = config.repeats;
    out["fm_mse"] = result.fm_mse;
    out["bag_mse"] = result.bag_mse;
    out["fm_mean"] = result.fm_mean;
    out["bag_mean"] = result.bag_mean;
    out["mean_ratio"] = result.mean_ratio;
    out["fm_var"] = result.fm_var;
    out["bag_var"] = result.bag_var;
    out["var_ratio"] = result.var_ratio;
    const auto json_path = std::filesystem::path(config.output_dir) / "noise_comparison.json";
    std::ofstream json_out(json_path, std::ios::trunc);
    if (!json_out) throw std::runtime_error("cannot write " + json_path.string());
    json_out << out.dump(2) << '\n';

    return result;
}

}  // namespace qens
