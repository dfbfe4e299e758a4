#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qens/data/dataset.hpp"
#include "qens/ensemble/ensemble.hpp"
#include "qens/optim/train.hpp"
#include "qens/qnn/backend.hpp"
#include "qens/qnn/circuit.hpp"

namespace qens {

// where the experiment's data comes from: the built-in linear generator
// (csv_path empty) or a CSV file on disk
struct DatasetSpec {
    std::string name = "linear";  // identifier used in result files
    std::string csv_path;
    TaskKind task = TaskKind::regression;
    int target_column = -1;  // CSV only; -1 = last column
    // built-in generator settings
    int n_rows = 250;
    int n_features = 5;
    double sigma = 0.1;

    void validate() const;
};

// one model configuration: the full baseline, a bagging grid entry, or boosting
struct ModelSpec {
    enum class Kind { fm, bagging, adaboost };

    Kind kind = Kind::fm;
    double feature_ratio = 1.0;  // bagging only
    double sample_ratio = 1.0;   // bagging only
    std::string id = "FM";

    // accepted ids: "FM", "Bag_<rf>_<rn>" (e.g. "Bag_0.8_0.2"), "AdaBoost";
    // throws std::invalid_argument on anything else
    static ModelSpec parse(const std::string& text);
};

struct ExperimentConfig {
    DatasetSpec dataset;
    std::vector<ModelSpec> models;
    std::vector<int> layers;
    int repeats = 10;
    std::uint64_t seed = 0;
    int n_estimators = 10;
    SubspaceRounding subspace_rounding = SubspaceRounding::half_up;
    TrainConfig train;  // seed and backend are overridden per run
    Backend backend = Backend::exact();
    std::string output_dir = "results";
    std::string mode = "grid";  // "grid" | "noise_comparison"
    int jobs = 0;               // worker threads; 0 = hardware concurrency

    void validate() const;

    // JSON config file; see README for the schema and shipped examples
    static ExperimentConfig from_json_file(const std::string& path);
};

// one grid cell's outcome; metrics are MSE (regression) or accuracy
// (classification), and resources are per ensemble member
struct RunRecord {
    std::string model_id;
    std::string dataset;
    int layers = 0;
    int repeat = 0;
    std::uint64_t seed = 0;
    double train_metric = 0.0;
    double test_metric = 0.0;
    double wall_time = 0.0;  // seconds
    int n_members = 1;
    ResourceReport member_resources;
    bool ok = true;
    std::string error;
};

// deterministic per-cell seed: a hash chain over (root, model id, layers,
// repeat); stable across versions
std::uint64_t run_seed(std::uint64_t root, const std::string& model_id, int layers,
                       int repeat);

// shared data pipeline: resolve the dataset, split 80/20 with a seed fixed by
// the root seed alone (all grid cells see the same split), min-max scale with
// train-set statistics
struct PreparedData {
    Dataset train;
    Dataset test;
    ScalerParams scaler;
};
PreparedData prepare_data(const DatasetSpec& spec, std::uint64_t root_seed);

// trains and scores one (model, layers, repeat) cell; training failures are
// captured in the record (ok = false) instead of propagating
RunRecord run_cell(const PreparedData& data, const ExperimentConfig& config,
                   const ModelSpec& model, int layers, int repeat);

// full grid (models x layers x repeats). Records stream into
// <output_dir>/records.csv as cells finish (append + flush per record);
// summary.csv, summary.json, resources.csv, and an SVG plot are written at
// the end. Rerunning with the same config and seed reproduces the summary
// files byte for byte.
std::vector<RunRecord> run_experiment(const ExperimentConfig& config);

// paired FM vs Bag_0.8_0.2 comparison under the configured backend
struct NoiseComparison {
    std::vector<double> fm_mse;
    std::vector<double> bag_mse;
    double fm_mean = 0.0;
    double bag_mean = 0.0;
    double mean_ratio = 0.0;  // bag_mean / fm_mean
    double fm_var = 0.0;
    double bag_var = 0.0;
    double var_ratio = 0.0;  // bag_var / fm_var
};

// runs `repeats` paired (FM, Bag_0.8_0.2) cells at the configured layer count
// on a regression dataset and writes noise_comparison.csv /
// noise_comparison.json into output_dir
NoiseComparison noise_comparison(const ExperimentConfig& config);

}  // namespace qens
