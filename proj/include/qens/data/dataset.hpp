#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace qens {

enum class TaskKind { regression, classification };

// In-memory dataset: row-major feature matrix plus either real targets
// (regression, scaled space) or 0-based class labels (classification).
struct Dataset {
    TaskKind task = TaskKind::regression;
    int n_rows = 0;
    int n_cols = 0;
    std::vector<double> features;  // n_rows * n_cols, row-major
    std::vector<double> targets;   // regression only
    std::vector<int> labels;       // classification only
    int n_classes = 0;             // classification only
    std::vector<std::string> column_names;  // optional, feature columns

    double at(int row, int col) const {
        return features[static_cast<std::size_t>(row) * static_cast<std::size_t>(n_cols) +
                        static_cast<std::size_t>(col)];
    }
    std::vector<double> row(int r) const;

    // throws std::invalid_argument on inconsistent shapes
    void validate() const;
};

// Copies the given rows (indices may repeat, e.g. bootstrap resamples).
Dataset select_rows(const Dataset& data, const std::vector<int>& rows);

// Copies the given feature columns in the given order; targets are kept.
Dataset select_columns(const Dataset& data, const std::vector<int>& cols);

// Per-column min/max statistics fitted on training data only. Regression
// targets get their own min/max; classification labels are never scaled.
struct ScalerParams {
    std::vector<double> col_min;
    std::vector<double> col_max;
    bool scale_target = false;
    double target_min = 0.0;
    double target_max = 0.0;
};

ScalerParams fit_scaler(const Dataset& train);

// Affine map col -> 2 (col - min) / (max - min) - 1 per column (and the
// regression target), clamped to [-1, 1] so out-of-range test values stay
// valid rotation angles. Constant columns map to 0.
Dataset apply_scaler(const Dataset& data, const ScalerParams& params);

// Inverse of apply_scaler for values that were not clamped (train data).
Dataset invert_scaler(const Dataset& scaled, const ScalerParams& params);

// Inverse map for a single regression target value (reporting helper).
double inverse_scale_target(double value, const ScalerParams& params);

// Uniformly shuffled, disjoint, exhaustive split with floor(fraction * N)
// training rows. Requires N >= 5; deterministic per seed.
std::pair<Dataset, Dataset> train_test_split(const Dataset& data, double train_fraction,
                                             std::uint64_t seed);

}  // namespace qens
