#include "qens/data/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "qens/rng.hpp"

namespace qens {

std::vector<double> Dataset::row(int r) const {
    const std::size_t base = static_cast<std::size_t>(r) * static_cast<std::size_t>(n_cols);
    return std::vector<double>(features.begin() + static_cast<std::ptrdiff_t>(base),
                               features.begin() + static_cast<std::ptrdiff_t>(base + n_cols));
}

void Dataset::validate() const {
    if (n_rows < 1 || n_cols < 1)
        throw std::invalid_argument("Dataset: needs at least one row and one column");
    if (features.size() != static_cast<std::size_t>(n_rows) * static_cast<std::size_t>(n_cols))
        throw std::invalid_argument("Dataset: feature buffer size mismatch");
    if (task == TaskKind::regression) {
        if (targets.size() != static_cast<std::size_t>(n_rows))
            throw std::invalid_argument("Dataset: one regression target per row required");
    } else {
        if (labels.size() != static_cast<std::size_t>(n_rows))
            throw std::invalid_argument("Dataset: one label per row required");
        if (n_classes < 2) throw std::invalid_argument("Dataset: n_classes must be >= 2");
        for (int label : labels)
            if (label < 0 || label >= n_classes)
                throw std::invalid_argument("Dataset: label out of range");
    }
    if (!column_names.empty() && column_names.size() != static_cast<std::size_t>(n_cols))
        throw std::invalid_argument("Dataset: column name count mismatch");
}

Dataset select_rows(const Dataset& data, const std::vector<int>& rows) {
    if (rows.empty()) throw std::invalid_argument("select_rows: empty index list");
    Dataset out;
    out.task = data.task;
    out.n_rows = static_cast<int>(rows.size());
    out.n_cols = data.n_cols;
    out.n_classes = data.n_classes;
    out.column_names = data.column_names;
    out.features.reserve(rows.size() * static_cast<std::size_t>(data.n_cols));
    for (int r : rows) {
        if (r < 0 || r >= data.n_rows) throw std::invalid_argument("select_rows: index out of range");
        for (int c = 0; c < data.n_cols; ++c) out.features.push_back(data.at(r, c));
        if (data.task == TaskKind::regression)
            out.targets.push_back(data.targets[static_cast<std::size_t>(r)]);
        else
            out.labels.push_back(data.labels[static_cast<std::size_t>(r)]);
    }
    return out;
}

Dataset select_columns(const Dataset& data, const std::vector<int>& cols) {
    if (cols.empty()) throw std::invalid_argument("select_columns: empty index list");
    for (int c : cols)
        if (c < 0 || c >= data.n_cols)
            throw std::invalid_argument("select_columns: index out of range");
    Dataset out;
    out.task = data.task;
    out.n_rows = data.n_rows;
    out.n_cols = static_cast<int>(cols.size());
    out.n_classes = data.n_classes;
    out.targets = data.targets;
    out.labels = data.labels;
    if (!data.column_names.empty())
        for (int c : cols) out.column_names.push_back(data.column_names[static_cast<std::size_t>(c)]);
    out.features.reserve(static_cast<std::size_t>(data.n_rows) * cols.size());
    for (int r = 0; r < data.n_rows; ++r)
        for (int c : cols) out.features.push_back(data.at(r, c));
    return out;
}

ScalerParams fit_scaler(const Dataset& train) {
    train.validate();
    ScalerParams params;
    params.col_min.assign(static_cast<std::size_t>(train.n_cols), 0.0);
    params.col_max.assign(static_cast<std::size_t>(train.n_cols), 0.0);
    for (int c = 0; c < train.n_cols; ++c) {
        double lo = train.at(0, c), hi = train.at(0, c);
        for (int r = 1; r < train.n_rows; ++r) {
            lo = std::min(lo, train.at(r, c));
            hi = std::max(hi, train.at(r, c));
        }
        params.col_min[static_cast<std::size_t>(c)] = lo;
        params.col_max[static_cast<std::size_t>(c)] = hi;
    }
    if (train.task == TaskKind::regression) {
        params.scale_target = true;
        params.target_min = *std::min_element(train.targets.begin(), train.targets.end());
        params.target_max = *std::max_element(train.targets.begin(), train.targets.end());
    }
    return params;
}

namespace {

double scale_value(double value, double lo, double hi) {
    if (hi <= lo) return 0.0;  // constant column
    const double scaled = 2.0 * (value - lo) / (hi - lo) - 1.0;
    return std::clamp(scaled, -1.0, 1.0);
}

double unscale_value(double scaled, double lo, double hi) {
    if (hi <= lo) return lo;
    return lo + (scaled + 1.0) * (hi - lo) / 2.0;
}

}  // namespace

Dataset apply_scaler(const Dataset& data, const ScalerParams& params) {
    if (params.col_min.size() != static_cast<std::size_t>(data.n_cols))
        throw std::invalid_argument("apply_scaler: column count mismatch");
    Dataset out = data;
    for (int r = 0; r < data.n_rows; ++r)
        for (int c = 0; c < data.n_cols; ++c) {
            const std::size_t idx = static_cast<std::size_t>(r) * static_cast<std::size_t>(data.n_cols) +
                                    static_cast<std::size_t>(c);
            out.features[idx] = scale_value(data.features[idx], params.col_min[static_cast<std::size_t>(c)],
                                            params.col_max[static_cast<std::size_t>(c)]);
        }
    if (data.task == TaskKind::regression && params.scale_target)
        for (double& y : out.targets) y = scale_value(y, params.target_min, params.target_max);
    return out;
}

Dataset invert_scaler(const Dataset& scaled, const ScalerParams& params) {
    if (params.col_min.size() != static_cast<std::size_t>(scaled.n_cols))
        throw std::invalid_argument("invert_scaler: column count mismatch");
    Dataset out = scaled;
    for (int r = 0; r < scaled.n_rows; ++r)
        for (int c = 0; c < scaled.n_cols; ++c) {
            const std::size_t idx = static_cast<std::size_t>(r) * static_cast<std::size_t>(scaled.n_cols) +
                                    static_cast<std::size_t>(c);
            out.features[idx] = unscale_value(scaled.features[idx],
                                              params.col_min[static_cast<std::size_t>(c)],
                                              params.col_max[static_cast<std::size_t>(c)]);
        }
    if (scaled.task == TaskKind::regression && params.scale_target)
        for (double& y : out.targets) y = unscale_value(y, params.target_min, params.target_max);
    return out;
}

double inverse_scale_target(double value, const ScalerParams& params) {
    if (!params.scale_target)
        throw std::invalid_argument("inverse_scale_target: scaler has no target statistics");
    return unscale_value(value, params.target_min, params.target_max);
}

std::pair<Dataset, Dataset> train_test_split(const Dataset& data, double train_fraction,
                                             std::uint64_t seed) {
    data.validate();
    if (data.n_rows < 5) throw std::invalid_argument("train_test_split: need at least 5 rows");
    if (train_fraction <= 0.0 || train_fraction >= 1.0)
        throw std::invalid_argument("train_test_split: fraction must be in (0, 1)");
    std::vector<int> order(static_cast<std::size_t>(data.n_rows));
    std::iota(order.begin(), order.end(), 0);
    Rng rng(derive_seed(seed, "split"));
    rng.shuffle(order);
    const int n_train = static_cast<int>(std::floor(train_fraction * data.n_rows));
    if (n_train < 1 || n_train >= data.n_rows)
        throw std::invalid_argument("train_test_split: degenerate split");
    const std::vector<int> train_rows(order.begin(), order.begin() + n_train);
    const std::vector<int> test_rows(order.begin() + n_train, order.end());
    return {select_rows(data, train_rows), select_rows(data, test_rows)};
}

}  // namespace qens
