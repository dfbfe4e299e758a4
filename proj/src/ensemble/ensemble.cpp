#include "qens/ensemble/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qens {

namespace {

constexpr double beta_min = 1e-10;

void check_fit_inputs(const Dataset& train_set, const EnsembleConfig& ens, const TrainConfig& tr,
                      int layers) {
    train_set.validate();
    ens.validate();
    tr.validate();
    if (layers < 1) throw std::invalid_argument("ensemble fit: layers must be >= 1");
}

std::uint64_t member_seed(const TrainConfig& tr, int member) {
    // member 0 replays the baseline training seed exactly (degenerate
    // ensembles must reproduce the FM fit bitwise)
    return member == 0 ? tr.seed : derive_seed(tr.seed, "member", static_cast<std::uint64_t>(member));
}

QnnConfig member_config(const Dataset& train_set, int n_qubits, int layers) {
    if (train_set.task == TaskKind::regression) return QnnConfig::regression(n_qubits, layers);
    if (n_qubits < train_set.n_classes)
        throw std::invalid_argument(
            "ensemble fit: member subspace has fewer qubits than classes; "
            "raise the feature ratio");
    return QnnConfig::classification(n_qubits, layers, train_set.n_classes);
}

std::vector<int> identity_indices(int n) {
    std::vector<int> indices(static_cast<std::size_t>(n));
    std::iota(indices.begin(), indices.end(), 0);
    return indices;
}

// N draws from the categorical distribution given by `weights` (assumed
// normalized), via CDF inversion.
std::vector<int> weighted_bootstrap(const std::vector<double>& weights, Rng& rng) {
    std::vector<double> cdf(weights.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        acc += weights[i];
        cdf[i] = acc;
    }
    cdf.back() = std::max(cdf.back(), 1.0);
    std::vector<int> indices(weights.size());
    for (int& index : indices) {
        const double u = rng.uniform();
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        index = static_cast<int>(std::min<std::size_t>(
            static_cast<std::size_t>(it - cdf.begin()), weights.size() - 1));
    }
    return indices;
}

std::vector<double> restrict_features(const std::vector<double>& x,
                                      const std::vector<int>& feature_indices) {
    std::vector<double> sub;
    sub.reserve(feature_indices.size());
    for (int c : feature_indices) sub.push_back(x[static_cast<std::size_t>(c)]);
    return sub;
}

FitResult train_member(QnnModel& model, const Dataset& data, const TrainConfig& tr, int member,
                       const std::vector<double>* sample_weights = nullptr) {
    try {
        return train(model, data, tr, sample_weights);
    } catch (const std::exception& e) {
        throw std::runtime_error("ensemble member " + std::to_string(member) +
                                 " failed to train: " + e.what());
    }
}

}  // namespace

void EnsembleConfig::validate() const {
    if (n_estimators < 1) throw std::invalid_argument("EnsembleConfig: n_estimators must be >= 1");
    if (!(sample_ratio > 0.0) || sample_ratio > 1.0)
        throw std::invalid_argument("EnsembleConfig: sample_ratio must be in (0, 1]");
    if (!(feature_ratio > 0.0) || feature_ratio > 1.0)
        throw std::invalid_argument("EnsembleConfig: feature_ratio must be in (0, 1]");
}

EnsembleModel fit_bagging(const Dataset& train_set, const EnsembleConfig& ens,
                          const TrainConfig& tr, int layers) {
    check_fit_inputs(train_set, ens, tr, layers);
    EnsembleModel model;
    model.scheme = EnsembleScheme::bagging;
    model.task = train_set.task;
    model.rule = ens.rule;
    model.n_classes = train_set.n_classes;
    for (int m = 0; m < ens.n_estimators; ++m) {
        Rng sample_rng(derive_seed(ens.seed, "bag.sample", static_cast<std::uint64_t>(m)));
        EnsembleMember member;
        member.feature_indices =
            ens.feature_ratio == 1.0
                ? identity_indices(train_set.n_cols)
                : subspace_indices(train_set.n_cols, ens.feature_ratio, sample_rng,
                                   ens.subspace_rounding);
        Dataset member_data = select_columns(train_set, member.feature_indices);
        // r_n = 1.0 keeps every row in original order so a degenerate
        // ensemble reproduces the baseline fit bitwise; smaller ratios draw a
        // true bootstrap
        if (ens.sample_ratio != 1.0) {
            const std::vector<int> rows =
                bootstrap_indices(train_set.n_rows, ens.sample_ratio, sample_rng);
            member_data = select_rows(member_data, rows);
        }
        member.model.config =
            member_config(train_set, static_cast<int>(member.feature_indices.size()), layers);
        TrainConfig member_tr = tr;
        member_tr.seed = member_seed(tr, m);
        train_member(member.model, member_data, member_tr, m);
        member.weight = 1.0;
        model.members.push_back(std::move(member));
    }
    return model;
}

R2Update adaboost_r2_update(const std::vector<double>& weights,
                            const std::vector<double>& abs_errors) {
    if (weights.empty() || weights.size() != abs_errors.size())
        throw std::invalid_argument("adaboost_r2_update: weights and errors must match");
    R2Update update;
    const double denom = *std::max_element(abs_errors.begin(), abs_errors.end());
    // linear loss; a zero denominator means a perfect fit, every L_i = 0
    std::vector<double> losses(abs_errors.size(), 0.0);
    if (denom > 0.0)
        for (std::size_t i = 0; i < abs_errors.size(); ++i) losses[i] = abs_errors[i] / denom;
    update.avg_loss = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) update.avg_loss += weights[i] * losses[i];
    update.accept = update.avg_loss < 0.5;
    update.beta = std::max(update.avg_loss / (1.0 - update.avg_loss), beta_min);
    update.member_weight = std::log(1.0 / update.beta);
    update.new_weights.resize(weights.size());
    double total = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        update.new_weights[i] = weights[i] * std::pow(update.beta, 1.0 - losses[i]);
        total += update.new_weights[i];
    }
    for (double& w : update.new_weights) w /= total;
    return update;
}

EnsembleModel fit_adaboost_r2(const Dataset& train_set, const EnsembleConfig& ens,
                              const TrainConfig& tr, int layers) {
    check_fit_inputs(train_set, ens, tr, layers);
    if (train_set.task != TaskKind::regression)
        throw std::invalid_argument("fit_adaboost_r2: regression data required");
    EnsembleModel model;
    model.scheme = EnsembleScheme::adaboost_r2;
    model.task = TaskKind::regression;
    model.rule = ens.rule;

    const int n = train_set.n_rows;
    std::vector<double> weights(static_cast<std::size_t>(n), 1.0 / static_cast<double>(n));
    Backend exact = Backend::exact();
    for (int m = 0; m < ens.n_estimators; ++m) {
        Rng sample_rng(derive_seed(ens.seed, "boost.sample", static_cast<std::uint64_t>(m)));
        const std::vector<int> rows = weighted_bootstrap(weights, sample_rng);
        const Dataset member_data = select_rows(train_set, rows);

        EnsembleMember member;
        member.feature_indices = identity_indices(train_set.n_cols);  // boosting uses all features
        member.model.config = member_config(train_set, train_set.n_cols, layers);
        TrainConfig member_tr = tr;
        member_tr.seed = member_seed(tr, m);
        train_member(member.model, member_data, member_tr, m);

        std::vector<double> abs_errors(static_cast<std::size_t>(n), 0.0);
        for (int r = 0; r < n; ++r)
            abs_errors[static_cast<std::size_t>(r)] =
                std::abs(predict_value(member.model, train_set.row(r), exact) -
                         train_set.targets[static_cast<std::size_t>(r)]);

        const R2Update update = adaboost_r2_update(weights, abs_errors);
        if (!update.accept) {
            // the boosting assumption failed; never return an empty ensemble
            if (model.members.empty()) {
                member.weight = 1.0;
                model.members.push_back(std::move(member));
            }
            break;
        }
        member.weight = update.member_weight;
        model.members.push_back(std::move(member));
        weights = update.new_weights;
        if (update.beta <= beta_min) break;  // perfect fit: finalize
    }
    return model;
}

std::vector<double> samme_r_class_scores(const std::vector<double>& probs) {
    const std::size_t k = probs.size();
    if (k < 2) throw std::invalid_argument("samme_r_class_scores: need at least 2 classes");
    std::vector<double> logs(k);
    double mean_log = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
        logs[c] = std::log(std::clamp(probs[c], 1e-12, 1.0));
        mean_log += logs[c];
    }
    mean_log /= static_cast<double>(k);
    std::vector<double> scores(k);
    for (std::size_t c = 0; c < k; ++c)
        scores[c] = static_cast<double>(k - 1) * (logs[c] - mean_log);
    return scores;
}

std::vector<double> samme_r_weight_update(const std::vector<double>& weights,
                                          const std::vector<std::vector<double>>& probs,
                                          const std::vector<int>& labels) {
    if (weights.empty() || weights.size() != probs.size() || weights.size() != labels.size())
        throw std::invalid_argument("samme_r_weight_update: input lengths must match");
    const std::size_t k = probs[0].size();
    if (k < 2) throw std::invalid_argument("samme_r_weight_update: need at least 2 classes");
    std::vector<double> updated(weights.size());
    double total = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (probs[i].size() != k)
            throw std::invalid_argument("samme_r_weight_update: inconsistent class counts");
        const int label = labels[i];
        if (label < 0 || label >= static_cast<int>(k))
            throw std::invalid_argument("samme_r_weight_update: label out of range");
        // y . log p with the +-1/(k-1) coding: +log p_label minus the mean of
        // the other classes' logs
        double dot = 0.0;
        for (std::size_t c = 0; c < k; ++c) {
            const double logp = std::log(std::clamp(probs[i][c], 1e-12, 1.0));
            dot += (static_cast<int>(c) == label ? 1.0 : -1.0 / static_cast<double>(k - 1)) * logp;
        }
        updated[i] = weights[i] *
                     std::exp(-(static_cast<double>(k - 1) / static_cast<double>(k)) * dot);
        total += updated[i];
    }
    for (double& w : updated) w /= total;
    return updated;
}

EnsembleModel fit_adaboost_samme_r(const Dataset& train_set, const EnsembleConfig& ens,
                                   const TrainConfig& tr, int layers) {
    check_fit_inputs(train_set, ens, tr, layers);
    if (train_set.task != TaskKind::classification)
        throw std::invalid_argument("fit_adaboost_samme_r: classification data required");
    EnsembleModel model;
    model.scheme = EnsembleScheme::adaboost_samme_r;
    model.task = TaskKind::classification;
    model.rule = ens.rule;
    model.n_classes = train_set.n_classes;

    const int n = train_set.n_rows;
    std::vector<double> weights(static_cast<std::size_t>(n), 1.0 / static_cast<double>(n));
    Backend exact = Backend::exact();
    for (int m = 0; m < ens.n_estimators; ++m) {
        EnsembleMember member;
        member.feature_indices = identity_indices(train_set.n_cols);
        member.model.config = member_config(train_set, train_set.n_cols, layers);
        TrainConfig member_tr = tr;
        member_tr.seed = member_seed(tr, m);
        // SAMME.R reweights the loss directly instead of resampling
        train_member(member.model, train_set, member_tr, m, &weights);

        std::vector<std::vector<double>> probs(static_cast<std::size_t>(n));
        for (int r = 0; r < n; ++r)
            probs[static_cast<std::size_t>(r)] = predict_proba(member.model, train_set.row(r), exact);
        weights = samme_r_weight_update(weights, probs, train_set.labels);

        member.weight = 1.0;  // SAMME.R members are unweighted
        model.members.push_back(std::move(member));
    }
    return model;
}

double predict_ensemble_value(const EnsembleModel& model, const std::vector<double>& x,
                              Backend& backend) {
    if (model.task != TaskKind::regression)
        throw std::invalid_argument("predict_ensemble_value: regression model required");
    if (model.members.empty()) throw std::invalid_argument("predict_ensemble_value: empty ensemble");
    std::vector<double> outputs;
    std::vector<double> weights;
    outputs.reserve(model.members.size());
    weights.reserve(model.members.size());
    for (const EnsembleMember& member : model.members) {
        outputs.push_back(
            predict_value(member.model, restrict_features(x, member.feature_indices), backend));
        weights.push_back(member.weight);
    }
    return combine_regression(outputs, model.rule, weights);
}

int predict_ensemble_class(const EnsembleModel& model, const std::vector<double>& x,
                           Backend& backend) {
    if (model.task != TaskKind::classification)
        throw std::invalid_argument("predict_ensemble_class: classification model required");
    if (model.members.empty()) throw std::invalid_argument("predict_ensemble_class: empty ensemble");
    if (model.scheme == EnsembleScheme::adaboost_samme_r) {
        // argmax over summed member contributions h_c(x)
        std::vector<double> total(static_cast<std::size_t>(model.n_classes), 0.0);
        for (const EnsembleMember& member : model.members) {
            const std::vector<double> scores = samme_r_class_scores(
                predict_proba(member.model, restrict_features(x, member.feature_indices), backend));
            for (std::size_t c = 0; c < total.size(); ++c) total[c] += scores[c];
        }
        int best = 0;
        for (int c = 1; c < model.n_classes; ++c)
            if (total[static_cast<std::size_t>(c)] > total[static_cast<std::size_t>(best)]) best = c;
        return best;
    }
    std::vector<std::vector<double>> member_probs;
    std::vector<double> weights;
    member_probs.reserve(model.members.size());
    weights.reserve(model.members.size());
    for (const EnsembleMember& member : model.members) {
        member_probs.push_back(
            predict_proba(member.model, restrict_features(x, member.feature_indices), backend));
        weights.push_back(member.weight);
    }
    return combine_classification(member_probs, model.rule, weights);
}

double ensemble_mse(const EnsembleModel& model, const Dataset& data, Backend& backend) {
    if (data.task != TaskKind::regression)
        throw std::invalid_argument("ensemble_mse: regression data required");
    double total = 0.0;
    for (int r = 0; r < data.n_rows; ++r) {
        const double diff = predict_ensemble_value(model, data.row(r), backend) -
                            data.targets[static_cast<std::size_t>(r)];
        total += diff * diff;
    }
    return total / static_cast<double>(data.n_rows);
}

double ensemble_accuracy(const EnsembleModel& model, const Dataset& data, Backend& backend) {
    if (data.task != TaskKind::classification)
        throw std::invalid_argument("ensemble_accuracy: classification data required");
    int correct = 0;
    for (int r = 0; r < data.n_rows; ++r)
        if (predict_ensemble_class(model, data.row(r), backend) ==
            data.labels[static_cast<std::size_t>(r)])
            ++correct;
    return static_cast<double>(correct) / static_cast<double>(data.n_rows);
}

ResourceReport ensemble_resource_report(const EnsembleModel& model) {
    ResourceReport total;
    for (const EnsembleMember& member : model.members) {
        const ResourceReport report = resource_report(member.model.config);
        total.n_qubits += report.n_qubits;
        total.trainable_params += report.trainable_params;
        total.rotation_gates += report.rotation_gates;
        total.cnot_gates += report.cnot_gates;
        total.circuit_depth_gates += report.circuit_depth_gates;
    }
    return total;
}

}  // namespace qens
