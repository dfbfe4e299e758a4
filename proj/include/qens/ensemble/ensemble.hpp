#pragma once

#include <cstdint>
#include <vector>

#include "qens/data/dataset.hpp"
#include "qens/ensemble/combine.hpp"
#include "qens/ensemble/sampling.hpp"
#include "qens/optim/train.hpp"
#include "qens/qnn/circuit.hpp"
#include "qens/qnn/qnn.hpp"

namespace qens {

enum class EnsembleScheme { bagging, adaboost_r2, adaboost_samme_r };

struct EnsembleConfig {
    EnsembleScheme scheme = EnsembleScheme::bagging;
    int n_estimators = 10;
    double sample_ratio = 1.0;   // r_n: fraction of training rows per member
    double feature_ratio = 1.0;  // r_f: fraction of feature columns per member
    CombinationRule rule = CombinationRule::average;
    std::uint64_t seed = 0;
    SubspaceRounding subspace_rounding = SubspaceRounding::half_up;

    void validate() const;
};

struct EnsembleMember {
    QnnModel model;
    std::vector<int> feature_indices;  // strictly increasing subspace columns
    double weight = 1.0;
};

struct EnsembleModel {
    EnsembleScheme scheme = EnsembleScheme::bagging;
    TaskKind task = TaskKind::regression;
    std::vector<EnsembleMember> members;
    CombinationRule rule = CombinationRule::average;
    int n_classes = 0;  // classification only
};

// Bagging / random subspace: each member trains (via optim train) on a
// bootstrap resample of round(r_n * N) rows, restricted to its feature
// subspace; members combine with equal weights.
//
// Degenerate-identity guarantee: with r_n = 1.0 members use every training
// row in original order (no resampling), so a 1-member ensemble with
// r_n = r_f = 1.0 and the FM training seed reproduces the baseline model
// bitwise. Member 0 always trains with tr.seed itself; member m > 0 with a
// seed derived from (tr.seed, m).
EnsembleModel fit_bagging(const Dataset& train_set, const EnsembleConfig& ens,
                          const TrainConfig& tr, int layers);

// AdaBoost.R2 (regression boosting): per round, a weighted bootstrap of full
// size N trains a member on all features; linear per-sample losses
// L_i = |f(x_i) - y_i| / max_j |f(x_j) - y_j| give the average loss Lbar,
// beta = Lbar / (1 - Lbar), member weight log(1/beta), and the reweighting
// w_i <- w_i beta^(1 - L_i). Rounds stop when Lbar >= 0.5 (the offending
// member is dropped unless it is the first, which is kept with neutral
// weight so the ensemble is never empty) or on a perfect fit, which joins
// with the capped weight log(1/beta_min), beta_min = 1e-10. Boosting
// bookkeeping always evaluates members on the exact backend.
EnsembleModel fit_adaboost_r2(const Dataset& train_set, const EnsembleConfig& ens,
                              const TrainConfig& tr, int layers);

// AdaBoost SAMME.R (multiclass boosting): per round the member trains on the
// current sample weights directly (weighted cross entropy), class
// probabilities are clamped to [1e-12, 1], and weights update as
// w_i <- w_i exp(-((k-1)/k) y_i . log p(x_i)) with y the +-1/(k-1)-coded
// label vector. Members contribute h_c(x) = (k-1)(log p_c - mean_c' log
// p_c') and the prediction is argmax_c sum_members h_c.
EnsembleModel fit_adaboost_samme_r(const Dataset& train_set, const EnsembleConfig& ens,
                                   const TrainConfig& tr, int layers);

// regression prediction: member outputs combined under the model's rule
double predict_ensemble_value(const EnsembleModel& model, const std::vector<double>& x,
                              Backend& backend);

// classification prediction; ties break toward the lowest class index
int predict_ensemble_class(const EnsembleModel& model, const std::vector<double>& x,
                           Backend& backend);

double ensemble_mse(const EnsembleModel& model, const Dataset& data, Backend& backend);
double ensemble_accuracy(const EnsembleModel& model, const Dataset& data, Backend& backend);

// sum of the members' per-model resource reports
ResourceReport ensemble_resource_report(const EnsembleModel& model);

// One AdaBoost.R2 round of weight arithmetic, exposed so the boosting math
// can be tested against hand traces with stubbed learners. `weights` must be
// normalized; `abs_errors` holds |f(x_i) - y_i| on the full training set.
// accept is false when avg_loss >= 0.5.
struct R2Update {
    double avg_loss = 0.0;
    double beta = 0.0;
    double member_weight = 0.0;
    bool accept = true;
    std::vector<double> new_weights;
};
R2Update adaboost_r2_update(const std::vector<double>& weights,
                            const std::vector<double>& abs_errors);

// SAMME.R member contribution h_c for one sample's class probabilities.
std::vector<double> samme_r_class_scores(const std::vector<double>& probs);

// SAMME.R reweighting for a full round; returns normalized weights.
std::vector<double> samme_r_weight_update(const std::vector<double>& weights,
                                          const std::vector<std::vector<double>>& probs,
                                          const std::vector<int>& labels);

}  // namespace qens
