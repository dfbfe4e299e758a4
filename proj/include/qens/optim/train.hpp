#pragma once

#include <cstdint>
#include <vector>

#include "qens/data/dataset.hpp"
#include "qens/optim/adam.hpp"
#include "qens/qnn/backend.hpp"
#include "qens/qnn/qnn.hpp"

namespace qens {

enum class GradientMethod { parameter_shift, adjoint };

struct TrainConfig {
    double learning_rate = 0.1;
    int epochs = 150;
    std::uint64_t seed = 0;
    GradientMethod gradient_method = GradientMethod::adjoint;
    double adam_beta1 = 0.9;
    double adam_beta2 = 0.999;
    double adam_eps = 1e-8;
    Backend backend = Backend::exact();

    void validate() const;

    AdamConfig adam() const { return {learning_rate, adam_beta1, adam_beta2, adam_eps}; }
};

struct FitResult {
    ParamVector final_params;
    // one entry per epoch; entry e is the full-batch loss *before* update e,
    // so curves are comparable across gradient methods
    std::vector<double> train_loss_curve;
    double wall_time = 0.0;  // seconds
};

// theta ~ uniform[0, 2*pi) per coordinate
ParamVector init_params(int n_params, Rng& rng);

// Full-batch ADAM training of one QNN. Initializes model.params from the
// config seed, runs `epochs` updates (parameters wrapped to [0, 2*pi) after
// each step), and leaves the trained parameters in `model`.
//
// Regression minimizes (weighted) MSE on the single head; classification
// minimizes (weighted) categorical cross entropy on softmaxed heads. When
// `sample_weights` is given it is normalized to sum 1; otherwise all samples
// weigh 1/N. Deterministic given config.seed: stochastic backends are
// reseeded from it, so two runs with equal configs match bitwise.
FitResult train(QnnModel& model, const Dataset& train_set, const TrainConfig& config,
                const std::vector<double>* sample_weights = nullptr);

// mean squared error of predict_value over the dataset (regression)
double dataset_mse(const QnnModel& model, const Dataset& data, Backend& backend);

// fraction of rows whose predict_class equals the label (classification)
double dataset_accuracy(const QnnModel& model, const Dataset& data, Backend& backend);

}  // namespace qens
