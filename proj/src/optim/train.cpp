#include "qens/optim/train.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "qens/optim/loss.hpp"
#include "qens/qnn/gradients.hpp"
#include "qens/sim/state_vector.hpp"

namespace qens {

void TrainConfig::validate() const {
    if (learning_rate <= 0.0) throw std::invalid_argument("TrainConfig: learning_rate must be > 0");
    if (epochs < 1) throw std::invalid_argument("TrainConfig: epochs must be >= 1");
    backend.validate();
}

ParamVector init_params(int n_params, Rng& rng) {
    constexpr double two_pi = 6.283185307179586476925286766559;
    ParamVector params(static_cast<std::size_t>(n_params));
    for (double& value : params) value = rng.uniform(0.0, two_pi);
    return params;
}

namespace {

void check_train_inputs(const QnnModel& model, const Dataset& data) {
    model.config.validate();
    data.validate();
    if (data.n_cols != model.config.n_qubits)
        throw std::invalid_argument("train: feature dimension must equal n_qubits");
    if (data.task == TaskKind::regression) {
        if (model.config.head_qubits.size() != 1)
            throw std::invalid_argument("train: regression model must have exactly one head");
        for (double y : data.targets)
            if (y < -1.0 - 1e-9 || y > 1.0 + 1e-9)
                throw std::invalid_argument("train: regression targets must be scaled to [-1, 1]");
    } else {
        if (static_cast<int>(model.config.head_qubits.size()) != data.n_classes)
            throw std::invalid_argument("train: model heads must match the class count");
    }
}

std::vector<double> normalized_weights(int n_rows, const std::vector<double>* sample_weights) {
    std::vector<double> weights;
    if (sample_weights == nullptr) {
        weights.assign(static_cast<std::size_t>(n_rows), 1.0 / static_cast<double>(n_rows));
        return weights;
    }
    if (static_cast<int>(sample_weights->size()) != n_rows)
        throw std::invalid_argument("train: one sample weight per row required");
    double total = 0.0;
    for (double w : *sample_weights) {
        if (w < 0.0 || !std::isfinite(w))
            throw std::invalid_argument("train: sample weights must be finite and nonnegative");
        total += w;
    }
    if (total <= 0.0) throw std::invalid_argument("train: sample weights must not all be zero");
    weights.reserve(sample_weights->size());
    for (double w : *sample_weights) weights.push_back(w / total);
    return weights;
}

}  // namespace

FitResult train(QnnModel& model, const Dataset& train_set, const TrainConfig& config,
                const std::vector<double>* sample_weights) {
    const auto start = std::chrono::steady_clock::now();
    config.validate();
    check_train_inputs(model, train_set);
    const std::vector<double> weights = normalized_weights(train_set.n_rows, sample_weights);

    const int n_params = param_count(model.config);
    Rng init_rng(derive_seed(config.seed, "init"));
    model.params = init_params(n_params, init_rng);

    // A stochastic backend is reseeded from the training seed so the whole
    // run is a function of config.seed alone.
    Backend backend = config.backend;
    if (!backend.is_exact()) backend = backend.reseeded(derive_seed(config.seed, "train.backend"));
    if (config.gradient_method == GradientMethod::adjoint && !backend.is_exact())
        throw std::invalid_argument("train: adjoint gradients require the exact backend");

    Circuit circuit = build_qnn_circuit(model.config);
    const std::vector<int>& heads = model.config.head_qubits;
    const std::size_t n_heads = heads.size();

    AdamState adam_state;
    const AdamConfig adam_config = config.adam();
    FitResult result;
    result.train_loss_curve.reserve(static_cast<std::size_t>(config.epochs));

    std::vector<double> grad(static_cast<std::size_t>(n_params), 0.0);
    std::vector<double> coeffs(n_heads, 0.0);
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        std::fill(grad.begin(), grad.end(), 0.0);
        double loss = 0.0;
        // fixed sample order keeps the reduction deterministic
        for (int r = 0; r < train_set.n_rows; ++r) {
            const std::vector<double> x = train_set.row(r);
            const double w = weights[static_cast<std::size_t>(r)];
            bind_circuit(circuit, x, model.params);

            std::vector<double> outputs;
            StateVector ket;  // populated on the adjoint path only
            if (config.gradient_method == GradientMethod::adjoint) {
                ket = zero_state(circuit.n_qubits);
                for (const Gate& gate : circuit.gates) apply_gate(ket, gate);
                outputs.resize(n_heads);
                for (std::size_t h = 0; h < n_heads; ++h)
                    outputs[h] = expectation_z(ket, heads[h]);
            } else {
                outputs = evaluate_circuit(circuit, heads, backend);
            }

            // loss term and per-head derivative coefficients
            if (train_set.task == TaskKind::regression) {
                const double diff = outputs[0] - train_set.targets[static_cast<std::size_t>(r)];
                loss += w * diff * diff;
                coeffs[0] = 2.0 * w * diff;
            } else {
                const std::vector<double> probs = softmax(outputs);
                const int label = train_set.labels[static_cast<std::size_t>(r)];
                loss -= w * std::log(std::max(probs[static_cast<std::size_t>(label)], 1e-12));
                for (std::size_t h = 0; h < n_heads; ++h)
                    coeffs[h] = w * (probs[h] - (static_cast<int>(h) == label ? 1.0 : 0.0));
            }

            if (config.gradient_method == GradientMethod::adjoint) {
                const std::vector<double> sample_grad =
                    adjoint_weighted_from_state(circuit, heads, ket, coeffs, n_params);
                for (std::size_t j = 0; j < grad.size(); ++j) grad[j] += sample_grad[j];
            } else {
                const Jacobian jacobian =
                    grad_parameter_shift(x, model.params, model.config, backend);
                for (std::size_t h = 0; h < n_heads; ++h)
                    for (std::size_t j = 0; j < grad.size(); ++j)
                        grad[j] += coeffs[h] * jacobian[h][j];
            }
        }
        result.train_loss_curve.push_back(loss);
        adam_step(model.params, grad, adam_state, epoch + 1, adam_config);
        // rotation angles are 2*pi-periodic; keep them in canonical range
        for (double& value : model.params) value = wrap_angle(value);
    }

    result.final_params = model.params;
    result.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

double dataset_mse(const QnnModel& model, const Dataset& data, Backend& backend) {
    if (data.task != TaskKind::regression)
        throw std::invalid_argument("dataset_mse: regression data required");
    std::vector<double> predictions(static_cast<std::size_t>(data.n_rows));
    for (int r = 0; r < data.n_rows; ++r)
        predictions[static_cast<std::size_t>(r)] = predict_value(model, data.row(r), backend);
    return mse_loss(predictions, data.targets);
}

double dataset_accuracy(const QnnModel& model, const Dataset& data, Backend& backend) {
    if (data.task != TaskKind::classification)
        throw std::invalid_argument("dataset_accuracy: classification data required");
    int correct = 0;
    for (int r = 0; r < data.n_rows; ++r)
        if (predict_class(model, data.row(r), backend) == data.labels[static_cast<std::size_t>(r)])
            ++correct;
    return static_cast<double>(correct) / static_cast<double>(data.n_rows);
}

}  // namespace qens
