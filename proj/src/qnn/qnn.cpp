#include "qens/qnn/qnn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qens/sim/state_vector.hpp"

namespace qens {

namespace {

std::vector<double> exact_heads(const Circuit& circuit, const std::vector<int>& head_qubits) {
    StateVector state = zero_state(circuit.n_qubits);
    for (const Gate& gate : circuit.gates) apply_gate(state, gate);
    std::vector<double> outputs(head_qubits.size());
    for (std::size_t h = 0; h < head_qubits.size(); ++h)
        outputs[h] = expectation_z(state, head_qubits[h]);
    return outputs;
}

std::vector<double> shot_heads(const Circuit& circuit, const std::vector<int>& head_qubits,
                               long long shots, std::uint64_t eval_seed) {
    StateVector state = zero_state(circuit.n_qubits);
    for (const Gate& gate : circuit.gates) apply_gate(state, gate);
    // one histogram per evaluation: every head reads the same measured shots
    const std::vector<long long> counts = sample_counts(state, shots, eval_seed);
    std::vector<double> outputs(head_qubits.size(), 0.0);
    for (std::size_t h = 0; h < head_qubits.size(); ++h) {
        const std::size_t mask = state.qubit_mask(head_qubits[h]);
        long long signed_sum = 0;
        for (std::size_t i = 0; i < counts.size(); ++i)
            signed_sum += (i & mask) ? -counts[i] : counts[i];
        outputs[h] = static_cast<double>(signed_sum) / static_cast<double>(shots);
    }
    return outputs;
}

std::vector<double> noisy_heads(const Circuit& circuit, const std::vector<int>& head_qubits,
                                const NoiseModel& noise, int trajectories,
                                std::uint64_t eval_seed) {
    std::vector<double> outputs(head_qubits.size(), 0.0);
    for (int t = 0; t < trajectories; ++t) {
        Rng traj_rng(derive_seed(eval_seed, "traj", static_cast<std::uint64_t>(t)));
        StateVector state = zero_state(circuit.n_qubits);
        for (const Gate& gate : circuit.gates) apply_gate_noisy(state, gate, noise, traj_rng);
        for (std::size_t h = 0; h < head_qubits.size(); ++h)
            outputs[h] += expectation_z(state, head_qubits[h]);
    }
    for (double& value : outputs) value /= static_cast<double>(trajectories);
    return outputs;
}

}  // namespace

std::vector<double> evaluate_circuit(const Circuit& circuit, const std::vector<int>& head_qubits,
                                     Backend& backend) {
    backend.validate();
    switch (backend.kind) {
        case Backend::Kind::exact:
            return exact_heads(circuit, head_qubits);
        case Backend::Kind::shots:
            return shot_heads(circuit, head_qubits, backend.shots, backend.next_eval_seed());
        case Backend::Kind::noisy:
            return noisy_heads(circuit, head_qubits, backend.noise, backend.trajectories,
                               backend.next_eval_seed());
    }
    throw std::invalid_argument("evaluate_circuit: unknown backend kind");
}

std::vector<double> forward(const std::vector<double>& x, const ParamVector& theta,
                            const QnnConfig& config, Backend& backend) {
    config.validate();
    if (static_cast<int>(x.size()) != config.n_qubits)
        throw std::invalid_argument("forward: feature vector length must equal n_qubits");
    if (static_cast<int>(theta.size()) != param_count(config))
        throw std::invalid_argument("forward: theta length must be 3 * layers * n_qubits");
    Circuit circuit = build_qnn_circuit(config);
    bind_circuit(circuit, x, theta);
    return evaluate_circuit(circuit, config.head_qubits, backend);
}

std::vector<double> softmax(const std::vector<double>& values) {
    if (values.empty()) throw std::invalid_argument("softmax: empty input");
    const double peak = *std::max_element(values.begin(), values.end());
    std::vector<double> probs(values.size());
    double total = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        probs[i] = std::exp(values[i] - peak);
        total += probs[i];
    }
    for (double& p : probs) p /= total;
    return probs;
}

double predict_value(const QnnModel& model, const std::vector<double>& x, Backend& backend) {
    return forward(x, model.params, model.config, backend)[0];
}

std::vector<double> predict_proba(const QnnModel& model, const std::vector<double>& x,
                                  Backend& backend) {
    return softmax(forward(x, model.params, model.config, backend));
}

int predict_class(const QnnModel& model, const std::vector<double>& x, Backend& backend) {
    const std::vector<double> probs = predict_proba(model, x, backend);
    int best = 0;
    for (int c = 1; c < static_cast<int>(probs.size()); ++c)
        if (probs[static_cast<std::size_t>(c)] > probs[static_cast<std::size_t>(best)]) best = c;
    return best;
}

}  // namespace qens
