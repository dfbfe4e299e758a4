#include "qens/qnn/circuit.hpp"

#include <stdexcept>
#include <string>

namespace qens {

QnnConfig QnnConfig::regression(int n_qubits, int layers) {
    QnnConfig config;
    config.n_qubits = n_qubits;
    config.layers = layers;
    config.head_qubits = {0};
    config.validate();
    return config;
}

QnnConfig QnnConfig::classification(int n_qubits, int layers, int n_classes) {
    if (n_classes < 2)
        throw std::invalid_argument("QnnConfig: classification needs at least 2 classes");
    QnnConfig config;
    config.n_qubits = n_qubits;
    config.layers = layers;
    config.head_qubits.resize(static_cast<std::size_t>(n_classes));
    for (int c = 0; c < n_classes; ++c) config.head_qubits[static_cast<std::size_t>(c)] = c;
    config.validate();
    return config;
}

void QnnConfig::validate() const {
    if (n_qubits < 1 || n_qubits > 16)
        throw std::invalid_argument("QnnConfig: n_qubits must be in 1..16");
    if (layers < 1) throw std::invalid_argument("QnnConfig: layers must be >= 1");
    if (head_qubits.empty()) throw std::invalid_argument("QnnConfig: head_qubits must be nonempty");
    for (int q : head_qubits)
        if (q < 0 || q >= n_qubits)
            throw std::invalid_argument("QnnConfig: head qubit " + std::to_string(q) +
                                        " out of range");
}

int param_count(const QnnConfig& config) { return 3 * config.layers * config.n_qubits; }

std::vector<Gate> build_feature_map(const std::vector<double>& x) {
    std::vector<Gate> gates;
    gates.reserve(x.size());
    for (int i = 0; i < static_cast<int>(x.size()); ++i)
        gates.push_back(Gate::ry(i, x[static_cast<std::size_t>(i)]));
    return gates;
}

namespace {

// Appends the ansatz as slot-bearing gates; angles stay zero until bound.
void append_ansatz_template(std::vector<Gate>& gates, const QnnConfig& config) {
    const int n = config.n_qubits;
    for (int k = 0; k < config.layers; ++k) {
        const int base = 3 * k * n;
        for (int i = 0; i < n; ++i)
            gates.push_back(Gate::rx_slot(i, ParamRole::trainable, base + i));
        for (int i = 0; i + 1 < n; ++i) gates.push_back(Gate::cnot(i, i + 1));
        for (int i = 0; i < n; ++i)
            gates.push_back(Gate::rz_slot(i, ParamRole::trainable, base + n + i));
        for (int i = 0; i + 1 < n; ++i) gates.push_back(Gate::cnot(i, i + 1));
        for (int i = 0; i < n; ++i)
            gates.push_back(Gate::rx_slot(i, ParamRole::trainable, base + 2 * n + i));
    }
}

}  // namespace

std::vector<Gate> build_ansatz(const ParamVector& theta, const QnnConfig& config) {
    config.validate();
    if (static_cast<int>(theta.size()) != param_count(config))
        throw std::invalid_argument("build_ansatz: theta length must be 3 * layers * n_qubits");
    std::vector<Gate> gates;
    gates.reserve(theta.size() + 2 * static_cast<std::size_t>(config.layers) *
                                     static_cast<std::size_t>(config.n_qubits));
    append_ansatz_template(gates, config);
    for (Gate& gate : gates)
        if (gate.role == ParamRole::trainable)
            gate.angle = theta[static_cast<std::size_t>(gate.param_slot)];
    return gates;
}

Circuit build_qnn_circuit(const QnnConfig& config) {
    config.validate();
    Circuit circuit;
    circuit.n_qubits = config.n_qubits;
    circuit.gates.reserve(static_cast<std::size_t>(config.n_qubits) +
                          static_cast<std::size_t>(param_count(config)) +
                          2 * static_cast<std::size_t>(config.layers) *
                              static_cast<std::size_t>(config.n_qubits - 1));
    for (int i = 0; i < config.n_qubits; ++i)
        circuit.gates.push_back(Gate::ry_slot(i, ParamRole::feature, i));
    append_ansatz_template(circuit.gates, config);
    return circuit;
}

void bind_circuit(Circuit& circuit, const std::vector<double>& x, const ParamVector& theta) {
    for (Gate& gate : circuit.gates) {
        switch (gate.role) {
            case ParamRole::feature:
                if (gate.param_slot >= static_cast<int>(x.size()))
                    throw std::invalid_argument("bind_circuit: feature vector too short");
                gate.angle = x[static_cast<std::size_t>(gate.param_slot)];
                break;
            case ParamRole::trainable:
                if (gate.param_slot >= static_cast<int>(theta.size()))
                    throw std::invalid_argument("bind_circuit: parameter vector too short");
                gate.angle = theta[static_cast<std::size_t>(gate.param_slot)];
                break;
            case ParamRole::fixed:
                break;
        }
    }
}

ResourceReport resource_report(const QnnConfig& config) {
    config.validate();
    ResourceReport report;
    report.n_qubits = config.n_qubits;
    report.trainable_params = param_count(config);
    report.rotation_gates = config.n_qubits + report.trainable_params;
    report.cnot_gates = 2LL * config.layers * (config.n_qubits - 1);
    report.circuit_depth_gates = report.rotation_gates + report.cnot_gates;
    return report;
}

}  // namespace qens
