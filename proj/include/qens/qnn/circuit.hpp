#pragma once

#include <vector>

#include "qens/sim/gates.hpp"

namespace qens {

// Architecture of one QNN: qubit count (= number of input features), ansatz
// depth, and which qubits are measured. Regression reads one head qubit;
// k-class classification reads the first k qubits and maps them through
// softmax.
struct QnnConfig {
    int n_qubits = 1;
    int layers = 1;
    std::vector<int> head_qubits = {0};

    static QnnConfig regression(int n_qubits, int layers);
    static QnnConfig classification(int n_qubits, int layers, int n_classes);

    // throws std::invalid_argument on empty/out-of-range heads or layers < 1
    void validate() const;
};

// Trainable angles, length exactly 3 * layers * n_qubits.
using ParamVector = std::vector<double>;

// Ordered gate sequence; gates are applied in vector order to |0...0>.
struct Circuit {
    int n_qubits = 0;
    std::vector<Gate> gates;
};

// number of trainable parameters, 3 * layers * n_qubits
int param_count(const QnnConfig& config);

// Data-encoding circuit: one RY(x_i) on qubit i, for i = 0..n-1.
std::vector<Gate> build_feature_map(const std::vector<double>& x);

// Trainable circuit. Layer k (0-based) applies, in order:
//   n RX gates on qubits i = 0..n-1 with parameter slots 3kn + i,
//   a CNOT chain CX(i, i+1) for i = 0..n-2,
//   n RZ gates with slots 3kn + n + i,
//   the CNOT chain again,
//   n RX gates with slots 3kn + 2n + i.
// Layers are applied in increasing k after the feature map.
std::vector<Gate> build_ansatz(const ParamVector& theta, const QnnConfig& config);

// Unbound template of the full circuit (feature map + ansatz) with feature
// and trainable parameter slots recorded on each gate. Build once per model,
// then rebind per evaluation.
Circuit build_qnn_circuit(const QnnConfig& config);

// Fills gate angles from the feature vector and parameter vector according
// to each gate's slot role. Throws std::invalid_argument on length mismatch.
void bind_circuit(Circuit& circuit, const std::vector<double>& x, const ParamVector& theta);

// Static gate/parameter counts of one QNN instance.
struct ResourceReport {
    int n_qubits = 0;
    long long trainable_params = 0;
    long long rotation_gates = 0;     // feature map + ansatz rotations
    long long cnot_gates = 0;         // 2 * layers * (n - 1)
    long long circuit_depth_gates = 0;  // total gate count
};

ResourceReport resource_report(const QnnConfig& config);

}  // namespace qens
