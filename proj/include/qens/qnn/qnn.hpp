#pragma once

#include <vector>

#include "qens/qnn/backend.hpp"
#include "qens/qnn/circuit.hpp"

namespace qens {

// Runs a fully bound circuit from |0...0> and returns <Z> per head qubit.
// Stochastic backends advance their call counter.
std::vector<double> evaluate_circuit(const Circuit& circuit, const std::vector<int>& head_qubits,
                                     Backend& backend);

// f(x; theta): feature map, ansatz, one <Z> per head qubit, each in [-1, 1].
std::vector<double> forward(const std::vector<double>& x, const ParamVector& theta,
                            const QnnConfig& config, Backend& backend);

// numerically stable softmax
std::vector<double> softmax(const std::vector<double>& values);

// One trained (or in-training) QNN: architecture plus parameter vector.
struct QnnModel {
    QnnConfig config;
    ParamVector params;
};

// regression output: the single head expectation
double predict_value(const QnnModel& model, const std::vector<double>& x, Backend& backend);

// classification output: softmax over the head expectations
std::vector<double> predict_proba(const QnnModel& model, const std::vector<double>& x,
                                  Backend& backend);

// argmax class of predict_proba; ties break toward the lowest class index
int predict_class(const QnnModel& model, const std::vector<double>& x, Backend& backend);

}  // namespace qens
