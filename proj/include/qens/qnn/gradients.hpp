#pragma once

#include <vector>

#include "qens/qnn/backend.hpp"
#include "qens/qnn/circuit.hpp"
#include "qens/sim/state_vector.hpp"

namespace qens {

// Jacobian of the head outputs with respect to the trainable parameters:
// jacobian[h][j] = d f_h / d theta_j.
using Jacobian = std::vector<std::vector<double>>;

// Parameter-shift gradient: d f / d theta_j = (f(theta + pi/2 e_j) -
// f(theta - pi/2 e_j)) / 2, exact for RX/RY/RZ generators. Works on every
// backend (stochastic backends consume evaluation streams per shift).
Jacobian grad_parameter_shift(const std::vector<double>& x, const ParamVector& theta,
                              const QnnConfig& config, Backend& backend);

// Adjoint-mode gradient on the exact backend: one forward sweep plus one
// backward sweep per head instead of two circuit evaluations per parameter.
// Matches grad_parameter_shift to numerical precision.
Jacobian grad_adjoint(const std::vector<double>& x, const ParamVector& theta,
                      const QnnConfig& config);

// Gradient of the scalar sum_h coeffs[h] * f_h(x; theta) in a single
// backward sweep — the training loop's fast path, where coeffs carries the
// per-head loss derivative. Exact backend only.
std::vector<double> grad_adjoint_weighted(const std::vector<double>& x, const ParamVector& theta,
                                          const QnnConfig& config,
                                          const std::vector<double>& coeffs);

// Lowest-level adjoint entry point for callers that already ran the forward
// pass: `circuit` must be fully bound and `ket` its final state. Avoids
// rebuilding the circuit and repeating the forward sweep per sample.
std::vector<double> adjoint_weighted_from_state(const Circuit& circuit,
                                                const std::vector<int>& head_qubits,
                                                const StateVector& ket,
                                                const std::vector<double>& coeffs, int n_params);

}  // namespace qens
