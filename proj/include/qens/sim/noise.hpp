#pragma once

#include <utility>
#include <vector>

#include "qens/rng.hpp"
#include "qens/sim/state_vector.hpp"

namespace qens {

// Depolarizing-style gate noise, unraveled as stochastic Pauli trajectories:
// after every gate, each touched qubit independently suffers a uniformly
// chosen X/Y/Z injection with the per-gate error probability.
struct NoiseModel {
    double single_qubit_error = 0.0;  // probability per 1-qubit gate
    double two_qubit_error = 0.0;     // probability per CNOT, per touched qubit
    // Device coupling map, metadata only (no routing is performed).
    std::vector<std::pair<int, int>> topology;

    bool is_zero() const { return single_qubit_error == 0.0 && two_qubit_error == 0.0; }

    // 7-qubit superconducting device calibration snapshot used throughout the
    // noisy experiments: worst-case gate error rates and the coupling map.
    static NoiseModel lagos();

    // validates probabilities; throws std::invalid_argument outside [0, 1]
    void validate() const;
};

// Applies the ideal gate, then draws Pauli injections for each touched qubit
// from `rng`. The rng is the caller's trajectory stream: one stream per
// trajectory keeps runs reproducible and trajectories independent.
void apply_gate_noisy(StateVector& state, const Gate& gate, const NoiseModel& noise, Rng& rng);

}  // namespace qens
