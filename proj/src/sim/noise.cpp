#include "qens/sim/noise.hpp"

#include <stdexcept>

namespace qens {

NoiseModel NoiseModel::lagos() {
    NoiseModel model;
    model.single_qubit_error = 2.89e-4;
    model.two_qubit_error = 8.63e-3;
    model.topology = {{0, 1}, {1, 2}, {1, 3}, {3, 4}, {4, 5}, {4, 6}};
    return model;
}

void NoiseModel::validate() const {
    if (single_qubit_error < 0.0 || single_qubit_error > 1.0 || two_qubit_error < 0.0 ||
        two_qubit_error > 1.0)
        throw std::invalid_argument("NoiseModel: error probabilities must be in [0, 1]");
}

namespace {

void maybe_inject_pauli(StateVector& state, int qubit, double probability, Rng& rng) {
    if (rng.uniform() >= probability) return;
    switch (rng.integer(3)) {
        case 0:
            apply_pauli_x(state, qubit);
            break;
        case 1:
            apply_pauli_y(state, qubit);
            break;
        default:
            apply_pauli_z(state, qubit);
            break;
    }
}

}  // namespace

void apply_gate_noisy(StateVector& state, const Gate& gate, const NoiseModel& noise, Rng& rng) {
    apply_gate(state, gate);
    if (gate.kind == GateKind::cnot) {
        maybe_inject_pauli(state, gate.control, noise.two_qubit_error, rng);
        maybe_inject_pauli(state, gate.target, noise.two_qubit_error, rng);
    } else {
        maybe_inject_pauli(state, gate.target, noise.single_qubit_error, rng);
    }
}

}  // namespace qens
