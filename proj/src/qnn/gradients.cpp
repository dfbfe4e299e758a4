#include "qens/qnn/gradients.hpp"

#include <stdexcept>

#include "qens/qnn/qnn.hpp"
#include "qens/sim/state_vector.hpp"

namespace qens {

namespace {

constexpr double half_pi = 1.5707963267948966;

Gate inverse(const Gate& gate) {
    Gate inv = gate;
    if (inv.is_rotation()) inv.angle = -inv.angle;  // cnot is self-inverse
    return inv;
}

cdouble generator_bracket(const StateVector& lam, const StateVector& ket, const Gate& gate) {
    switch (gate.kind) {
        case GateKind::rx:
            return pauli_x_bracket(lam, ket, gate.target);
        case GateKind::ry:
            return pauli_y_bracket(lam, ket, gate.target);
        case GateKind::rz:
            return pauli_z_bracket(lam, ket, gate.target);
        default:
            throw std::invalid_argument("generator_bracket: gate has no rotation generator");
    }
}

// |lam> = (sum_h coeffs[h] Z_{head[h]}) |ket>; the observable is diagonal, so
// this is an elementwise signed reweighting of the amplitudes.
StateVector z_combination(const StateVector& ket, const std::vector<int>& heads,
                          const std::vector<double>& coeffs) {
    StateVector lam = ket;
    for (std::size_t i = 0; i < ket.dim(); ++i) {
        double weight = 0.0;
        for (std::size_t h = 0; h < heads.size(); ++h)
            weight += (i & ket.qubit_mask(heads[h])) ? -coeffs[h] : coeffs[h];
        lam.amplitudes[i] = cdouble(weight * ket.amplitudes[i].real(),
                                    weight * ket.amplitudes[i].imag());
    }
    return lam;
}

void check_shapes(const std::vector<double>& x, const ParamVector& theta,
                  const QnnConfig& config) {
    config.validate();
    if (static_cast<int>(x.size()) != config.n_qubits)
        throw std::invalid_argument("gradient: feature vector length must equal n_qubits");
    if (static_cast<int>(theta.size()) != param_count(config))
        throw std::invalid_argument("gradient: theta length must be 3 * layers * n_qubits");
}

// Backward adjoint sweep over an already-bound circuit whose final state is
// `ket`. Each row r of bra_coeffs defines one observable
// B_r = sum_h bra_coeffs[r][h] Z_{head[h]}; the returned grads[r][j] is
// d <B_r> / d theta_j. For a rotation gate U = exp(-i theta P/2) sitting at
// position g with prefix state |psi_g> and back-propagated bra |lam_g>, the
// derivative contribution is Im(<lam_g| P |psi_g>).
std::vector<std::vector<double>> adjoint_sweep_core(const Circuit& circuit,
                                                    const std::vector<int>& head_qubits,
                                                    StateVector ket,
                                                    const std::vector<std::vector<double>>& bra_coeffs,
                                                    int n_params) {
    std::vector<StateVector> lams;
    lams.reserve(bra_coeffs.size());
    for (const std::vector<double>& coeffs : bra_coeffs)
        lams.push_back(z_combination(ket, head_qubits, coeffs));

    int first_trainable = 0;
    while (first_trainable < static_cast<int>(circuit.gates.size()) &&
           circuit.gates[static_cast<std::size_t>(first_trainable)].role != ParamRole::trainable)
        ++first_trainable;

    std::vector<std::vector<double>> grads(
        bra_coeffs.size(), std::vector<double>(static_cast<std::size_t>(n_params), 0.0));
    if (first_trainable == static_cast<int>(circuit.gates.size())) return grads;

    for (int g = static_cast<int>(circuit.gates.size()) - 1; g >= first_trainable; --g) {
        const Gate& gate = circuit.gates[static_cast<std::size_t>(g)];
        if (gate.role == ParamRole::trainable) {
            for (std::size_t r = 0; r < lams.size(); ++r)
                grads[r][static_cast<std::size_t>(gate.param_slot)] +=
                    generator_bracket(lams[r], ket, gate).imag();
        }
        if (g == first_trainable) break;  // no trainable gates remain below
        const Gate inv = inverse(gate);
        apply_gate(ket, inv);
        for (StateVector& lam : lams) apply_gate(lam, inv);
    }
    return grads;
}

std::vector<std::vector<double>> adjoint_sweep(const std::vector<double>& x,
                                               const ParamVector& theta, const QnnConfig& config,
                                               const std::vector<std::vector<double>>& bra_coeffs) {
    check_shapes(x, theta, config);
    Circuit circuit = build_qnn_circuit(config);
    bind_circuit(circuit, x, theta);
    StateVector ket = zero_state(config.n_qubits);
    for (const Gate& gate : circuit.gates) apply_gate(ket, gate);
    return adjoint_sweep_core(circuit, config.head_qubits, std::move(ket), bra_coeffs,
                              param_count(config));
}

}  // namespace

Jacobian grad_parameter_shift(const std::vector<double>& x, const ParamVector& theta,
                              const QnnConfig& config, Backend& backend) {
    check_shapes(x, theta, config);
    Circuit circuit = build_qnn_circuit(config);
    const int n_params = param_count(config);
    const std::size_t n_heads = config.head_qubits.size();
    Jacobian jacobian(n_heads, std::vector<double>(static_cast<std::size_t>(n_params), 0.0));
    ParamVector shifted = theta;
    for (int j = 0; j < n_params; ++j) {
        const std::size_t js = static_cast<std::size_t>(j);
        shifted[js] = theta[js] + half_pi;
        bind_circuit(circuit, x, shifted);
        const std::vector<double> plus = evaluate_circuit(circuit, config.head_qubits, backend);
        shifted[js] = theta[js] - half_pi;
        bind_circuit(circuit, x, shifted);
        const std::vector<double> minus = evaluate_circuit(circuit, config.head_qubits, backend);
        shifted[js] = theta[js];
        for (std::size_t h = 0; h < n_heads; ++h) jacobian[h][js] = (plus[h] - minus[h]) / 2.0;
    }
    return jacobian;
}

Jacobian grad_adjoint(const std::vector<double>& x, const ParamVector& theta,
                      const QnnConfig& config) {
    std::vector<std::vector<double>> rows(config.head_qubits.size(),
                                          std::vector<double>(config.head_qubits.size(), 0.0));
    for (std::size_t h = 0; h < rows.size(); ++h) rows[h][h] = 1.0;
    return adjoint_sweep(x, theta, config, rows);
}

std::vector<double> grad_adjoint_weighted(const std::vector<double>& x, const ParamVector& theta,
                                          const QnnConfig& config,
                                          const std::vector<double>& coeffs) {
    if (coeffs.size() != config.head_qubits.size())
        throw std::invalid_argument("grad_adjoint_weighted: one coefficient per head required");
    return adjoint_sweep(x, theta, config, {coeffs})[0];
}

std::vector<double> adjoint_weighted_from_state(const Circuit& circuit,
                                                const std::vector<int>& head_qubits,
                                                const StateVector& ket,
                                                const std::vector<double>& coeffs, int n_params) {
    if (coeffs.size() != head_qubits.size())
        throw std::invalid_argument("adjoint_weighted_from_state: one coefficient per head required");
    return adjoint_sweep_core(circuit, head_qubits, ket, {coeffs}, n_params)[0];
}

}  // namespace qens
