#pragma once

#include <cstdint>
#include <vector>

#include "qens/rng.hpp"
#include "qens/sim/gates.hpp"

namespace qens {

// Dense statevector of an n-qubit register: 2^n complex amplitudes.
//
// Index convention (used everywhere in this project): qubit 0 is the MOST
// significant bit of the basis index, i.e. the bit of qubit q in basis index
// i is (i >> (n_qubits - 1 - q)) & 1. Example, n=2: index 2 = binary 10 =
// qubit 0 in |1>, qubit 1 in |0>.
struct StateVector {
    int n_qubits = 0;
    std::vector<cdouble> amplitudes;

    std::size_t dim() const { return amplitudes.size(); }

    // bit mask selecting qubit q inside a basis index
    std::size_t qubit_mask(int q) const { return std::size_t{1} << (n_qubits - 1 - q); }
};

// |0...0> on n_qubits qubits. Throws std::invalid_argument outside 1..16.
StateVector zero_state(int n_qubits);

// sum of |amplitude|^2
double norm_sq(const StateVector& state);

// <a|b> = sum_i conj(a_i) b_i
cdouble inner_product(const StateVector& a, const StateVector& b);

// Applies one gate in place. Rotations use specialized 2x2 kernels, CNOT a
// pair swap; all complex arithmetic is expanded to real ops so the loops
// vectorize. Throws std::out_of_range on bad qubit indices.
void apply_gate(StateVector& state, const Gate& gate);

// Single-qubit Pauli applications (used by noise injection and the adjoint
// differentiation sweep).
void apply_pauli_x(StateVector& state, int qubit);
void apply_pauli_y(StateVector& state, int qubit);
void apply_pauli_z(StateVector& state, int qubit);

// <lam| P_qubit |ket> for P in {X, Y, Z} without materializing P|ket>.
// Both states must share the same dimension.
cdouble pauli_x_bracket(const StateVector& lam, const StateVector& ket, int qubit);
cdouble pauli_y_bracket(const StateVector& lam, const StateVector& ket, int qubit);
cdouble pauli_z_bracket(const StateVector& lam, const StateVector& ket, int qubit);

// <Z_qubit> = sum_i (+1 if qubit bit of i is 0 else -1) |a_i|^2, in [-1, 1].
double expectation_z(const StateVector& state, int qubit);

// Samples `shots` basis indices from |a_i|^2; returns a histogram indexed by
// basis state. Throws std::invalid_argument if shots < 1.
std::vector<long long> sample_counts(const StateVector& state, long long shots,
                                     std::uint64_t rng_seed);

// (n_plus - n_minus) / shots for Z on one qubit, sampled with `shots` draws.
double shot_expectation_z(const StateVector& state, int qubit, long long shots,
                          std::uint64_t rng_seed);

}  // namespace qens
