#include "qens/sim/state_vector.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qens {

namespace {

void check_qubit(const StateVector& state, int qubit) {
    if (qubit < 0 || qubit >= state.n_qubits)
        throw std::out_of_range("qubit index out of range for state");
}

// One 2x2 rotation kernel per gate kind. The matrix entries are expanded to
// real/imag arithmetic; the inner loop over `stride` contiguous pairs is the
// hot path of the whole simulator.

void apply_rx(StateVector& state, int qubit, double angle) {
    const double c = std::cos(angle / 2.0);
    const double s = std::sin(angle / 2.0);
    cdouble* a = state.amplitudes.data();
    const std::size_t dim = state.dim();
    const std::size_t stride = state.qubit_mask(qubit);
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
        for (std::size_t j = 0; j < stride; ++j) {
            const std::size_t i0 = base + j;
            const std::size_t i1 = i0 + stride;
            const double r0 = a[i0].real(), m0 = a[i0].imag();
            const double r1 = a[i1].real(), m1 = a[i1].imag();
            // [[c, -is], [-is, c]]
            a[i0] = cdouble(c * r0 + s * m1, c * m0 - s * r1);
            a[i1] = cdouble(s * m0 + c * r1, -s * r0 + c * m1);
        }
    }
}

void apply_ry(StateVector& state, int qubit, double angle) {
    const double c = std::cos(angle / 2.0);
    const double s = std::sin(angle / 2.0);
    cdouble* a = state.amplitudes.data();
    const std::size_t dim = state.dim();
    const std::size_t stride = state.qubit_mask(qubit);
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
        for (std::size_t j = 0; j < stride; ++j) {
            const std::size_t i0 = base + j;
            const std::size_t i1 = i0 + stride;
            const double r0 = a[i0].real(), m0 = a[i0].imag();
            const double r1 = a[i1].real(), m1 = a[i1].imag();
            // [[c, -s], [s, c]], all real
            a[i0] = cdouble(c * r0 - s * r1, c * m0 - s * m1);
            a[i1] = cdouble(s * r0 + c * r1, s * m0 + c * m1);
        }
    }
}

void apply_rz(StateVector& state, int qubit, double angle) {
    const double c = std::cos(angle / 2.0);
    const double s = std::sin(angle / 2.0);
    cdouble* a = state.amplitudes.data();
    const std::size_t dim = state.dim();
    const std::size_t stride = state.qubit_mask(qubit);
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
        for (std::size_t j = 0; j < stride; ++j) {
            const std::size_t i0 = base + j;
            const std::size_t i1 = i0 + stride;
            const double r0 = a[i0].real(), m0 = a[i0].imag();
            const double r1 = a[i1].real(), m1 = a[i1].imag();
            // diag(e^{-i angle/2}, e^{+i angle/2})
            a[i0] = cdouble(c * r0 + s * m0, c * m0 - s * r0);
            a[i1] = cdouble(c * r1 - s * m1, c * m1 + s * r1);
        }
    }
}

void apply_cnot(StateVector& state, int control, int target) {
    cdouble* a = state.amplitudes.data();
    const std::size_t dim = state.dim();
    const std::size_t cmask = state.qubit_mask(control);
    const std::size_t tmask = state.qubit_mask(target);
    for (std::size_t i = 0; i < dim; ++i) {
        if ((i & cmask) != 0 && (i & tmask) == 0) std::swap(a[i], a[i | tmask]);
    }
}

}  // namespace

StateVector zero_state(int n_qubits) {
    if (n_qubits < 1 || n_qubits > 16)
        throw std::invalid_argument("zero_state: n_qubits must be in 1..16");
    StateVector state;
    state.n_qubits = n_qubits;
    state.amplitudes.assign(std::size_t{1} << n_qubits, cdouble(0.0, 0.0));
    state.amplitudes[0] = 1.0;
    return state;
}

double norm_sq(const StateVector& state) {
    double total = 0.0;
    for (const cdouble& a : state.amplitudes)
        total += a.real() * a.real() + a.imag() * a.imag();
    return total;
}

cdouble inner_product(const StateVector& a, const StateVector& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("inner_product: dimension mismatch");
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        const double ar = a.amplitudes[i].real(), ai = a.amplitudes[i].imag();
        const double br = b.amplitudes[i].real(), bi = b.amplitudes[i].imag();
        re += ar * br + ai * bi;
        im += ar * bi - ai * br;
    }
    return {re, im};
}

void apply_gate(StateVector& state, const Gate& gate) {
    check_qubit(state, gate.target);
    switch (gate.kind) {
        case GateKind::rx:
            apply_rx(state, gate.target, gate.angle);
            break;
        case GateKind::ry:
            apply_ry(state, gate.target, gate.angle);
            break;
        case GateKind::rz:
            apply_rz(state, gate.target, gate.angle);
            break;
        case GateKind::cnot:
            check_qubit(state, gate.control);
            if (gate.control == gate.target)
                throw std::out_of_range("apply_gate: cnot control equals target");
            apply_cnot(state, gate.control, gate.target);
            break;
    }
}

void apply_pauli_x(StateVector& state, int qubit) {
    check_qubit(state, qubit);
    cdouble* a = state.amplitudes.data();
    const std::size_t dim = state.dim();
    const std::size_t stride = state.qubit_mask(qubit);
    for (std::size_t base = 0; base < dim; base += 2 * stride)
        for (std::size_t j = 0; j < stride; ++j) std::swap(a[base + j], a[base + j + stride]);
}

void apply_pauli_y(StateVector& state, int qubit) {
    check_qubit(state, qubit);
    cdouble* a = state.amplitudes.data();
    const std::size_t dim = state.dim();
    const std::size_t stride = state.qubit_mask(qubit);
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
        for (std::size_t j = 0; j < stride; ++j) {
            const std::size_t i0 = base + j;
            const std::size_t i1 = i0 + stride;
            const cdouble a0 = a[i0], a1 = a[i1];
            // Y = [[0, -i], [i, 0]]
            a[i0] = cdouble(a1.imag(), -a1.real());
            a[i1] = cdouble(-a0.imag(), a0.real());
        }
    }
}

void apply_pauli_z(StateVector& state, int qubit) {
    check_qubit(state, qubit);
    cdouble* a = state.amplitudes.data();
    const std::size_t dim = state.dim();
    const std::size_t mask = state.qubit_mask(qubit);
    for (std::size_t i = 0; i < dim; ++i)
        if (i & mask) a[i] = -a[i];
}

cdouble pauli_x_bracket(const StateVector& lam, const StateVector& ket, int qubit) {
    check_qubit(lam, qubit);
    const cdouble* l = lam.amplitudes.data();
    const cdouble* k = ket.amplitudes.data();
    const std::size_t dim = lam.dim();
    const std::size_t stride = lam.qubit_mask(qubit);
    double re = 0.0, im = 0.0;
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
        for (std::size_t j = 0; j < stride; ++j) {
            const std::size_t i0 = base + j;
            const std::size_t i1 = i0 + stride;
            // conj(l0) k1 + conj(l1) k0
            re += l[i0].real() * k[i1].real() + l[i0].imag() * k[i1].imag();
            im += l[i0].real() * k[i1].imag() - l[i0].imag() * k[i1].real();
            re += l[i1].real() * k[i0].real() + l[i1].imag() * k[i0].imag();
            im += l[i1].real() * k[i0].imag() - l[i1].imag() * k[i0].real();
        }
    }
    return {re, im};
}

cdouble pauli_y_bracket(const StateVector& lam, const StateVector& ket, int qubit) {
    check_qubit(lam, qubit);
    const cdouble* l = lam.amplitudes.data();
    const cdouble* k = ket.amplitudes.data();
    const std::size_t dim = lam.dim();
    const std::size_t stride = lam.qubit_mask(qubit);
    double re = 0.0, im = 0.0;
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
        for (std::size_t j = 0; j < stride; ++j) {
            const std::size_t i0 = base + j;
            const std::size_t i1 = i0 + stride;
            // (Y ket)_{i0} = -i k1 -> (k1.im, -k1.re); (Y ket)_{i1} = i k0
            const double p0r = k[i1].imag(), p0i = -k[i1].real();
            const double p1r = -k[i0].imag(), p1i = k[i0].real();
            re += l[i0].real() * p0r + l[i0].imag() * p0i;
            im += l[i0].real() * p0i - l[i0].imag() * p0r;
            re += l[i1].real() * p1r + l[i1].imag() * p1i;
            im += l[i1].real() * p1i - l[i1].imag() * p1r;
        }
    }
    return {re, im};
}

cdouble pauli_z_bracket(const StateVector& lam, const StateVector& ket, int qubit) {
    check_qubit(lam, qubit);
    const cdouble* l = lam.amplitudes.data();
    const cdouble* k = ket.amplitudes.data();
    const std::size_t dim = lam.dim();
    const std::size_t mask = lam.qubit_mask(qubit);
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
        const double sign = (i & mask) ? -1.0 : 1.0;
        re += sign * (l[i].real() * k[i].real() + l[i].imag() * k[i].imag());
        im += sign * (l[i].real() * k[i].imag() - l[i].imag() * k[i].real());
    }
    return {re, im};
}

double expectation_z(const StateVector& state, int qubit) {
    check_qubit(state, qubit);
    const std::size_t mask = state.qubit_mask(qubit);
    double value = 0.0;
    for (std::size_t i = 0; i < state.dim(); ++i) {
        const cdouble& a = state.amplitudes[i];
        const double p = a.real() * a.real() + a.imag() * a.imag();
        value += (i & mask) ? -p : p;
    }
    return value;
}

std::vector<long long> sample_counts(const StateVector& state, long long shots,
                                     std::uint64_t rng_seed) {
    if (shots < 1) throw std::invalid_argument("sample_counts: shots must be >= 1");
    // cumulative distribution over basis indices
    std::vector<double> cdf(state.dim());
    double acc = 0.0;
    for (std::size_t i = 0; i < state.dim(); ++i) {
        const cdouble& a = state.amplitudes[i];
        acc += a.real() * a.real() + a.imag() * a.imag();
        cdf[i] = acc;
    }
    cdf.back() = 1.0;  // guard against rounding in the tail

    Rng rng(rng_seed);
    std::vector<long long> counts(state.dim(), 0);
    for (long long s = 0; s < shots; ++s) {
        const double u = rng.uniform();
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        const std::size_t idx = std::min<std::size_t>(
            static_cast<std::size_t>(it - cdf.begin()), state.dim() - 1);
        ++counts[idx];
    }
    return counts;
}

double shot_expectation_z(const StateVector& state, int qubit, long long shots,
                          std::uint64_t rng_seed) {
    if (shots < 1) throw std::invalid_argument("shot_expectation_z: shots must be >= 1");
    check_qubit(state, qubit);
    const std::size_t mask = state.qubit_mask(qubit);
    double p_minus = 0.0;  // probability of measuring the qubit in |1>
    for (std::size_t i = 0; i < state.dim(); ++i) {
        if ((i & mask) == 0) continue;
        const cdouble& a = state.amplitudes[i];
        p_minus += a.real() * a.real() + a.imag() * a.imag();
    }
    Rng rng(rng_seed);
    long long n_minus = 0;
    for (long long s = 0; s < shots; ++s)
        if (rng.uniform() < p_minus) ++n_minus;
    return static_cast<double>(shots - 2 * n_minus) / static_cast<double>(shots);
}

}  // namespace qens
