#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace qens {

using cdouble = std::complex<double>;

enum class GateKind { rx, ry, rz, cnot };

// Role of a gate's angle in a parametrized circuit. `fixed` angles are
// literal; `feature` angles are bound from the input vector x; `trainable`
// angles are bound from the parameter vector theta.
enum class ParamRole { fixed, feature, trainable };

// One circuit gate. Rotations use `target` and `angle`; CNOT uses
// `control`/`target` and ignores the angle fields.
struct Gate {
    GateKind kind = GateKind::rx;
    int target = 0;
    int control = -1;    // cnot only; -1 otherwise
    double angle = 0.0;  // rotations only, radians
    ParamRole role = ParamRole::fixed;
    int param_slot = -1;  // index into x (feature) or theta (trainable)

    static Gate rx(int target, double angle) { return {GateKind::rx, target, -1, angle, ParamRole::fixed, -1}; }
    static Gate ry(int target, double angle) { return {GateKind::ry, target, -1, angle, ParamRole::fixed, -1}; }
    static Gate rz(int target, double angle) { return {GateKind::rz, target, -1, angle, ParamRole::fixed, -1}; }
    static Gate cnot(int control, int target) { return {GateKind::cnot, target, control, 0.0, ParamRole::fixed, -1}; }

    static Gate rx_slot(int target, ParamRole role, int slot) { return {GateKind::rx, target, -1, 0.0, role, slot}; }
    static Gate ry_slot(int target, ParamRole role, int slot) { return {GateKind::ry, target, -1, 0.0, role, slot}; }
    static Gate rz_slot(int target, ParamRole role, int slot) { return {GateKind::rz, target, -1, 0.0, role, slot}; }

    bool is_rotation() const { return kind != GateKind::cnot; }
};

// Dense unitary of a single gate, row-major. dim is 2 (rotations) or 4
// (CNOT); entries beyond dim*dim are zero.
struct GateMatrix {
    int dim = 2;
    std::array<cdouble, 16> m{};

    cdouble at(int row, int col) const { return m[static_cast<std::size_t>(row * dim + col)]; }
};

// Builds the gate's unitary. Rotations follow R_p(theta) = exp(-i theta p/2)
// for p in {sigma_x, sigma_y, sigma_z}; CNOT is the standard controlled-X in
// the (control, target) ordered two-qubit basis |00>,|01>,|10>,|11>.
inline GateMatrix gate_matrix(const Gate& gate) {
    GateMatrix out;
    const double c = std::cos(gate.angle / 2.0);
    const double s = std::sin(gate.angle / 2.0);
    switch (gate.kind) {
        case GateKind::rx:
            out.dim = 2;
            out.m = {cdouble(c, 0), cdouble(0, -s), cdouble(0, -s), cdouble(c, 0)};
            break;
        case GateKind::ry:
            out.dim = 2;
            out.m = {cdouble(c, 0), cdouble(-s, 0), cdouble(s, 0), cdouble(c, 0)};
            break;
        case GateKind::rz:
            out.dim = 2;
            out.m = {cdouble(c, -s), cdouble(0, 0), cdouble(0, 0), cdouble(c, s)};
            break;
        case GateKind::cnot:
            out.dim = 4;
            out.m.fill(cdouble(0, 0));
            out.m[0 * 4 + 0] = 1.0;
            out.m[1 * 4 + 1] = 1.0;
            out.m[2 * 4 + 3] = 1.0;
            out.m[3 * 4 + 2] = 1.0;
            break;
        default:
            throw std::invalid_argument("gate_matrix: unknown gate kind");
    }
    return out;
}

}  // namespace qens
