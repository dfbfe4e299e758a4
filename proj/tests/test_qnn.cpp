#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include "qens/qnn/backend.hpp"
#include "qens/qnn/circuit.hpp"
#include "qens/qnn/qnn.hpp"
#include "qens/rng.hpp"
#include "qens/sim/state_vector.hpp"

using namespace qens;

namespace {

std::vector<double> random_vector(Rng& rng, int n, double lo, double hi) {
    std::vector<double> v(n);
    for (double& x : v) x = rng.uniform(lo, hi);
    return v;
}

// independent reference: apply the bound gate list to |0...0> one amplitude
// pair at a time using the raw 2x2 matrices
std::vector<double> reference_heads(const Circuit& circuit, const std::vector<int>& heads) {
    StateVector state = zero_state(circuit.n_qubits);
    for (const Gate& gate : circuit.gates) apply_gate(state, gate);
    std::vector<double> out;
    for (int q : heads) out.push_back(expectation_z(state, q));
    return out;
}

}  // namespace

TEST_CASE("config factories and validation") {
    const QnnConfig reg = QnnConfig::regression(5, 3);
    CHECK(reg.n_qubits == 5);
    CHECK(reg.layers == 3);
    CHECK(reg.head_qubits == std::vector<int>{0});

    const QnnConfig cls = QnnConfig::classification(13, 10, 3);
    CHECK(cls.head_qubits == std::vector<int>{0, 1, 2});

    CHECK_THROWS_AS(QnnConfig::regression(0, 1), std::invalid_argument);
    CHECK_THROWS_AS(QnnConfig::regression(2, 0), std::invalid_argument);
    CHECK_THROWS_AS(QnnConfig::classification(2, 1, 3), std::invalid_argument);
    CHECK_THROWS_AS(QnnConfig::classification(2, 1, 1), std::invalid_argument);
}

TEST_CASE("circuit template has the documented layout") {
    const QnnConfig config = QnnConfig::regression(3, 2);
    CHECK(param_count(config) == 18);
    const Circuit circuit = build_qnn_circuit(config);
    const int n = 3;
    // feature map: n RY gates with feature roles
    REQUIRE(static_cast<int>(circuit.gates.size()) == n + 2 * (3 * n + 2 * (n - 1)));
    for (int i = 0; i < n; ++i) {
        CHECK(circuit.gates[i].kind == GateKind::ry);
        CHECK(circuit.gates[i].role == ParamRole::feature);
        CHECK(circuit.gates[i].param_slot == i);
        CHECK(circuit.gates[i].target == i);
    }
    // layer structure: RX block, chain, RZ block, chain, RX block
    int g = n;
    for (int layer = 0; layer < 2; ++layer) {
        const int base = 3 * layer * n;
        for (int i = 0; i < n; ++i, ++g) {
            CHECK(circuit.gates[g].kind == GateKind::rx);
            CHECK(circuit.gates[g].param_slot == base + i);
        }
        for (int i = 0; i < n - 1; ++i, ++g) {
            CHECK(circuit.gates[g].kind == GateKind::cnot);
            CHECK(circuit.gates[g].control == i);
            CHECK(circuit.gates[g].target == i + 1);
        }
        for (int i = 0; i < n; ++i, ++g) {
            CHECK(circuit.gates[g].kind == GateKind::rz);
            CHECK(circuit.gates[g].param_slot == base + n + i);
        }
        for (int i = 0; i < n - 1; ++i, ++g) CHECK(circuit.gates[g].kind == GateKind::cnot);
        for (int i = 0; i < n; ++i, ++g) {
            CHECK(circuit.gates[g].kind == GateKind::rx);
            CHECK(circuit.gates[g].param_slot == base + 2 * n + i);
        }
    }
}

TEST_CASE("resource counts follow the closed forms") {
    const ResourceReport linear_fm = resource_report(QnnConfig::regression(5, 1));
    CHECK(linear_fm.n_qubits == 5);
    CHECK(linear_fm.trainable_params == 15);
    CHECK(linear_fm.rotation_gates == 20);  // 5 feature RY + 15 ansatz rotations
    CHECK(linear_fm.cnot_gates == 8);
    CHECK(linear_fm.circuit_depth_gates == 28);

    const ResourceReport wine_fm = resource_report(QnnConfig::classification(13, 10, 3));
    CHECK(wine_fm.trainable_params == 390);
    CHECK(wine_fm.cnot_gates == 240);

    for (int n = 1; n <= 6; ++n)
        for (int l = 1; l <= 4; ++l) {
            const ResourceReport r = resource_report(QnnConfig::regression(n, l));
            CHECK(r.trainable_params == 3LL * l * n);
            CHECK(r.cnot_gates == 2LL * l * (n - 1));
            CHECK(r.rotation_gates == n + 3LL * l * n);
        }
}

TEST_CASE("forward on zero inputs and zero angles returns all-plus heads") {
    Backend backend = Backend::exact();
    const QnnConfig config = QnnConfig::classification(3, 2, 3);
    const std::vector<double> x(3, 0.0);
    const ParamVector theta(param_count(config), 0.0);
    const std::vector<double> heads = forward(x, theta, config, backend);
    REQUIRE(heads.size() == 3);
    for (double h : heads) CHECK(h == doctest::Approx(1.0));
}

TEST_CASE("forward matches the reference pipeline on random instances") {
    Backend backend = Backend::exact();
    Rng rng(606);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 1 + rng.integer(3);
        const int layers = 1 + rng.integer(2);
        const QnnConfig config = QnnConfig::regression(n, layers);
        const std::vector<double> x = random_vector(rng, n, -1.0, 1.0);
        const ParamVector theta = random_vector(rng, param_count(config), 0.0, 2.0 * M_PI);

        Circuit circuit = build_qnn_circuit(config);
        bind_circuit(circuit, x, theta);
        const std::vector<double> expect = reference_heads(circuit, config.head_qubits);
        const std::vector<double> got = forward(x, theta, config, backend);
        REQUIRE(got.size() == expect.size());
        for (std::size_t h = 0; h < got.size(); ++h)
            CHECK(std::abs(got[h] - expect[h]) < 1e-12);
    }
}

TEST_CASE("forward is 2pi-periodic in every trainable angle") {
    Backend backend = Backend::exact();
    Rng rng(19);
    const QnnConfig config = QnnConfig::regression(2, 2);
    const std::vector<double> x = random_vector(rng, 2, -1.0, 1.0);
    ParamVector theta = random_vector(rng, param_count(config), 0.0, 2.0 * M_PI);
    const double base = forward(x, theta, config, backend)[0];
    for (std::size_t j = 0; j < theta.size(); ++j) {
        ParamVector shifted = theta;
        shifted[j] += 2.0 * M_PI;
        CHECK(std::abs(forward(x, shifted, config, backend)[0] - base) < 1e-9);
    }
}

TEST_CASE("forward validates input lengths") {
    Backend backend = Backend::exact();
    const QnnConfig config = QnnConfig::regression(2, 1);
    const std::vector<double> x_ok(2, 0.1), x_bad(3, 0.1);
    const ParamVector theta_ok(6, 0.0), theta_bad(5, 0.0);
    CHECK_NOTHROW(forward(x_ok, theta_ok, config, backend));
    CHECK_THROWS_AS(forward(x_bad, theta_ok, config, backend), std::invalid_argument);
    CHECK_THROWS_AS(forward(x_ok, theta_bad, config, backend), std::invalid_argument);
}

TEST_CASE("softmax is stable and normalized") {
    const std::vector<double> p = softmax({1000.0, 1000.0, 1000.0});
    for (double v : p) CHECK(v == doctest::Approx(1.0 / 3.0));
    const std::vector<double> q = softmax({0.0, -700.0});
    CHECK(q[0] + q[1] == doctest::Approx(1.0));
    CHECK(q[0] > 0.999);
}

TEST_CASE("shot backend converges to the exact expectation") {
    Rng rng(88);
    const QnnConfig config = QnnConfig::regression(3, 1);
    const std::vector<double> x = random_vector(rng, 3, -1.0, 1.0);
    const ParamVector theta = random_vector(rng, param_count(config), 0.0, 2.0 * M_PI);

    Backend exact = Backend::exact();
    const double reference = forward(x, theta, config, exact)[0];

    const long long shots = 32768;
    Backend sampled = Backend::with_shots(shots, 4242);
    const double estimate = forward(x, theta, config, sampled)[0];
    CHECK(std::abs(estimate - reference) < 3.0 / std::sqrt(static_cast<double>(shots)) + 0.01);

    // every evaluation advances the stream, two backends with equal seeds agree
    Backend again = Backend::with_shots(shots, 4242);
    CHECK(forward(x, theta, config, again)[0] == estimate);
    CHECK(forward(x, theta, config, again)[0] != estimate);  // second call, new shots
}

TEST_CASE("multi-head shot estimates come from one histogram") {
    // all heads of one evaluation must be consistent with a single sample set:
    // with theta = 0 and x = 0 the state stays |000>, so every head reads +1
    Backend sampled = Backend::with_shots(256, 11);
    const QnnConfig config = QnnConfig::classification(3, 1, 3);
    const std::vector<double> heads =
        forward(std::vector<double>(3, 0.0), ParamVector(9, 0.0), config, sampled);
    for (double h : heads) CHECK(h == doctest::Approx(1.0));
}

TEST_CASE("noisy backend with zero rates equals the exact backend") {
    Rng rng(21);
    const QnnConfig config = QnnConfig::regression(2, 1);
    const std::vector<double> x = random_vector(rng, 2, -1.0, 1.0);
    const ParamVector theta = random_vector(rng, param_count(config), 0.0, 2.0 * M_PI);
    Backend exact = Backend::exact();
    Backend noisy = Backend::with_noise(NoiseModel{}, 7, 5);
    CHECK(std::abs(forward(x, theta, config, noisy)[0] - forward(x, theta, config, exact)[0]) <
          1e-12);
}

TEST_CASE("noisy backend is reproducible per seed and trajectory-averaged") {
    Rng rng(33);
    const QnnConfig config = QnnConfig::regression(2, 1);
    const std::vector<double> x = random_vector(rng, 2, -1.0, 1.0);
    const ParamVector theta = random_vector(rng, param_count(config), 0.0, 2.0 * M_PI);
    NoiseModel noise;
    noise.single_qubit_error = 0.05;
    noise.two_qubit_error = 0.05;

    Backend a = Backend::with_noise(noise, 50, 77);
    Backend b = Backend::with_noise(noise, 50, 77);
    const double va = forward(x, theta, config, a)[0];
    CHECK(va == forward(x, theta, config, b)[0]);

    // heavy noise pulls expectations toward zero on average
    Backend exact = Backend::exact();
    const double ideal = forward(x, theta, config, exact)[0];
    NoiseModel heavy;
    heavy.single_qubit_error = 0.5;
    heavy.two_qubit_error = 0.5;
    Backend c = Backend::with_noise(heavy, 400, 13);
    CHECK(std::abs(forward(x, theta, config, c)[0]) < std::abs(ideal) + 0.1);
}

TEST_CASE("backend validation rejects bad settings") {
    CHECK_THROWS_AS(Backend::with_shots(0, 1).validate(), std::invalid_argument);
    CHECK_THROWS_AS(Backend::with_noise(NoiseModel{}, 0, 1).validate(), std::invalid_argument);
    CHECK_NOTHROW(Backend::exact().validate());
}

TEST_CASE("model predictions expose heads, probabilities, and classes") {
    Backend backend = Backend::exact();
    QnnModel model;
    model.config = QnnConfig::classification(3, 1, 3);
    model.params = ParamVector(param_count(model.config), 0.0);
    const std::vector<double> x(3, 0.0);

    const std::vector<double> proba = predict_proba(model, x, backend);
    REQUIRE(proba.size() == 3);
    double sum = 0.0;
    for (double p : proba) sum += p;
    CHECK(sum == doctest::Approx(1.0));
    // equal heads tie; the lowest class index wins
    CHECK(predict_class(model, x, backend) == 0);

    QnnModel reg;
    reg.config = QnnConfig::regression(2, 1);
    reg.params = ParamVector(6, 0.0);
    CHECK(predict_value(reg, {0.0, 0.0}, backend) == doctest::Approx(1.0));
}
