#include "qens/optim/adam.hpp"

#include <cmath>
#include <stdexcept>

namespace qens {

double wrap_angle(double angle) {
    constexpr double two_pi = 6.283185307179586476925286766559;
    double wrapped = std::fmod(angle, two_pi);
    if (wrapped < 0.0) wrapped += two_pi;
    return wrapped;
}

void adam_step(std::vector<double>& params, const std::vector<double>& grads, AdamState& state,
               long long t, const AdamConfig& config) {
    if (params.size() != grads.size())
        throw std::invalid_argument("adam_step: params and grads must have equal length");
    if (t < 1) throw std::invalid_argument("adam_step: step index t must be >= 1");
    if (state.m.empty()) {
        state.m.assign(params.size(), 0.0);
        state.v.assign(params.size(), 0.0);
    }
    if (state.m.size() != params.size())
        throw std::invalid_argument("adam_step: moment state length mismatch");

    const double bias1 = 1.0 - std::pow(config.beta1, static_cast<double>(t));
    const double bias2 = 1.0 - std::pow(config.beta2, static_cast<double>(t));
    for (std::size_t j = 0; j < params.size(); ++j) {
        state.m[j] = config.beta1 * state.m[j] + (1.0 - config.beta1) * grads[j];
        state.v[j] = config.beta2 * state.v[j] + (1.0 - config.beta2) * grads[j] * grads[j];
        const double m_hat = state.m[j] / bias1;
        const double v_hat = state.v[j] / bias2;
        params[j] -= config.learning_rate * m_hat / (std::sqrt(v_hat) + config.eps);
    }
}

}  // namespace qens
