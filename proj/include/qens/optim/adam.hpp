#pragma once

#include <vector>

namespace qens {

struct AdamConfig {
    double learning_rate = 0.1;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
};

// First and second moment accumulators, zero-initialized to the parameter
// length on first use.
struct AdamState {
    std::vector<double> m;
    std::vector<double> v;
};

// maps an angle into [0, 2*pi)
double wrap_angle(double angle);

// One standard ADAM update with bias correction; t is the 1-based step
// index. Angle wrapping is intentionally left to the caller: the QNN
// training loop wraps its parameters after every step (rotation angles are
// 2*pi-periodic), while generic scalar optimization must not wrap.
void adam_step(std::vector<double>& params, const std::vector<double>& grads, AdamState& state,
               long long t, const AdamConfig& config);

}  // namespace qens
