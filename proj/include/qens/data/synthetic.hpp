#pragma once

#include <cstdint>

#include "qens/data/dataset.hpp"

namespace qens {

// Linear regression data: w ~ uniform[-1,1]^d drawn once, rows
// x ~ uniform[-1,1]^d, y = w . x + eps with eps ~ Normal(0, sigma^2)
// (sigma is the standard deviation). Targets are raw; the experiment
// pipeline min-max scales them to [-1, 1] after splitting.
Dataset generate_linear(int n, int d, double sigma, std::uint64_t seed);

// Same, also reporting the drawn weight vector (for residual checks).
Dataset generate_linear_with_weights(int n, int d, double sigma, std::uint64_t seed,
                                     std::vector<double>& weights_out);

}  // namespace qens
