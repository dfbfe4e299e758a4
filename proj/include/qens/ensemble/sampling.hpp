#pragma once

#include <vector>

#include "qens/rng.hpp"

namespace qens {

// Rounding used when turning the feature ratio r_f into a subspace size.
// half_up is the default; floor is provided so experiment configs can pin
// the smaller published qubit counts (e.g. 1 qubit at r_f = 0.3 on d = 5).
enum class SubspaceRounding { half_up, floor };

// round(r_n * n_train) indices drawn uniformly with replacement, minimum 1.
std::vector<int> bootstrap_indices(int n_train, double r_n, Rng& rng);

// max(1, round(r_f * d)) distinct feature indices drawn uniformly without
// replacement, returned sorted ascending.
std::vector<int> subspace_indices(int d, double r_f, Rng& rng,
                                  SubspaceRounding rounding = SubspaceRounding::half_up);

// subspace size for a given dimension/ratio/rounding (resource accounting)
int subspace_size(int d, double r_f, SubspaceRounding rounding = SubspaceRounding::half_up);

}  // namespace qens
