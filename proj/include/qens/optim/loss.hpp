#pragma once

#include <vector>

namespace qens {

// mean of (prediction - target)^2; throws std::invalid_argument on empty or
// mismatched inputs
double mse_loss(const std::vector<double>& predictions, const std::vector<double>& targets);

// Categorical cross entropy: mean of -log p[label] over samples, with
// probabilities clamped below at 1e-12 before the log. Each row of
// class_probs must sum to 1 within 1e-6 and each label must be < k.
double cce_loss(const std::vector<std::vector<double>>& class_probs,
                const std::vector<int>& labels);

}  // namespace qens
