#include "qens/optim/loss.hpp"

#include <cmath>
#include <stdexcept>

namespace qens {

double mse_loss(const std::vector<double>& predictions, const std::vector<double>& targets) {
    if (predictions.empty() || predictions.size() != targets.size())
        throw std::invalid_argument("mse_loss: inputs must be nonempty and equal length");
    double total = 0.0;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        const double diff = predictions[i] - targets[i];
        total += diff * diff;
    }
    return total / static_cast<double>(predictions.size());
}

double cce_loss(const std::vector<std::vector<double>>& class_probs,
                const std::vector<int>& labels) {
    if (class_probs.empty() || class_probs.size() != labels.size())
        throw std::invalid_argument("cce_loss: inputs must be nonempty and equal length");
    double total = 0.0;
    for (std::size_t i = 0; i < class_probs.size(); ++i) {
        const std::vector<double>& probs = class_probs[i];
        double mass = 0.0;
        for (double p : probs) mass += p;
        if (std::abs(mass - 1.0) > 1e-6)
            throw std::invalid_argument("cce_loss: probability row does not sum to 1");
        const int label = labels[i];
        if (label < 0 || label >= static_cast<int>(probs.size()))
            throw std::invalid_argument("cce_loss: label out of range");
        const double p = std::max(probs[static_cast<std::size_t>(label)], 1e-12);
        total -= std::log(p);
    }
    return total / static_cast<double>(class_probs.size());
}

}  // namespace qens
