#include "qens/ensemble/combine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qens {

std::string combination_rule_name(CombinationRule rule) {
    switch (rule) {
        case CombinationRule::average: return "average";
        case CombinationRule::weighted_average: return "weighted_average";
        case CombinationRule::majority_vote: return "majority_vote";
        case CombinationRule::weighted_majority_vote: return "weighted_majority_vote";
        case CombinationRule::borda: return "borda";
        case CombinationRule::min: return "min";
        case CombinationRule::max: return "max";
        case CombinationRule::weighted_median: return "weighted_median";
    }
    throw std::invalid_argument("combination_rule_name: unknown rule");
}

CombinationRule parse_combination_rule(const std::string& name) {
    for (CombinationRule rule :
         {CombinationRule::average, CombinationRule::weighted_average,
          CombinationRule::majority_vote, CombinationRule::weighted_majority_vote,
          CombinationRule::borda, CombinationRule::min, CombinationRule::max,
          CombinationRule::weighted_median})
        if (combination_rule_name(rule) == name) return rule;
    throw std::invalid_argument("unknown combination rule '" + name + "'");
}

namespace {

bool is_weighted(CombinationRule rule) {
    return rule == CombinationRule::weighted_average ||
           rule == CombinationRule::weighted_majority_vote ||
           rule == CombinationRule::weighted_median;
}

std::vector<double> effective_weights(std::size_t n_members, CombinationRule rule,
                                      const std::vector<double>& weights) {
    if (!is_weighted(rule)) return std::vector<double>(n_members, 1.0);
    if (weights.size() != n_members)
        throw std::invalid_argument("combine: one weight per member required");
    for (double w : weights)
        if (!(w > 0.0)) throw std::invalid_argument("combine: weights must be positive");
    return weights;
}

int argmax_lowest(const std::vector<double>& scores) {
    int best = 0;
    for (int c = 1; c < static_cast<int>(scores.size()); ++c)
        if (scores[static_cast<std::size_t>(c)] > scores[static_cast<std::size_t>(best)]) best = c;
    return best;
}

}  // namespace

double combine_regression(const std::vector<double>& outputs, CombinationRule rule,
                          const std::vector<double>& weights) {
    if (outputs.empty()) throw std::invalid_argument("combine_regression: no member outputs");
    const std::vector<double> w = effective_weights(outputs.size(), rule, weights);
    switch (rule) {
        case CombinationRule::average: {
            double total = 0.0;
            for (double v : outputs) total += v;
            return total / static_cast<double>(outputs.size());
        }
        case CombinationRule::weighted_average: {
            // a one-member ensemble must reproduce its member bit for bit
            if (outputs.size() == 1) return outputs[0];
            double total = 0.0, mass = 0.0;
            for (std::size_t i = 0; i < outputs.size(); ++i) {
                total += w[i] * outputs[i];
                mass += w[i];
            }
            return total / mass;
        }
        case CombinationRule::min:
            return *std::min_element(outputs.begin(), outputs.end());
        case CombinationRule::max:
            return *std::max_element(outputs.begin(), outputs.end());
        case CombinationRule::weighted_median: {
            // smallest output whose cumulative weight reaches half the total
            std::vector<std::size_t> order(outputs.size());
            std::iota(order.begin(), order.end(), std::size_t{0});
            std::sort(order.begin(), order.end(),
                      [&](std::size_t a, std::size_t b) { return outputs[a] < outputs[b]; });
            double mass = 0.0;
            for (double wi : w) mass += wi;
            double acc = 0.0;
            for (std::size_t i : order) {
                acc += w[i];
                if (acc >= 0.5 * mass) return outputs[i];
            }
            return outputs[order.back()];
        }
        case CombinationRule::majority_vote:
        case CombinationRule::weighted_majority_vote:
        case CombinationRule::borda:
            throw std::invalid_argument("combine_regression: rule '" + combination_rule_name(rule) +
                                        "' is classification-only");
    }
    throw std::invalid_argument("combine_regression: unknown rule");
}

int combine_classification(const std::vector<std::vector<double>>& member_probs,
                           CombinationRule rule, const std::vector<double>& weights) {
    if (member_probs.empty()) throw std::invalid_argument("combine_classification: no members");
    const std::size_t k = member_probs[0].size();
    if (k < 2) throw std::invalid_argument("combine_classification: need at least 2 classes");
    for (const std::vector<double>& probs : member_probs)
        if (probs.size() != k)
            throw std::invalid_argument("combine_classification: inconsistent class counts");
    const std::vector<double> w = effective_weights(member_probs.size(), rule, weights);

    std::vector<double> scores(k, 0.0);
    switch (rule) {
        case CombinationRule::average:
        case CombinationRule::weighted_average:
            for (std::size_t m = 0; m < member_probs.size(); ++m)
                for (std::size_t c = 0; c < k; ++c) scores[c] += w[m] * member_probs[m][c];
            break;
        case CombinationRule::majority_vote:
        case CombinationRule::weighted_majority_vote:
            for (std::size_t m = 0; m < member_probs.size(); ++m)
                scores[static_cast<std::size_t>(argmax_lowest(member_probs[m]))] += w[m];
            break;
        case CombinationRule::borda:
            // each member awards k-1 points to its top class down to 0 for its
            // last; within a member, equal probabilities rank lower class first
            for (const std::vector<double>& probs : member_probs) {
                std::vector<std::size_t> order(k);
                std::iota(order.begin(), order.end(), std::size_t{0});
                std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                    if (probs[a] != probs[b]) return probs[a] > probs[b];
                    return a < b;
                });
                for (std::size_t rank = 0; rank < k; ++rank)
                    scores[order[rank]] += static_cast<double>(k - 1 - rank);
            }
            break;
        case CombinationRule::min:
        case CombinationRule::max:
        case CombinationRule::weighted_median:
            throw std::invalid_argument("combine_classification: rule '" +
                                        combination_rule_name(rule) + "' is regression-only");
        default:
            throw std::invalid_argument("combine_classification: unknown rule");
    }
    return argmax_lowest(scores);
}

double jury_probability(int m, double p, int k_min) {
    if (m < 1) throw std::invalid_argument("jury_probability: m must be >= 1");
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("jury_probability: p must be in [0, 1]");
    if (k_min > m) return 0.0;  // empty summation range
    double total = 0.0;
    for (int k = std::max(k_min, 0); k <= m; ++k) {
        // binomial coefficient built multiplicatively; exact in double for m <= 2^9
        double binom = 1.0;
        for (int i = 1; i <= k; ++i)
            binom = binom * static_cast<double>(m - k + i) / static_cast<double>(i);
        total += binom * std::pow(p, k) * std::pow(1.0 - p, m - k);
    }
    return total;
}

double jury_probability(int m, double p) {
    if (m < 1) throw std::invalid_argument("jury_probability: m must be >= 1");
    const int k_min = (m + 1) / 2 + 1;  // ceil(m/2) + 1
    return jury_probability(m, p, k_min);
}

}  // namespace qens
