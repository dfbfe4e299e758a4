#pragma once

#include <string>
#include <vector>

namespace qens {

// Output combination rules. average/weighted_average/min/max/weighted_median
// apply to regression outputs; average, the voting rules, and borda apply to
// classification. weighted_median is a non-default extra kept for reference
// alongside the weighted-average boosting combiner.
enum class CombinationRule {
    average,
    weighted_average,
    majority_vote,
    weighted_majority_vote,
    borda,
    min,
    max,
    weighted_median
};

std::string combination_rule_name(CombinationRule rule);
CombinationRule parse_combination_rule(const std::string& name);

// Combines one regression output per member. Weighted rules require one
// positive weight per member; unweighted rules ignore `weights`. Throws
// std::invalid_argument on empty input or a classification-only rule.
double combine_regression(const std::vector<double>& outputs, CombinationRule rule,
                          const std::vector<double>& weights = {});

// Combines per-member class-probability vectors into a class index. Ties
// always break toward the lowest class index. Throws std::invalid_argument
// on shape mismatch or a regression-only rule.
int combine_classification(const std::vector<std::vector<double>>& member_probs,
                           CombinationRule rule, const std::vector<double>& weights = {});

// Probability that a jury of m independent voters, each correct with
// probability p, returns a correct verdict: sum over k from
// ceil(m/2) + 1 to m of C(m, k) p^k (1-p)^(m-k). The default lower bound
// follows the strict-majority-plus-one convention; the overload takes an
// explicit bound. An empty summation range yields 0.
double jury_probability(int m, double p);
double jury_probability(int m, double p, int k_min);

}  // namespace qens
