#include "qens/ensemble/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qens {

namespace {

void check_ratio(double ratio, const char* name) {
    if (!(ratio > 0.0) || ratio > 1.0)
        throw std::invalid_argument(std::string(name) + " must be in (0, 1]");
}

}  // namespace

std::vector<int> bootstrap_indices(int n_train, double r_n, Rng& rng) {
    if (n_train < 1) throw std::invalid_argument("bootstrap_indices: n_train must be >= 1");
    check_ratio(r_n, "bootstrap_indices: r_n");
    const int count = std::max(1, static_cast<int>(std::llround(r_n * n_train)));
    std::vector<int> indices(static_cast<std::size_t>(count));
    for (int& index : indices) index = static_cast<int>(rng.integer(static_cast<std::uint64_t>(n_train)));
    return indices;
}

int subspace_size(int d, double r_f, SubspaceRounding rounding) {
    if (d < 1) throw std::invalid_argument("subspace_size: d must be >= 1");
    check_ratio(r_f, "subspace_size: r_f");
    const double raw = r_f * d;
    const int rounded = rounding == SubspaceRounding::half_up
                            ? static_cast<int>(std::floor(raw + 0.5))
                            : static_cast<int>(std::floor(raw));
    return std::max(1, rounded);
}

std::vector<int> subspace_indices(int d, double r_f, Rng& rng, SubspaceRounding rounding) {
    const int k = subspace_size(d, r_f, rounding);
    // partial Fisher-Yates: first k entries are a uniform sample without
    // replacement
    std::vector<int> pool(static_cast<std::size_t>(d));
    std::iota(pool.begin(), pool.end(), 0);
    for (int i = 0; i < k; ++i) {
        const int j = i + static_cast<int>(rng.integer(static_cast<std::uint64_t>(d - i)));
        std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
    }
    std::vector<int> chosen(pool.begin(), pool.begin() + k);
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

}  // namespace qens
