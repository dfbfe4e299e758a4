#include "qens/data/synthetic.hpp"

#include <stdexcept>

#include "qens/rng.hpp"

namespace qens {

Dataset generate_linear_with_weights(int n, int d, double sigma, std::uint64_t seed,
                                     std::vector<double>& weights_out) {
    if (n < 1 || d < 1) throw std::invalid_argument("generate_linear: n and d must be >= 1");
    if (sigma < 0.0) throw std::invalid_argument("generate_linear: sigma must be >= 0");
    Rng rng(derive_seed(seed, "linear"));
    weights_out.assign(static_cast<std::size_t>(d), 0.0);
    for (double& w : weights_out) w = rng.uniform(-1.0, 1.0);

    Dataset data;
    data.task = TaskKind::regression;
    data.n_rows = n;
    data.n_cols = d;
    data.features.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(d));
    data.targets.reserve(static_cast<std::size_t>(n));
    for (int r = 0; r < n; ++r) {
        double y = 0.0;
        for (int c = 0; c < d; ++c) {
            const double x = rng.uniform(-1.0, 1.0);
            data.features.push_back(x);
            y += weights_out[static_cast<std::size_t>(c)] * x;
        }
        if (sigma > 0.0) y += rng.normal(0.0, sigma);
        data.targets.push_back(y);
    }
    return data;
}

Dataset generate_linear(int n, int d, double sigma, std::uint64_t seed) {
    std::vector<double> weights;
    return generate_linear_with_weights(n, d, sigma, seed, weights);
}

}  // namespace qens
