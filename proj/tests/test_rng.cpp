#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "qens/rng.hpp"

using namespace qens;

TEST_CASE("derive_seed is deterministic and label/index sensitive") {
    const std::uint64_t a = derive_seed(42, "init");
    CHECK(a == derive_seed(42, "init"));
    CHECK(a != derive_seed(42, "split"));
    CHECK(a != derive_seed(43, "init"));
    CHECK(derive_seed(42, "member", 1) != derive_seed(42, "member", 2));
    CHECK(derive_seed(42, "member", 0) == derive_seed(42, "member"));
}

TEST_CASE("rng streams are reproducible per seed") {
    Rng a(123), b(123), c(124);
    bool all_equal = true, any_diff = false;
    for (int i = 0; i < 100; ++i) {
        const double x = a.uniform();
        all_equal = all_equal && x == b.uniform();
        any_diff = any_diff || x != c.uniform();
    }
    CHECK(all_equal);
    CHECK(any_diff);
}

TEST_CASE("uniform stays in range") {
    Rng rng(7);
    for (int i = 0; i < 10000; ++i) {
        const double u = rng.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
    for (int i = 0; i < 1000; ++i) {
        const double v = rng.uniform(-2.0, 3.0);
        CHECK(v >= -2.0);
        CHECK(v < 3.0);
    }
}

TEST_CASE("uniform mean and variance match the flat distribution") {
    Rng rng(11);
    const int n = 200000;
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform();
        sum += u;
        sum_sq += u * u;
    }
    const double mean = sum / n;
    const double var = sum_sq / n - mean * mean;
    CHECK(mean == doctest::Approx(0.5).epsilon(0.01));
    CHECK(var == doctest::Approx(1.0 / 12.0).epsilon(0.05));
}

TEST_CASE("normal samples match the requested moments") {
    Rng rng(5);
    const int n = 200000;
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = rng.normal(1.5, 2.0);
        sum += x;
        sum_sq += x * x;
    }
    const double mean = sum / n;
    const double var = sum_sq / n - mean * mean;
    CHECK(mean == doctest::Approx(1.5).epsilon(0.02));
    CHECK(std::sqrt(var) == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("integer draws are in range and roughly uniform") {
    Rng rng(9);
    std::vector<int> counts(6, 0);
    const int n = 60000;
    for (int i = 0; i < n; ++i) {
        const int k = rng.integer(6);
        REQUIRE(k >= 0);
        REQUIRE(k < 6);
        ++counts[k];
    }
    for (int c : counts) CHECK(c == doctest::Approx(n / 6.0).epsilon(0.05));
}

TEST_CASE("shuffle permutes without loss") {
    Rng rng(3);
    std::vector<int> values(50);
    for (int i = 0; i < 50; ++i) values[i] = i;
    std::vector<int> shuffled = values;
    rng.shuffle(shuffled);
    CHECK(shuffled != values);  // astronomically unlikely to be identity
    std::sort(shuffled.begin(), shuffled.end());
    CHECK(shuffled == values);
}
