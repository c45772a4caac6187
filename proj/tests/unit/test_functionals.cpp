#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "fclt/functionals.hpp"
#include "fclt/norming.hpp"
#include "fclt/special.hpp"
#include "fclt/stats.hpp"
#include "oracles.hpp"

using namespace fclt;

TEST_CASE("functional statistic worked examples")
{
    const std::vector<double> x{1.0, 3.0, 2.0};
    const auto s = functional_statistic(x, FunctionSpec::identity(), 2.0, 1.0, 3);
    const std::vector<double> expect{0.0, -1.0, -1.0, -1.0};
    CHECK(std::vector<double>(s.values().begin(), s.values().end()) == expect);

    const std::vector<double> e{std::numbers::e, std::numbers::e};
    const auto q = functional_statistic(e, FunctionSpec::qi_log(1.0), 1.0, 2.0, 2);
    CHECK(q.values()[0] == 0.0);
    CHECK(q.values()[1] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(q.values()[2] == doctest::Approx(1.0).epsilon(1e-15));

    // grid finer than n holds the last partial sum
    const auto fine = functional_statistic(x, FunctionSpec::identity(), 2.0, 1.0, 6);
    CHECK(fine.values()[1] == 0.0);
    CHECK(fine.values()[2] == -1.0);
    CHECK(fine(0.4) == -1.0);

    CHECK_THROWS_AS(functional_statistic({}, FunctionSpec::identity(), 0.0, 1.0, 4),
                    std::invalid_argument);
    CHECK_THROWS_AS(functional_statistic(x, FunctionSpec::identity(), 2.0, 0.0, 4),
                    std::invalid_argument);
    CHECK_THROWS_AS(functional_statistic(x, FunctionSpec::identity(), 2.0, 1.0, 0),
                    std::invalid_argument);
    CHECK_THROWS_AS(FunctionSpec::qi_log(0.0), std::invalid_argument);
}

TEST_CASE("domain violations report the offending index")
{
    const std::vector<double> x{1.0, -3.0, 10.0};
    try {
        functional_statistic(x, FunctionSpec::qi_log(1.0), 1.0, 1.0, 3);
        FAIL("no violation raised");
    } catch (const DomainViolation& v) {
        CHECK(v.index() == 2);
    }
    CHECK_THROWS_AS(log_product_statistic(x, 1.0, 1.0), DomainViolation);
    CHECK_THROWS_AS(functional_statistic(x, FunctionSpec::qi_log(1.0), -1.0, 1.0, 3),
                    std::invalid_argument);
}

TEST_CASE("functional statistic is additive and scales with a_n")
{
    Philox4x32 rng(3, 0);
    const auto x = sample_doa(DoaSpec(family::Exponential{1.0}), rng, 1000);
    const auto fn = FunctionSpec::qi_log(1.0);
    const auto one = functional_statistic(x, fn, 1.0, 1.0, 1000);
    const auto ten = functional_statistic(x, fn, 1.0, 10.0, 1000);
    double running = 0.0;
    for (std::size_t k = 1; k <= 1000; ++k) {
        double s = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            s += x[i];
        }
        running += std::log(s / static_cast<double>(k));
        CHECK(one.values()[k] == doctest::Approx(running).epsilon(1e-10));
        CHECK(ten.values()[k] == doctest::Approx(one.values()[k] / 10.0).epsilon(1e-14));
    }

    std::vector<double> sums(x.begin(), x.end());
    for (std::size_t k = 1; k < sums.size(); ++k) {
        sums[k] += sums[k - 1];
    }
    const auto from_sums = functional_statistic_from_sums(sums, fn, 1.0, 1.0, 1000);
    CHECK(from_sums.sup_distance(one) == 0.0);
}

TEST_CASE("product statistic")
{
    const std::vector<double> x{2.0, 2.0};
    CHECK(product_statistic(x, 1.0, 1.0) == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(product_statistic(x, 1.0, 0.5) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(product_statistic(x, 2.0, 3.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(product_statistic(x, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(product_statistic(x, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(product_statistic({}, 1.0, 1.0), std::invalid_argument);

    // log of the product with exponent mu / a_n is the qi-log statistic at t = 1
    const DoaSpec spec(family::Pareto{1.5, 1.0, 0.0});
    Philox4x32 rng(8, 0);
    const std::size_t n = 5000;
    const auto draws = sample_doa(spec, rng, n);
    const double mu = spec.known_mu();
    const double a_n = norming_sequence(spec, n).a_n;
    const auto path = functional_statistic(draws, FunctionSpec::qi_log(mu), mu, a_n, 100);
    CHECK(log_product_statistic(draws, mu, mu / a_n) ==
          doctest::Approx(path(1.0)).epsilon(1e-10));
}

TEST_CASE("exponential product statistic is asymptotically lognormal")
{
    // log P_n -> N(0, 2) for exponential(1) with exponent 1 / sqrt(n)
    const DoaSpec spec(family::Exponential{1.0});
    const std::size_t n = 10000;
    const std::size_t reps = 1000;
    std::vector<double> products(reps);
    for (std::size_t r = 0; r < reps; ++r) {
        Philox4x32 rng(17, r);
        products[r] = product_statistic(sample_doa(spec, rng, n), 1.0,
                                        1.0 / std::sqrt(static_cast<double>(n)));
    }
    const auto lognormal = [](double p) { return oracle::normal_cdf(std::log(p), 2.0); };
    CHECK(ks_one_sample(products, lognormal).statistic < 0.06);
    const auto wrong = [](double p) { return oracle::normal_cdf(std::log(p), 1.0); };
    CHECK(ks_one_sample(products, wrong).statistic > 0.06);
}

TEST_CASE("Riemann integral of path / x")
{
    const SamplePath zero = SamplePath::uniform(std::vector<double>(9, 0.0));
    CHECK(integral_riemann(zero, 1.0, 0.125) == 0.0);

    std::vector<double> v(9);
    for (std::size_t j = 0; j < v.size(); ++j) {
        v[j] = static_cast<double>(j) / 8.0;
    }
    const SamplePath linear = SamplePath::uniform(v);
    CHECK(integral_riemann(linear, 1.0, 0.125) == doctest::Approx(0.875).epsilon(1e-15));
    CHECK(integral_riemann(linear, 0.5, 0.125) == doctest::Approx(0.375).epsilon(1e-15));
    // off-grid eps: the partial cell uses the path at its right end
    CHECK(integral_riemann(linear, 1.0, 0.2) == doctest::Approx(0.8).epsilon(1e-14));

    CHECK_THROWS_AS(integral_riemann(linear, 0.5, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(integral_riemann(linear, 1.5, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(integral_riemann(linear, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("Riemann integral of Brownian motion is N(0, 2)")
{
    // Var int_0^1 W(x)/x dx = int int min(x, y) / (x y) = 2
    const std::size_t reps = 2000;
    const std::size_t grid = 1024;
    std::vector<double> values(reps);
    std::vector<double> truncation(reps);
    for (std::size_t r = 0; r < reps; ++r) {
        Philox4x32 rng(23, r);
        const auto path = simulate_levy_path(2.0, 0.0, rng, grid);
        values[r] = integral_riemann(path, 1.0, 1.0 / grid);
        truncation[r] = values[r] - integral_riemann(path, 1.0, 16.0 / grid);
    }
    CHECK(ks_one_sample(values, [](double x) { return oracle::normal_cdf(x, 2.0); }).statistic <
          0.04);
    // the part between 1/grid and 16/grid carries a small share of the variance
    double var = 0.0;
    double var_trunc = 0.0;
    for (std::size_t r = 0; r < reps; ++r) {
        var += values[r] * values[r];
        var_trunc += truncation[r] * truncation[r];
    }
    CHECK(var_trunc / var < 0.05);
}

TEST_CASE("limit law")
{
    const auto g = limit_law(2.0, 0.0, 1.0, 1.0);
    CHECK(g.alpha == 2.0);
    CHECK(g.dispersion == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(g.location == 0.0);
    const auto s = limit_law(1.5, 1.0, 0.5, -2.0);
    CHECK(s.alpha == 1.5);
    CHECK(s.beta == -1.0);
    CHECK(s.dispersion ==
          doctest::Approx(std::pow(2.0, 1.5) * std::tgamma(2.5) * 0.5).epsilon(1e-13));
    CHECK(s.location == 0.0);

    // law of f' Gamma(alpha + 1)^(1/alpha) L(t): scale by |f'| times the
    // constant, then reflect for the sign of f'
    const auto direct = scale_shift(StableParams{1.5, 1.0, 0.5, 0.0},
                                    2.0 * limit_constant(1.5), 0.0);
    CHECK(-direct.beta == s.beta);
    CHECK(direct.dispersion == doctest::Approx(s.dispersion).epsilon(1e-13));

    CHECK_THROWS_AS(limit_law(1.0, 0.0, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(limit_law(2.5, 0.0, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(limit_law(1.5, 0.0, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(limit_law(1.5, 0.0, 1.5, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(limit_law(1.5, 0.0, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("functional config validation")
{
    const DoaSpec spec(family::Exponential{1.0});
    FunctionalConfig ok{spec, FunctionSpec::identity()};
    CHECK_NOTHROW(ok.validate());
    auto bad = ok;
    bad.n = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = ok;
    bad.grid = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = ok;
    bad.gamma = -1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = ok;
    bad.fn.f = nullptr;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("identity and qi-log statistics agree to first order")
{
    const DoaSpec spec(family::Exponential{1.0});
    const std::size_t n = 10000;
    const double a_n = norming_sequence(spec, n).a_n;
    std::vector<double> gaps;
    for (std::size_t r = 0; r < 50; ++r) {
        Philox4x32 rng(61, r);
        const auto x = sample_doa(spec, rng, n);
        const auto lin = functional_statistic(x, FunctionSpec::identity(), 1.0, a_n, 256);
        const auto log = functional_statistic(x, FunctionSpec::qi_log(1.0), 1.0, a_n, 256);
        gaps.push_back(lin.sup_distance(log));
    }
    std::sort(gaps.begin(), gaps.end());
    CHECK(gaps[25] < 0.15);
}

TEST_CASE("moving-average input has the same functional limit")
{
    const DoaSpec spec(family::Exponential{1.0});
    const MovingAverageSource source(spec);
    const std::size_t n = 10000;
    const std::size_t reps = 1000;
    std::vector<double> at_one(reps);
    for (std::size_t r = 0; r < reps; ++r) {
        Philox4x32 rng(71, r);
        const auto sums = source.partial_sums(rng, n);
        const auto path = functional_statistic_from_sums(sums, FunctionSpec::qi_log(1.0), 1.0,
                                                         source.norming(n), 64);
        at_one[r] = path(1.0);
    }
    const auto law = limit_law(2.0, 0.0, 1.0, 1.0);
    CHECK(ks_one_sample(at_one, [&](double x) { return cdf(law, x); }).statistic < 0.06);
}
