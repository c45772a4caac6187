#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "fclt/norming.hpp"
#include "fclt/special.hpp"
#include "fclt/stats.hpp"

using namespace fclt;

namespace {

std::vector<DoaSpec> registered()
{
    return {DoaSpec(family::Exponential{1.0}), DoaSpec(family::Exponential{3.0}),
            DoaSpec(family::Pareto{1.5, 1.0, 0.0}), DoaSpec(family::Pareto{1.7, 2.0, 1.0}),
            DoaSpec(family::Pareto{3.0, 1.0, 0.0}),
            DoaSpec(family::ExactStable{StableParams{1.5, 1.0, 1.0, 0.0}}),
            DoaSpec(family::TwoSidedPareto{1.5, 0.7})};
}

}  // namespace

TEST_CASE("norming worked examples")
{
    const auto e = norming_sequence(DoaSpec(family::Exponential{1.0}), 100);
    CHECK(e.a_n == 10.0);
    CHECK(e.b_n == 100.0);
    const auto s = norming_sequence(DoaSpec(family::ExactStable{StableParams{1.5, 1, 1, 0}}), 8);
    CHECK(s.a_n == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(s.b_n == 0.0);

    const double c = stable_tail_constant(1.5);
    CHECK(c == doctest::Approx(1.0 / std::sqrt(2.0 * std::numbers::pi)).epsilon(1e-12));
    const auto p = norming_sequence(DoaSpec(family::Pareto{1.5, 1.0, 0.0}), 1000);
    CHECK(p.a_n == doctest::Approx(std::pow(1000.0 / c, 2.0 / 3.0)).epsilon(1e-14));
    CHECK(p.b_n == doctest::Approx(3000.0));

    CHECK_THROWS_AS(norming_sequence(DoaSpec(family::Pareto{2.0, 1.0, 0.0}), 10),
                    std::domain_error);
    CHECK_THROWS_AS(norming_sequence(DoaSpec(family::Exponential{1.0}), 0),
                    std::invalid_argument);
}

TEST_CASE("Pareto norming constant matches the stable limit")
{
    // (S_n - n mu) / a_n against S_1.5(1, 1, 0) at n = 1e5; the registered
    // constant must fit, and fit better than constants 25% off either way.
    const DoaSpec spec(family::Pareto{1.5, 1.0, 0.0});
    const std::size_t n = 100000;
    const std::size_t reps = 1000;
    const double a_n = norming_sequence(spec, n).a_n;
    std::vector<double> centred(reps);
    for (std::size_t r = 0; r < reps; ++r) {
        Philox4x32 rng(31, r);
        double s = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            s += spec.draw(rng);
        }
        centred[r] = s - static_cast<double>(n) * spec.known_mu();
    }
    const auto limit = StableParams::standard(1.5, 1.0);
    auto ks_with = [&](double a) {
        std::vector<double> z(reps);
        for (std::size_t r = 0; r < reps; ++r) {
            z[r] = centred[r] / a;
        }
        return ks_one_sample(z, [&](double x) { return cdf(limit, x); }).statistic;
    };
    const double fit = ks_with(a_n);
    CHECK(fit < 0.05);
    CHECK(fit < ks_with(0.8 * a_n));
    CHECK(fit < ks_with(1.25 * a_n));
}

TEST_CASE("norming sequences are positive, nondecreasing and regularly varying")
{
    for (const auto& spec : registered()) {
        const auto seq = NormingSeq::for_spec(spec);
        double prev = 0.0;
        for (std::size_t n = 1; n <= 100000; n = n * 3 + 1) {
            const double a = seq.a(n);
            CHECK(a > 0.0);
            CHECK(a >= prev);
            prev = a;
            CHECK(seq.b(n) == doctest::Approx(static_cast<double>(n) * spec.known_mu()));
        }
        const double alpha = spec.known_alpha();
        for (double lambda : {2.0, 10.0}) {
            const std::size_t n = 100000;
            const double ratio = seq.a(static_cast<std::size_t>(lambda * n)) /
                                 (std::pow(lambda, 1.0 / alpha) * seq.a(n));
            CHECK(std::abs(ratio - 1.0) < 0.1);
        }
    }
    CHECK_THROWS_AS(NormingSeq([](std::size_t) { return -1.0; }, 0.0, "bad").a(3),
                    std::domain_error);
}

TEST_CASE("Karamata partial sums")
{
    const double n = 100000;
    const auto nn = static_cast<std::size_t>(n);
    const NormingSeq root([](std::size_t k) { return std::sqrt(static_cast<double>(k)); }, 0.0,
                          "sqrt");
    CHECK(karamata_partial_sum(root, nn) / (2.0 * std::sqrt(n)) == doctest::Approx(1.0).epsilon(0.02));

    const NormingSeq linear([](std::size_t k) { return static_cast<double>(k); }, 0.0, "k");
    CHECK(karamata_partial_sum(linear, nn) == n);

    const NormingSeq two_thirds(
        [](std::size_t k) { return std::pow(static_cast<double>(k), 2.0 / 3.0); }, 0.0, "k^2/3");
    CHECK(karamata_partial_sum(two_thirds, nn) / (1.5 * std::pow(n, 2.0 / 3.0)) ==
          doctest::Approx(1.0).epsilon(0.02));

    // sum a_k / k = O(a_n) for every registered family, settling to alpha
    for (const auto& spec : registered()) {
        const auto seq = NormingSeq::for_spec(spec);
        std::vector<double> ratios;
        for (std::size_t m : {1000u, 10000u, 100000u}) {
            ratios.push_back(karamata_partial_sum(seq, m) / seq.a(m));
        }
        CHECK(ratios.back() == doctest::Approx(spec.known_alpha()).epsilon(0.02));
        CHECK(std::abs(ratios[2] - ratios[1]) < std::abs(ratios[1] - ratios[0]));
    }
}

TEST_CASE("mean absolute deviation")
{
    const DoaSpec e(family::Exponential{1.0});
    // int_0^inf |x - 1| e^-x dx
    boost::math::quadrature::exp_sinh<double> rule;
    const double two_over_e =
        rule.integrate([](double x) { return std::abs(x - 1.0) * std::exp(-x); }, 0.0,
                       std::numeric_limits<double>::infinity());
    CHECK(two_over_e == doctest::Approx(2.0 / std::numbers::e).epsilon(1e-6));
    const auto one = mean_abs_deviation(e, 1, 200000, 41);
    CHECK(std::abs(one.mean - two_over_e) < 4.0 * one.std_error);
    CHECK(one.std_error < 0.005);
    CHECK(one.reps == 200000);

    const auto constant = mean_abs_deviation(DoaSpec(family::Constant{2.5}), 100, 50, 1);
    CHECK(constant.mean == 0.0);
    CHECK(constant.std_error == 0.0);

    const auto big = mean_abs_deviation(e, 10000, 10000, 42);
    const double clt = std::sqrt(2.0 * 10000.0 / std::numbers::pi);
    CHECK(big.mean == doctest::Approx(clt).epsilon(0.02));

    CHECK(mean_abs_deviation(e, 100, 300, 43, 1).mean ==
          mean_abs_deviation(e, 100, 300, 43, 3).mean);
}

TEST_CASE("deviation sums are O(a_n) for every family")
{
    const std::vector<std::size_t> ns{100, 1000, 10000};
    for (const auto& spec : registered()) {
        const auto seq = NormingSeq::for_spec(spec);
        const auto ratios = deviation_sum_ratios(spec, ns, seq, 400, 51);
        REQUIRE(ratios.size() == 3);
        const double top = ratios.back().mean;
        for (const auto& r : ratios) {
            CHECK_MESSAGE(r.upper() / top <= 2.0, spec.name());
            CHECK_MESSAGE(top / r.lower() <= 2.0, spec.name());
        }
        CHECK_MESSAGE(ratios[2].lower() <= ratios[1].upper() * 1.1, spec.name());

        // E|S_n - n mu| / a_n stays in a fixed band
        std::vector<double> band;
        for (std::size_t n : ns) {
            band.push_back(mean_abs_deviation(spec, n, 400, 52).mean / seq.a(n));
        }
        const auto [lo, hi] = std::minmax_element(band.begin(), band.end());
        CHECK_MESSAGE(*hi / *lo < 2.0, spec.name());
    }
}

TEST_CASE("norming csv")
{
    std::ostringstream os;
    const std::vector<std::size_t> ns{1, 100};
    write_norming_csv(os, DoaSpec(family::Exponential{1.0}), ns);
    CHECK(os.str() == "n,a_n,b_n,family\n1,1,1,exponential\n100,10,100,exponential\n");
}
