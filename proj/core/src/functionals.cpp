#include "fclt/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "fclt/special.hpp"

namespace fclt {

FunctionSpec FunctionSpec::qi_log(double mu)
{
    if (!(mu > 0.0) || !std::isfinite(mu)) {
        throw std::invalid_argument("qi_log: mu must be positive");
    }
    return FunctionSpec{
        "qi-log",
        [mu](double x) { return mu * std::log(x / mu); },
        1.0,
        [](double x) { return x > 0.0 && std::isfinite(x); },
    };
}

FunctionSpec FunctionSpec::identity()
{
    return FunctionSpec{
        "identity",
        [](double x) { return x; },
        1.0,
        [](double x) { return std::isfinite(x); },
    };
}

DomainViolation::DomainViolation(std::size_t k, double value)
    : std::domain_error("running mean S_k/k = " + std::to_string(value) +
                        " outside the domain of f at k = " + std::to_string(k)),
      k_(k)
{
}

void FunctionalConfig::validate() const
{
    if (n == 0) {
        throw std::invalid_argument("functional config: n must be at least 1");
    }
    if (grid == 0) {
        throw std::invalid_argument("functional config: grid must be at least 1");
    }
    if (!fn.f || !fn.in_domain) {
        throw std::invalid_argument("functional config: function spec is incomplete");
    }
    if (gamma && !(*gamma > 0.0)) {
        throw std::invalid_argument("functional config: gamma must be positive");
    }
}

SamplePath functional_statistic_from_sums(std::span<const double> partial_sums,
                                          const FunctionSpec& fn, double mu, double a_n,
                                          std::size_t grid)
{
    if (partial_sums.empty()) {
        throw std::invalid_argument("functional_statistic: empty sequence");
    }
    if (!std::isfinite(a_n) || !(a_n > 0.0)) {
        throw std::invalid_argument("functional_statistic: a_n must be positive");
    }
    if (grid == 0) {
        throw std::invalid_argument("functional_statistic: grid must be at least 1");
    }
    if (!fn.in_domain(mu)) {
        throw std::invalid_argument("functional_statistic: mu outside the domain of f");
    }
    const std::size_t n = partial_sums.size();
    const double f_mu = fn.f(mu);
    std::vector<double> cumulative(n + 1, 0.0);
    for (std::size_t k = 1; k <= n; ++k) {
        const double mean = partial_sums[k - 1] / static_cast<double>(k);
        if (!fn.in_domain(mean)) {
            throw DomainViolation(k, mean);
        }
        cumulative[k] = cumulative[k - 1] + (fn.f(mean) - f_mu);
    }
    std::vector<double> values(grid + 1);
    for (std::size_t j = 0; j <= grid; ++j) {
        values[j] = cumulative[floor_index(n, j, grid)] / a_n;
    }
    return SamplePath::uniform(std::move(values));
}

SamplePath functional_statistic(std::span<const double> x, const FunctionSpec& fn, double mu,
                                double a_n, std::size_t grid)
{
    std::vector<double> sums(x.begin(), x.end());
    for (std::size_t k = 1; k < sums.size(); ++k) {
        sums[k] += sums[k - 1];
    }
    return functional_statistic_from_sums(sums, fn, mu, a_n, grid);
}

double log_product_statistic(std::span<const double> x, double mu, double exponent)
{
    if (x.empty()) {
        throw std::invalid_argument("product_statistic: empty sequence");
    }
    if (!(mu > 0.0) || !std::isfinite(mu)) {
        throw std::invalid_argument("product_statistic: mu must be positive");
    }
    if (!(exponent > 0.0) || !std::isfinite(exponent)) {
        throw std::invalid_argument("product_statistic: exponent must be positive");
    }
    double running = 0.0;
    double log_sum = 0.0;
    for (std::size_t k = 1; k <= x.size(); ++k) {
        running += x[k - 1];
        if (!(running > 0.0)) {
            throw DomainViolation(k, running / static_cast<double>(k));
        }
        const double mean = running / static_cast<double>(k);
        log_sum += std::log(mean / mu);
    }
    return exponent * log_sum;
}

double product_statistic(std::span<const double> x, double mu, double exponent)
{
    return std::exp(log_product_statistic(x, mu, exponent));
}

double integral_riemann(const SamplePath& path, double t, double eps)
{
    if (!(t > 0.0 && t <= 1.0)) {
        throw std::invalid_argument("integral_riemann: t must lie in (0, 1]");
    }
    if (!(eps > 0.0) || !(eps < t)) {
        throw std::invalid_argument("integral_riemann: eps must lie in (0, t)");
    }
    const auto times = path.times();
    const auto values = path.values();
    double sum = 0.0;
    for (std::size_t j = 1; j < times.size(); ++j) {
        const double lo = std::max(times[j - 1], eps);
        const double hi = std::min(times[j], t);
        if (!(hi > lo)) {
            if (times[j - 1] >= t) {
                break;
            }
            continue;
        }
        // path is right-continuous, so path(times[j]) = values[j]
        const double right = hi == times[j] ? values[j] : values[j - 1];
        sum += (hi - lo) * right / hi;
    }
    return sum;
}

StableParams limit_law(double alpha, double beta, double t, double f_prime)
{
    if (!(alpha > 1.0 && alpha <= 2.0)) {
        throw std::invalid_argument("limit_law: alpha must lie in (1, 2]");
    }
    if (!(t > 0.0 && t <= 1.0)) {
        throw std::invalid_argument("limit_law: t must lie in (0, 1]");
    }
    if (f_prime == 0.0 || !std::isfinite(f_prime)) {
        throw std::invalid_argument(
            "limit_law: f'(mu) = 0 gives a point mass, which has no stable representation");
    }
    StableParams out{alpha, f_prime < 0.0 ? -beta : beta,
                     std::pow(std::abs(f_prime), alpha) * gamma_fn(alpha + 1.0) * t, 0.0};
    out.validate();
    return out;
}

}  // namespace fclt
