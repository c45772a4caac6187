#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>

#include "fclt/paths.hpp"
#include "fclt/stable.hpp"

namespace fclt {

// f on an interval I together with f'(mu). The domain predicate is checked
// on every running mean S_k / k.
struct FunctionSpec {
    std::string name;
    std::function<double(double)> f;
    double f_prime_at_mu = 1.0;
    std::function<bool(double)> in_domain;

    // f(x) = mu log(x / mu) on (0, inf); f'(mu) = 1.
    static FunctionSpec qi_log(double mu);
    // f(x) = x on the real line; f'(mu) = 1.
    static FunctionSpec identity();
};

// Thrown when some running mean S_k / k leaves the domain of f.
class DomainViolation : public std::domain_error {
  public:
    DomainViolation(std::size_t k, double value);
    std::size_t index() const noexcept { return k_; }

  private:
    std::size_t k_;
};

// Which exponent a product-statistic run uses: mu / a_n, or gamma / sqrt(n)
// with gamma = mu / sigma for finite-variance inputs. They agree whenever
// a_n = sigma sqrt(n).
enum class ExponentConvention { MuOverNorming, GammaOverRootN };

struct FunctionalConfig {
    DoaSpec spec;
    FunctionSpec fn;
    std::size_t n = 10000;
    std::size_t grid = 4096;
    std::optional<double> gamma;
    ExponentConvention convention = ExponentConvention::MuOverNorming;

    void validate() const;
};

// t -> (1 / a_n) sum_{k=1}^{[nt]} (f(S_k / k) - f(mu)) on the grid j / grid.
SamplePath functional_statistic(std::span<const double> x, const FunctionSpec& fn, double mu,
                                double a_n, std::size_t grid);

// Same statistic computed from the partial sums S_1..S_n of any sequence source.
SamplePath functional_statistic_from_sums(std::span<const double> partial_sums,
                                          const FunctionSpec& fn, double mu, double a_n,
                                          std::size_t grid);

// exponent * sum_k log(S_k / (k mu)): the logarithm of the product statistic.
double log_product_statistic(std::span<const double> x, double mu, double exponent);

// (prod_{k=1}^n S_k / (k mu))^exponent, evaluated in log space.
double product_statistic(std::span<const double> x, double mu, double exponent);

// Right-endpoint Riemann sum of path(x) / x over (eps, t], restricted to the
// path's grid: each cell [t_{j-1}, t_j] overlapping (eps, t] contributes
// overlap * path(r) / r with r the right end of the overlap.
double integral_riemann(const SamplePath& path, double t, double eps);

// Law of f' Gamma(alpha + 1)^(1/alpha) L(t): alpha kept, beta flipped when
// f' < 0, dispersion |f'|^alpha Gamma(alpha + 1) t, location 0.
StableParams limit_law(double alpha, double beta, double t, double f_prime);

}  // namespace fclt
