#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "fclt/stable.hpp"

namespace fclt {

// Right-continuous empirical CDF.
class Ecdf {
  public:
    explicit Ecdf(std::span<const double> samples);

    double operator()(double x) const;
    std::span<const double> sorted() const noexcept { return sorted_; }
    std::size_t size() const noexcept { return sorted_.size(); }

  private:
    std::vector<double> sorted_;
};

Ecdf ecdf(std::span<const double> samples);

struct KsResult {
    double statistic = 0.0;
    double p_value = 1.0;
};

// Survival function of the Kolmogorov distribution,
// Q(lambda) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 lambda^2).
double kolmogorov_survival(double lambda);

// sup |F_a - F_b|, p-value from the asymptotic series with the effective
// size n_a n_b / (n_a + n_b) and Stephens' small-sample correction.
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

KsResult ks_one_sample(std::span<const double> samples,
                       const std::function<double(double)>& cdf);

// (1/N) sum_j exp(i t x_j)
ComplexValue empirical_char_fn(std::span<const double> samples, double t);

}  // namespace fclt
