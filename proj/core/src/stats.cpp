#include "fclt/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fclt {
namespace {

double effective_p(double d, double n_eff)
{
    const double root = std::sqrt(n_eff);
    return kolmogorov_survival((root + 0.12 + 0.11 / root) * d);
}

}  // namespace

Ecdf::Ecdf(std::span<const double> samples) : sorted_(samples.begin(), samples.end())
{
    if (sorted_.empty()) {
        throw std::invalid_argument("ecdf: no samples");
    }
    std::sort(sorted_.begin(), sorted_.end());
}

double Ecdf::operator()(double x) const
{
    const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
    return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

Ecdf ecdf(std::span<const double> samples) { return Ecdf(samples); }

double kolmogorov_survival(double lambda)
{
    if (lambda < 0.18) {
        // the alternating series has not started converging; Q is 1 to 1e-15
        return 1.0;
    }
    double sum = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = sign * std::exp(-2.0 * k * k * lambda * lambda);
        sum += term;
        if (std::abs(term) < 1e-16 * std::abs(sum)) {
            break;
        }
        sign = -sign;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b)
{
    if (a.empty() || b.empty()) {
        throw std::invalid_argument("ks_two_sample: both samples must be nonempty");
    }
    std::vector<double> xa(a.begin(), a.end());
    std::vector<double> xb(b.begin(), b.end());
    std::sort(xa.begin(), xa.end());
    std::sort(xb.begin(), xb.end());
    const double na = static_cast<double>(xa.size());
    const double nb = static_cast<double>(xb.size());
    std::size_t i = 0;
    std::size_t j = 0;
    double d = 0.0;
    while (i < xa.size() && j < xb.size()) {
        const double x = std::min(xa[i], xb[j]);
        while (i < xa.size() && xa[i] == x) {
            ++i;
        }
        while (j < xb.size() && xb[j] == x) {
            ++j;
        }
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return {d, effective_p(d, na * nb / (na + nb))};
}

KsResult ks_one_sample(std::span<const double> samples, const std::function<double(double)>& cdf)
{
    if (samples.empty()) {
        throw std::invalid_argument("ks_one_sample: no samples");
    }
    std::vector<double> x(samples.begin(), samples.end());
    std::sort(x.begin(), x.end());
    const double n = static_cast<double>(x.size());
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double f = cdf(x[i]);
        d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    return {d, effective_p(d, n)};
}

ComplexValue empirical_char_fn(std::span<const double> samples, double t)
{
    if (samples.empty()) {
        throw std::invalid_argument("empirical_char_fn: no samples");
    }
    double re = 0.0;
    double im = 0.0;
    for (double x : samples) {
        re += std::cos(t * x);
        im += std::sin(t * x);
    }
    const double n = static_cast<double>(samples.size());
    return {re / n, im / n};
}

}  // namespace fclt
