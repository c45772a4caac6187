#include "fclt/special.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace fclt {
namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos{
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

double lanczos(double x)
{
    // Gamma(x) for x >= 1/2
    const double z = x - 1.0;
    double sum = kLanczos[0];
    for (std::size_t i = 1; i < kLanczos.size(); ++i) {
        sum += kLanczos[i] / (z + static_cast<double>(i));
    }
    const double t = z + kLanczosG + 0.5;
    return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, z + 0.5) * std::exp(-t) * sum;
}

}  // namespace

double gamma_fn(double x)
{
    if (!std::isfinite(x)) {
        throw std::domain_error("gamma_fn: non-finite argument");
    }
    if (x <= 0.0 && x == std::floor(x)) {
        throw std::domain_error("gamma_fn: pole at " + std::to_string(x));
    }
    if (x < 0.5) {
        return std::numbers::pi / (std::sin(std::numbers::pi * x) * lanczos(1.0 - x));
    }
    return lanczos(x);
}

double limit_constant(double alpha)
{
    if (!(alpha > 1.0 && alpha <= 2.0)) {
        throw std::invalid_argument("limit_constant: alpha must lie in (1, 2], got " +
                                    std::to_string(alpha));
    }
    return std::pow(gamma_fn(alpha + 1.0), 1.0 / alpha);
}

}  // namespace fclt
