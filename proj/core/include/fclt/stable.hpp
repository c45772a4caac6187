#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "fclt/rng.hpp"

namespace fclt {

using ComplexValue = std::complex<double>;

// Stable law in the dispersion parametrization.
//
// For alpha != 1, 2 the characteristic function is
//   exp(-dispersion |t|^alpha (1 - i beta sgn(t) tan(pi alpha / 2)) + i location t),
// so dispersion = sigma^alpha. At alpha == 1 the logarithmic form is used with
// dispersion = sigma. At alpha == 2 the law is Gaussian with variance equal to
// the dispersion, i.e. S_2(1, beta, 0) is the standard normal and beta is inert.
struct StableParams {
    double alpha = 2.0;
    double beta = 0.0;
    double dispersion = 1.0;
    double location = 0.0;

    // Throws std::invalid_argument unless 0 < alpha <= 2, |beta| <= 1,
    // dispersion > 0 and every field is finite.
    void validate() const;

    // sigma such that X = sigma * Z + location with Z standard.
    double scale() const;

    static StableParams standard(double alpha, double beta);
    static StableParams gaussian(double mean, double variance);

    friend bool operator==(const StableParams&, const StableParams&) = default;
};

class QuadratureError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

ComplexValue char_fn(const StableParams& params, double t);

// Parameters of c * X + d for X ~ params, c > 0. At alpha == 1 with beta != 0
// the location picks up the -(2/pi) beta sigma c log(c) drift.
StableParams scale_shift(const StableParams& params, double c, double d);

// Chambers-Mallows-Stuck; the alpha == 1 branch uses its own formula and
// alpha == 2 draws a Gaussian directly.
double draw(const StableParams& params, Philox4x32& rng);
std::vector<double> sample(const StableParams& params, Philox4x32& rng, std::size_t n);

// P(X <= x). Closed form for alpha = 2 and the symmetric Cauchy, otherwise
// Zolotarev's integral over a finite angle range. Throws QuadratureError if
// the quadrature error estimate exceeds 1e-9.
double cdf(const StableParams& params, double x);

// P(X <= x) by Gil-Pelaez inversion of char_fn, for every alpha including the
// closed-form cases. Accurate in the bulk; far in the tails the oscillatory
// integral stops resolving and QuadratureError is thrown.
double cdf_inversion(const StableParams& params, double x);

}  // namespace fclt
