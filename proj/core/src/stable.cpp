#include "fclt/stable.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace fclt {
namespace {

constexpr double kPi = std::numbers::pi;

double sign(double t) { return t > 0.0 ? 1.0 : (t < 0.0 ? -1.0 : 0.0); }

// exp(-g(theta)) over an angle range, where log g is monotone in theta and
// runs over (-inf, inf). Splitting where g = 1 puts the transition from 1
// to 0 at a panel endpoint, which is where tanh-sinh concentrates its nodes.
template <typename LogG>
double integrate_step(const LogG& log_g, double lo, double hi, double& error)
{
    auto integrand = [&](double theta) {
        const double lg = log_g(theta);
        if (std::isnan(lg)) {
            return 0.0;
        }
        return std::exp(-std::exp(lg));
    };
    const bool increasing = log_g(0.5 * (lo + hi) + 0.25 * (hi - lo)) >
                            log_g(0.5 * (lo + hi) - 0.25 * (hi - lo));
    double a = lo;
    double b = hi;
    for (int i = 0; i < 200 && b - a > 1e-15 * (hi - lo); ++i) {
        const double mid = 0.5 * (a + b);
        const double lg = log_g(mid);
        if ((lg < 0.0) == increasing) {
            a = mid;
        } else {
            b = mid;
        }
    }
    double split = 0.5 * (a + b);
    if (split - lo < 1e-6 * (hi - lo) || hi - split < 1e-6 * (hi - lo)) {
        split = hi;
    }
    thread_local boost::math::quadrature::tanh_sinh<double> rule;
    double total = 0.0;
    // tanh-sinh in Boost 1.74 needs a finite, nonzero-width interval with a
    // lower limit it can approach; integrate in the offset from each end.
    for (const auto& [from, to] : {std::pair{lo, split}, std::pair{split, hi}}) {
        if (to - from <= 0.0) {
            continue;
        }
        double panel_error = 0.0;
        total += rule.integrate([&](double u) { return integrand(from + u); }, 0.0, to - from,
                                1e-13, &panel_error);
        error += panel_error;
    }
    return total;
}

constexpr double kMaxAbsError = 1e-9;

// Exponent threshold: |phi(t)| < exp(-kTailExponent) beyond the cutoff.
constexpr double kTailExponent = 36.0;
constexpr std::size_t kMaxPanels = 200000;

using KronrodRule = boost::math::quadrature::gauss_kronrod<double, 31>;

// Bisect until the Kronrod error estimate on a panel is below abs_tol. The
// Boost driver works relative to the integral, which never terminates on
// panels where the oscillation cancels to ~0.
template <typename F>
double integrate_abs(const F& f, double lo, double hi, double abs_tol, double phase_rate,
                     int depth, double& error)
{
    double panel_error = 0.0;
    double l1 = 0.0;
    const double estimate = KronrodRule::integrate(f, lo, hi, 0, 0.0, &panel_error, &l1);
    // rounding in sin() of a phase of size phase_rate * hi limits what the
    // Kronrod estimate can certify
    const double floor =
        64.0 * std::numeric_limits<double>::epsilon() * l1 * (1.0 + phase_rate * hi);
    if (panel_error <= std::max(abs_tol, floor) || depth == 0) {
        error += panel_error;
        return estimate;
    }
    const double mid = 0.5 * (lo + hi);
    return integrate_abs(f, lo, mid, 0.5 * abs_tol, phase_rate, depth - 1, error) +
           integrate_abs(f, mid, hi, 0.5 * abs_tol, phase_rate, depth - 1, error);
}


// P(Z > z) for a standard S_alpha(1, beta, 0) variable, z > 0, alpha != 1.
double upper_tail_std(double alpha, double beta, double z, double& error)
{
    const double theta0 = std::atan(beta * std::tan(0.5 * kPi * alpha)) / alpha;
    const double power = alpha / (alpha - 1.0);
    const double log_z = power * std::log(z);
    const double log_c = std::log(std::cos(alpha * theta0)) / (alpha - 1.0);
    auto log_g = [=](double theta) {
        return log_z + log_c +
               power * (std::log(std::cos(theta)) - std::log(std::sin(alpha * (theta0 + theta)))) +
               std::log(std::cos(alpha * theta0 + (alpha - 1.0) * theta)) -
               std::log(std::cos(theta));
    };
    const double integral = integrate_step(log_g, -theta0, 0.5 * kPi, error);
    if (alpha > 1.0) {
        return integral / kPi;
    }
    return 1.0 - (0.5 * kPi - theta0) / kPi - integral / kPi;
}

// P(Z <= z) for a standard S_1(1, beta, 0) variable, beta > 0.
double cdf_std_alpha1(double beta, double z, double& error)
{
    const double shift = -0.5 * kPi * z / beta;
    auto log_g = [=](double theta) {
        const double h = 0.5 * kPi + beta * theta;
        return shift + std::log(2.0 / kPi) + std::log(h / std::cos(theta)) +
               h * std::tan(theta) / beta;
    };
    return integrate_step(log_g, -0.5 * kPi, 0.5 * kPi, error) / kPi;
}

}  // namespace

void StableParams::validate() const
{
    if (!std::isfinite(alpha) || !(alpha > 0.0 && alpha <= 2.0)) {
        throw std::invalid_argument("stable: alpha must lie in (0, 2], got " +
                                    std::to_string(alpha));
    }
    if (!std::isfinite(beta) || beta < -1.0 || beta > 1.0) {
        throw std::invalid_argument("stable: beta must lie in [-1, 1], got " +
                                    std::to_string(beta));
    }
    if (!std::isfinite(dispersion) || !(dispersion > 0.0)) {
        throw std::invalid_argument("stable: dispersion must be positive, got " +
                                    std::to_string(dispersion));
    }
    if (!std::isfinite(location)) {
        throw std::invalid_argument("stable: location must be finite");
    }
}

double StableParams::scale() const
{
    if (alpha == 2.0) {
        return std::sqrt(dispersion);
    }
    if (alpha == 1.0) {
        return dispersion;
    }
    return std::pow(dispersion, 1.0 / alpha);
}

StableParams StableParams::standard(double alpha, double beta)
{
    StableParams p{alpha, beta, 1.0, 0.0};
    p.validate();
    return p;
}

StableParams StableParams::gaussian(double mean, double variance)
{
    StableParams p{2.0, 0.0, variance, mean};
    p.validate();
    return p;
}

ComplexValue char_fn(const StableParams& params, double t)
{
    params.validate();
    if (!std::isfinite(t)) {
        throw std::invalid_argument("char_fn: t must be finite");
    }
    const double a = params.alpha;
    const double d = params.dispersion;
    const double abs_t = std::abs(t);
    double log_modulus = 0.0;
    double phase = params.location * t;
    if (a == 2.0) {
        log_modulus = -0.5 * d * t * t;
    } else if (a == 1.0) {
        log_modulus = -d * abs_t;
        if (abs_t > 0.0) {
            phase -= d * abs_t * params.beta * sign(t) * (2.0 / kPi) * std::log(abs_t);
        }
    } else {
        const double ta = std::pow(abs_t, a);
        log_modulus = -d * ta;
        phase += d * ta * params.beta * sign(t) * std::tan(0.5 * kPi * a);
    }
    return std::polar(std::exp(log_modulus), phase);
}

StableParams scale_shift(const StableParams& params, double c, double d)
{
    params.validate();
    if (!std::isfinite(c) || !(c > 0.0)) {
        throw std::invalid_argument("scale_shift: c must be positive");
    }
    if (!std::isfinite(d)) {
        throw std::invalid_argument("scale_shift: d must be finite");
    }
    StableParams out = params;
    out.dispersion = std::pow(c, params.alpha) * params.dispersion;
    out.location = c * params.location + d;
    if (params.alpha == 1.0 && params.beta != 0.0) {
        // Outside the (1, 2] range the rest of the toolkit works in.
        out.location -= (2.0 / kPi) * params.beta * params.dispersion * c * std::log(c);
    }
    out.validate();
    return out;
}

double draw(const StableParams& params, Philox4x32& rng)
{
    params.validate();
    const double a = params.alpha;
    const double b = params.beta;
    if (a == 2.0) {
        return params.location + std::sqrt(params.dispersion) * standard_normal(rng);
    }
    const double v = kPi * (uniform_open01(rng) - 0.5);
    const double w = standard_exponential(rng);
    if (a == 1.0) {
        const double sigma = params.dispersion;
        const double half_pi_bv = 0.5 * kPi + b * v;
        const double x = (2.0 / kPi) *
                         (half_pi_bv * std::tan(v) -
                          b * std::log((0.5 * kPi * w * std::cos(v)) / half_pi_bv));
        return sigma * x + (2.0 / kPi) * b * sigma * std::log(sigma) + params.location;
    }
    const double tan_term = b * std::tan(0.5 * kPi * a);
    const double shift = std::atan(tan_term) / a;
    const double stretch = std::pow(1.0 + tan_term * tan_term, 1.0 / (2.0 * a));
    const double av = a * (v + shift);
    const double x = stretch * std::sin(av) / std::pow(std::cos(v), 1.0 / a) *
                     std::pow(std::cos(v - av) / w, (1.0 - a) / a);
    return params.scale() * x + params.location;
}

std::vector<double> sample(const StableParams& params, Philox4x32& rng, std::size_t n)
{
    params.validate();
    if (n == 0) {
        throw std::invalid_argument("sample: n must be at least 1");
    }
    std::vector<double> out(n);
    for (auto& x : out) {
        x = draw(params, rng);
    }
    return out;
}

double cdf(const StableParams& params, double x)
{
    params.validate();
    if (!std::isfinite(x)) {
        throw std::invalid_argument("cdf: x must be finite");
    }
    const double a = params.alpha;
    const double b = params.beta;
    const double y = x - params.location;
    if (a == 2.0) {
        return 0.5 * std::erfc(-y / std::sqrt(2.0 * params.dispersion));
    }
    const double sigma = params.scale();
    double error = 0.0;
    double result;
    if (a == 1.0) {
        const double z = y / sigma - (2.0 / kPi) * b * std::log(sigma);
        if (b == 0.0) {
            result = 0.5 + std::atan(z) / kPi;
        } else if (b > 0.0) {
            result = cdf_std_alpha1(b, z, error);
        } else {
            result = 1.0 - cdf_std_alpha1(-b, -z, error);
        }
    } else {
        const double z = y / sigma;
        const double theta0 = std::atan(b * std::tan(0.5 * kPi * a)) / a;
        if (z == 0.0) {
            result = (0.5 * kPi - theta0) / kPi;
        } else if (z > 0.0) {
            result = 1.0 - upper_tail_std(a, b, z, error);
        } else {
            result = upper_tail_std(a, -b, -z, error);
        }
    }
    if (!std::isfinite(result) || error / kPi > kMaxAbsError) {
        throw QuadratureError("cdf: quadrature error estimate " + std::to_string(error / kPi) +
                              " exceeds tolerance at x = " + std::to_string(x));
    }
    return std::clamp(result, 0.0, 1.0);
}

double cdf_inversion(const StableParams& params, double x)
{
    params.validate();
    if (!std::isfinite(x)) {
        throw std::invalid_argument("cdf_inversion: x must be finite");
    }
    const double a = params.alpha;
    const double d = params.dispersion;
    const double b = params.beta;
    const double y = x - params.location;
    const double skew = (a == 1.0 || a == 2.0) ? 0.0 : b * std::tan(0.5 * kPi * a);

    // Im(exp(-i t y) phi_0(t)) / t for t > 0, phi_0 the location-free char. fn.
    auto integrand = [=](double t) {
        double log_modulus;
        double phase = -t * y;
        if (a == 2.0) {
            log_modulus = -0.5 * d * t * t;
        } else if (a == 1.0) {
            log_modulus = -d * t;
            phase -= d * t * b * (2.0 / kPi) * std::log(t);
        } else {
            const double ta = std::pow(t, a);
            log_modulus = -d * ta;
            phase += d * ta * skew;
        }
        return std::exp(log_modulus) * std::sin(phase) / t;
    };

    const double cutoff = a == 2.0 ? std::sqrt(2.0 * kTailExponent / d)
                                   : std::pow(kTailExponent / d, 1.0 / a);
    // Panels of about two periods of the e^{-ity} factor.
    const double abs_y = std::abs(y);
    const double width = abs_y > 0.0 ? std::min(cutoff, 4.0 * kPi / abs_y) : cutoff;
    const double panels_real = std::ceil(cutoff / width);
    if (!(panels_real <= static_cast<double>(kMaxPanels))) {
        throw QuadratureError("cdf_inversion: integral does not converge at x = " +
                              std::to_string(x) + " (too far in the tail)");
    }
    const auto panels = static_cast<std::size_t>(panels_real);

    const double panel_tol = std::max(1e-15, 1e-11 / static_cast<double>(panels));
    double integral = 0.0;
    double error = 0.0;
    // The integrand behaves like t^(alpha-1) (log t at alpha = 1) at the
    // origin; tanh-sinh copes with the endpoint, Kronrod panels do the rest.
    thread_local boost::math::quadrature::tanh_sinh<double> endpoint_rule;
    {
        const double first = cutoff / static_cast<double>(panels);
        double first_error = 0.0;
        integral += endpoint_rule.integrate(integrand, 0.0, first, 1e-14, &first_error);
        error += first_error;
    }
    for (std::size_t i = 1; i < panels; ++i) {
        const double lo = cutoff * static_cast<double>(i) / static_cast<double>(panels);
        const double hi = cutoff * static_cast<double>(i + 1) / static_cast<double>(panels);
        integral += integrate_abs(integrand, lo, hi, panel_tol, abs_y, 12, error);
    }
    if (!std::isfinite(integral) || error / kPi > kMaxAbsError) {
        throw QuadratureError("cdf_inversion: quadrature error estimate " +
                              std::to_string(error / kPi) + " exceeds tolerance at x = " +
                              std::to_string(x));
    }
    return std::clamp(0.5 - integral / kPi, 0.0, 1.0);
}

}  // namespace fclt
