#pragma once

namespace fclt {

// Gamma function via the Lanczos approximation (g = 7, 9 terms), with the
// reflection formula below 1/2. Relative error is below 1e-13 on (0, 10].
// Throws std::domain_error at non-positive integers and for non-finite input.
double gamma_fn(double x);

// Gamma(alpha + 1)^(1/alpha): the scale picked up by the integral of
// L(x)/x over [0, t] for a standard alpha-stable Levy motion L.
// Requires 1 < alpha <= 2.
double limit_constant(double alpha);

}  // namespace fclt
