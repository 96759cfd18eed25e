#pragma once

namespace helson {

/// C-infinity step: 0 for s <= 0, 1 for s >= 1, built from exp(-1/s).
double smoothstep(double s);

/// log Gamma(z) for z > 0 via the Lanczos approximation (g = 7, n = 9),
/// with the reflection formula below 1/2.
double log_gamma(double z);

/// Gamma(z) for real z not a non-positive integer.
double gamma_fn(double z);

/// Beta(a, b) = Gamma(a) Gamma(b) / Gamma(a + b) for a, b > 0.
double beta_fn(double a, double b);

/// zeta(1 + x) for x > 0 (Euler-Maclaurin, error below 1e-13 relative).
double zeta1(double x);

/// zeta(1 + x) - 1, computed without cancellation for large x.
double zeta1_minus_one(double x);

/// zeta(1 + x) - 1/x, the regular part at the pole; accurate for small x.
double zeta1_regular(double x);

}  // namespace helson
