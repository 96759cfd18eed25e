#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "helson/eigen.hpp"

namespace helson {

/// kappa(alpha) = 2^{-alpha} pi^{1-2 alpha} B(1/(2 alpha), 1/2)^alpha.
double kappa(double alpha);

struct FitResult {
  double alpha_hat = 0.0;
  double kappa_hat = 0.0;
  std::size_t n0 = 0;
  std::size_t n1 = 0;
  double residual_rms = 0.0;
  /// Slope of log(lambda_n n^alpha_hat) against log n between the first
  /// and last thirds of the window.
  double drift = 0.0;
};

/// Least squares on (log n, log lambda_n), n = n0..n1 (1-based, inclusive).
FitResult fit_power_tail(const std::vector<double>& lambda, std::size_t n0, std::size_t n1);

nlohmann::json to_json(const FitResult& f);

/// int_0^c |log l|^{-alpha} l^ell e^{-l x} dl for x > e, 0 < c < 1.
struct LaplaceIResult {
  double value = 0.0;
  double error_estimate = 0.0;
  bool converged = true;
};

LaplaceIResult laplace_I(int ell, double alpha, double c, double x);

/// m(gamma) = floor(gamma) + 1 for gamma >= 1/2, else 0.
int decay_order(double gamma);

struct DecaySpec {
  double gamma = 1.0;
  int m = 1;
  std::vector<double> x_samples;
};

/// 40 log-spaced points on [1e-12, 1e-1] and 40 on [10, 1e12].
DecaySpec make_decay_spec(double gamma);

struct DecayRow {
  int ell = 0;
  double sup_ratio_end0 = 0.0;
  double sup_ratio_end_inf = 0.0;
  bool pass = false;
  bool inconclusive = false;
};

struct DecayReport {
  std::vector<DecayRow> rows;
  bool pass = false;
};

/// sup |b^(ell)(x)| x^{1+ell} |log x|^gamma at each end, derivatives by
/// central differences with h = 1e-2 x and two Richardson levels. A row
/// passes when the ratio shows no growth in log|log x| over the outer half
/// of either end (fitted slope <= 0.2).
DecayReport verify_kernel_decay(const std::function<double(double)>& b, const DecaySpec& spec);

void write_decay_csv(std::ostream& os, const DecayReport& r);

/// ell-th derivative (ell <= 4) by Richardson-extrapolated central
/// differences; `noise` receives the rounding-level estimate.
double richardson_derivative(const std::function<double(double)>& f, double x, int ell,
                             double h, double* noise = nullptr);

struct StabilityReport {
  std::size_t n_lo = 0;
  std::size_t n_hi = 0;
  double sup_a = 0.0;
  double inf_a = 0.0;
  double sup_b = 0.0;
  double inf_b = 0.0;
  double gap = 0.0;
};

/// max/min of n^gamma lambda_n^+ over the trailing third of the common
/// window, for both spectra.
StabilityReport stability_compare(const Spectrum& a, const Spectrum& b, double gamma);

struct DominationReport {
  bool holds = true;
  double worst_excess = 0.0;  // max_n lambda_n^-(full) - lambda_n^-(a1)
  std::size_t n_checked = 0;
};

/// lambda_n^-(full) <= lambda_n^-(a1) + 1e-10 for every n. Throws
/// ContractError unless `row0` (spectrum of the M(a0) truncation) is PSD to
/// -1e-10 lambda_max.
DominationReport negative_part_domination(const Spectrum& full, const Spectrum& a1,
                                          const Spectrum& row0);

}  // namespace helson
