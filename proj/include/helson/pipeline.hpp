#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "helson/asymptotics.hpp"
#include "helson/discretize.hpp"
#include "helson/eigen.hpp"
#include "helson/symbols.hpp"

namespace helson {

struct GridParams {
  double lo = 1e-6;
  double hi = 200.0;
  std::size_t n = 512;
  Spacing spacing = Spacing::geometric;
};

/// Log-grid for the headline H(b0) fit: log x in [log_lo, log_hi].
struct FitGridParams {
  double log_lo = -13.815510557964274;  // log 1e-6
  double log_hi = 4000.0;
  std::size_t n = 2048;
};

struct SolverParams {
  std::size_t k = 40;
  double tol = 1e-10;
  std::size_t max_iter = 0;
  std::uint64_t seed = 20240611;
};

/// Input of run_chain. JSON fields: alpha, t0, chi_lo, chi_hi, beta,
/// zero_weight, sizes, grid {lo, hi, n, spacing}, solver {k, tol, max_iter,
/// seed}, fit_grid {log_lo, log_hi, n}, outputs {dir, svg}.
struct RunConfig {
  double alpha = 1.0;
  Cutoffs cutoffs;
  bool zero_weight = false;  // w = 0: a0 = 0 and a1 = a
  std::vector<std::size_t> sizes{256, 512};
  GridParams grid;
  FitGridParams fit_grid;
  SolverParams solver;
  std::string out_dir = "chain_out";
  std::string svg;

  /// Throws ContractError on invalid values.
  void validate() const;
};

RunConfig config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const RunConfig& c);

struct StageResult {
  std::string stage;
  std::size_t size = 0;
  Spectrum spectrum;
};

struct ChainReport {
  std::vector<StageResult> stages;
  /// Max relative difference of the top-k eigenvalues of Nystrom M(a_i)
  /// and H(b_i) on matched grids, rows 0 and 1.
  double chain_agreement[2] = {0.0, 0.0};
  /// lambda_min / lambda_max for Nystrom H(b0), and for M(a0) per size.
  double hb0_min_ratio = 0.0;
  std::vector<double> ma0_min_ratio;
  /// max |eig(M(r(a))) - eig(M(a0) + M(a1))| / lambda_max per size.
  std::vector<double> additivity_defect;
  std::vector<DominationReport> domination;
  std::vector<FitResult> helson_fits;
  FitResult hankel_fit;
  bool hankel_fit_available = false;
  bool ok = true;
  std::vector<std::string> failures;

  nlohmann::json to_json() const;
};

/// The three-row diagram for a = a0 + a1; artifacts go to config.out_dir
/// (per-stage CSV and JSON meta, report.json, optional SVG). A failing
/// stage raises std::runtime_error tagged with the stage name; artifacts of
/// earlier stages remain.
ChainReport run_chain(const RunConfig& config);

/// Log-log plot of lambda_n^+ with the kappa(alpha)/n^alpha reference line.
void write_svg(std::ostream& os, const std::vector<StageResult>& series, double alpha,
               const std::string& title);

/// Symbol supported in [1, e^N] given through b(x) = e^{x/2} a(e^x) on
/// [0, N].
struct RestrictionSymbol {
  std::string name;
  int N = 3;
  std::function<std::complex<double>(double)> b;
};

struct RestrictionRow {
  std::string name;
  double helson_norm = 0.0;    // |M(r(a))|_{S_p}
  double integral_norm = 0.0;  // |M(a)|_{S_p}, Nystrom with grid_n nodes
  double integral_norm_fine = 0.0;  // same with 2 grid_n nodes
  double ratio = 0.0;
  double ratio_fine = 0.0;
  bool resolved = true;  // integral norms agree within 10%
};

struct RestrictionReport {
  double p = 1.0;
  std::vector<RestrictionRow> rows;
  double max_ratio = 0.0;
  double max_ratio_fine = 0.0;
};

RestrictionReport restriction_schatten_experiment(const std::vector<RestrictionSymbol>& family,
                                                  double p, std::size_t grid_n = 160);

/// C-infinity bump on [-1, 1], exp(-1/(1 - y^2)).
double smooth_bump(double y);

/// `count` random symbols: sums of three modulated bumps inside [0, N].
std::vector<RestrictionSymbol> band_limited_family(int N, std::size_t count,
                                                   std::uint64_t seed);

/// Singular values of the complex Nystrom matrix of b(x + y) on a
/// Gauss-Legendre grid over [0, N].
std::vector<double> integral_hankel_singular_values(
    const std::function<std::complex<double>(double)>& b, double N, std::size_t n);

/// Singular values of {a(jk)}, j, k <= [e^N], a(n) = n^{-1/2} b(log n), a(1) = 0.
std::vector<double> restricted_helson_singular_values(
    const std::function<std::complex<double>(double)>& b, int N);

}  // namespace helson
