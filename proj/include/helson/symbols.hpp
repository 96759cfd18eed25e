#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace helson {

/// Every kernel, weight and sequence generator the laboratory knows about.
///
///   helson_a  a(t) = t^{-1/2} (log t)^{-1} (log log t)^{-alpha}, t >= t0
///   hankel_b  b(x) = e^{x/2} a(e^x) = x^{-1} (log x)^{-alpha}, x >= log t0
///   weight_w  w(l) = |log l|^{-alpha} chi(l)
///   a0, b0    Laplace-type integrals of w; a1 = a - a0, b1 = b - b0
///   zeta1     zeta(x + 1)
///   carleman  1/x
///   h_beta    e^{-beta x}/x
///   k_beta    beta e^{-x/2} exp(-beta^2 e^{-x})
///   custom    user-supplied callable
enum class SymbolKind {
  helson_a,
  hankel_b,
  weight_w,
  a0,
  a1,
  b0,
  b1,
  zeta1,
  carleman,
  h_beta,
  k_beta,
  custom
};

std::string_view to_string(SymbolKind kind);
SymbolKind symbol_kind_from_string(std::string_view name);

struct Cutoffs {
  /// Point from which helson_a follows the closed form exactly.
  double t0 = 16.0;
  /// chi = 1 on (0, chi_lo], chi = 0 on [chi_hi, inf).
  double chi_lo = 0.25;
  double chi_hi = 0.75;
  /// Exponent of h_beta / k_beta; must dominate supp w.
  double beta = 0.75;
};

struct SymbolSpec {
  SymbolKind kind = SymbolKind::helson_a;
  double alpha = 1.0;
  Cutoffs cutoffs;

  // Only read when kind == custom. A custom weight vanishes beyond
  // support_hi; breakpoints mark points where it is not smooth.
  std::function<double(double)> custom;
  double support_hi = std::numeric_limits<double>::infinity();
  std::vector<double> breakpoints;
  std::string name;

  /// Throws ContractError when the invariants alpha > 0,
  /// 0 < chi_lo < chi_hi <= 1, t0 > e, beta > 0 are violated.
  void validate() const;
};

SymbolSpec make_symbol(SymbolKind kind, double alpha = 1.0, Cutoffs cutoffs = {});

/// Custom symbol backed by a callable; `support_hi` bounds the support when
/// the symbol is used as a weight.
SymbolSpec custom_symbol(std::function<double(double)> fn, std::string name,
                         double support_hi = std::numeric_limits<double>::infinity(),
                         std::vector<double> breakpoints = {});

/// Closed-form evaluation. Throws DomainError outside the symbol's domain.
double eval_symbol(const SymbolSpec& spec, double t);

/// e^S b(e^S) for Hankel-type kernels (hankel_b, b0, b1, zeta1, carleman,
/// h_beta, k_beta, custom). Finite for every real S, so kernels can be
/// sampled on geometric grids whose nodes overflow a double.
double eval_scaled_log(const SymbolSpec& spec, double log_x);

/// Smooth cut-off chi(lambda).
double chi(const Cutoffs& cutoffs, double lambda);

/// Activation factor of helson_a as a function of log t: 0 below
/// (1 + log t0)/2, 1 from log t0 on.
double activation(const Cutoffs& cutoffs, double log_t);

/// w(e^v), evaluated without underflow for very negative v.
double eval_weight_log(const SymbolSpec& weight, double log_lambda);

/// Right end of supp w and interior non-smooth points of w.
double weight_support_hi(const SymbolSpec& weight);
std::vector<double> weight_breakpoints(const SymbolSpec& weight);

/// The weight w(l) = |log l|^{-alpha} chi(l) that generates a0/b0 of `spec`.
SymbolSpec weight_of(const SymbolSpec& spec);

/// Restriction r(a): values[0] = 0 (index j = 1), values[j-1] = a(j).
struct SequenceSpec {
  SymbolSpec source;
  std::size_t length = 0;
  std::vector<double> values;

  double at(std::size_t j) const { return values.at(j - 1); }
};

SequenceSpec restrict_symbol(const SymbolSpec& spec, std::size_t n);

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t nodes = 0;
};

/// a0(t) = int_0^inf t^{-1/2-l} w(l) dl by composite Gauss-Legendre panels
/// (order Q each) refined geometrically toward l = 0. The estimate is the
/// change against order Q/2. Throws ConvergenceError if it exceeds 1e-8
/// relative.
QuadratureResult a0_quadrature(const SymbolSpec& weight, double t, int order = 24);

/// a(t) - a0(t) where w = weight_of(spec).
QuadratureResult a1_residual(const SymbolSpec& spec, double t, int order = 24);

enum class SpecialKernel { h_beta, k_beta, h_tilde };

/// h(x) = e^{-beta x}/x, k(x) = beta e^{-x/2} exp(-beta^2 e^{-x}),
/// h~(x) = zeta(1 + x) - h(x) - 1.
double special_kernel(SpecialKernel name, double x, double beta);

nlohmann::json to_json(const SymbolSpec& spec);
SymbolSpec symbol_from_json(const nlohmann::json& j);

}  // namespace helson
