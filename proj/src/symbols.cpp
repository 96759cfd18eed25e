#include "helson/symbols.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <utility>

#include "helson/errors.hpp"
#include "helson/laplace_weight.hpp"
#include "helson/special_functions.hpp"

namespace helson {
namespace {

constexpr std::array<std::pair<SymbolKind, std::string_view>, 12> kKindNames = {{
    {SymbolKind::helson_a, "helson_a"},
    {SymbolKind::hankel_b, "hankel_b"},
    {SymbolKind::weight_w, "weight_w"},
    {SymbolKind::a0, "a0"},
    {SymbolKind::a1, "a1"},
    {SymbolKind::b0, "b0"},
    {SymbolKind::b1, "b1"},
    {SymbolKind::zeta1, "zeta1"},
    {SymbolKind::carleman, "carleman"},
    {SymbolKind::h_beta, "h_beta"},
    {SymbolKind::k_beta, "k_beta"},
    {SymbolKind::custom, "custom"},
}};

[[noreturn]] void domain_fail(const SymbolSpec& spec, const char* what, double t) {
  throw DomainError(std::string(to_string(spec.kind)) + ": " + what +
                    " (argument " + std::to_string(t) + ")");
}

// (log x)^{-alpha} x^{-1} times the activation, in terms of L = log t = x.
double hankel_b_value(const SymbolSpec& spec, double x) {
  const double act = activation(spec.cutoffs, x);
  if (act == 0.0) return 0.0;
  return act / (x * std::pow(std::log(x), spec.alpha));
}

double helson_a_value(const SymbolSpec& spec, double t) {
  const double lt = std::log(t);
  const double act = activation(spec.cutoffs, lt);
  if (act == 0.0) return 0.0;
  return act / (std::sqrt(t) * lt * std::pow(std::log(lt), spec.alpha));
}

}  // namespace

std::string_view to_string(SymbolKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

SymbolKind symbol_kind_from_string(std::string_view name) {
  for (const auto& [k, n] : kKindNames) {
    if (n == name) return k;
  }
  throw ContractError("unknown symbol kind '" + std::string(name) + "'");
}

void SymbolSpec::validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw ContractError("SymbolSpec: alpha must be > 0");
  }
  if (!(cutoffs.chi_lo > 0.0 && cutoffs.chi_lo < cutoffs.chi_hi &&
        cutoffs.chi_hi <= 1.0)) {
    throw ContractError("SymbolSpec: need 0 < chi_lo < chi_hi <= 1");
  }
  if (!(cutoffs.t0 > std::numbers::e) || !std::isfinite(cutoffs.t0)) {
    throw ContractError("SymbolSpec: t0 must exceed e");
  }
  if (!(cutoffs.beta > 0.0)) throw ContractError("SymbolSpec: beta must be > 0");
  if (kind == SymbolKind::custom && !custom) {
    throw ContractError("SymbolSpec: custom kind without a callable");
  }
}

SymbolSpec make_symbol(SymbolKind kind, double alpha, Cutoffs cutoffs) {
  SymbolSpec s;
  s.kind = kind;
  s.alpha = alpha;
  s.cutoffs = cutoffs;
  s.name = std::string(to_string(kind));
  s.validate();
  return s;
}

SymbolSpec custom_symbol(std::function<double(double)> fn, std::string name,
                         double support_hi, std::vector<double> breakpoints) {
  SymbolSpec s;
  s.kind = SymbolKind::custom;
  s.custom = std::move(fn);
  s.name = std::move(name);
  s.support_hi = support_hi;
  s.breakpoints = std::move(breakpoints);
  s.validate();
  return s;
}

double chi(const Cutoffs& c, double lambda) {
  if (lambda <= c.chi_lo) return 1.0;
  if (lambda >= c.chi_hi) return 0.0;
  return 1.0 - smoothstep((lambda - c.chi_lo) / (c.chi_hi - c.chi_lo));
}

double activation(const Cutoffs& c, double log_t) {
  const double l0 = std::log(c.t0);
  const double l_on = 0.5 * (1.0 + l0);
  if (log_t >= l0) return 1.0;
  if (log_t <= l_on) return 0.0;
  return smoothstep((log_t - l_on) / (l0 - l_on));
}

double eval_weight_log(const SymbolSpec& w, double v) {
  switch (w.kind) {
    case SymbolKind::weight_w: {
      if (v >= 0.0) return 0.0;
      const double c = v <= std::log(w.cutoffs.chi_lo) ? 1.0 : chi(w.cutoffs, std::exp(v));
      if (c == 0.0) return 0.0;
      return c * std::pow(-v, -w.alpha);
    }
    case SymbolKind::custom: {
      const double lambda = std::exp(v);
      if (lambda >= w.support_hi) return 0.0;
      return w.custom(lambda);
    }
    default:
      throw ContractError("eval_weight_log: symbol '" + std::string(to_string(w.kind)) +
                          "' is not a weight");
  }
}

double weight_support_hi(const SymbolSpec& w) {
  switch (w.kind) {
    case SymbolKind::weight_w:
      return w.cutoffs.chi_hi;
    case SymbolKind::custom:
      if (!std::isfinite(w.support_hi)) {
        throw ContractError("custom weight needs a bounded support");
      }
      return w.support_hi;
    default:
      throw ContractError("weight_support_hi: not a weight");
  }
}

std::vector<double> weight_breakpoints(const SymbolSpec& w) {
  if (w.kind == SymbolKind::weight_w) return {w.cutoffs.chi_lo};
  if (w.kind == SymbolKind::custom) return w.breakpoints;
  throw ContractError("weight_breakpoints: not a weight");
}

SymbolSpec weight_of(const SymbolSpec& spec) {
  if (spec.kind == SymbolKind::custom || spec.kind == SymbolKind::weight_w) {
    return spec;
  }
  return make_symbol(SymbolKind::weight_w, spec.alpha, spec.cutoffs);
}

double eval_symbol(const SymbolSpec& spec, double t) {
  if (std::isnan(t)) domain_fail(spec, "NaN argument", t);
  switch (spec.kind) {
    case SymbolKind::helson_a:
      if (!(t > 1.0)) domain_fail(spec, "requires t > 1", t);
      return helson_a_value(spec, t);
    case SymbolKind::hankel_b:
      if (!(t > 0.0)) domain_fail(spec, "requires x > 0", t);
      return hankel_b_value(spec, t);
    case SymbolKind::weight_w:
      if (!(t > 0.0)) domain_fail(spec, "requires lambda > 0", t);
      return eval_weight_log(spec, std::log(t));
    case SymbolKind::a0:
      if (!(t >= 1.0)) domain_fail(spec, "requires t >= 1", t);
      return LaplaceWeight(weight_of(spec)).helson(t);
    case SymbolKind::a1:
      if (!(t > 1.0)) domain_fail(spec, "requires t > 1", t);
      return helson_a_value(spec, t) - LaplaceWeight(weight_of(spec)).helson(t);
    case SymbolKind::b0:
      if (!(t >= 0.0)) domain_fail(spec, "requires x >= 0", t);
      return LaplaceWeight(weight_of(spec)).transform(t);
    case SymbolKind::b1:
      if (!(t > 0.0)) domain_fail(spec, "requires x > 0", t);
      return hankel_b_value(spec, t) - LaplaceWeight(weight_of(spec)).transform(t);
    case SymbolKind::zeta1:
      if (!(t > 0.0)) domain_fail(spec, "requires x > 0", t);
      return zeta1(t);
    case SymbolKind::carleman:
      if (!(t > 0.0)) domain_fail(spec, "requires x > 0", t);
      return 1.0 / t;
    case SymbolKind::h_beta:
      return special_kernel(SpecialKernel::h_beta, t, spec.cutoffs.beta);
    case SymbolKind::k_beta:
      return special_kernel(SpecialKernel::k_beta, t, spec.cutoffs.beta);
    case SymbolKind::custom:
      if (!spec.custom) throw ContractError("custom symbol without callable");
      return spec.custom(t);
  }
  throw ContractError("eval_symbol: unhandled kind");
}

double eval_scaled_log(const SymbolSpec& spec, double S) {
  if (std::isnan(S)) domain_fail(spec, "NaN argument", S);
  switch (spec.kind) {
    case SymbolKind::hankel_b: {
      const double act = activation(spec.cutoffs, std::exp(S));
      if (act == 0.0) return 0.0;
      return act * std::pow(S, -spec.alpha);
    }
    case SymbolKind::b0:
      return LaplaceWeight(weight_of(spec)).transform_scaled_log(S);
    case SymbolKind::b1: {
      const double b = eval_scaled_log(make_symbol(SymbolKind::hankel_b, spec.alpha,
                                                   spec.cutoffs), S);
      return b - LaplaceWeight(weight_of(spec)).transform_scaled_log(S);
    }
    case SymbolKind::carleman:
      return 1.0;
    case SymbolKind::zeta1: {
      const double x = std::exp(S);
      return x * zeta1(x);
    }
    case SymbolKind::h_beta:
      return std::exp(-spec.cutoffs.beta * std::exp(S));
    case SymbolKind::k_beta:
    case SymbolKind::custom: {
      const double x = std::exp(S);
      return x * eval_symbol(spec, x);
    }
    default:
      throw ContractError("eval_scaled_log: '" + std::string(to_string(spec.kind)) +
                          "' is not a Hankel kernel");
  }
}

SequenceSpec restrict_symbol(const SymbolSpec& spec, std::size_t n) {
  if (n < 1) throw ContractError("restrict: N must be >= 1");
  SequenceSpec seq;
  seq.source = spec;
  seq.length = n;
  seq.values.assign(n, 0.0);
  if (spec.kind == SymbolKind::a0 || spec.kind == SymbolKind::a1) {
    const LaplaceWeight lw(weight_of(spec));
    for (std::size_t j = 2; j <= n; ++j) {
      const double t = static_cast<double>(j);
      const double a0 = lw.helson(t);
      seq.values[j - 1] = spec.kind == SymbolKind::a0 ? a0 : helson_a_value(spec, t) - a0;
    }
    return seq;
  }
  for (std::size_t j = 2; j <= n; ++j) {
    seq.values[j - 1] = eval_symbol(spec, static_cast<double>(j));
  }
  return seq;
}

QuadratureResult a0_quadrature(const SymbolSpec& weight, double t, int order) {
  if (!(t >= 1.0)) throw DomainError("a0_quadrature: requires t >= 1");
  if (order < 16) throw ContractError("a0_quadrature: order must be >= 16");
  const LaplaceWeight fine(weight, order);
  const LaplaceWeight coarse(weight, (order + 1) / 2);
  QuadratureResult r;
  r.value = fine.helson(t);
  const double lt = std::log(t);
  const double abs_sum = fine.transform_abs_sum(lt) / std::sqrt(t);
  r.error_estimate = std::abs(r.value - coarse.helson(t)) +
                     64.0 * std::numeric_limits<double>::epsilon() * abs_sum;
  r.nodes = fine.nodes().size();
  if (r.error_estimate > 1e-8 * std::abs(r.value) && r.error_estimate > 1e-300) {
    throw ConvergenceError("a0_quadrature: error estimate " +
                           std::to_string(r.error_estimate) + " above tolerance at t=" +
                           std::to_string(t));
  }
  return r;
}

QuadratureResult a1_residual(const SymbolSpec& spec, double t, int order) {
  if (!(t > 1.0)) throw DomainError("a1_residual: requires t > 1");
  SymbolSpec a = spec;
  a.kind = SymbolKind::helson_a;
  QuadratureResult q = a0_quadrature(weight_of(spec), t, order);
  q.value = helson_a_value(a, t) - q.value;
  return q;
}

double special_kernel(SpecialKernel name, double x, double beta) {
  if (!(beta > 0.0)) throw DomainError("special_kernel: beta must be > 0");
  switch (name) {
    case SpecialKernel::h_beta:
      if (!(x > 0.0)) throw DomainError("h_beta: requires x > 0");
      return std::exp(-beta * x) / x;
    case SpecialKernel::k_beta:
      // Schwartz on the whole line; x = 0 is admissible.
      if (!(x >= 0.0)) throw DomainError("k_beta: requires x >= 0");
      return beta * std::exp(-0.5 * x - beta * beta * std::exp(-x));
    case SpecialKernel::h_tilde:
      if (!(x > 0.0)) throw DomainError("h_tilde: requires x > 0");
      // Both zeta(1 + x) and h carry 1/x; cancel it analytically near 0.
      if (x < 1.0) return zeta1_regular(x) - std::expm1(-beta * x) / x - 1.0;
      return zeta1_minus_one(x) - std::exp(-beta * x) / x;
  }
  throw ContractError("special_kernel: unknown kernel");
}

nlohmann::json to_json(const SymbolSpec& spec) {
  if (spec.kind == SymbolKind::custom) {
    throw ContractError("custom symbols are not serializable");
  }
  return nlohmann::json{{"kind", std::string(to_string(spec.kind))},
                        {"alpha", spec.alpha},
                        {"t0", spec.cutoffs.t0},
                        {"chi_lo", spec.cutoffs.chi_lo},
                        {"chi_hi", spec.cutoffs.chi_hi},
                        {"beta", spec.cutoffs.beta}};
}

SymbolSpec symbol_from_json(const nlohmann::json& j) {
  Cutoffs c;
  c.t0 = j.value("t0", c.t0);
  c.chi_lo = j.value("chi_lo", c.chi_lo);
  c.chi_hi = j.value("chi_hi", c.chi_hi);
  c.beta = j.value("beta", c.beta);
  const SymbolKind kind = symbol_kind_from_string(j.at("kind").get<std::string>());
  if (kind == SymbolKind::custom) {
    throw ContractError("custom symbols cannot be read from JSON");
  }
  return make_symbol(kind, j.value("alpha", 1.0), c);
}

}  // namespace helson
