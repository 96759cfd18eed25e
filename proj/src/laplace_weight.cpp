#include "helson/laplace_weight.hpp"

#include <algorithm>
#include <cmath>

#include "helson/errors.hpp"
#include "helson/quadrature.hpp"

namespace helson {
namespace {

// Below this the node sum is used directly; above, l = mu / x.
constexpr double kDirectLimit = 64.0;
constexpr double kLambdaFloor = 1e-22;
constexpr int kTransitionPanels = 8;

void add_panel(std::vector<double>& nodes, std::vector<double>& wts, double a, double b,
               const GaussRule& rule) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    nodes.push_back(mid + half * rule.nodes[i]);
    wts.push_back(half * rule.weights[i]);
  }
}

}  // namespace

LaplaceWeight::LaplaceWeight(SymbolSpec weight, int order)
    : weight_(std::move(weight)), order_(order) {
  if (order_ < 4) throw ContractError("LaplaceWeight: order must be >= 4");
  weight_.validate();
  support_hi_ = weight_support_hi(weight_);
  std::vector<double> breaks{0.0};
  for (double b : weight_breakpoints(weight_)) {
    if (b > 0.0 && b < support_hi_) breaks.push_back(b);
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.push_back(support_hi_);
  for (std::size_t i = 1; i + 1 < breaks.size(); ++i) {
    log_breaks_.push_back(std::log(breaks[i]));
  }
  log_breaks_.push_back(std::log(support_hi_));

  const GaussRule& rule = gauss_legendre(order_);
  std::vector<double> lam;
  std::vector<double> omega;
  // First smooth piece: geometric halving toward 0 (|log l|^{-alpha} endpoint).
  for (double b = breaks[1]; b > kLambdaFloor; b *= 0.5) {
    add_panel(lam, omega, 0.5 * b, b, rule);
  }
  for (std::size_t i = 1; i + 1 < breaks.size(); ++i) {
    const double a = breaks[i];
    const double b = breaks[i + 1];
    for (int k = 0; k < kTransitionPanels; ++k) {
      add_panel(lam, omega, a + (b - a) * k / kTransitionPanels,
                a + (b - a) * (k + 1) / kTransitionPanels, rule);
    }
  }
  for (std::size_t q = 0; q < lam.size(); ++q) {
    const double w = eval_weight_log(weight_, std::log(lam[q]));
    if (w == 0.0) continue;
    nodes_.push_back(lam[q]);
    weighted_.push_back(w * omega[q]);
  }
  for (double v : weighted_) mass_ += v;
}

double LaplaceWeight::node_sum(double x) const {
  double s = 0.0;
  for (std::size_t q = 0; q < nodes_.size(); ++q) {
    s += weighted_[q] * std::exp(-nodes_[q] * x);
  }
  return s;
}

double LaplaceWeight::transform_abs_sum(double x) const {
  double s = 0.0;
  for (std::size_t q = 0; q < nodes_.size(); ++q) {
    s += std::abs(weighted_[q]) * std::exp(-nodes_[q] * x);
  }
  return s;
}

// e^S b0(e^S) = int w(e^{u-S}) e^{u - e^u} du.
double LaplaceWeight::log_substituted(double S) const {
  const double u_top = std::min(4.0, S + log_breaks_.back());
  const double u_lo = u_top - 44.0;
  std::vector<double> extra;
  for (double lb : log_breaks_) extra.push_back(S + lb);
  std::vector<double> breaks;
  {
    std::vector<double> coarse = panel_breaks(u_lo, std::min(-4.0, u_top), 2.0);
    breaks = coarse;
    if (u_top > -4.0) {
      std::vector<double> fine = panel_breaks(-4.0, u_top, 0.5);
      breaks.insert(breaks.end(), fine.begin() + 1, fine.end());
    }
  }
  // Smooth pieces of w between interior breakpoints get finer panels.
  for (std::size_t i = 0; i + 1 < extra.size(); ++i) {
    const double a = extra[i];
    const double b = extra[i + 1];
    for (int k = 0; k <= kTransitionPanels; ++k) {
      breaks.push_back(a + (b - a) * k / kTransitionPanels);
    }
  }
  breaks.erase(std::remove_if(breaks.begin(), breaks.end(),
                              [&](double v) { return v < u_lo || v > u_top; }),
               breaks.end());
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end(),
                           [](double a, double b) { return b - a < 1e-12; }),
               breaks.end());
  const GaussRule& rule = gauss_legendre(order_);
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    sum += integrate_panel(
        [&](double u) {
          return eval_weight_log(weight_, u - S) * std::exp(u - std::exp(u));
        },
        breaks[i], breaks[i + 1], rule);
  }
  return sum;
}

double LaplaceWeight::transform(double x) const {
  if (!(x >= 0.0)) throw DomainError("b0: requires x >= 0");
  if (x <= kDirectLimit) return node_sum(x);
  if (std::isinf(x)) return 0.0;
  return log_substituted(std::log(x)) / x;
}

double LaplaceWeight::transform_scaled_log(double S) const {
  if (std::isnan(S)) throw DomainError("b0: NaN argument");
  if (S <= std::log(kDirectLimit)) {
    const double x = std::exp(S);
    return x * node_sum(x);
  }
  return log_substituted(S);
}

double LaplaceWeight::helson(double t) const {
  if (!(t >= 1.0)) throw DomainError("a0: requires t >= 1");
  return transform(std::log(t)) / std::sqrt(t);
}

}  // namespace helson
