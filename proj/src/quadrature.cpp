#include "helson/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "helson/errors.hpp"

namespace helson {
namespace {

GaussRule compute_rule(int order) {
  GaussRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (order == 1) p0 = 1.0;
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute derivative at the converged node.
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= order; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = order * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[order - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[order - 1 - i] = w;
  }
  if (order % 2 == 1) rule.nodes[order / 2] = 0.0;
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int order) {
  if (order < 1) throw ContractError("gauss_legendre: order must be >= 1");
  static std::mutex mutex;
  static std::map<int, GaussRule> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(order);
  if (it == cache.end()) {
    if (order == 1) {
      it = cache.emplace(order, GaussRule{{0.0}, {2.0}}).first;
    } else {
      it = cache.emplace(order, compute_rule(order)).first;
    }
  }
  return it->second;
}

CompositeRule composite_gauss(const std::vector<double>& breaks, int order) {
  const GaussRule& rule = gauss_legendre(order);
  CompositeRule out;
  if (breaks.size() < 2) return out;
  out.nodes.reserve((breaks.size() - 1) * order);
  out.weights.reserve((breaks.size() - 1) * order);
  for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
    const double a = breaks[p];
    const double b = breaks[p + 1];
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    for (int i = 0; i < order; ++i) {
      out.nodes.push_back(mid + half * rule.nodes[i]);
      out.weights.push_back(half * rule.weights[i]);
    }
  }
  return out;
}

std::vector<double> panel_breaks(double lo, double hi, double max_width,
                                 const std::vector<double>& extra) {
  if (!(hi > lo)) return {lo, hi};
  std::vector<double> anchors{lo, hi};
  for (double e : extra) {
    if (e > lo && e < hi) anchors.push_back(e);
  }
  std::sort(anchors.begin(), anchors.end());
  std::vector<double> out{anchors.front()};
  for (std::size_t i = 0; i + 1 < anchors.size(); ++i) {
    const double a = anchors[i];
    const double b = anchors[i + 1];
    if (b - a <= 0.0) continue;
    const auto pieces =
        static_cast<int>(std::max(1.0, std::ceil((b - a) / max_width)));
    for (int k = 1; k < pieces; ++k) out.push_back(a + (b - a) * k / pieces);
    out.push_back(b);
  }
  return out;
}

}  // namespace helson
