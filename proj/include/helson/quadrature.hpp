#pragma once

#include <cstddef>
#include <vector>

namespace helson {

/// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Cached rule of the given order (order >= 1). Thread-safe; the returned
/// reference stays valid for the lifetime of the program.
const GaussRule& gauss_legendre(int order);

/// Nodes and weights of a composite rule: `order` Gauss points on each
/// panel [breaks[i], breaks[i+1]].
struct CompositeRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

CompositeRule composite_gauss(const std::vector<double>& breaks, int order);

/// Breakpoints lo = b_0 < ... < b_n = hi splitting [lo, hi] into pieces of
/// width at most `max_width`, always including every interior point of
/// `extra` that falls strictly inside (lo, hi).
std::vector<double> panel_breaks(double lo, double hi, double max_width,
                                 const std::vector<double>& extra = {});

template <class F>
double integrate_panel(F&& f, double a, double b, const GaussRule& rule) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  }
  return half * sum;
}

}  // namespace helson
