#pragma once

#include <span>
#include <vector>

#include "helson/symbols.hpp"

namespace helson {

/// Quadrature representation of a bounded, compactly supported weight w
/// and the transforms built on it:
///
///   b0(x) = int_0^inf w(l) e^{-l x} dl        (Laplace transform)
///   a0(t) = t^{-1/2} b0(log t) = int t^{-1/2-l} w(l) dl
///
/// Small arguments use a fixed node set in l (panels on the smooth pieces of
/// w, geometric toward l = 0). Large arguments substitute l = mu / x and
/// integrate in u = log mu, which keeps e^S b0(e^S) finite for any S.
class LaplaceWeight {
 public:
  explicit LaplaceWeight(SymbolSpec weight, int order = 24);

  const SymbolSpec& weight() const { return weight_; }
  int order() const { return order_; }

  /// Quadrature nodes l_q and products w(l_q) * omega_q.
  std::span<const double> nodes() const { return nodes_; }
  std::span<const double> weighted() const { return weighted_; }

  /// int w.
  double mass() const { return mass_; }

  /// b0(x), x >= 0.
  double transform(double x) const;

  /// e^S b0(e^S), any real S.
  double transform_scaled_log(double log_x) const;

  /// a0(t), t >= 1.
  double helson(double t) const;

  /// Sum of |terms| for b0(x) on the node set; bounds the rounding error.
  double transform_abs_sum(double x) const;

 private:
  double node_sum(double x) const;
  double log_substituted(double log_x) const;

  SymbolSpec weight_;
  int order_;
  double support_hi_;
  std::vector<double> nodes_;
  std::vector<double> weighted_;
  std::vector<double> log_breaks_;  // log of interior breakpoints of w
  double mass_ = 0.0;
};

}  // namespace helson
