#pragma once

#include <functional>
#include <vector>

namespace helson {

/// Piecewise Chebyshev interpolant on [breaks.front(), breaks.back()].
/// Each piece carries `degree + 1` coefficients computed from values at the
/// Chebyshev points of the first kind.
class PiecewiseChebyshev {
 public:
  PiecewiseChebyshev() = default;
  PiecewiseChebyshev(const std::function<double(double)>& f,
                     std::vector<double> breaks, int degree);

  double operator()(double x) const;

  double lo() const { return breaks_.front(); }
  double hi() const { return breaks_.back(); }
  bool empty() const { return breaks_.size() < 2; }
  std::size_t pieces() const { return breaks_.size() - 1; }

  /// Largest |c_deg| + |c_deg-1| over pieces, relative to the piece's
  /// largest coefficient. A cheap a-posteriori resolution indicator.
  double tail_indicator() const;

 private:
  std::vector<double> breaks_;
  std::vector<double> coeffs_;
  int degree_ = 0;
};

/// Breakpoints on [lo, hi] whose widths grow geometrically with |x|:
/// width(x) = max(min_width, |x| * relative_width).
std::vector<double> graded_breaks(double lo, double hi, double min_width,
                                  double relative_width);

}  // namespace helson
