#include "helson/chebyshev.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "helson/errors.hpp"

namespace helson {

PiecewiseChebyshev::PiecewiseChebyshev(const std::function<double(double)>& f,
                                       std::vector<double> breaks, int degree)
    : breaks_(std::move(breaks)), degree_(degree) {
  if (breaks_.size() < 2) throw ContractError("PiecewiseChebyshev: need two breaks");
  if (degree < 1) throw ContractError("PiecewiseChebyshev: degree must be >= 1");
  if (!std::is_sorted(breaks_.begin(), breaks_.end()) ||
      std::adjacent_find(breaks_.begin(), breaks_.end()) != breaks_.end()) {
    throw ContractError("PiecewiseChebyshev: breaks must be strictly increasing");
  }
  const int m = degree + 1;
  std::vector<double> vals(m);
  coeffs_.assign(pieces() * m, 0.0);
  for (std::size_t p = 0; p < pieces(); ++p) {
    const double a = breaks_[p];
    const double b = breaks_[p + 1];
    for (int i = 0; i < m; ++i) {
      const double theta = std::numbers::pi * (i + 0.5) / m;
      vals[i] = f(0.5 * (a + b) + 0.5 * (b - a) * std::cos(theta));
    }
    double* c = &coeffs_[p * m];
    for (int k = 0; k < m; ++k) {
      double s = 0.0;
      for (int i = 0; i < m; ++i) {
        s += vals[i] * std::cos(std::numbers::pi * k * (i + 0.5) / m);
      }
      c[k] = (k == 0 ? 1.0 : 2.0) * s / m;
    }
  }
}

double PiecewiseChebyshev::operator()(double x) const {
  if (x < lo() || x > hi()) {
    throw DomainError("PiecewiseChebyshev: argument outside table range");
  }
  auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
  std::size_t p = it == breaks_.begin() ? 0 : static_cast<std::size_t>(it - breaks_.begin()) - 1;
  p = std::min(p, pieces() - 1);
  const double a = breaks_[p];
  const double b = breaks_[p + 1];
  const double y = (2.0 * x - a - b) / (b - a);
  const double* c = &coeffs_[p * (degree_ + 1)];
  // Clenshaw.
  double b1 = 0.0;
  double b2 = 0.0;
  for (int k = degree_; k >= 1; --k) {
    const double t = 2.0 * y * b1 - b2 + c[k];
    b2 = b1;
    b1 = t;
  }
  return y * b1 - b2 + c[0];
}

double PiecewiseChebyshev::tail_indicator() const {
  double worst = 0.0;
  const int m = degree_ + 1;
  for (std::size_t p = 0; p < pieces(); ++p) {
    const double* c = &coeffs_[p * m];
    double big = 0.0;
    for (int k = 0; k < m; ++k) big = std::max(big, std::abs(c[k]));
    if (big == 0.0) continue;
    worst = std::max(worst, (std::abs(c[degree_]) + std::abs(c[degree_ - 1])) / big);
  }
  return worst;
}

std::vector<double> graded_breaks(double lo, double hi, double min_width,
                                  double relative_width) {
  if (!(lo < hi) || !(min_width > 0.0) || !(relative_width >= 0.0)) {
    throw ContractError("graded_breaks: invalid arguments");
  }
  std::vector<double> out{lo};
  double x = lo;
  while (x < hi) {
    const double w = std::max(min_width, std::abs(x) * relative_width);
    x = std::min(hi, x + w);
    if (hi - x < 0.25 * min_width) x = hi;
    out.push_back(x);
  }
  return out;
}

}  // namespace helson
