#include "helson/schatten.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <random>

#include "helson/eigen.hpp"
#include "helson/errors.hpp"
#include "helson/fft.hpp"
#include "helson/quadrature.hpp"
#include "helson/special_functions.hpp"

namespace helson {
namespace {

void require_p(double p) {
  if (!(p > 0.0) || !std::isfinite(p)) throw ContractError("Schatten exponent p must be > 0");
}

}  // namespace

double schatten_norm(const std::vector<double>& s, double p) {
  require_p(p);
  double sum = 0.0;
  for (double v : s) {
    if (v < 0.0) throw ContractError("schatten_norm: negative singular value");
    sum += std::pow(v, p);
  }
  return std::pow(sum, 1.0 / p);
}

double schatten_lorentz_norm(const std::vector<double>& s, double p, double q) {
  require_p(p);
  if (!(q > 0.0)) throw ContractError("schatten_lorentz_norm: q must be > 0");
  if (std::isinf(q)) {
    double sup = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      sup = std::max(sup, std::pow(2.0 + static_cast<double>(i), 1.0 / p) * s[i]);
    }
    return sup;
  }
  if (q == p) return schatten_norm(s, p);
  double sum = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    sum += std::pow(s[i], q) * std::pow(2.0 + static_cast<double>(i), q / p - 1.0);
  }
  return std::pow(sum, 1.0 / q);
}

SchattenReport schatten_report(const std::vector<double>& s, double p, double q) {
  SchattenReport r;
  r.p = p;
  r.q = std::isnan(q) ? p : q;
  r.value = schatten_lorentz_norm(s, p, r.q);
  r.n_used = s.size();
  const std::size_t n = s.size();
  if (n >= 8 && s.back() > 0.0) {
    const std::size_t start = n - n / 4;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t cnt = 0;
    for (std::size_t i = start; i < n; ++i) {
      if (!(s[i] > 0.0)) continue;
      const double x = std::log(static_cast<double>(i + 1));
      const double y = std::log(s[i]);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++cnt;
    }
    const double denom = cnt * sxx - sx * sx;
    const double gamma = cnt >= 2 && denom > 0 ? -(cnt * sxy - sx * sy) / denom : 0.0;
    r.tail_estimate = gamma * p > 1.0 ? std::pow(s.back(), p) * static_cast<double>(n) /
                                            (gamma * p - 1.0)
                                      : std::numeric_limits<double>::infinity();
  }
  return r;
}

nlohmann::json to_json(const SchattenReport& r) {
  auto num = [](double v) -> nlohmann::json {
    if (std::isinf(v)) return "inf";
    return v;
  };
  return {{"p", r.p},
          {"q", num(r.q)},
          {"value", r.value},
          {"n_used", r.n_used},
          {"tail_estimate", num(r.tail_estimate)}};
}

double dyadic_window(double x) {
  if (!(x > 0.5) || !(x < 2.0)) return 0.0;
  const double u = std::log2(x);
  return smoothstep(u + 1.0) - smoothstep(u);
}

double dyadic_window_n(double x, int n) { return dyadic_window(std::ldexp(x, -n)); }

namespace {

// 2^n |hat b_n|_p^p at a given sample count.
double piece_value(const std::function<double(double)>& b, double p, int n, std::size_t m) {
  const double a = std::ldexp(1.0, n - 1);
  const double len = 3.0 * a;
  const double dx = len / static_cast<double>(m);
  const std::size_t pad = 8 * m;
  std::vector<cplx> buf(pad, 0.0);
  bool any = false;
  for (std::size_t j = 0; j < m; ++j) {
    const double x = a + static_cast<double>(j) * dx;
    const double w = dyadic_window_n(x, n);
    if (w == 0.0) continue;
    const double v = b(x) * w;
    buf[j] = v;
    any = any || v != 0.0;
  }
  if (!any) return 0.0;
  const FFT fft(pad);
  const std::vector<cplx> F = fft.forward(buf);
  double sum = 0.0;
  for (const cplx& z : F) sum += std::pow(dx * std::abs(z), p);
  const double dxi = 1.0 / (static_cast<double>(pad) * dx);
  return std::ldexp(sum * dxi, n);
}

}  // namespace

DyadicDecomposition dyadic_peller_estimate(const std::function<double(double)>& b, double p,
                                           int n_lo, int n_hi, std::size_t fft_size) {
  require_p(p);
  if (n_hi < n_lo) throw ContractError("dyadic_peller_estimate: empty n_range");
  if (fft_size < 16 || (fft_size & (fft_size - 1)) != 0) {
    throw ContractError("dyadic_peller_estimate: fft_size must be a power of two >= 16");
  }
  DyadicDecomposition d;
  d.n_lo = n_lo;
  d.n_hi = n_hi;
  d.p = p;
  for (int n = n_lo; n <= n_hi; ++n) {
    const double v = piece_value(b, p, n, fft_size);
    const double v2 = piece_value(b, p, n, 2 * fft_size);
    const double err = v2 == 0.0 ? (v == 0.0 ? 0.0 : 1.0) : std::abs(v2 - v) / v2;
    d.piece_norms.push_back(v2);
    d.error_estimates.push_back(err);
    d.unresolved.push_back(err > 0.1);
    d.total += v2;
  }
  return d;
}

void write_dyadic_csv(std::ostream& os, const DyadicDecomposition& d) {
  os << "n,piece_norm,error_estimate\n";
  char buf[96];
  for (std::size_t i = 0; i < d.piece_norms.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g\n", d.n_lo + static_cast<int>(i),
                  d.piece_norms[i], d.error_estimates[i]);
    os << buf;
  }
}

namespace {

double cubic_bspline(double t) {
  const double a = std::abs(t);
  if (a >= 2.0) return 0.0;
  if (a >= 1.0) return (2.0 - a) * (2.0 - a) * (2.0 - a) / 6.0;
  return (4.0 - 6.0 * a * a + 3.0 * a * a * a) / 6.0;
}

double sinc(double z) { return z == 0.0 ? 1.0 : std::sin(z) / z; }

}  // namespace

std::complex<double> BandLimited::f(double x) const {
  const double d = delta();
  const double s = sinc(std::numbers::pi * d * x);
  cplx sum = 0.0;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    const double xi = (static_cast<double>(k) + 2.0) * d;
    sum += coeffs[k] * std::polar(1.0, 2.0 * std::numbers::pi * x * xi);
  }
  return d * s * s * s * s * sum;
}

double BandLimited::spectrum(double xi) const {
  const double d = delta();
  double v = 0.0;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    v += coeffs[k] * cubic_bspline(xi / d - static_cast<double>(k) - 2.0);
  }
  return v;
}

double BandLimited::spectrum_l2_squared() const {
  const double d = delta();
  const GaussRule& rule = gauss_legendre(6);
  double sum = 0.0;
  const std::size_t knots = coeffs.size() + 3;
  for (std::size_t j = 0; j < knots; ++j) {
    sum += integrate_panel(
        [&](double xi) {
          const double v = spectrum(xi);
          return v * v;
        },
        static_cast<double>(j) * d, static_cast<double>(j + 1) * d, rule);
  }
  return sum;
}

BandLimited random_band_limited(double band, std::size_t terms, std::uint64_t seed) {
  if (!(band > 0.0) || terms < 1) throw ContractError("random_band_limited: bad arguments");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  BandLimited v;
  v.band = band;
  v.coeffs.resize(terms);
  for (double& c : v.coeffs) c = u(rng);
  return v;
}

SamplingRecord sampling_check(const BandLimited& v, double p) {
  require_p(p);
  if (v.coeffs.empty()) throw ContractError("sampling_check: empty spectrum");
  // The B-spline bumps sit in [delta, (K + 2) delta] inside [0, N] only for a
  // finite positive band.
  if (!(v.band > 0.0) || !std::isfinite(v.band)) {
    throw ContractError("sampling_check: spectrum not supported in [0, N]");
  }
  for (double c : v.coeffs) {
    if (!std::isfinite(c)) throw ContractError("sampling_check: non-finite coefficient");
  }
  const double N = v.band;
  const double d = v.delta();
  double csum = 0.0;
  for (double c : v.coeffs) csum += std::abs(c);
  SamplingRecord r;
  r.spectrum_norm = p == 2.0 ? N * v.spectrum_l2_squared()
                             : std::numeric_limits<double>::quiet_NaN();
  if (csum == 0.0) {
    r.ratio = std::numeric_limits<double>::quiet_NaN();
    return r;
  }
  if (!(4.0 * p > 1.0)) throw ContractError("sampling_check: needs p > 1/4");
  // |f(x)| <= d C (pi d |x|)^{-4}; choose X with the tail below 1e-13 of
  // the crude size d^p C^p / (d N).
  auto tail = [&](double X, double h) {
    return 2.0 / h * std::pow(d * csum, p) * std::pow(std::numbers::pi * d, -4.0 * p) *
           std::pow(X, 1.0 - 4.0 * p) / (4.0 * p - 1.0);
  };
  double X = 8.0 / d;
  while (tail(X, 1.0 / (8.0 * N)) / (8.0 * N) > 1e-13 * std::pow(d * csum, p) / (d * N)) {
    X *= 1.5;
    if (X > 1e7) break;
  }
  const auto M = static_cast<long long>(std::ceil(X * N));
  for (long long m = -M; m <= M; ++m) {
    r.lhs += std::pow(std::abs(v.f(static_cast<double>(m) / N)), p);
  }
  double fine = 0.0;
  for (long long m = -8 * M; m <= 8 * M; ++m) {
    fine += std::pow(std::abs(v.f(static_cast<double>(m) / (8.0 * N))), p);
  }
  r.rhs_norm = N * fine / (8.0 * N);
  r.ratio = r.rhs_norm > 0.0 ? r.lhs / r.rhs_norm : std::numeric_limits<double>::quiet_NaN();
  r.tail_bound = tail(X, 1.0 / N) / std::max(r.lhs, 1e-300);
  return r;
}

std::complex<double> fourier_of_compact(const std::function<std::complex<double>(double)>& b,
                                        double N, double xi) {
  const auto panels = static_cast<std::size_t>(std::ceil(N * std::max(2.0, 4.0 * std::abs(xi))));
  const GaussRule& rule = gauss_legendre(20);
  cplx sum = 0.0;
  for (std::size_t i = 0; i < panels; ++i) {
    const double a = N * static_cast<double>(i) / panels;
    const double c = N * static_cast<double>(i + 1) / panels;
    const double half = 0.5 * (c - a);
    const double mid = 0.5 * (a + c);
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      const double x = mid + half * rule.nodes[q];
      sum += half * rule.weights[q] * b(x) * std::polar(1.0, -2.0 * std::numbers::pi * x * xi);
    }
  }
  return sum;
}

RankOneExpansion rank_one_expansion(const std::function<std::complex<double>(double)>& b,
                                    int N, std::size_t J, int m_max, double tol) {
  if (N < 1 || J < 1 || m_max < 0) throw ContractError("rank_one_expansion: bad arguments");
  RankOneExpansion r;
  r.m_max = m_max;
  const double Nd = static_cast<double>(N);
  double vmax = 0.0;
  double vsum = 0.0;
  for (int m = -m_max; m <= m_max; ++m) {
    const cplx v = fourier_of_compact(b, Nd, m / Nd);
    r.v.push_back(v);
    vmax = std::max(vmax, std::abs(v));
    vsum += std::abs(v);
  }
  const double edge = std::max(std::abs(r.v.front()), std::abs(r.v.back()));
  r.tail = vmax > 0.0 ? edge / vmax : 0.0;
  r.truncated_ok = r.tail <= tol;
  r.trace_bound = (Nd + 1.0) * vsum / Nd;
  r.matrix = DenseMatrix<cplx>(J, J);
  std::vector<cplx> phase(r.v.size());
  for (std::size_t j = 1; j <= J; ++j) {
    for (std::size_t k = j; k <= J; ++k) {
      const double t = static_cast<double>(j) * static_cast<double>(k);
      const double lt = std::log(t);
      cplx s = 0.0;
      for (int m = -m_max; m <= m_max; ++m) {
        s += r.v[m + m_max] * std::polar(1.0, 2.0 * std::numbers::pi * (m / Nd) * lt);
      }
      r.matrix(j - 1, k - 1) = r.matrix(k - 1, j - 1) = s / (Nd * std::sqrt(t));
    }
  }
  return r;
}

std::vector<double> complex_singular_values(const DenseMatrix<std::complex<double>>& m) {
  bool sym = m.rows == m.cols;
  for (std::size_t i = 0; sym && i < m.rows; ++i) {
    for (std::size_t j = i + 1; j < m.cols; ++j) {
      if (m(i, j) != m(j, i)) {
        sym = false;
        break;
      }
    }
  }
  if (sym) {
    // Complex symmetric: [[Re, Im], [Im, -Re]] is real symmetric with
    // eigenvalues +-s_i.
    const std::size_t n = m.rows;
    DenseMatrix<double> e(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const cplx z = m(i, j);
        e(i, j) = z.real();
        e(i, n + j) = z.imag();
        e(n + i, j) = z.imag();
        e(n + i, n + j) = -z.real();
      }
    }
    std::vector<double> ev = symmetric_eigenvalues(std::move(e));
    std::sort(ev.begin(), ev.end(), std::greater<>());
    ev.resize(n);
    for (double& v : ev) v = std::max(v, 0.0);
    return ev;
  }
  DenseMatrix<double> r(2 * m.rows, 2 * m.cols);
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) {
      const cplx z = m(i, j);
      r(i, j) = z.real();
      r(i, m.cols + j) = -z.imag();
      r(m.rows + i, j) = z.imag();
      r(m.rows + i, m.cols + j) = z.real();
    }
  }
  const std::vector<double> s = dense_singular_values(r);
  std::vector<double> out;
  for (std::size_t i = 0; i < s.size(); i += 2) out.push_back(s[i]);
  return out;
}

}  // namespace helson
