#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <limits>
#include <vector>

#include <json.hpp>

#include "helson/linear_map.hpp"

namespace helson {

/// (sum s_n^p)^{1/p}.
double schatten_norm(const std::vector<double>& s, double p);

/// (sum_{n>=1} s_n^q (1+n)^{q/p-1})^{1/q}, or sup_n (1+n)^{1/p} s_n when
/// q is infinite.
double schatten_lorentz_norm(const std::vector<double>& s, double p, double q);

struct SchattenReport {
  double p = 1.0;
  double q = 1.0;
  double value = 0.0;
  std::size_t n_used = 0;
  /// Power-law extrapolation of the missing tail of sum s_n^p from the
  /// last quarter of s; +inf when the fitted decay is too slow.
  double tail_estimate = 0.0;
};

SchattenReport schatten_report(const std::vector<double>& s, double p,
                               double q = std::numeric_limits<double>::quiet_NaN());
nlohmann::json to_json(const SchattenReport& r);

/// w(x) with supp w = [1/2, 2] and sum_n w(x/2^n) = 1 for x > 0:
/// w(x) = theta(log2 x) - theta(log2 x - 1), theta(y) = smoothstep(y + 1).
double dyadic_window(double x);
double dyadic_window_n(double x, int n);

struct DyadicDecomposition {
  int n_lo = -8;
  int n_hi = 24;
  std::vector<double> piece_norms;      // 2^n |hat b_n|_p^p, n = n_lo..n_hi
  std::vector<double> error_estimates;  // relative change under resolution doubling
  std::vector<bool> unresolved;         // error estimate above 10%
  double total = 0.0;
  double p = 1.0;
};

/// Per-n values 2^n |hat b_n|_{L^p}^p: b_n = b w(./2^n) sampled with
/// fft_size points on [2^{n-1}, 2^{n+1}], zero-padded 8x, and a Riemann
/// L^p sum of |hat b_n| on the padded frequency grid. Fourier convention
/// hat f(xi) = int f(x) e^{-2 pi i x xi} dx.
DyadicDecomposition dyadic_peller_estimate(const std::function<double(double)>& b, double p,
                                           int n_lo = -8, int n_hi = 24,
                                           std::size_t fft_size = 256);

void write_dyadic_csv(std::ostream& os, const DyadicDecomposition& d);

/// Band-limited f(x) = int_0^N v(xi) e^{2 pi i x xi} d xi with
/// v = sum_k c_k beta((xi - xi_k)/delta), beta the cubic B-spline on
/// [-2, 2], xi_k = (k + 2) delta, delta = N/(K + 3). Then
/// f(x) = delta sinc^4(pi delta x) sum_k c_k e^{2 pi i x xi_k}.
struct BandLimited {
  double band = 1.0;  // N
  std::vector<double> coeffs;

  double delta() const { return band / (static_cast<double>(coeffs.size()) + 3.0); }
  std::complex<double> f(double x) const;
  double spectrum(double xi) const;
  /// int |v|^2 exactly (piecewise cubic, Gauss).
  double spectrum_l2_squared() const;
};

BandLimited random_band_limited(double band, std::size_t terms, std::uint64_t seed);

struct SamplingRecord {
  double lhs = 0.0;       // sum_m |f(m/N)|^p
  double rhs_norm = 0.0;  // N |f|_p^p
  double ratio = 0.0;
  double tail_bound = 0.0;     // bound on the truncated part, relative
  double spectrum_norm = 0.0;  // N int |v|^2 (p = 2 only, else NaN)
};

/// Plancherel-Polya sampling comparison. |f|_p^p is the Riemann sum at
/// spacing 1/(8N), exact for p = 2 up to truncation. Throws ContractError
/// when v is not supported in [0, N].
SamplingRecord sampling_check(const BandLimited& v, double p);

/// Expansion of a symbol supported in [1, e^N]: with b(x) = e^{x/2} a(e^x)
/// supported in [0, N] and v(m/N) = hat b(m/N), assembles
///   (1/N) sum_{|m| <= m_max} v(m/N) {(jk)^{-1/2 + 2 pi i m/N}}_{j,k <= J}.
/// The identity with a(jk) holds for jk <= e^N.
struct RankOneExpansion {
  DenseMatrix<std::complex<double>> matrix;
  std::vector<std::complex<double>> v;  // v(m/N), m = -m_max..m_max
  int m_max = 0;
  double tail = 0.0;  // |v| at the truncation edge, relative to max |v|
  bool truncated_ok = true;
  double trace_bound = 0.0;  // (N + 1) (1/N) sum |v(m/N)|
};

RankOneExpansion rank_one_expansion(const std::function<std::complex<double>(double)>& b,
                                    int N, std::size_t J, int m_max, double tol = 1e-10);

/// hat b(xi) for b supported in [0, N] by composite Gauss quadrature.
std::complex<double> fourier_of_compact(const std::function<std::complex<double>(double)>& b,
                                        double N, double xi);

/// Singular values of a complex matrix (real embedding, pairs merged).
std::vector<double> complex_singular_values(const DenseMatrix<std::complex<double>>& m);

}  // namespace helson
