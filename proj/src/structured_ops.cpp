#include "helson/structured_ops.hpp"

#include <cmath>
#include <numbers>

#include "helson/chebyshev.hpp"
#include "helson/errors.hpp"
#include "helson/fft.hpp"
#include "helson/laplace_weight.hpp"

namespace helson {

HankelTruncation make_hankel(std::vector<double> b) {
  if (b.empty() || b.size() % 2 == 0) {
    throw ContractError("build_hankel: need 2N-1 values, got " + std::to_string(b.size()));
  }
  HankelTruncation h;
  h.n = (b.size() + 1) / 2;
  h.b_values = std::move(b);
  return h;
}

std::vector<double> hankel_matvec_dense(const HankelTruncation& h,
                                        const std::vector<double>& u) {
  if (u.size() != h.n) throw ContractError("hankel matvec: dimension mismatch");
  std::vector<double> y(h.n, 0.0);
  for (std::size_t j = 0; j < h.n; ++j) {
    double s = 0.0;
    for (std::size_t k = 0; k < h.n; ++k) s += h.b_values[j + k] * u[k];
    y[j] = s;
  }
  return y;
}

namespace {

// y_j = (b * reverse(u))_{j + N - 1}; a cyclic length L >= 2N leaves those
// indices free of wrap-around.
class FftHankel {
 public:
  explicit FftHankel(const HankelTruncation& h)
      : n_(h.n), fft_(std::make_shared<FFT>(next_pow2(2 * h.n))) {
    std::vector<double> b(fft_->size(), 0.0);
    std::copy(h.b_values.begin(), h.b_values.end(), b.begin());
    bhat_ = fft_->forward_real(b);
  }

  std::vector<double> operator()(const std::vector<double>& u) const {
    if (u.size() != n_) throw ContractError("hankel matvec: dimension mismatch");
    const std::size_t L = fft_->size();
    std::vector<double> ur(L, 0.0);
    for (std::size_t k = 0; k < n_; ++k) ur[k] = u[n_ - 1 - k];
    std::vector<cplx> uhat = fft_->forward_real(ur);
    for (std::size_t i = 0; i < uhat.size(); ++i) uhat[i] *= bhat_[i];
    const std::vector<double> conv = fft_->backward_real(uhat);
    std::vector<double> y(n_);
    const double scale = 1.0 / static_cast<double>(L);
    for (std::size_t j = 0; j < n_; ++j) y[j] = conv[j + n_ - 1] * scale;
    return y;
  }

 private:
  std::size_t n_;
  std::shared_ptr<FFT> fft_;
  std::vector<cplx> bhat_;
};

}  // namespace

std::vector<double> hankel_matvec_fft(const HankelTruncation& h, const std::vector<double>& u) {
  return FftHankel(h)(u);
}

DenseMatrix<double> hankel_dense(const HankelTruncation& h) {
  DenseMatrix<double> m(h.n, h.n);
  for (std::size_t j = 0; j < h.n; ++j) {
    for (std::size_t k = 0; k < h.n; ++k) m(j, k) = h.entry(j, k);
  }
  return m;
}

RealMap build_hankel(std::vector<double> b) {
  const HankelTruncation h = make_hankel(std::move(b));
  auto op = std::make_shared<FftHankel>(h);
  RealMap map;
  map.rows = map.cols = h.n;
  map.symmetric = true;
  map.description = "hankel(N=" + std::to_string(h.n) + ")";
  map.apply = [op](const std::vector<double>& u) { return (*op)(u); };
  return map;
}

namespace {

double checked_eval(const SequenceFn& a, std::uint64_t n) {
  try {
    return a(n);
  } catch (const DomainError& e) {
    throw DomainError(std::string(e.what()) + " at index n=" + std::to_string(n));
  }
}

}  // namespace

RealMap build_helson(SequenceFn a, std::size_t n) {
  if (n == 0) throw ContractError("build_helson: N must be >= 1");
  auto cache = std::make_shared<std::vector<double>>(n);
  for (std::size_t i = 0; i < n; ++i) (*cache)[i] = checked_eval(a, i + 1);
  RealMap map;
  map.rows = map.cols = n;
  map.symmetric = true;
  map.description = "helson(N=" + std::to_string(n) + ")";
  map.apply = [a = std::move(a), cache, n](const std::vector<double>& u) {
    std::vector<double> y(n, 0.0);
    for (std::size_t j = 1; j <= n; ++j) {
      double s = 0.0;
      for (std::size_t k = 1; k <= n; ++k) {
        const std::uint64_t idx = std::uint64_t(j) * k;
        const double v = idx <= n ? (*cache)[idx - 1] : checked_eval(a, idx);
        s += v * u[k - 1];
      }
      y[j - 1] = s;
    }
    return y;
  };
  return map;
}

DenseMatrix<double> helson_dense(const SequenceFn& a, std::size_t n) {
  DenseMatrix<double> m(n, n);
  std::vector<double> cache(n * n + 1, std::numeric_limits<double>::quiet_NaN());
  for (std::size_t j = 1; j <= n; ++j) {
    for (std::size_t k = j; k <= n; ++k) {
      const std::size_t idx = j * k;
      if (std::isnan(cache[idx])) cache[idx] = checked_eval(a, idx);
      m(j - 1, k - 1) = m(k - 1, j - 1) = cache[idx];
    }
  }
  return m;
}

namespace {

// b0 on [0, X] as a piecewise Chebyshev table.
std::shared_ptr<PiecewiseChebyshev> b0_table(const SymbolSpec& spec, double x_max) {
  const LaplaceWeight lw(weight_of(spec));
  auto breaks = graded_breaks(0.0, std::max(x_max, 1.0), 1.0, 0.25);
  return std::make_shared<PiecewiseChebyshev>([&](double x) { return lw.transform(x); },
                                              std::move(breaks), 24);
}

}  // namespace

SequenceFn sequence_of(const SymbolSpec& spec, std::uint64_t n_max) {
  if (spec.kind == SymbolKind::a0 || spec.kind == SymbolKind::a1) {
    const double x_max = std::log(static_cast<double>(std::max<std::uint64_t>(n_max, 2)));
    auto table = b0_table(spec, x_max);
    SymbolSpec a = spec;
    a.kind = SymbolKind::helson_a;
    const bool row0 = spec.kind == SymbolKind::a0;
    return [table, a, row0](std::uint64_t n) {
      const double t = static_cast<double>(n);
      const double a0 = (*table)(std::log(t)) / std::sqrt(t);
      if (row0) return a0;
      return (n == 1 ? 0.0 : eval_symbol(a, t)) - a0;
    };
  }
  return [spec](std::uint64_t n) {
    if (n == 1) return 0.0;
    return eval_symbol(spec, static_cast<double>(n));
  };
}

SequenceFn sequence_from_values(std::vector<double> values) {
  auto v = std::make_shared<std::vector<double>>(std::move(values));
  return [v](std::uint64_t n) {
    if (n == 0 || n > v->size()) {
      throw DomainError("sequence index " + std::to_string(n) + " outside table");
    }
    return (*v)[n - 1];
  };
}

ComplexMap rank_one_dirichlet(std::size_t n, double xi) {
  if (n == 0) throw ContractError("rank_one_dirichlet: N must be >= 1");
  auto v = std::make_shared<std::vector<cplx>>(n);
  for (std::size_t j = 1; j <= n; ++j) {
    const double lj = std::log(static_cast<double>(j));
    (*v)[j - 1] = std::polar(1.0 / std::sqrt(static_cast<double>(j)),
                             2.0 * std::numbers::pi * xi * lj);
  }
  ComplexMap map;
  map.rows = map.cols = n;
  map.symmetric = false;
  map.description = "rank_one_dirichlet(N=" + std::to_string(n) + ")";
  // (v v^T) u = v (v^T u); adjoint is conj(v) (v^* y).
  map.apply = [v](const std::vector<cplx>& u) {
    cplx s = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) s += (*v)[k] * u[k];
    std::vector<cplx> y(v->size());
    for (std::size_t j = 0; j < y.size(); ++j) y[j] = (*v)[j] * s;
    return y;
  };
  map.apply_adjoint = [v](const std::vector<cplx>& y) {
    cplx s = 0.0;
    for (std::size_t j = 0; j < y.size(); ++j) s += std::conj((*v)[j]) * y[j];
    std::vector<cplx> u(v->size());
    for (std::size_t k = 0; k < u.size(); ++k) u[k] = std::conj((*v)[k]) * s;
    return u;
  };
  return map;
}

}  // namespace helson
