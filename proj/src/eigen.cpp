#include "helson/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

#include "helson/errors.hpp"

namespace helson {

void tridiagonal_eigen(std::vector<double>& d, std::vector<double> e, DenseMatrix<double>* z,
                       std::vector<double>* last_row) {
  const std::size_t n = d.size();
  if (n == 0) return;
  e.resize(n, 0.0);
  e[n - 1] = 0.0;
  if (z) {
    *z = DenseMatrix<double>(n, n);
    for (std::size_t i = 0; i < n; ++i) (*z)(i, i) = 1.0;
  }
  std::vector<double> row;
  if (last_row) {
    row.assign(n, 0.0);
    row[n - 1] = 1.0;
  }
  // Absolute deflation floor for blocks of (near) zero diagonal entries.
  double anorm = 0.0;
  for (std::size_t i = 0; i < n; ++i) anorm = std::max(anorm, std::abs(d[i]) + std::abs(e[i]));
  const double floor = std::numeric_limits<double>::epsilon() * anorm;
  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= std::numeric_limits<double>::epsilon() * dd ||
            std::abs(e[m]) <= floor) {
          break;
        }
      }
      if (m != l) {
        if (++iter > 60) throw ConvergenceError("tridiagonal QL: no convergence");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0;
        double c = 1.0;
        double p = 0.0;
        std::size_t i = m;
        bool underflow = false;
        while (i-- > l) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          if (z) {
            for (std::size_t k = 0; k < n; ++k) {
              f = (*z)(k, i + 1);
              (*z)(k, i + 1) = s * (*z)(k, i) + c * f;
              (*z)(k, i) = c * (*z)(k, i) - s * f;
            }
          }
          if (last_row) {
            f = row[i + 1];
            row[i + 1] = s * row[i] + c * f;
            row[i] = c * row[i] - s * f;
          }
        }
        if (underflow) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });
  std::vector<double> ds(n);
  for (std::size_t i = 0; i < n; ++i) ds[i] = d[order[i]];
  d = ds;
  if (z) {
    DenseMatrix<double> zs(n, n);
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) zs(k, i) = (*z)(k, order[i]);
    }
    *z = std::move(zs);
  }
  if (last_row) {
    last_row->resize(n);
    for (std::size_t i = 0; i < n; ++i) (*last_row)[i] = row[order[i]];
  }
}

std::vector<double> symmetric_eigenvalues(DenseMatrix<double> a) {
  const std::size_t n = a.rows;
  if (a.cols != n) throw ContractError("symmetric_eigenvalues: matrix not square");
  if (n == 0) return {};
  std::vector<double> d(n, 0.0);
  std::vector<double> e(n, 0.0);
  std::vector<double> v(n);
  std::vector<double> p(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    d[k] = a(k, k);
    // Column scaled by its largest entry so tiny columns do not underflow.
    double amax = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) amax = std::max(amax, std::abs(a(i, k)));
    if (amax == 0.0) {
      e[k] = 0.0;
      continue;
    }
    double xnorm = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) xnorm += (a(i, k) / amax) * (a(i, k) / amax);
    xnorm = std::sqrt(xnorm);
    const double x0 = a(k + 1, k) / amax;
    const double alpha = x0 > 0.0 ? -xnorm : xnorm;
    double vn2 = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) {
      v[i] = a(i, k) / amax;
      if (i == k + 1) v[i] -= alpha;
      vn2 += v[i] * v[i];
    }
    e[k] = alpha * amax;
    if (vn2 == 0.0) continue;
    const double tau = 2.0 / vn2;
    double vp = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) {
      const double* row = &a.data[i * n];
      double s = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) s += row[j] * v[j];
      p[i] = tau * s;
      vp += v[i] * p[i];
    }
    const double K = 0.5 * tau * vp;
    for (std::size_t i = k + 1; i < n; ++i) p[i] -= K * v[i];
    for (std::size_t i = k + 1; i < n; ++i) {
      double* row = &a.data[i * n];
      const double vi = v[i];
      const double pi = p[i];
      for (std::size_t j = k + 1; j < n; ++j) row[j] -= vi * p[j] + pi * v[j];
    }
  }
  if (n >= 2) {
    d[n - 2] = a(n - 2, n - 2);
    e[n - 2] = a(n - 1, n - 2);
  }
  d[n - 1] = a(n - 1, n - 1);
  tridiagonal_eigen(d, e, nullptr, nullptr);
  return d;
}

Spectrum spectrum_from_eigenvalues(const std::vector<double>& eig) {
  std::vector<double> v = eig;
  std::stable_sort(v.begin(), v.end(), std::greater<>());
  Spectrum s;
  for (double x : v) {
    if (x > 0.0) s.lambda_plus.push_back(x);
  }
  for (auto it = v.rbegin(); it != v.rend(); ++it) {
    if (*it < 0.0) s.lambda_minus.push_back(-*it);
  }
  for (double x : v) s.singular.push_back(std::abs(x));
  std::stable_sort(s.singular.begin(), s.singular.end(), std::greater<>());
  s.meta.dim = eig.size();
  return s;
}

Spectrum dense_eig_oracle(const DenseMatrix<double>& m) {
  if (m.rows > 4096) throw ContractError("dense_eig_oracle: dim above 4096");
  Spectrum s = spectrum_from_eigenvalues(symmetric_eigenvalues(m));
  s.meta.dim = m.rows;
  return s;
}

Spectrum dense_eig_oracle(const RealMap& map) {
  if (!map.symmetric) throw ContractError("dense_eig_oracle: map not symmetric");
  if (map.rows > 4096) throw ContractError("dense_eig_oracle: dim above 4096");
  return dense_eig_oracle(to_dense(map));
}

std::vector<double> dense_singular_values(const DenseMatrix<double>& m) {
  std::vector<double> out;
  auto sorted_abs = [&](const std::vector<double>& ev, std::size_t keep) {
    for (double v : ev) out.push_back(std::abs(v));
    std::sort(out.begin(), out.end(), std::greater<>());
    out.resize(keep);
    return out;
  };
  bool sym = m.rows == m.cols;
  for (std::size_t i = 0; sym && i < m.rows; ++i) {
    for (std::size_t j = i + 1; j < m.cols; ++j) {
      if (m(i, j) != m(j, i)) {
        sym = false;
        break;
      }
    }
  }
  if (sym) return sorted_abs(symmetric_eigenvalues(m), m.rows);
  const std::size_t k = std::min(m.rows, m.cols);
  if (m.rows + m.cols <= 4096) {
    // [[0, A], [A^T, 0]] has eigenvalues +-s_i and |rows - cols| zeros.
    const std::size_t d = m.rows + m.cols;
    DenseMatrix<double> e(d, d);
    for (std::size_t i = 0; i < m.rows; ++i) {
      for (std::size_t j = 0; j < m.cols; ++j) e(i, m.rows + j) = e(m.rows + j, i) = m(i, j);
    }
    std::vector<double> ev = symmetric_eigenvalues(std::move(e));
    std::sort(ev.begin(), ev.end(), std::greater<>());
    ev.resize(k);
    for (double v : ev) out.push_back(std::max(v, 0.0));
    return out;
  }
  // Gram matrix: accuracy floor near sqrt(eps) s_1.
  const bool wide = m.rows <= m.cols;
  DenseMatrix<double> g(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) {
      double s = 0.0;
      if (wide) {
        for (std::size_t q = 0; q < m.cols; ++q) s += m(i, q) * m(j, q);
      } else {
        for (std::size_t q = 0; q < m.rows; ++q) s += m(q, i) * m(q, j);
      }
      g(i, j) = g(j, i) = s;
    }
  }
  std::vector<double> ev = symmetric_eigenvalues(std::move(g));
  for (auto it = ev.rbegin(); it != ev.rend(); ++it) out.push_back(std::sqrt(std::max(*it, 0.0)));
  return out;
}

namespace {

struct RitzResult {
  std::vector<double> values;     // descending
  std::vector<double> residuals;  // matching
  std::size_t iterations = 0;
  bool converged = false;
};

// Largest k eigenvalues of `apply`.
RitzResult lanczos_top(const std::function<std::vector<double>(const std::vector<double>&)>& apply,
                       std::size_t n, std::size_t k, double tol, std::size_t max_iter,
                       std::mt19937_64& rng) {
  RitzResult out;
  max_iter = std::min(max_iter == 0 ? n : max_iter, n);
  k = std::min(k, n);
  std::normal_distribution<double> gauss;
  std::vector<std::vector<double>> V;
  std::vector<double> alpha;
  std::vector<double> beta;  // beta[j] couples j, j+1
  auto random_start = [&]() {
    std::vector<double> v(n);
    for (double& x : v) x = gauss(rng);
    return v;
  };
  auto orthogonalize = [&](std::vector<double>& w) {
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : V) {
        const double c = dot(q, w);
        for (std::size_t i = 0; i < n; ++i) w[i] -= c * q[i];
      }
    }
  };
  std::vector<double> v = random_start();
  {
    const double nv = norm2(v);
    for (double& x : v) x /= nv;
  }
  double anorm = 0.0;
  std::size_t next_check = std::min(max_iter, std::max<std::size_t>(k + 10, 20));
  for (std::size_t j = 0; j < max_iter; ++j) {
    V.push_back(v);
    std::vector<double> w = apply(v);
    const double a = dot(w, v);
    alpha.push_back(a);
    orthogonalize(w);
    double b = norm2(w);
    const bool last = j + 1 == max_iter;
    const double scale = std::max(anorm, std::abs(a));
    if (!last && b <= 1e-14 * std::max(scale, 1e-300)) {
      // Invariant subspace found: restart orthogonally, decoupled (beta = 0).
      b = 0.0;
      std::vector<double> r = random_start();
      orthogonalize(r);
      const double nr = norm2(r);
      if (nr == 0.0) {
        beta.push_back(0.0);
        out.iterations = j + 1;
        break;
      }
      for (std::size_t i = 0; i < n; ++i) v[i] = r[i] / nr;
    } else if (!last) {
      for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / b;
    }
    beta.push_back(b);
    out.iterations = j + 1;
    if (j + 1 < next_check && !last) continue;
    next_check = j + 1 + std::max<std::size_t>(10, (j + 1) / 8);
    std::vector<double> d = alpha;
    std::vector<double> e(beta.begin(), beta.end() - 1);
    std::vector<double> lr;
    tridiagonal_eigen(d, e, nullptr, &lr);
    const std::size_t m = d.size();
    for (double x : d) anorm = std::max(anorm, std::abs(x));
    const double bm = beta.back();
    const std::size_t kk = std::min(k, m);
    bool ok = kk == k;
    for (std::size_t i = 0; i < kk; ++i) {
      const double res = std::abs(bm * lr[m - 1 - i]);
      if (res > tol * std::max(anorm, 1e-300)) ok = false;
    }
    if (ok || last || m == n) {
      out.values.clear();
      out.residuals.clear();
      for (std::size_t i = 0; i < kk; ++i) {
        out.values.push_back(d[m - 1 - i]);
        out.residuals.push_back(std::abs(bm * lr[m - 1 - i]));
      }
      out.converged = ok || m == n;
      return out;
    }
  }
  // Exhausted by breakdown without a final check.
  std::vector<double> d = alpha;
  std::vector<double> e(beta.begin(), beta.end() - 1);
  std::vector<double> lr;
  tridiagonal_eigen(d, e, nullptr, &lr);
  const std::size_t m = d.size();
  for (std::size_t i = 0; i < std::min(k, m); ++i) {
    out.values.push_back(d[m - 1 - i]);
    out.residuals.push_back(0.0);
  }
  out.converged = true;
  return out;
}

}  // namespace

Spectrum lanczos_extreme(const RealMap& map, const LanczosOptions& opt) {
  if (!map.symmetric || map.rows != map.cols) {
    throw ContractError("lanczos_extreme: map must be symmetric [" + map.description + "]");
  }
  const std::size_t n = map.rows;
  if (opt.k < 1 || opt.k > n) throw ContractError("lanczos_extreme: need 1 <= k <= dim");
  std::mt19937_64 rng(opt.seed);
  auto plus = [&](const std::vector<double>& x) { return map(x); };
  auto minus = [&](const std::vector<double>& x) {
    std::vector<double> y = map(x);
    for (double& v : y) v = -v;
    return y;
  };
  Spectrum s;
  s.meta.dim = n;
  s.meta.seed = opt.seed;
  s.meta.tol = opt.tol;
  std::vector<double> top;
  std::vector<double> top_res;
  std::vector<double> bottom;
  std::vector<double> bottom_res;
  bool converged = true;
  if (opt.which != Which::smallest) {
    RitzResult r = lanczos_top(plus, n, opt.k, opt.tol, opt.max_iter, rng);
    top = r.values;
    top_res = r.residuals;
    s.meta.iterations += r.iterations;
    converged = converged && r.converged;
  }
  if (opt.which != Which::largest) {
    RitzResult r = lanczos_top(minus, n, opt.k, opt.tol, opt.max_iter, rng);
    bottom = r.values;  // descending values of -A
    bottom_res = r.residuals;
    s.meta.iterations += r.iterations;
    converged = converged && r.converged;
  }
  s.meta.converged = converged;
  for (std::size_t i = 0; i < top.size(); ++i) {
    if (top[i] > 0.0) {
      s.lambda_plus.push_back(top[i]);
      s.residuals.push_back(top_res[i]);
    }
  }
  if (opt.which == Which::largest) {
    // Negative values found among the k largest.
    for (auto i = top.size(); i-- > 0;) {
      if (top[i] < 0.0) s.lambda_minus.push_back(-top[i]);
    }
  }
  if (opt.which == Which::smallest) {
    for (auto i = bottom.size(); i-- > 0;) {
      if (-bottom[i] > 0.0) {
        s.lambda_plus.push_back(-bottom[i]);
        s.residuals.push_back(bottom_res[i]);
      }
    }
  }
  if (opt.which != Which::largest) {
    const double floor = s.lambda_plus.empty() ? 0.0 : 1e-12 * s.lambda_plus.front();
    for (std::size_t i = 0; i < bottom.size(); ++i) {
      if (bottom[i] > 0.0) {
        s.lambda_minus.push_back(bottom[i] < floor ? 0.0 : bottom[i]);
        s.residuals.push_back(bottom_res[i]);
      }
    }
  }
  return s;
}

Spectrum singular_values(const RealMap& map, std::size_t k, double tol, std::uint64_t seed) {
  const bool use_rows = map.rows <= map.cols;
  const std::size_t n = use_rows ? map.rows : map.cols;
  if (k < 1 || k > n) throw ContractError("singular_values: need 1 <= k <= min(rows, cols)");
  RealMap g;
  g.rows = g.cols = n;
  g.symmetric = true;
  g.description = "gram(" + map.description + ")";
  if (use_rows) {
    g.apply = [&map](const std::vector<double>& y) { return map(map.adjoint(y)); };
  } else {
    g.apply = [&map](const std::vector<double>& x) { return map.adjoint(map(x)); };
  }
  LanczosOptions opt;
  opt.k = k;
  opt.tol = tol;
  opt.seed = seed;
  Spectrum e = lanczos_extreme(g, opt);
  Spectrum s;
  s.meta = e.meta;
  for (double v : e.lambda_plus) s.singular.push_back(std::sqrt(v));
  while (s.singular.size() < k) s.singular.push_back(0.0);
  s.residuals = e.residuals;
  return s;
}

Spectrum singular_values(const ComplexMap& map, std::size_t k, double tol, std::uint64_t seed) {
  const std::size_t n = std::min(map.rows, map.cols);
  if (k < 1 || k > n) throw ContractError("singular_values: need 1 <= k <= min(rows, cols)");
  const RealMap r = realify(map);
  Spectrum e = singular_values(r, std::min(2 * k, 2 * n), tol, seed);
  Spectrum s;
  s.meta = e.meta;
  for (std::size_t i = 0; i < k; ++i) s.singular.push_back(e.singular[2 * i]);
  return s;
}

namespace {
std::string cell(const std::vector<double>& v, std::size_t i) {
  if (i >= v.size()) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v[i]);
  return buf;
}
}  // namespace

void write_spectrum_csv(std::ostream& os, const Spectrum& s) {
  os << "n,lambda_plus,lambda_minus,s_n\n";
  const std::size_t rows =
      std::max({s.lambda_plus.size(), s.lambda_minus.size(), s.singular.size()});
  for (std::size_t i = 0; i < rows; ++i) {
    os << (i + 1) << ',' << cell(s.lambda_plus, i) << ',' << cell(s.lambda_minus, i) << ','
       << cell(s.singular, i) << '\n';
  }
}

Spectrum read_spectrum_csv(std::istream& is) {
  Spectrum s;
  std::string line;
  if (!std::getline(is, line)) throw ContractError("spectrum CSV: empty input");
  if (line.rfind("n,lambda_plus,lambda_minus,s_n", 0) != 0) {
    throw ContractError("spectrum CSV: unexpected header '" + line + "'");
  }
  std::size_t expect = 1;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string c;
    while (std::getline(ss, c, ',')) cells.push_back(c);
    while (cells.size() < 4) cells.emplace_back();
    if (std::stoul(cells[0]) != expect++) throw ContractError("spectrum CSV: index gap");
    if (!cells[1].empty()) s.lambda_plus.push_back(std::stod(cells[1]));
    if (!cells[2].empty()) s.lambda_minus.push_back(std::stod(cells[2]));
    if (!cells[3].empty()) s.singular.push_back(std::stod(cells[3]));
  }
  return s;
}

nlohmann::json meta_json(const Spectrum& s) {
  return {{"dim", s.meta.dim},
          {"iterations", s.meta.iterations},
          {"seed", s.meta.seed},
          {"tol", s.meta.tol},
          {"converged", s.meta.converged}};
}

}  // namespace helson
