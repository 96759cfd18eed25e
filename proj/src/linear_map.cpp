#include "helson/linear_map.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

#include "helson/errors.hpp"

namespace helson {

template <class T>
std::vector<T> LinearMap<T>::operator()(const Vec& x) const {
  if (x.size() != cols) {
    throw ContractError("matvec: expected length " + std::to_string(cols) + ", got " +
                        std::to_string(x.size()) + " [" + description + "]");
  }
  return apply(x);
}

template <class T>
std::vector<T> LinearMap<T>::adjoint(const Vec& y) const {
  if (y.size() != rows) {
    throw ContractError("adjoint matvec: expected length " + std::to_string(rows) +
                        " [" + description + "]");
  }
  if (apply_adjoint) return apply_adjoint(y);
  if (symmetric) return apply(y);
  throw ContractError("adjoint not available [" + description + "]");
}

namespace {
template <class T>
T conj_of(const T& v) {
  if constexpr (std::is_same_v<T, double>) {
    return v;
  } else {
    return std::conj(v);
  }
}
}  // namespace

template <class T>
std::vector<T> DenseMatrix<T>::multiply(const std::vector<T>& x) const {
  std::vector<T> y(rows, T{});
  for (std::size_t i = 0; i < rows; ++i) {
    T s{};
    const T* row = &data[i * cols];
    for (std::size_t j = 0; j < cols; ++j) s += row[j] * x[j];
    y[i] = s;
  }
  return y;
}

template <class T>
std::vector<T> DenseMatrix<T>::multiply_adjoint(const std::vector<T>& y) const {
  std::vector<T> x(cols, T{});
  for (std::size_t i = 0; i < rows; ++i) {
    const T* row = &data[i * cols];
    for (std::size_t j = 0; j < cols; ++j) x[j] += conj_of(row[j]) * y[i];
  }
  return x;
}

template <class T>
DenseMatrix<T> to_dense(const LinearMap<T>& map, std::size_t max_dim) {
  if (map.rows > max_dim || map.cols > max_dim) {
    throw ContractError("to_dense: dimension above limit [" + map.description + "]");
  }
  DenseMatrix<T> m(map.rows, map.cols);
  std::vector<T> e(map.cols, T{});
  for (std::size_t j = 0; j < map.cols; ++j) {
    e[j] = T{1};
    const std::vector<T> col = map(e);
    e[j] = T{};
    for (std::size_t i = 0; i < map.rows; ++i) m(i, j) = col[i];
  }
  return m;
}

template <class T>
LinearMap<T> dense_map(DenseMatrix<T> m, bool symmetric, std::string description) {
  auto shared = std::make_shared<const DenseMatrix<T>>(std::move(m));
  LinearMap<T> map;
  map.rows = shared->rows;
  map.cols = shared->cols;
  map.symmetric = symmetric;
  map.description = std::move(description);
  map.apply = [shared](const std::vector<T>& x) { return shared->multiply(x); };
  map.apply_adjoint = [shared](const std::vector<T>& y) {
    return shared->multiply_adjoint(y);
  };
  return map;
}

template <class T>
LinearMap<T> compose(const LinearMap<T>& a, const LinearMap<T>& b, std::string description) {
  if (a.cols != b.rows) throw ContractError("compose: inner dimensions differ");
  LinearMap<T> m;
  m.rows = a.rows;
  m.cols = b.cols;
  m.symmetric = false;
  m.description = std::move(description);
  m.apply = [a, b](const std::vector<T>& x) { return a(b(x)); };
  m.apply_adjoint = [a, b](const std::vector<T>& y) { return b.adjoint(a.adjoint(y)); };
  return m;
}

template <class T>
LinearMap<T> adjoint_map(const LinearMap<T>& a) {
  LinearMap<T> m;
  m.rows = a.cols;
  m.cols = a.rows;
  m.symmetric = a.symmetric;
  m.description = "adjoint(" + a.description + ")";
  m.apply = [a](const std::vector<T>& x) { return a.adjoint(x); };
  m.apply_adjoint = [a](const std::vector<T>& y) { return a(y); };
  return m;
}

template struct LinearMap<double>;
template struct LinearMap<std::complex<double>>;
template struct DenseMatrix<double>;
template struct DenseMatrix<std::complex<double>>;
template DenseMatrix<double> to_dense(const LinearMap<double>&, std::size_t);
template DenseMatrix<std::complex<double>> to_dense(const LinearMap<std::complex<double>>&,
                                                    std::size_t);
template LinearMap<double> dense_map(DenseMatrix<double>, bool, std::string);
template LinearMap<std::complex<double>> dense_map(DenseMatrix<std::complex<double>>, bool,
                                                   std::string);
template LinearMap<double> compose(const LinearMap<double>&, const LinearMap<double>&,
                                   std::string);
template LinearMap<double> adjoint_map(const LinearMap<double>&);

RealMap realify(const ComplexMap& map) {
  RealMap r;
  r.rows = 2 * map.rows;
  r.cols = 2 * map.cols;
  r.symmetric = false;
  r.description = "realify(" + map.description + ")";
  auto split = [](const std::vector<std::complex<double>>& z) {
    std::vector<double> out(2 * z.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
      out[i] = z[i].real();
      out[z.size() + i] = z[i].imag();
    }
    return out;
  };
  auto join = [](const std::vector<double>& x) {
    const std::size_t n = x.size() / 2;
    std::vector<std::complex<double>> z(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = {x[i], x[n + i]};
    return z;
  };
  r.apply = [map, split, join](const std::vector<double>& x) { return split(map(join(x))); };
  r.apply_adjoint = [map, split, join](const std::vector<double>& y) {
    return split(map.adjoint(join(y)));
  };
  return r;
}

double norm2(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

double dot(const std::vector<double>& x, const std::vector<double>& y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

namespace {
std::vector<double> random_vector(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<double> v(n);
  for (double& x : v) x = g(rng);
  return v;
}
}  // namespace

double linearity_defect(const RealMap& map, std::uint64_t seed, int probes) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  double worst = 0.0;
  for (int p = 0; p < probes; ++p) {
    const auto u = random_vector(map.cols, rng);
    const auto v = random_vector(map.cols, rng);
    const double a = g(rng);
    const double b = g(rng);
    std::vector<double> w(map.cols);
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = a * u[i] + b * v[i];
    const auto au = map(u);
    const auto av = map(v);
    const auto aw = map(w);
    std::vector<double> d(aw.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = aw[i] - a * au[i] - b * av[i];
    const double scale = std::abs(a) * norm2(au) + std::abs(b) * norm2(av);
    if (scale > 0.0) worst = std::max(worst, norm2(d) / scale);
  }
  return worst;
}

double symmetry_defect(const RealMap& map, std::uint64_t seed, int probes) {
  if (map.rows != map.cols) throw ContractError("symmetry_defect: map not square");
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int p = 0; p < probes; ++p) {
    const auto u = random_vector(map.cols, rng);
    const auto v = random_vector(map.cols, rng);
    const auto au = map(u);
    const auto av = map(v);
    const double scale = norm2(au) * norm2(v) + norm2(u) * norm2(av);
    if (scale > 0.0) worst = std::max(worst, std::abs(dot(au, v) - dot(u, av)) / scale);
  }
  return worst;
}

void write_csv(std::ostream& os, const DenseMatrix<double>& m) {
  char buf[32];
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", m(i, j));
      if (j) os << ',';
      os << buf;
    }
    os << '\n';
  }
}

DenseMatrix<double> read_csv_matrix(std::istream& is) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ContractError("read_csv_matrix: ragged rows");
    }
    rows.push_back(std::move(row));
  }
  DenseMatrix<double> m(rows.size(), rows.empty() ? 0 : rows.front().size());
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

nlohmann::json map_metadata(const RealMap& map) {
  return {{"rows", map.rows},
          {"cols", map.cols},
          {"symmetric", map.symmetric},
          {"description", map.description}};
}

nlohmann::json map_metadata(const ComplexMap& map) {
  return {{"rows", map.rows},
          {"cols", map.cols},
          {"symmetric", map.symmetric},
          {"description", map.description}};
}

}  // namespace helson
