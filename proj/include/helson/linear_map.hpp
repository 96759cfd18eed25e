#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace helson {

/// Finite-dimensional operator given by its action. `apply` maps a vector
/// of length cols to one of length rows; `apply_adjoint` the other way. For
/// symmetric maps the adjoint defaults to `apply`.
template <class T>
struct LinearMap {
  using Vec = std::vector<T>;
  std::size_t rows = 0;
  std::size_t cols = 0;
  bool symmetric = false;
  std::function<Vec(const Vec&)> apply;
  std::function<Vec(const Vec&)> apply_adjoint;
  std::string description;

  Vec operator()(const Vec& x) const;
  Vec adjoint(const Vec& y) const;
};

using RealMap = LinearMap<double>;
using ComplexMap = LinearMap<std::complex<double>>;

/// Row-major dense matrix.
template <class T>
struct DenseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<T> data;

  DenseMatrix() = default;
  DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, T{}) {}
  T& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  std::vector<T> multiply(const std::vector<T>& x) const;
  std::vector<T> multiply_adjoint(const std::vector<T>& y) const;
};

/// Assemble a map column by column. Throws ContractError above `max_dim`.
template <class T>
DenseMatrix<T> to_dense(const LinearMap<T>& map, std::size_t max_dim = 8192);

/// Wrap a dense matrix; the map owns a copy.
template <class T>
LinearMap<T> dense_map(DenseMatrix<T> m, bool symmetric, std::string description);

/// Composition A * B.
template <class T>
LinearMap<T> compose(const LinearMap<T>& a, const LinearMap<T>& b, std::string description);

/// A* as a map.
template <class T>
LinearMap<T> adjoint_map(const LinearMap<T>& a);

/// Real embedding [[Re, -Im], [Im, Re]] of a complex map; each singular value
/// of the complex map appears twice.
RealMap realify(const ComplexMap& map);

/// max over random probes of |A(au + bv) - aAu - bAv| / (|a||Au| + |b||Av|).
double linearity_defect(const RealMap& map, std::uint64_t seed, int probes = 4);

/// max over random probes of |<Au, v> - <u, Av>| / (|Au||v| + |u||Av|).
double symmetry_defect(const RealMap& map, std::uint64_t seed, int probes = 4);

/// Row-major CSV, one row per line, "%.17g".
void write_csv(std::ostream& os, const DenseMatrix<double>& m);
DenseMatrix<double> read_csv_matrix(std::istream& is);

nlohmann::json map_metadata(const RealMap& map);
nlohmann::json map_metadata(const ComplexMap& map);

double norm2(const std::vector<double>& x);
double dot(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace helson
