#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include <json.hpp>

#include "helson/linear_map.hpp"

namespace helson {

struct SpectrumMeta {
  std::size_t dim = 0;
  std::size_t iterations = 0;
  std::uint64_t seed = 0;
  double tol = 0.0;
  bool converged = true;
};

/// lambda_plus: positive eigenvalues, non-increasing. lambda_minus: the
/// values -lambda for negative eigenvalues, non-increasing. singular:
/// non-increasing singular values. residuals follow lambda_plus, then
/// lambda_minus (or singular).
struct Spectrum {
  std::vector<double> lambda_plus;
  std::vector<double> lambda_minus;
  std::vector<double> singular;
  std::vector<double> residuals;
  SpectrumMeta meta;
};

enum class Which { largest, smallest, both_ends };

struct LanczosOptions {
  std::size_t k = 10;
  Which which = Which::largest;
  double tol = 1e-10;
  std::size_t max_iter = 0;  // 0: dimension
  std::uint64_t seed = 20240611;
};

/// Lanczos with full reorthogonalization. Residuals are |beta_m s_{m,i}|,
/// certified against tol * |A|_est. For largest/smallest the k extreme
/// eigenvalues are split by sign; both_ends runs separate sweeps on A and
/// -A. lambda_minus values below 1e-12 lambda_1^+ are reported as 0.
/// Throws ContractError for non-symmetric maps; unconverged runs set
/// meta.converged = false.
Spectrum lanczos_extreme(const RealMap& map, const LanczosOptions& opt);

/// Top-k singular values from the smaller of A^T A and A A^T.
Spectrum singular_values(const RealMap& map, std::size_t k, double tol = 1e-10,
                         std::uint64_t seed = 20240611);

/// Complex maps go through the real embedding; each value appears there
/// twice and is reported once.
Spectrum singular_values(const ComplexMap& map, std::size_t k, double tol = 1e-10,
                         std::uint64_t seed = 20240611);

/// Eigenvalues of a dense symmetric matrix, ascending (Householder
/// tridiagonalization + implicit QL).
std::vector<double> symmetric_eigenvalues(DenseMatrix<double> a);

/// Eigenvalues, and eigenvectors as columns of z, of the symmetric
/// tridiagonal matrix with diagonal d and off-diagonal e (e[i] couples
/// i, i+1). When z is null only `last_row` (if given) is accumulated: the
/// last components of the normalized eigenvectors. Sorted ascending.
void tridiagonal_eigen(std::vector<double>& d, std::vector<double> e, DenseMatrix<double>* z,
                       std::vector<double>* last_row);

/// Full spectrum of a symmetric map, dim <= 4096.
Spectrum dense_eig_oracle(const RealMap& map);
Spectrum dense_eig_oracle(const DenseMatrix<double>& m);

/// Singular values of a dense matrix, non-increasing: |eig| for exactly
/// symmetric input, the eigenvalues of [[0, A], [A^T, 0]] when rows + cols
/// <= 4096, the smaller Gram matrix otherwise.
std::vector<double> dense_singular_values(const DenseMatrix<double>& m);

/// Sort (value desc, index asc) and split eigenvalues by sign.
Spectrum spectrum_from_eigenvalues(const std::vector<double>& eig);

/// CSV with header n,lambda_plus,lambda_minus,s_n; empty cells where a
/// list is shorter.
void write_spectrum_csv(std::ostream& os, const Spectrum& s);
Spectrum read_spectrum_csv(std::istream& is);
nlohmann::json meta_json(const Spectrum& s);

}  // namespace helson
