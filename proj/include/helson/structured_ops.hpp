#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "helson/linear_map.hpp"
#include "helson/symbols.hpp"

namespace helson {

/// H(b) restricted to indices 0..N-1: entry(j,k) = b_values[j+k].
struct HankelTruncation {
  std::vector<double> b_values;
  std::size_t n = 0;

  double entry(std::size_t j, std::size_t k) const { return b_values[j + k]; }
};

/// Requires b.size() == 2N-1 (odd, >= 1).
HankelTruncation make_hankel(std::vector<double> b);

/// y_j = sum_k b(j+k) u_k by direct summation.
std::vector<double> hankel_matvec_dense(const HankelTruncation& h, const std::vector<double>& u);

/// Same product through a cyclic convolution of length next_pow2(2N).
std::vector<double> hankel_matvec_fft(const HankelTruncation& h, const std::vector<double>& u);

DenseMatrix<double> hankel_dense(const HankelTruncation& h);

/// Symmetric matrix-free map backed by the FFT product (precomputed
/// transform of b).
RealMap build_hankel(std::vector<double> b);

/// a(n) for n >= 1.
using SequenceFn = std::function<double(std::uint64_t)>;

/// M(a) restricted to 1..N: entry(j,k) = a(jk).
struct HelsonTruncation {
  SequenceFn a;
  std::size_t n = 0;

  double entry(std::size_t j, std::size_t k) const { return a(std::uint64_t(j) * k); }
};

/// Symmetric matrix-free map; rows are streamed, a(n) for n <= N cached.
/// Evaluation errors are rethrown with the offending index.
RealMap build_helson(SequenceFn a, std::size_t n);

DenseMatrix<double> helson_dense(const SequenceFn& a, std::size_t n);

/// Sequence generators.
///   helson_a and the other closed forms: r(a), i.e. value 0 at n = 1.
///   a0: the Gram sequence a0(n) = int n^{-1/2-l} w(l) dl for every n >= 1.
///   a1: r(a)(n) - a0(n), so M(r(a)) = M(a0) + M(a1) entrywise.
/// a0 and a1 are tabulated (piecewise Chebyshev in log n) up to n_max.
SequenceFn sequence_of(const SymbolSpec& spec, std::uint64_t n_max);

SequenceFn sequence_from_values(std::vector<double> values);

/// v v^T with v_j = j^{-1/2 + 2 pi i xi}, j = 1..N.
ComplexMap rank_one_dirichlet(std::size_t n, double xi);

}  // namespace helson
