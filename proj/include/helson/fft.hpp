#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <vector>

namespace helson {

using cplx = std::complex<double>;

/// Unnormalized discrete Fourier transforms of a fixed length, backed by
/// FFTW. Plans are created once; execution is re-entrant.
class FFT {
 public:
  explicit FFT(std::size_t n);
  ~FFT();
  FFT(const FFT&) = delete;
  FFT& operator=(const FFT&) = delete;

  std::size_t size() const { return n_; }

  /// out_k = sum_j in_j e^{-2 pi i jk/n}; out has n/2 + 1 entries.
  std::vector<cplx> forward_real(const std::vector<double>& in) const;
  /// Inverse of forward_real without the 1/n factor.
  std::vector<double> backward_real(const std::vector<cplx>& in) const;

  /// Full complex transforms; sign -1 (forward) or +1 (backward), no scaling.
  std::vector<cplx> forward(const std::vector<cplx>& in) const;
  std::vector<cplx> backward(const std::vector<cplx>& in) const;

 private:
  struct Plans;
  std::size_t n_;
  std::unique_ptr<Plans> plans_;
};

/// Smallest power of two >= n.
std::size_t next_pow2(std::size_t n);

}  // namespace helson
