#include "helson/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <mutex>

#include "helson/errors.hpp"

namespace helson {
namespace {

// Planning in FFTW is not thread-safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwBuffer {
  explicit FftwBuffer(std::size_t bytes) : ptr(fftw_malloc(bytes)) {}
  ~FftwBuffer() { fftw_free(ptr); }
  void* ptr;
};

}  // namespace

struct FFT::Plans {
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
};

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

FFT::FFT(std::size_t n) : n_(n), plans_(std::make_unique<Plans>()) {
  if (n == 0) throw ContractError("FFT: length must be positive");
  const int ni = static_cast<int>(n);
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  FftwBuffer real(sizeof(double) * n);
  FftwBuffer half(sizeof(fftw_complex) * (n / 2 + 1));
  FftwBuffer a(sizeof(fftw_complex) * n);
  FftwBuffer b(sizeof(fftw_complex) * n);
  std::lock_guard<std::mutex> lock(planner_mutex());
  auto* r = static_cast<double*>(real.ptr);
  auto* h = static_cast<fftw_complex*>(half.ptr);
  auto* ca = static_cast<fftw_complex*>(a.ptr);
  auto* cb = static_cast<fftw_complex*>(b.ptr);
  plans_->r2c = fftw_plan_dft_r2c_1d(ni, r, h, flags);
  plans_->c2r = fftw_plan_dft_c2r_1d(ni, h, r, flags);
  plans_->fwd = fftw_plan_dft_1d(ni, ca, cb, FFTW_FORWARD, flags);
  plans_->bwd = fftw_plan_dft_1d(ni, ca, cb, FFTW_BACKWARD, flags);
  if (!plans_->r2c || !plans_->c2r || !plans_->fwd || !plans_->bwd) {
    throw ContractError("FFT: planning failed");
  }
}

FFT::~FFT() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(plans_->r2c);
  fftw_destroy_plan(plans_->c2r);
  fftw_destroy_plan(plans_->fwd);
  fftw_destroy_plan(plans_->bwd);
}

std::vector<cplx> FFT::forward_real(const std::vector<double>& in) const {
  if (in.size() != n_) throw ContractError("FFT: length mismatch");
  std::vector<double> src(in);
  std::vector<cplx> out(n_ / 2 + 1);
  fftw_execute_dft_r2c(plans_->r2c, src.data(),
                       reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

std::vector<double> FFT::backward_real(const std::vector<cplx>& in) const {
  if (in.size() != n_ / 2 + 1) throw ContractError("FFT: length mismatch");
  // c2r destroys its input.
  std::vector<cplx> src(in);
  std::vector<double> out(n_);
  fftw_execute_dft_c2r(plans_->c2r, reinterpret_cast<fftw_complex*>(src.data()),
                       out.data());
  return out;
}

std::vector<cplx> FFT::forward(const std::vector<cplx>& in) const {
  if (in.size() != n_) throw ContractError("FFT: length mismatch");
  std::vector<cplx> src(in);
  std::vector<cplx> out(n_);
  fftw_execute_dft(plans_->fwd, reinterpret_cast<fftw_complex*>(src.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

std::vector<cplx> FFT::backward(const std::vector<cplx>& in) const {
  if (in.size() != n_) throw ContractError("FFT: length mismatch");
  std::vector<cplx> src(in);
  std::vector<cplx> out(n_);
  fftw_execute_dft(plans_->bwd, reinterpret_cast<fftw_complex*>(src.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

}  // namespace helson
