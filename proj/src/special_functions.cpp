#include "helson/special_functions.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "helson/errors.hpp"

namespace helson {
namespace {

constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
constexpr double kLanczosG = 7.0;

// B_2, B_4, ..., B_24.
constexpr std::array<double, 12> kBernoulli = {
    1.0 / 6.0,          -1.0 / 30.0,         1.0 / 42.0,
    -1.0 / 30.0,        5.0 / 66.0,          -691.0 / 2730.0,
    7.0 / 6.0,          -3617.0 / 510.0,     43867.0 / 798.0,
    -174611.0 / 330.0,  854513.0 / 138.0,    -236364091.0 / 2730.0};

constexpr int kZetaTerms = 16;

// Euler-Maclaurin correction sum_{k} B_2k/(2k)! (s)_{2k-1} J^{-s-2k+1}
// together with J^{-s}/2.
double em_tail(double s, double J) {
  const double js = std::pow(J, -s);
  double factor = s / (2.0 * J);
  double sum = 0.5 * js;
  for (std::size_t k = 1; k <= kBernoulli.size(); ++k) {
    if (k > 1) {
      const double kk = static_cast<double>(k);
      factor *= (s + 2.0 * kk - 3.0) * (s + 2.0 * kk - 2.0) /
                ((2.0 * kk - 1.0) * (2.0 * kk) * J * J);
    }
    sum += kBernoulli[k - 1] * factor * js;
  }
  return sum;
}

void require_positive(double x, const char* who) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError(std::string(who) + ": argument must be finite and > 0");
  }
}

}  // namespace

double smoothstep(double s) {
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) return 1.0;
  const double f0 = std::exp(-1.0 / s);
  const double f1 = std::exp(-1.0 / (1.0 - s));
  return f0 / (f0 + f1);
}

double log_gamma(double z) {
  require_positive(z, "log_gamma");
  if (z < 0.5) {
    return std::log(std::numbers::pi / std::abs(std::sin(std::numbers::pi * z))) -
           log_gamma(1.0 - z);
  }
  const double zm = z - 1.0;
  double a = kLanczos[0];
  const double t = zm + kLanczosG + 0.5;
  for (std::size_t i = 1; i < kLanczos.size(); ++i) {
    a += kLanczos[i] / (zm + static_cast<double>(i));
  }
  return 0.5 * std::log(2.0 * std::numbers::pi) + (zm + 0.5) * std::log(t) - t +
         std::log(a);
}

double gamma_fn(double z) {
  if (!std::isfinite(z)) throw DomainError("gamma_fn: non-finite argument");
  if (z <= 0.0 && z == std::floor(z)) {
    throw DomainError("gamma_fn: pole at non-positive integer");
  }
  if (z < 0.5) {
    return std::numbers::pi / (std::sin(std::numbers::pi * z) * gamma_fn(1.0 - z));
  }
  return std::exp(log_gamma(z));
}

double beta_fn(double a, double b) {
  require_positive(a, "beta_fn");
  require_positive(b, "beta_fn");
  return std::exp(log_gamma(a) + log_gamma(b) - log_gamma(a + b));
}

double zeta1_minus_one(double x) {
  require_positive(x, "zeta1_minus_one");
  const double s = 1.0 + x;
  constexpr double J = kZetaTerms;
  double sum = 0.0;
  for (int j = kZetaTerms - 1; j >= 2; --j) sum += std::pow(j, -s);
  return sum + std::pow(J, -x) / x + em_tail(s, J);
}

double zeta1(double x) {
  require_positive(x, "zeta1");
  return 1.0 + zeta1_minus_one(x);
}

double zeta1_regular(double x) {
  require_positive(x, "zeta1_regular");
  const double s = 1.0 + x;
  constexpr double J = kZetaTerms;
  double sum = 0.0;
  for (int j = kZetaTerms - 1; j >= 1; --j) sum += std::pow(j, -s);
  // J^{-x}/x - 1/x without cancellation.
  return sum + std::expm1(-x * std::log(J)) / x + em_tail(s, J);
}

}  // namespace helson
