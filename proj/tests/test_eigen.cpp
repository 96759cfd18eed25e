#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "helson/eigen.hpp"
#include "helson/errors.hpp"
#include "helson/structured_ops.hpp"

using namespace helson;

namespace {

DenseMatrix<double> random_symmetric(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  DenseMatrix<double> m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) m(i, j) = m(j, i) = g(rng);
  return m;
}

DenseMatrix<double> diag(const std::vector<double>& d) {
  DenseMatrix<double> m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

const double hilbert_hi = (4.0 + std::sqrt(13.0)) / 6.0;
const double hilbert_lo = (4.0 - std::sqrt(13.0)) / 6.0;

}  // namespace

TEST_CASE("lanczos on diag(3, 2, 1)") {
  LanczosOptions opt;
  opt.k = 2;
  const Spectrum s = lanczos_extreme(dense_map(diag({3.0, 2.0, 1.0}), true, "diag"), opt);
  REQUIRE(s.lambda_plus.size() == 2);
  CHECK(s.lambda_plus[0] == doctest::Approx(3.0).epsilon(1e-13));
  CHECK(s.lambda_plus[1] == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(s.meta.converged);
}

TEST_CASE("Hilbert 2x2") {
  const RealMap h = build_hankel({1.0, 0.5, 1.0 / 3.0});
  LanczosOptions opt;
  opt.k = 1;
  const Spectrum l = lanczos_extreme(h, opt);
  CHECK(l.lambda_plus[0] == doctest::Approx(hilbert_hi).epsilon(1e-14));
  const Spectrum d = dense_eig_oracle(h);
  CHECK(d.lambda_plus[0] == doctest::Approx(hilbert_hi).epsilon(1e-14));
  CHECK(d.lambda_plus[1] == doctest::Approx(hilbert_lo).epsilon(1e-13));
}

TEST_CASE("lanczos against the dense oracle, random 200x200") {
  const DenseMatrix<double> m = random_symmetric(200, 42);
  const Spectrum d = dense_eig_oracle(m);
  LanczosOptions opt;
  opt.k = 10;
  opt.which = Which::both_ends;
  const Spectrum l = lanczos_extreme(dense_map(m, true, "random"), opt);
  CHECK(l.meta.converged);
  for (std::size_t i = 0; i < 10; ++i) {
    CHECK(std::abs(l.lambda_plus[i] - d.lambda_plus[i]) <= 1e-8 * d.lambda_plus[i]);
    CHECK(std::abs(l.lambda_minus[i] - d.lambda_minus[i]) <= 1e-8 * d.lambda_minus[i]);
  }
  double anorm = std::max(d.lambda_plus[0], d.lambda_minus[0]);
  for (double r : l.residuals) CHECK(r <= opt.tol * anorm * 1.0001);
}

TEST_CASE("lanczos residuals are true residuals") {
  const DenseMatrix<double> m = random_symmetric(120, 9);
  LanczosOptions opt;
  opt.k = 5;
  const Spectrum l = lanczos_extreme(dense_map(m, true, "random"), opt);
  const Spectrum d = dense_eig_oracle(m);
  for (std::size_t i = 0; i < l.lambda_plus.size(); ++i)
    CHECK(std::abs(l.lambda_plus[i] - d.lambda_plus[i]) <= 1e-10 * d.lambda_plus[0]);
}

TEST_CASE("lanczos is deterministic for a seed") {
  const RealMap m = dense_map(random_symmetric(150, 3), true, "random");
  LanczosOptions opt;
  opt.k = 6;
  opt.which = Which::both_ends;
  opt.seed = 77;
  const Spectrum a = lanczos_extreme(m, opt);
  const Spectrum b = lanczos_extreme(m, opt);
  CHECK(a.lambda_plus == b.lambda_plus);
  CHECK(a.lambda_minus == b.lambda_minus);
}

TEST_CASE("lanczos contract errors and partial results") {
  DenseMatrix<double> ns(2, 2);
  ns(0, 1) = 1.0;
  LanczosOptions opt;
  opt.k = 1;
  CHECK_THROWS_AS(lanczos_extreme(dense_map(ns, false, "ns"), opt), ContractError);
  opt.k = 5;
  CHECK_THROWS_AS(lanczos_extreme(dense_map(diag({1, 2, 3}), true, "d"), opt), ContractError);

  opt.k = 5;
  opt.max_iter = 6;
  opt.tol = 1e-15;
  const Spectrum s = lanczos_extreme(dense_map(random_symmetric(300, 1), true, "r"), opt);
  CHECK_FALSE(s.meta.converged);
}

TEST_CASE("nearly PSD operators report tiny negatives as 0") {
  const DenseMatrix<double> m = diag({5.0, 1.0, -1e-14, -1.0e-20});
  LanczosOptions opt;
  opt.k = 1;
  opt.which = Which::both_ends;
  const Spectrum s = lanczos_extreme(dense_map(m, true, "d"), opt);
  REQUIRE(!s.lambda_minus.empty());
  CHECK(s.lambda_minus[0] == 0.0);
}

TEST_CASE("dense oracle basics") {
  DenseMatrix<double> id(5, 5);
  for (std::size_t i = 0; i < 5; ++i) id(i, i) = 1.0;
  const Spectrum s = dense_eig_oracle(id);
  REQUIRE(s.lambda_plus.size() == 5);
  for (double v : s.lambda_plus) CHECK(v == doctest::Approx(1.0).epsilon(1e-15));

  const Spectrum d = dense_eig_oracle(diag({-1.0, 2.0}));
  CHECK(d.lambda_plus == std::vector<double>{2.0});
  CHECK(d.lambda_minus == std::vector<double>{1.0});
  CHECK(d.singular == std::vector<double>{2.0, 1.0});
}

TEST_CASE("dense oracle accuracy and size limit") {
  const DenseMatrix<double> m = random_symmetric(300, 5);
  const std::vector<double> eig = symmetric_eigenvalues(m);
  double trace = 0.0, sum = 0.0, fro = 0.0, sq = 0.0;
  for (std::size_t i = 0; i < 300; ++i) trace += m(i, i);
  for (double x : m.data) fro += x * x;
  for (double v : eig) {
    sum += v;
    sq += v * v;
  }
  CHECK(std::abs(trace - sum) <= 1e-10 * std::sqrt(fro));
  CHECK(std::abs(fro - sq) <= 1e-10 * fro);
  for (std::size_t i = 1; i < eig.size(); ++i) CHECK(eig[i - 1] <= eig[i]);

  RealMap big;
  big.rows = big.cols = 5000;
  big.symmetric = true;
  big.apply = [](const std::vector<double>& x) { return x; };
  CHECK_THROWS_AS(dense_eig_oracle(big), ContractError);
}

TEST_CASE("sign split consistency") {
  DenseMatrix<double> m = random_symmetric(80, 11);
  DenseMatrix<double> neg = m;
  for (double& x : neg.data) x = -x;
  const Spectrum a = dense_eig_oracle(m);
  const Spectrum b = dense_eig_oracle(neg);
  CHECK(a.lambda_minus == b.lambda_plus);
  CHECK(a.lambda_plus == b.lambda_minus);
}

TEST_CASE("singular values") {
  const Spectrum r = singular_values(rank_one_dirichlet(4, 0.0), 2);
  CHECK(r.singular[0] == doctest::Approx(25.0 / 12.0).epsilon(1e-13));
  CHECK(r.singular[1] <= 1e-7 * r.singular[0]);

  RealMap zero;
  zero.rows = 30;
  zero.cols = 20;
  zero.apply = [](const std::vector<double>&) { return std::vector<double>(30, 0.0); };
  zero.apply_adjoint = [](const std::vector<double>&) { return std::vector<double>(20, 0.0); };
  const Spectrum z = singular_values(zero, 3);
  for (double v : z.singular) CHECK(v == 0.0);

  std::mt19937_64 rng(8);
  std::normal_distribution<double> g;
  DenseMatrix<double> a(100, 60);
  for (double& x : a.data) x = g(rng);
  const std::vector<double> d = dense_singular_values(a);
  REQUIRE(d.size() == 60);
  const Spectrum l = singular_values(dense_map(a, false, "rect"), 8);
  for (std::size_t i = 0; i < 8; ++i) CHECK(std::abs(l.singular[i] - d[i]) <= 1e-8 * d[i]);
  for (double v : d) CHECK(v >= 0.0);
}

TEST_CASE("dense singular values resolve tiny values") {
  DenseMatrix<double> a(3, 2);
  a(0, 0) = 1.0;
  a(1, 1) = 1e-12;
  const std::vector<double> s = dense_singular_values(a);
  CHECK(s[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(s[1] == doctest::Approx(1e-12).epsilon(1e-10));
}

TEST_CASE("spectrum csv round trip") {
  const Spectrum s = dense_eig_oracle(diag({3.0, -2.0, 1.0, 0.25}));
  std::stringstream ss;
  write_spectrum_csv(ss, s);
  CHECK(ss.str().rfind("n,lambda_plus,lambda_minus,s_n", 0) == 0);
  const Spectrum r = read_spectrum_csv(ss);
  CHECK(r.lambda_plus == s.lambda_plus);
  CHECK(r.lambda_minus == s.lambda_minus);
  CHECK(r.singular == s.singular);
  const nlohmann::json j = meta_json(s);
  CHECK(j.contains("dim"));
  CHECK(j.contains("seed"));
}

TEST_CASE("tridiagonal eigenvalues with noise-level couplings") {
  std::vector<double> d(400), e(399);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (double& x : d) x = u(rng);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = i > 100 && i < 380 ? 1e-18 * u(rng) : u(rng);
  std::vector<double> dd = d;
  tridiagonal_eigen(dd, e, nullptr, nullptr);
  double sum = 0.0, ref = 0.0;
  for (double x : dd) sum += x;
  for (double x : d) ref += x;
  CHECK(std::abs(sum - ref) <= 1e-12);
  for (std::size_t i = 1; i < dd.size(); ++i) CHECK(dd[i - 1] <= dd[i]);
}
