#include <doctest.h>

#include <cmath>
#include <numbers>

#include "helson/discretize.hpp"
#include "helson/eigen.hpp"
#include "helson/errors.hpp"
#include "helson/symbols.hpp"

using namespace helson;

namespace {

const double pi = std::numbers::pi;

double top(const NystromOperator& op) { return dense_eig_oracle(*op.matrix).lambda_plus.at(0); }

SymbolSpec box(double lo, double hi) {
  return custom_symbol([lo, hi](double l) { return l >= lo && l <= hi ? 1.0 : 0.0; }, "box", hi,
                       lo > 0.0 ? std::vector<double>{lo} : std::vector<double>{});
}

}  // namespace

TEST_CASE("make_grid small cases") {
  const Grid u = make_grid(0.0, 1.0, 2, Spacing::uniform);
  CHECK(u.nodes == std::vector<double>{0.0, 1.0});
  CHECK(u.weights == std::vector<double>{0.5, 0.5});

  const Grid g = make_grid(1.0, std::numbers::e, 2, Spacing::geometric);
  CHECK(g.nodes[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(g.nodes[1] == doctest::Approx(std::numbers::e).epsilon(1e-15));
  CHECK(g.step == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(g.weights[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(g.weights[1] == doctest::Approx(0.5 * std::numbers::e).epsilon(1e-15));

  const Grid w = make_grid(0.0, 3.0, 301, Spacing::uniform);
  double sum = 0.0;
  for (double x : w.weights) sum += x;
  CHECK(std::abs(sum - 3.0) <= 1e-12);
}

TEST_CASE("grid invariants") {
  for (Spacing s : {Spacing::uniform, Spacing::geometric, Spacing::gauss_legendre}) {
    const Grid g = make_grid(0.5, 7.0, 200, s);
    double sum = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      CHECK(g.weights[i] > 0.0);
      CHECK(g.nodes[i] >= 0.5);
      CHECK(g.nodes[i] <= 7.0);
      if (i > 0) CHECK(g.nodes[i] > g.nodes[i - 1]);
      sum += g.weights[i];
    }
    // Geometric weights integrate dx on [lo, hi] by the trapezoid rule in log x.
    CHECK(sum == doctest::Approx(6.5).epsilon(s == Spacing::geometric ? 1e-4 : 1e-12));
  }
}

TEST_CASE("grid errors") {
  CHECK_THROWS_AS(make_grid(1.0, 1.0, 10, Spacing::uniform), ContractError);
  CHECK_THROWS_AS(make_grid(0.0, 1.0, 1, Spacing::uniform), ContractError);
  CHECK_THROWS_AS(make_grid(0.0, 1.0, 10, Spacing::geometric), ContractError);
  CHECK_THROWS_AS(make_grid(-1.0, 1.0, 10, Spacing::geometric), ContractError);
}

TEST_CASE("grid json round trip") {
  const Grid g = make_grid(1e-3, 50.0, 64, Spacing::geometric);
  const nlohmann::json j = to_json(g);
  for (const char* k : {"lo", "hi", "n", "spacing"}) CHECK(j.contains(k));
  const Grid r = grid_from_json(j);
  REQUIRE(r.size() == g.size());
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(r.nodes[i] == g.nodes[i]);
}

TEST_CASE("rank-one exponential kernel") {
  const auto b = [](double x) { return std::exp(-x); };
  double prev = 0.0;
  for (std::size_t n : {200, 400, 800}) {
    const Spectrum s = dense_eig_oracle(*nystrom_hankel(b, make_grid(0.0, 40.0, n, Spacing::uniform), "exp").matrix);
    CHECK(s.lambda_plus.at(1) <= 1e-12 * s.lambda_plus[0]);
    const double err = std::abs(s.lambda_plus[0] - 0.5);
    if (prev > 0.0) CHECK(err < prev);
    prev = err;
  }
  CHECK(prev <= 1e-3);
}

TEST_CASE("zero kernels give zero spectra") {
  const Spectrum h = dense_eig_oracle(*nystrom_hankel([](double) { return 0.0; }, make_grid(0.0, 5.0, 50, Spacing::uniform), "0").matrix);
  CHECK(h.lambda_plus.empty());
  CHECK(h.lambda_minus.empty());
  const Spectrum m = dense_eig_oracle(*nystrom_helson([](double) { return 0.0; }, make_grid(1.0, 5.0, 50, Spacing::geometric), "0").matrix);
  CHECK(m.lambda_plus.empty());
  const SymbolSpec zero = custom_symbol([](double) { return 0.0; }, "zero", 1.0);
  for (WeightedKind k : {WeightedKind::zeta1, WeightedKind::carleman, WeightedKind::h_beta}) {
    const NystromOperator op = weighted_operator(k, zero, weight_grid(zero, 100));
    for (double v : op.matrix->data) CHECK(v == 0.0);
  }
}

TEST_CASE("Carleman singularity requires lo > 0") {
  CHECK_THROWS_AS(nystrom_hankel(make_symbol(SymbolKind::carleman), make_grid(0.0, 1.0, 20, Spacing::uniform)), ContractError);
}

TEST_CASE("rank-one Helson kernel 1/t on [1, T]") {
  const double T = 100.0;
  const auto a = [](double t) { return 1.0 / t; };
  const Spectrum s = dense_eig_oracle(*nystrom_helson(a, make_grid(1.0, T, 800, Spacing::geometric), "inv").matrix);
  CHECK(s.lambda_plus[0] == doctest::Approx(1.0 - 1.0 / T).epsilon(1e-5));
  CHECK((s.lambda_plus.size() < 2 || s.lambda_plus[1] <= 1e-12 * s.lambda_plus[0]));
}

TEST_CASE("helson_a versus hankel_b on matched grids") {
  const Grid xg = make_grid(1e-6, 200.0, 512, Spacing::geometric);
  const Grid tg = exp_image(xg);
  for (double alpha : {0.5, 1.0, 2.0}) {
    const NystromOperator h = nystrom_hankel(make_symbol(SymbolKind::hankel_b, alpha), xg);
    const NystromOperator m = nystrom_helson(make_symbol(SymbolKind::helson_a, alpha), tg);
    // Entrywise conjugation under the matched grids. Entries deep in the
    // cutoff's flat edge (below 1e-12 of the largest) are compared absolutely.
    double amax = 0.0;
    for (double x : h.matrix->data) amax = std::max(amax, std::abs(x));
    double worst = 0.0;
    for (std::size_t i = 0; i < h.matrix->data.size(); ++i) {
      const double x = h.matrix->data[i];
      worst = std::max(worst, std::abs(x - m.matrix->data[i]) / std::max(std::abs(x), 1e-12 * amax));
    }
    CHECK(worst <= 1e-12);
    const Spectrum sh = dense_eig_oracle(*h.matrix);
    const Spectrum sm = dense_eig_oracle(*m.matrix);
    for (std::size_t n = 0; n < 20; ++n)
      CHECK(std::abs(sh.lambda_plus[n] - sm.lambda_plus[n]) <= 1e-6 * sh.lambda_plus[n]);
  }
}

TEST_CASE("change of variable") {
  const Grid xg = make_grid(0.0, 7.0, 500, Spacing::uniform);
  const Grid tg = exp_image(xg);
  const std::vector<double> zero(500, 0.0);
  for (double v : change_of_variable(zero, xg, tg)) CHECK(v == 0.0);
  const std::vector<double> one(500, 1.0);
  CHECK(grid_norm(change_of_variable(one, xg, tg), tg) == doctest::Approx(std::sqrt(7.0)).epsilon(1e-12));
  CHECK(grid_norm(one, xg) == doctest::Approx(std::sqrt(7.0)).epsilon(1e-12));
  std::vector<double> f(500);
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = std::sin(3.0 * xg.nodes[i]) * std::exp(-xg.nodes[i]);
  CHECK(grid_norm(change_of_variable(f, xg, tg), tg) == doctest::Approx(grid_norm(f, xg)).epsilon(1e-12));
  const Grid other = exp_image(make_grid(0.0, 7.0, 400, Spacing::uniform));
  CHECK_THROWS_AS(change_of_variable(f, xg, other), ContractError);
}

TEST_CASE("factorization map: NN* against a0 with order >= 2") {
  const SymbolSpec w = box(0.0, 1.0);
  const std::size_t J = 64;
  auto max_err = [&](std::size_t n) {
    const DenseMatrix<double> N = factor_N_matrix(w, J, weight_grid(w, n));
    double worst = 0.0;
    for (std::size_t j = 1; j <= J; ++j)
      for (std::size_t k = j; k <= J; ++k) {
        double s = 0.0;
        for (std::size_t q = 0; q < N.cols; ++q) s += N(j - 1, q) * N(k - 1, q);
        const double t = double(j * k);
        const double exact = t == 1.0 ? 1.0 : std::pow(t, -0.5) * (1.0 - 1.0 / t) / std::log(t);
        worst = std::max(worst, std::abs(s - exact));
      }
    return worst;
  };
  const double e40 = max_err(40), e80 = max_err(80), e400 = max_err(400);
  MESSAGE("max error at 40/80/400 nodes: " << e40 << " " << e80 << " " << e400);
  CHECK(e400 <= 1e-8);
  CHECK((e80 <= e40 / 4 || e80 <= 1e-13));
}

TEST_CASE("factorization map: N*N is the truncated zeta sum") {
  const SymbolSpec w = make_symbol(SymbolKind::weight_w, 1.0);
  const Grid g = weight_grid(w, 400);
  const std::size_t J = 30;
  const DenseMatrix<double> N = factor_N_matrix(w, J, g);
  const std::vector<double> sw = weighted_sqrt(w, g);
  for (std::size_t p = 0; p < N.cols; p += 7)
    for (std::size_t q = 0; q < N.cols; q += 5) {
      double lhs = 0.0, zs = 0.0;
      for (std::size_t j = 0; j < J; ++j) lhs += N(j, p) * N(j, q);
      for (std::size_t j = 1; j <= J; ++j) zs += std::pow(double(j), -1.0 - g.nodes[p] - g.nodes[q]);
      CHECK(std::abs(lhs - sw[p] * zs * sw[q]) <= 1e-14 * (std::abs(lhs) + 1e-300));
    }
}

TEST_CASE("factorization map: nonzero singular values coincide") {
  const SymbolSpec w = make_symbol(SymbolKind::weight_w, 1.0);
  const Grid g = weight_grid(w, 400);
  const std::size_t J = 64;
  const DenseMatrix<double> N = factor_N_matrix(w, J, g);
  DenseMatrix<double> nn(J, J), nsn(N.cols, N.cols);
  for (std::size_t j = 0; j < J; ++j)
    for (std::size_t k = 0; k < J; ++k)
      for (std::size_t q = 0; q < N.cols; ++q) nn(j, k) += N(j, q) * N(k, q);
  for (std::size_t p = 0; p < N.cols; ++p)
    for (std::size_t q = 0; q < N.cols; ++q)
      for (std::size_t j = 0; j < J; ++j) nsn(p, q) += N(j, p) * N(j, q);
  const std::vector<double> a = dense_singular_values(nn);
  const std::vector<double> b = dense_singular_values(nsn);
  for (std::size_t i = 0; i < a.size() && a[i] >= 1e-6 * a[0]; ++i) CHECK(std::abs(a[i] - b[i]) <= 1e-8 * a[i]);
  const Spectrum s = dense_eig_oracle(nn);
  CHECK((s.lambda_minus.empty() || s.lambda_minus[0] <= 1e-10 * s.lambda_plus[0]));
}

TEST_CASE("factorization map: support must be covered") {
  const SymbolSpec w = make_symbol(SymbolKind::weight_w, 1.0);
  CHECK_THROWS_AS(factor_N_matrix(w, 8, make_grid(0.0, 0.3, 40, Spacing::uniform)), ContractError);
}

TEST_CASE("weighted zeta operator is non-negative") {
  const SymbolSpec w = make_symbol(SymbolKind::weight_w, 1.0);
  const Spectrum s = dense_eig_oracle(*weighted_operator(WeightedKind::zeta1, w, weight_grid(w, 400)).matrix);
  CHECK((s.lambda_minus.empty() || s.lambda_minus[0] <= 1e-10 * s.lambda_plus[0]));
}

TEST_CASE("weighted Carleman against the Helson side for a box weight") {
  // w = 1 on [c, 1]; the Laplace side is b0(x) = (e^{-cx} - e^{-x})/x.
  const double c = 1e-4;
  const SymbolSpec w = box(c, 1.0);
  std::vector<double> breaks{c};
  while (breaks.back() < 1.0) breaks.push_back(std::min(1.0, 2.0 * breaks.back()));
  const Spectrum lhs = dense_eig_oracle(*weighted_operator(WeightedKind::carleman, w, make_panel_grid(breaks, 20)).matrix);
  const auto b0 = [c](double x) { return x == 0.0 ? 1.0 - c : (std::exp(-c * x) - std::exp(-x)) / x; };
  const Spectrum rhs = dense_eig_oracle(*nystrom_hankel(b0, make_grid(1e-6, 60.0 / c, 1500, Spacing::geometric), "b0").matrix);
  for (std::size_t n = 0; n < 10; ++n) {
    CHECK(std::abs(lhs.lambda_plus.at(n) - rhs.lambda_plus.at(n)) <= 1e-6 * rhs.lambda_plus[n]);
  }
}

TEST_CASE("zeta minus Carleman has fast singular value decay") {
  const SymbolSpec w = make_symbol(SymbolKind::weight_w, 1.0);
  const std::vector<double> s = dense_singular_values(*weighted_operator(WeightedKind::zeta_minus_carleman, w, weight_grid(w, 600)).matrix);
  MESSAGE("s20/s5 = " << s.at(19) / s.at(4));
  CHECK(s.at(19) / s.at(4) <= 1e-3);
}

TEST_CASE("grid refinement stability") {
  const SymbolSpec b = make_symbol(SymbolKind::b0, 1.0);
  const Spectrum s1 = dense_eig_oracle(*nystrom_hankel(b, make_grid(1e-6, 200.0, 512, Spacing::geometric)).matrix);
  const Spectrum s2 = dense_eig_oracle(*nystrom_hankel(b, make_grid(1e-6, 200.0, 1024, Spacing::geometric)).matrix);
  std::size_t checked = 0;
  for (std::size_t n = 0; n < 20 && s2.lambda_plus[n] >= 1e-6 * s2.lambda_plus[0]; ++n, ++checked)
    CHECK(std::abs(s1.lambda_plus[n] - s2.lambda_plus[n]) < 0.01 * s2.lambda_plus[n]);
  CHECK(checked >= 4);
}

TEST_SUITE("divergence") {
  // Expected: top eigenvalue within 2% of pi on [1e-8, 1e8]. Observed 3.0526
  // (2.83%): the truncated Carleman operator has norm pi - O(pi^3 / log^2(hi/lo)),
  // which at this window is about 3%. The error shrinks as the window widens.
  TEST_CASE("Carleman top eigenvalue within 2% of pi on [1e-8, 1e8]") {
    const SymbolSpec c = make_symbol(SymbolKind::carleman);
    const double l = top(nystrom_hankel(c, make_grid(1e-8, 1e8, 2048, Spacing::geometric)));
    MESSAGE("lambda_1 = " << l);
    CHECK(std::abs(l - pi) <= 0.02 * pi);
  }
}
