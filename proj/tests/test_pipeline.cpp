#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "helson/errors.hpp"
#include "helson/pipeline.hpp"
#include "helson/report_io.hpp"
#include "helson/schatten.hpp"

using namespace helson;
namespace fs = std::filesystem;

namespace {

std::string scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("helson_test_" + name);
  fs::remove_all(p);
  return p.string();
}

RunConfig small_config(const std::string& dir) {
  RunConfig c;
  c.sizes = {128, 256};
  c.grid.n = 256;
  c.fit_grid.log_hi = 800.0;
  c.fit_grid.n = 400;
  c.out_dir = dir;
  return c;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::json golden(const std::string& name) {
  std::ifstream in(std::string(HELSON_GOLDEN_DIR) + "/" + name);
  REQUIRE(in.good());
  return nlohmann::json::parse(in);
}

}  // namespace

TEST_CASE("config validation and json round trip") {
  RunConfig c;
  CHECK_NOTHROW(c.validate());
  RunConfig bad = c;
  bad.sizes = {512, 256};
  CHECK_THROWS_AS(bad.validate(), ContractError);
  bad = c;
  bad.sizes = {8192};
  CHECK_THROWS_AS(bad.validate(), ContractError);
  bad = c;
  bad.alpha = 0.0;
  CHECK_THROWS_AS(bad.validate(), ContractError);
  bad = c;
  bad.grid.lo = 0.0;
  CHECK_THROWS_AS(bad.validate(), ContractError);

  c.alpha = 2.0;
  c.cutoffs.t0 = 20.0;
  c.sizes = {64, 128, 256};
  c.grid.n = 300;
  c.solver.seed = 5;
  c.out_dir = "x";
  c.svg = "y.svg";
  const RunConfig r = config_from_json(to_json(c));
  CHECK(r.alpha == 2.0);
  CHECK(r.cutoffs.t0 == 20.0);
  CHECK(r.sizes == c.sizes);
  CHECK(r.grid.n == 300);
  CHECK(r.solver.seed == 5);
  CHECK(r.out_dir == "x");
  CHECK(r.svg == "y.svg");
  CHECK(to_json(r) == to_json(c));
}

TEST_CASE("chain on a small instance") {
  const std::string dir = scratch_dir("chain");
  const ChainReport rep = run_chain(small_config(dir));
  for (const auto& f : rep.failures) MESSAGE(f);
  CHECK(rep.ok);
  CHECK(rep.hb0_min_ratio >= -1e-10);
  CHECK(rep.chain_agreement[0] <= 1e-6);
  CHECK(rep.chain_agreement[1] <= 1e-6);
  REQUIRE(rep.additivity_defect.size() == 2);
  for (double d : rep.additivity_defect) CHECK(d <= 1e-12);
  for (double m : rep.ma0_min_ratio) CHECK(m >= -1e-10);
  for (const auto& d : rep.domination) CHECK(d.holds);
  CHECK(rep.hankel_fit_available);
  CHECK(rep.hankel_fit.alpha_hat > 0.0);
  CHECK(rep.hankel_fit.kappa_hat > 0.0);
  CHECK(rep.helson_fits.size() == 2);

  for (const char* f : {"report.json", "config.json", "spectrum.svg", "integral_hankel_b0.csv",
                        "integral_helson_a1.csv", "fit_hankel_b0.csv", "helson_a_256.csv",
                        "helson_a0_128.json"}) {
    CHECK_MESSAGE(fs::exists(fs::path(dir) / f), f);
  }
  for (const auto& e : fs::directory_iterator(dir)) CHECK(e.path().extension() != ".partial");

  const nlohmann::json j = read_json_file((fs::path(dir) / "report.json").string());
  CHECK(j.at("ok").get<bool>());
  const std::string svg = slurp(fs::path(dir) / "spectrum.svg");
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);

  // Nystrom H(b0): positive and non-increasing.
  const Spectrum hb0 = read_spectrum_file((fs::path(dir) / "integral_hankel_b0.csv").string());
  for (std::size_t n = 1; n < hb0.lambda_plus.size(); ++n) CHECK(hb0.lambda_plus[n] <= hb0.lambda_plus[n - 1]);
  CHECK(hb0.lambda_plus.front() > 0.0);
}

TEST_CASE("chain outputs are deterministic") {
  const std::string d1 = scratch_dir("det1"), d2 = scratch_dir("det2");
  RunConfig c = small_config(d1);
  c.sizes = {128};
  c.fit_grid.n = 200;
  run_chain(c);
  c.out_dir = d2;
  run_chain(c);
  for (const auto& e : fs::directory_iterator(d1)) {
    if (e.path().extension() != ".csv") continue;
    CHECK_MESSAGE(slurp(e.path()) == slurp(fs::path(d2) / e.path().filename()), e.path().filename().string());
  }
}

TEST_CASE("zero weight degenerates to M(a1) = M(a)") {
  const std::string dir = scratch_dir("zero");
  RunConfig c = small_config(dir);
  c.zero_weight = true;
  c.sizes = {128};
  const ChainReport rep = run_chain(c);
  CHECK(rep.ok);
  for (const auto& s : rep.stages) {
    if (s.stage == "integral_helson_a0" || s.stage == "integral_hankel_b0" || s.stage == "helson_a0") {
      CHECK(s.spectrum.lambda_plus.empty());
      CHECK(s.spectrum.lambda_minus.empty());
    }
  }
  const Spectrum a1 = read_spectrum_file((fs::path(dir) / "helson_a1_128.csv").string());
  const Spectrum a = read_spectrum_file((fs::path(dir) / "helson_a_128.csv").string());
  CHECK(a1.lambda_plus == a.lambda_plus);
  CHECK(a1.lambda_minus == a.lambda_minus);
}

TEST_CASE("stage failures are tagged") {
  RunConfig c = small_config(scratch_dir("bad"));
  c.sizes = {64};
  c.grid.hi = 400.0;
  try {
    run_chain(c);
    FAIL("expected a failure");
  } catch (const std::exception& e) {
    CHECK(std::string(e.what()).rfind("stage config:", 0) == 0);
  }
}

TEST_CASE("svg markup") {
  StageResult s{"demo", 0, spectrum_from_eigenvalues({1.0, 0.5, 0.33, 0.25})};
  std::ostringstream os;
  write_svg(os, {s}, 1.0, "t < u");
  const std::string x = os.str();
  CHECK(x.find("<svg") != std::string::npos);
  CHECK(x.find("t &lt; u") != std::string::npos);
  CHECK(x.find("<polyline") != std::string::npos);
}

TEST_CASE("restriction experiment: zero symbol and rank-one symbol") {
  RestrictionSymbol zero;
  zero.N = 3;
  zero.name = "zero";
  zero.b = [](double) { return std::complex<double>(0.0); };
  const RestrictionReport z = restriction_schatten_experiment({zero}, 1.0, 80);
  CHECK(z.rows[0].helson_norm == 0.0);
  CHECK(z.rows[0].integral_norm == 0.0);

  RestrictionSymbol one;
  one.N = 3;
  one.name = "rank1";
  const double xi = 0.7;
  one.b = [xi](double x) { return smooth_bump((x - 1.5) / 1.5) * std::polar(1.0, 2 * M_PI * xi * x); };
  const RestrictionReport r = restriction_schatten_experiment({one}, 1.0, 160);
  CHECK(std::isfinite(r.rows[0].ratio));
  CHECK(r.rows[0].ratio == doctest::Approx(1.316763).epsilon(1e-5));
  CHECK(std::abs(r.rows[0].ratio_fine - r.rows[0].ratio) <= 0.1 * r.rows[0].ratio);
}

TEST_CASE("restriction experiment: golden family bound") {
  const nlohmann::json g = golden("restriction_p1.json");
  const auto family = band_limited_family(g["N"], g["count"], g["seed"]);
  REQUIRE(family.size() == 10);
  const RestrictionReport r = restriction_schatten_experiment(family, g["p"], g["grid_n"]);
  for (const auto& row : r.rows) {
    CHECK(std::isfinite(row.ratio));
    CHECK(row.resolved);
  }
  const double tol = g["reproduce_rel_tol"];
  CHECK(std::abs(r.max_ratio - g["max_ratio"].get<double>()) <= tol * r.max_ratio);
  CHECK(std::abs(r.max_ratio_fine - r.max_ratio) <= g["doubling_rel_tol"].get<double>() * r.max_ratio);
}

TEST_CASE("restricted Helson singular values") {
  // b = 1 on [0, N]: a(n) = n^{-1/2} for 2 <= n <= e^N, a(1) = 0.
  const auto s = restricted_helson_singular_values([](double) { return std::complex<double>(1.0); }, 2);
  CHECK(s.size() == 7);
  DenseMatrix<std::complex<double>> m(7, 7);
  for (std::size_t j = 1; j <= 7; ++j)
    for (std::size_t k = 1; k <= 7; ++k) {
      const double t = double(j * k);
      m(j - 1, k - 1) = t == 1.0 || t > std::exp(2.0) ? 0.0 : 1.0 / std::sqrt(t);
    }
  const auto ref = complex_singular_values(m);
  for (std::size_t i = 0; i < 7; ++i) CHECK(std::abs(s[i] - ref[i]) <= 1e-14);
  CHECK_THROWS_AS(restricted_helson_singular_values([](double) { return std::complex<double>(1.0); }, 9), ContractError);
}
