#include "helson/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "helson/asymptotics.hpp"
#include "helson/discretize.hpp"
#include "helson/eigen.hpp"
#include "helson/errors.hpp"
#include "helson/pipeline.hpp"
#include "helson/report_io.hpp"
#include "helson/schatten.hpp"
#include "helson/structured_ops.hpp"

namespace helson {

namespace {

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

void check(SuiteResult& r, bool ok, const std::string& what) {
  r.lines.push_back((ok ? "PASS " : "FAIL ") + what);
  r.pass = r.pass && ok;
}

double top_eigenvalue(const RealMap& m, std::uint64_t seed) {
  LanczosOptions opt;
  opt.k = 1;
  opt.seed = seed;
  return lanczos_extreme(m, opt).lambda_plus.at(0);
}

SuiteResult suite_carleman(std::uint64_t seed) {
  SuiteResult r;
  const SymbolSpec c = make_symbol(SymbolKind::carleman);
  const double l8 = top_eigenvalue(nystrom_hankel(c, make_grid(1e-8, 1e8, 4096, Spacing::geometric)).map, seed);
  const double l10 = top_eigenvalue(nystrom_hankel(c, make_grid(1e-10, 1e10, 4096, Spacing::geometric)).map, seed);
  const double e8 = std::abs(l8 - std::numbers::pi) / std::numbers::pi;
  const double e10 = std::abs(l10 - std::numbers::pi) / std::numbers::pi;
  check(r, e8 <= 0.02, fmt("carleman [1e-8,1e8] n=4096: lambda_1=%.6f rel.err %.4f (<= 0.02)", l8, e8));
  check(r, e10 < e8, fmt("carleman [1e-10,1e10] n=4096: lambda_1=%.6f rel.err %.4f (< previous)", l10, e10));
  return r;
}

SuiteResult suite_chain(std::uint64_t) {
  SuiteResult r;
  const Grid xg = make_grid(1e-6, 200.0, 1024, Spacing::geometric);
  const Grid tg = exp_image(xg);
  for (double alpha : {0.5, 1.0, 2.0}) {
    const Spectrum sh = dense_eig_oracle(*nystrom_hankel(make_symbol(SymbolKind::hankel_b, alpha), xg).matrix);
    const Spectrum sm = dense_eig_oracle(*nystrom_helson(make_symbol(SymbolKind::helson_a, alpha), tg).matrix);
    double worst = 0.0;
    for (std::size_t i = 0; i < 20; ++i) {
      worst = std::max(worst, std::abs(sh.lambda_plus.at(i) - sm.lambda_plus.at(i)) / sh.lambda_plus.at(i));
    }
    check(r, worst <= 1e-6, fmt("chain alpha=%.1f: top-20 max rel.diff M(a) vs H(b) %.3g (<= 1e-6)", alpha, worst));
  }
  const Spectrum s0 = dense_eig_oracle(*nystrom_hankel(make_symbol(SymbolKind::b0, 1.0), xg).matrix);
  const double neg = s0.lambda_minus.empty() ? 0.0 : s0.lambda_minus[0];
  check(r, neg <= 1e-10 * s0.lambda_plus.at(0),
        fmt("H(b0) alpha=1 PSD: lambda_min/lambda_max = %.3g (>= -1e-10)", -neg / s0.lambda_plus.at(0)));
  return r;
}

SuiteResult suite_factorization(std::uint64_t) {
  SuiteResult r;
  const SymbolSpec w = make_symbol(SymbolKind::weight_w, 1.0);
  const Grid g = weight_grid(w, 2000);
  const std::size_t J = 64;
  const DenseMatrix<double> N = factor_N_matrix(w, J, g);
  DenseMatrix<double> nn(J, J);
  double worst = 0.0;
  for (std::size_t j = 0; j < J; ++j) {
    for (std::size_t k = 0; k < J; ++k) {
      double s = 0.0;
      for (std::size_t q = 0; q < N.cols; ++q) s += N(j, q) * N(k, q);
      nn(j, k) = s;
      worst = std::max(worst, std::abs(s - a0_quadrature(w, double((j + 1) * (k + 1))).value));
    }
  }
  check(r, worst <= 1e-8, fmt("max |(NN*)_jk - a0(jk)|, j,k<=64, %.0f nodes: %.3g (<= 1e-8)", double(g.size()), worst));
  DenseMatrix<double> nsn(N.cols, N.cols);
  for (std::size_t p = 0; p < N.cols; ++p) {
    for (std::size_t q = p; q < N.cols; ++q) {
      double s = 0.0;
      for (std::size_t j = 0; j < J; ++j) s += N(j, p) * N(j, q);
      nsn(p, q) = nsn(q, p) = s;
    }
  }
  const auto a = dense_singular_values(nn);
  const auto b = dense_singular_values(nsn);
  double rel = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < a.size() && a[i] >= 1e-6 * a[0]; ++i, ++count) {
    rel = std::max(rel, std::abs(a[i] - b[i]) / a[i]);
  }
  check(r, rel <= 1e-8, fmt("nonzero singular values of NN* and N*N (%.0f values): max rel.diff %.3g (<= 1e-8)", double(count), rel));
  return r;
}

SuiteResult suite_s0diff(std::uint64_t) {
  SuiteResult r;
  const SymbolSpec w = make_symbol(SymbolKind::weight_w, 1.0);
  const Grid g = weight_grid(w, 1024);
  const auto s = dense_singular_values(*weighted_operator(WeightedKind::zeta_minus_carleman, w, g).matrix);
  const double ratio = s.at(19) / s.at(4);
  check(r, ratio <= 1e-3, fmt("zeta-minus-carleman difference, %.0f nodes: s20/s5 = %.3g (<= 1e-3)", double(g.size()), ratio));
  return r;
}

SuiteResult suite_decay(std::uint64_t) {
  SuiteResult r;
  const double alpha = 1.0;
  const SymbolSpec b1 = make_symbol(SymbolKind::b1, alpha);
  const auto k = kernel_fn(b1, 1e-13, 2e12);
  const DecayReport rep = verify_kernel_decay(k, make_decay_spec(alpha + 1.0));
  for (const auto& row : rep.rows) {
    check(r, row.pass, fmt("b1 decay ell=%.0f: sup ratio at 0 %.3g, at infinity %.3g", row.ell,
                           row.sup_ratio_end0, row.sup_ratio_end_inf));
  }
  return r;
}

SuiteResult suite_sampling(std::uint64_t seed) {
  SuiteResult r;
  double worst = 0.0, worst_spec = 0.0;
  for (std::uint64_t i = 0; i < 20; ++i) {
    const BandLimited v = random_band_limited(16.0, 8, seed + i);
    const SamplingRecord rec = sampling_check(v, 2.0);
    worst = std::max(worst, std::abs(rec.ratio - 1.0));
    worst_spec = std::max(worst_spec, std::abs(rec.lhs - rec.spectrum_norm) / rec.spectrum_norm);
  }
  check(r, worst <= 1e-8, fmt("p=2 sampling, 20 symbols: max |lhs/(N |f|_2^2) - 1| = %.3g (<= 1e-8)", worst));
  check(r, worst_spec <= 1e-8, fmt("p=2 sampling vs N int |v|^2: max rel.diff %.3g (<= 1e-8)", worst_spec));
  return r;
}

void write_out(const std::string& path, std::ostream& out,
               const std::function<void(std::ostream&)>& body) {
  if (path.empty() || path == "-") {
    body(out);
  } else {
    write_file_atomic(path, body);
  }
}

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace

std::uint64_t default_seed() {
  if (const char* s = std::getenv("HELSON_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(s, &end, 10);
    if (end && *end == '\0' && end != s) return v;
    throw UsageError(std::string("HELSON_SEED is not an unsigned integer: ") + s);
  }
  return LanczosOptions{}.seed;
}

SuiteResult run_suite(const std::string& name, std::uint64_t seed) {
  if (name == "carleman") return suite_carleman(seed);
  if (name == "chain") return suite_chain(seed);
  if (name == "factorization") return suite_factorization(seed);
  if (name == "s0diff") return suite_s0diff(seed);
  if (name == "decay") return suite_decay(seed);
  if (name == "sampling") return suite_sampling(seed);
  throw ContractError("unknown suite '" + name + "'");
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Helson and Hankel operator spectra", "helson_cli"};
  app.require_subcommand(1);

  double alpha = 1.0;
  auto* kappa_cmd = app.add_subcommand("kappa", "asymptotic coefficient kappa(alpha)");
  kappa_cmd->add_option("--alpha", alpha, "exponent alpha > 0")->required();

  std::string op = "helson", symbol, out_path, spacing = "geometric";
  std::size_t size = 256, topk = 20;
  double lo = 1e-6, hi = 200.0;
  auto* spec_cmd = app.add_subcommand("spectrum", "extreme eigenvalues of one operator");
  spec_cmd->add_option("--operator", op, "hankel|helson|integral-hankel|integral-helson")
      ->check(CLI::IsMember({"hankel", "helson", "integral-hankel", "integral-helson"}));
  spec_cmd->add_option("--alpha", alpha, "exponent alpha");
  spec_cmd->add_option("--symbol", symbol, "symbol kind (default helson_a / hankel_b)");
  spec_cmd->add_option("--size", size, "matrix size or node count");
  spec_cmd->add_option("--lo", lo, "integral operators: x-domain lower end");
  spec_cmd->add_option("--hi", hi, "integral operators: x-domain upper end");
  spec_cmd->add_option("--spacing", spacing, "uniform|geometric|gauss_legendre");
  spec_cmd->add_option("--topk", topk, "eigenvalues per end");
  spec_cmd->add_option("--out", out_path, "output CSV (default stdout)");

  std::string input, window = "";
  auto* fit_cmd = app.add_subcommand("fit", "power-law fit of a spectrum tail");
  fit_cmd->add_option("--input", input, "spectrum CSV")->required();
  fit_cmd->add_option("--window", window, "n0:n1 (1-based, inclusive)")->required();

  double p = 1.0, q = std::numeric_limits<double>::quiet_NaN();
  auto* sch_cmd = app.add_subcommand("schatten", "Schatten or Schatten-Lorentz norm");
  sch_cmd->add_option("--input", input, "spectrum CSV")->required();
  sch_cmd->add_option("--p", p, "exponent p > 0")->required();
  sch_cmd->add_option("--q", q, "Lorentz exponent q (inf allowed)");

  std::string suite;
  auto* ver_cmd = app.add_subcommand("verify", "run a verification suite");
  ver_cmd->add_option("--suite", suite, "suite name")
      ->required()
      ->check(CLI::IsMember({"chain", "factorization", "carleman", "s0diff", "decay", "sampling"}));

  std::string config, svg, out_dir;
  long long seed_flag = -1;
  auto* chain_cmd = app.add_subcommand("chain", "run the three-row chain from a JSON config");
  chain_cmd->add_option("--config", config, "RunConfig JSON")->required();
  chain_cmd->add_option("--out-dir", out_dir, "override outputs.dir");
  chain_cmd->add_option("--seed", seed_flag, "override solver.seed");
  auto* report_cmd = app.add_subcommand("report", "chain run with an SVG figure");
  report_cmd->add_option("--config", config, "RunConfig JSON")->required();
  report_cmd->add_option("--svg", svg, "SVG output path")->required();
  report_cmd->add_option("--out-dir", out_dir, "override outputs.dir");
  report_cmd->add_option("--seed", seed_flag, "override solver.seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  }

  try {
    const std::uint64_t seed = default_seed();
    if (*kappa_cmd) {
      if (!(alpha > 0.0)) throw UsageError("--alpha must be > 0");
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.14g", kappa(alpha));  // kappa is good to ~1e-15
      out << buf << '\n';
      return 0;
    }
    if (*spec_cmd) {
      if (!(alpha > 0.0)) throw UsageError("--alpha must be > 0");
      if (size < 2) throw UsageError("--size must be >= 2");
      Spectrum s;
      LanczosOptions opt;
      opt.k = topk;
      opt.which = Which::both_ends;
      opt.seed = seed;
      const bool hankel_like = op == "hankel" || op == "integral-hankel";
      const SymbolKind kind = symbol.empty()
                                  ? (hankel_like ? SymbolKind::hankel_b : SymbolKind::helson_a)
                                  : symbol_kind_from_string(symbol);
      const SymbolSpec spec = make_symbol(kind, alpha);
      if (op == "hankel") {
        std::vector<double> b(2 * size - 1);
        for (std::size_t n = 0; n < b.size(); ++n) b[n] = eval_symbol(spec, double(n + 1));
        s = lanczos_extreme(build_hankel(std::move(b)), opt);
      } else if (op == "helson") {
        const RealMap m = build_helson(sequence_of(spec, std::uint64_t(size) * size), size);
        s = size <= 1024 ? dense_eig_oracle(m) : lanczos_extreme(m, opt);
      } else {
        const Grid xg = make_grid(lo, hi, size, spacing_from_string(spacing));
        const NystromOperator nop =
            op == "integral-hankel" ? nystrom_hankel(spec, xg) : nystrom_helson(spec, exp_image(xg));
        s = size <= 2048 ? dense_eig_oracle(*nop.matrix) : lanczos_extreme(nop.map, opt);
      }
      auto trim = [&](std::vector<double>& v) {
        if (v.size() > topk) v.resize(topk);
      };
      trim(s.lambda_plus);
      trim(s.lambda_minus);
      trim(s.singular);
      write_out(out_path, out, [&](std::ostream& os) { write_spectrum_csv(os, s); });
      return 0;
    }
    if (*fit_cmd) {
      std::size_t n0 = 0, n1 = 0;
      parse_window(window, &n0, &n1);
      const FitResult f = fit_power_tail(primary_sequence(read_spectrum_file(input)), n0, n1);
      out << to_json(f).dump(2) << '\n';
      return 0;
    }
    if (*sch_cmd) {
      const SchattenReport rep = schatten_report(primary_sequence(read_spectrum_file(input)), p, q);
      out << to_json(rep).dump(2) << '\n';
      return 0;
    }
    if (*ver_cmd) {
      const SuiteResult r = run_suite(suite, seed);
      for (const auto& l : r.lines) out << l << '\n';
      out << (r.pass ? "PASS" : "FAIL") << " suite " << suite << '\n';
      return r.pass ? 0 : 1;
    }
    if (*chain_cmd || *report_cmd) {
      nlohmann::json j = read_json_file(config);
      RunConfig c;
      c.solver.seed = seed;
      const RunConfig parsed = config_from_json(j);
      c = parsed;
      if (!(j.contains("solver") && j["solver"].contains("seed"))) c.solver.seed = seed;
      if (!out_dir.empty()) c.out_dir = out_dir;
      if (seed_flag >= 0) c.solver.seed = static_cast<std::uint64_t>(seed_flag);
      if (*report_cmd) c.svg = svg;
      c.validate();
      const ChainReport rep = run_chain(c);
      out << rep.to_json().dump(2) << '\n';
      for (const auto& f : rep.failures) err << "FAIL " << f << '\n';
      return rep.ok ? 0 : 1;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const ContractError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<std::string> copy = args;
  std::vector<char*> argv;
  for (auto& a : copy) argv.push_back(a.data());
  argv.push_back(nullptr);
  return run_cli(static_cast<int>(copy.size()), argv.data(), out, err);
}

}  // namespace helson
