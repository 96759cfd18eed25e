#include "helson/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "helson/errors.hpp"
#include "helson/schatten.hpp"
#include "helson/structured_ops.hpp"

namespace helson {

namespace fs = std::filesystem;

void RunConfig::validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ContractError("config: alpha must be > 0");
  if (sizes.empty()) throw ContractError("config: sizes is empty");
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] < 2) throw ContractError("config: sizes must be >= 2");
    if (sizes[i] > 4096) throw ContractError("config: Helson sizes are capped at 4096");
    if (i > 0 && sizes[i] <= sizes[i - 1]) throw ContractError("config: sizes must increase");
  }
  if (!(grid.lo > 0.0) || !(grid.hi > grid.lo)) throw ContractError("config: grid needs 0 < lo < hi");
  if (grid.hi > 350.0) throw ContractError("config: grid.hi must be <= 350 (t = e^x range)");
  if (grid.n < 16 || grid.n > 4096) throw ContractError("config: grid.n must be in [16, 4096]");
  if (!(fit_grid.log_hi > fit_grid.log_lo)) throw ContractError("config: fit_grid needs log_lo < log_hi");
  if (fit_grid.n < 160 || fit_grid.n > 4096) throw ContractError("config: fit_grid.n must be in [160, 4096]");
  if (solver.k == 0) throw ContractError("config: solver.k must be positive");
  if (!(solver.tol > 0.0)) throw ContractError("config: solver.tol must be positive");
  SymbolSpec s = make_symbol(SymbolKind::helson_a, alpha, cutoffs);
  s.validate();
}

RunConfig config_from_json(const nlohmann::json& j) {
  RunConfig c;
  c.alpha = j.value("alpha", c.alpha);
  c.cutoffs.t0 = j.value("t0", c.cutoffs.t0);
  c.cutoffs.chi_lo = j.value("chi_lo", c.cutoffs.chi_lo);
  c.cutoffs.chi_hi = j.value("chi_hi", c.cutoffs.chi_hi);
  c.cutoffs.beta = j.value("beta", c.cutoffs.beta);
  c.zero_weight = j.value("zero_weight", false);
  if (j.contains("sizes")) c.sizes = j.at("sizes").get<std::vector<std::size_t>>();
  if (j.contains("grid")) {
    const auto& g = j.at("grid");
    c.grid.lo = g.value("lo", c.grid.lo);
    c.grid.hi = g.value("hi", c.grid.hi);
    c.grid.n = g.value("n", c.grid.n);
    if (g.contains("spacing")) c.grid.spacing = spacing_from_string(g.at("spacing").get<std::string>());
  }
  if (j.contains("fit_grid")) {
    const auto& g = j.at("fit_grid");
    c.fit_grid.log_lo = g.value("log_lo", c.fit_grid.log_lo);
    c.fit_grid.log_hi = g.value("log_hi", c.fit_grid.log_hi);
    c.fit_grid.n = g.value("n", c.fit_grid.n);
  }
  if (j.contains("solver")) {
    const auto& s = j.at("solver");
    c.solver.k = s.value("k", c.solver.k);
    c.solver.tol = s.value("tol", c.solver.tol);
    c.solver.max_iter = s.value("max_iter", c.solver.max_iter);
    c.solver.seed = s.value("seed", c.solver.seed);
  }
  if (j.contains("outputs")) {
    const auto& o = j.at("outputs");
    c.out_dir = o.value("dir", c.out_dir);
    c.svg = o.value("svg", c.svg);
  }
  return c;
}

nlohmann::json to_json(const RunConfig& c) {
  return {{"alpha", c.alpha},
          {"t0", c.cutoffs.t0},
          {"chi_lo", c.cutoffs.chi_lo},
          {"chi_hi", c.cutoffs.chi_hi},
          {"beta", c.cutoffs.beta},
          {"zero_weight", c.zero_weight},
          {"sizes", c.sizes},
          {"grid",
           {{"lo", c.grid.lo},
            {"hi", c.grid.hi},
            {"n", c.grid.n},
            {"spacing", std::string(to_string(c.grid.spacing))}}},
          {"fit_grid",
           {{"log_lo", c.fit_grid.log_lo}, {"log_hi", c.fit_grid.log_hi}, {"n", c.fit_grid.n}}},
          {"solver",
           {{"k", c.solver.k},
            {"tol", c.solver.tol},
            {"max_iter", c.solver.max_iter},
            {"seed", c.solver.seed}}},
          {"outputs", {{"dir", c.out_dir}, {"svg", c.svg}}}};
}

nlohmann::json ChainReport::to_json() const {
  nlohmann::json j;
  j["chain_agreement"] = {chain_agreement[0], chain_agreement[1]};
  j["hb0_min_ratio"] = hb0_min_ratio;
  j["ma0_min_ratio"] = ma0_min_ratio;
  j["additivity_defect"] = additivity_defect;
  nlohmann::json dom = nlohmann::json::array();
  for (const auto& d : domination) {
    dom.push_back({{"holds", d.holds}, {"worst_excess", d.worst_excess}, {"n_checked", d.n_checked}});
  }
  j["domination"] = dom;
  nlohmann::json fits = nlohmann::json::array();
  for (const auto& f : helson_fits) fits.push_back(helson::to_json(f));
  j["helson_fits"] = fits;
  j["hankel_fit"] = hankel_fit_available ? helson::to_json(hankel_fit) : nlohmann::json();
  j["ok"] = ok;
  j["failures"] = failures;
  nlohmann::json st = nlohmann::json::array();
  for (const auto& s : stages) {
    st.push_back({{"stage", s.stage},
                  {"size", s.size},
                  {"lambda_max", s.spectrum.lambda_plus.empty() ? 0.0 : s.spectrum.lambda_plus[0]},
                  {"meta", meta_json(s.spectrum)}});
  }
  j["stages"] = st;
  return j;
}

namespace {

double min_ratio(const Spectrum& s) {
  const double top = s.lambda_plus.empty() ? 0.0 : s.lambda_plus[0];
  const double bottom = s.lambda_minus.empty() ? 0.0 : s.lambda_minus[0];
  if (top <= 0.0) return bottom > 0.0 ? -std::numeric_limits<double>::infinity() : 0.0;
  return -bottom / top;
}

double top_k_rel_diff(const Spectrum& a, const Spectrum& b, std::size_t k) {
  double worst = 0.0;
  const double scale = std::max(a.lambda_plus.empty() ? 0.0 : a.lambda_plus[0],
                                b.lambda_plus.empty() ? 0.0 : b.lambda_plus[0]);
  if (scale == 0.0) return 0.0;
  k = std::min({k, a.lambda_plus.size(), b.lambda_plus.size()});
  for (std::size_t i = 0; i < k; ++i) {
    const double d = std::abs(a.lambda_plus[i] - b.lambda_plus[i]);
    const double ref = std::max(std::abs(a.lambda_plus[i]), 1e-3 * scale);
    worst = std::max(worst, d / ref);
  }
  return worst;
}

Spectrum helson_spectrum(const DenseMatrix<double>& m, const SolverParams& sp) {
  if (m.rows <= 2048) return dense_eig_oracle(m);
  LanczosOptions opt;
  opt.k = sp.k;
  opt.which = Which::both_ends;
  opt.tol = sp.tol;
  opt.max_iter = sp.max_iter;
  opt.seed = sp.seed;
  return lanczos_extreme(dense_map(m, true, "helson"), opt);
}

class Artifacts {
 public:
  explicit Artifacts(const std::string& dir) : dir_(dir) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) throw std::runtime_error("stage outputs: cannot create " + dir + ": " + ec.message());
  }

  void spectrum(const StageResult& r) {
    const std::string base = r.stage + (r.size ? "_" + std::to_string(r.size) : "");
    write(base + ".csv", [&](std::ostream& os) { write_spectrum_csv(os, r.spectrum); });
    write(base + ".json",
          [&](std::ostream& os) { os << meta_json(r.spectrum).dump(2) << '\n'; });
  }

  void write(const std::string& name, const std::function<void(std::ostream&)>& body) {
    const fs::path final_path = fs::path(dir_) / name;
    const fs::path partial = fs::path(dir_) / (name + ".partial");
    {
      std::ofstream os(partial);
      if (!os) throw std::runtime_error("stage outputs: cannot write " + partial.string());
      body(os);
    }
    fs::rename(partial, final_path);
  }

 private:
  std::string dir_;
};

template <class F>
auto stage(const std::string& name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const std::exception& e) {
    throw std::runtime_error("stage " + name + ": " + e.what());
  }
}

Spectrum zero_spectrum(std::size_t n) {
  return spectrum_from_eigenvalues(std::vector<double>(n, 0.0));
}

}  // namespace

ChainReport run_chain(const RunConfig& config) {
  stage("config", [&] {
    config.validate();
    return 0;
  });
  ChainReport rep;
  Artifacts out(config.out_dir);
  out.write("config.json", [&](std::ostream& os) { os << to_json(config).dump(2) << '\n'; });

  const SymbolSpec a = make_symbol(SymbolKind::helson_a, config.alpha, config.cutoffs);
  const SymbolSpec b = make_symbol(SymbolKind::hankel_b, config.alpha, config.cutoffs);
  const SymbolKind a_kind[2] = {SymbolKind::a0, SymbolKind::a1};
  const SymbolKind b_kind[2] = {SymbolKind::b0, SymbolKind::b1};

  const Grid xg = stage("grid", [&] {
    return make_grid(config.grid.lo, config.grid.hi, config.grid.n, config.grid.spacing);
  });
  const Grid tg = stage("grid", [&] { return exp_image(xg); });

  auto record = [&](std::string name, std::size_t size, Spectrum s) {
    StageResult r{std::move(name), size, std::move(s)};
    out.spectrum(r);
    rep.stages.push_back(r);
    return rep.stages.back().spectrum;
  };
  const std::size_t k_cmp = std::min<std::size_t>(20, config.solver.k);

  // Integral rows: M(a_i) on the t-grid, H(b_i) on the matched x-grid.
  for (int i = 0; i < 2; ++i) {
    const std::string tag = std::to_string(i);
    Spectrum sm, sh;
    if (config.zero_weight && i == 0) {
      sm = record("integral_helson_a0", 0, zero_spectrum(xg.size()));
      sh = record("integral_hankel_b0", 0, zero_spectrum(xg.size()));
    } else {
      const SymbolKind ak = config.zero_weight ? SymbolKind::helson_a : a_kind[i];
      const SymbolKind bk = config.zero_weight ? SymbolKind::hankel_b : b_kind[i];
      sm = stage("integral_helson_a" + tag, [&] {
        const auto op = nystrom_helson(make_symbol(ak, config.alpha, config.cutoffs), tg);
        return dense_eig_oracle(*op.matrix);
      });
      record("integral_helson_a" + tag, 0, sm);
      sh = stage("integral_hankel_b" + tag, [&] {
        const auto op = nystrom_hankel(make_symbol(bk, config.alpha, config.cutoffs), xg);
        return dense_eig_oracle(*op.matrix);
      });
      record("integral_hankel_b" + tag, 0, sh);
    }
    rep.chain_agreement[i] = top_k_rel_diff(sm, sh, k_cmp);
    if (i == 0) rep.hb0_min_ratio = min_ratio(sh);
  }

  // Headline fit: H(b0) on the wide log-grid.
  if (!config.zero_weight) {
    const Spectrum sf = stage("fit_hankel_b0", [&] {
      const Grid fg = make_log_grid(config.fit_grid.log_lo, config.fit_grid.log_hi, config.fit_grid.n);
      return dense_eig_oracle(*nystrom_hankel(make_symbol(SymbolKind::b0, config.alpha, config.cutoffs), fg).matrix);
    });
    record("fit_hankel_b0", 0, sf);
    rep.hb0_min_ratio = std::min(rep.hb0_min_ratio, min_ratio(sf));
    const std::size_t n = sf.lambda_plus.size();
    if (n >= 160) {
      rep.hankel_fit = fit_power_tail(sf.lambda_plus, n / 20, n / 4);
      rep.hankel_fit_available = true;
    }
  }

  // Helson matrices M(a0), M(a1), M(r(a)) for each truncation size.
  for (std::size_t N : config.sizes) {
    const std::uint64_t n_max = std::uint64_t(N) * N;
    DenseMatrix<double> m0(N, N), m1, mfull;
    stage("helson_a0", [&] {
      if (!config.zero_weight) m0 = helson_dense(sequence_of(make_symbol(SymbolKind::a0, config.alpha, config.cutoffs), n_max), N);
      return 0;
    });
    stage("helson_a1", [&] {
      const SymbolKind k1 = config.zero_weight ? SymbolKind::helson_a : SymbolKind::a1;
      m1 = helson_dense(sequence_of(make_symbol(k1, config.alpha, config.cutoffs), n_max), N);
      return 0;
    });
    stage("helson_a", [&] {
      mfull = helson_dense(sequence_of(a, n_max), N);
      return 0;
    });
    const Spectrum s0 = record("helson_a0", N, stage("helson_a0", [&] { return helson_spectrum(m0, config.solver); }));
    const Spectrum s1 = record("helson_a1", N, stage("helson_a1", [&] { return helson_spectrum(m1, config.solver); }));
    const Spectrum sa = record("helson_a", N, stage("helson_a", [&] { return helson_spectrum(mfull, config.solver); }));
    rep.ma0_min_ratio.push_back(min_ratio(s0));

    stage("additivity", [&] {
      DenseMatrix<double> sum = m0;
      for (std::size_t q = 0; q < sum.data.size(); ++q) sum.data[q] += m1.data[q];
      const Spectrum ss = helson_spectrum(sum, config.solver);
      const double scale = std::max(1e-300, std::abs(sa.lambda_plus.empty() ? 0.0 : sa.lambda_plus[0]));
      double d = 0.0;
      const std::size_t np = std::min(ss.lambda_plus.size(), sa.lambda_plus.size());
      for (std::size_t q = 0; q < np; ++q) d = std::max(d, std::abs(ss.lambda_plus[q] - sa.lambda_plus[q]));
      const std::size_t nm = std::min(ss.lambda_minus.size(), sa.lambda_minus.size());
      for (std::size_t q = 0; q < nm; ++q) d = std::max(d, std::abs(ss.lambda_minus[q] - sa.lambda_minus[q]));
      rep.additivity_defect.push_back(d / scale);
      return 0;
    });

    rep.domination.push_back(stage("domination", [&] {
      return negative_part_domination(sa, s1, s0);
    }));
    if (sa.lambda_plus.size() >= 4 * 9 && N / 4 >= N / 20 + 8) {
      rep.helson_fits.push_back(fit_power_tail(sa.lambda_plus, std::max<std::size_t>(1, N / 20), N / 4));
    }
  }

  // Verdict.
  const double psd_tol = 1e-10;
  if (rep.hb0_min_ratio < -psd_tol) rep.failures.push_back("H(b0) not PSD");
  for (std::size_t q = 0; q < rep.ma0_min_ratio.size(); ++q) {
    if (rep.ma0_min_ratio[q] < -psd_tol) {
      rep.failures.push_back("M(a0) not PSD at N=" + std::to_string(config.sizes[q]));
    }
  }
  for (int i = 0; i < 2; ++i) {
    if (rep.chain_agreement[i] > 1e-6) {
      rep.failures.push_back("chain agreement row " + std::to_string(i) + " above 1e-6");
    }
  }
  for (std::size_t q = 0; q < rep.additivity_defect.size(); ++q) {
    if (rep.additivity_defect[q] > 1e-12) {
      rep.failures.push_back("additivity defect at N=" + std::to_string(config.sizes[q]));
    }
  }
  for (std::size_t q = 0; q < rep.domination.size(); ++q) {
    if (!rep.domination[q].holds) {
      rep.failures.push_back("negative-part domination at N=" + std::to_string(config.sizes[q]));
    }
  }
  rep.ok = rep.failures.empty();

  out.write("report.json", [&](std::ostream& os) { os << rep.to_json().dump(2) << '\n'; });
  std::vector<StageResult> plot;
  for (const auto& s : rep.stages) {
    if (s.stage == "fit_hankel_b0" || s.stage == "helson_a") plot.push_back(s);
  }
  const std::string svg = config.svg.empty() ? "spectrum.svg" : config.svg;
  auto emit = [&](std::ostream& os) {
    write_svg(os, plot, config.alpha, "lambda_n^+ (alpha = " + std::to_string(config.alpha) + ")");
  };
  if (fs::path(svg).has_parent_path()) {
    std::ofstream os(svg);
    if (!os) throw std::runtime_error("stage outputs: cannot write " + svg);
    emit(os);
  } else {
    out.write(svg, emit);
  }
  return rep;
}

namespace {

std::string xml_escape(const std::string& s) {
  std::string r;
  for (char ch : s) {
    switch (ch) {
      case '<': r += "&lt;"; break;
      case '>': r += "&gt;"; break;
      case '&': r += "&amp;"; break;
      case '"': r += "&quot;"; break;
      default: r += ch;
    }
  }
  return r;
}

}  // namespace

void write_svg(std::ostream& os, const std::vector<StageResult>& series, double alpha,
               const std::string& title) {
  const double W = 640, H = 480, ml = 70, mr = 20, mt = 40, mb = 50;
  double x_max = 1.0, y_lo = 1e300, y_hi = -1e300;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.spectrum.lambda_plus.size(); ++i) {
      const double v = s.spectrum.lambda_plus[i];
      if (!(v > 0.0)) continue;
      x_max = std::max(x_max, std::log10(double(i + 1)));
      y_lo = std::min(y_lo, std::log10(v));
      y_hi = std::max(y_hi, std::log10(v));
    }
  }
  if (y_lo > y_hi) {
    y_lo = -1.0;
    y_hi = 0.0;
  }
  y_lo = std::max(y_lo, y_hi - 16.0);
  if (y_hi - y_lo < 1.0) y_lo = y_hi - 1.0;
  auto px = [&](double lx) { return ml + (W - ml - mr) * lx / x_max; };
  auto py = [&](double ly) { return mt + (H - mt - mb) * (y_hi - ly) / (y_hi - y_lo); };
  char buf[256];
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << W
     << "\" height=\"" << H << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  std::snprintf(buf, sizeof buf,
                "<rect x=\"%g\" y=\"%g\" width=\"%g\" height=\"%g\" fill=\"none\" stroke=\"black\"/>\n",
                ml, mt, W - ml - mr, H - mt - mb);
  os << buf;
  os << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">" << xml_escape(title)
     << "</text>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"" << H - 10
     << "\" text-anchor=\"middle\" font-size=\"12\">log10 n</text>\n";
  os << "<text x=\"16\" y=\"" << H / 2 << "\" transform=\"rotate(-90 16 " << H / 2
     << ")\" text-anchor=\"middle\" font-size=\"12\">log10 lambda_n</text>\n";
  for (int t = 0; t <= int(x_max); ++t) {
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.2f\" y=\"%.2f\" text-anchor=\"middle\" font-size=\"10\">%d</text>\n",
                  px(t), H - mb + 14, t);
    os << buf;
  }
  for (int t = int(std::ceil(y_lo)); t <= int(std::floor(y_hi)); ++t) {
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.2f\" y=\"%.2f\" text-anchor=\"end\" font-size=\"10\">%d</text>\n",
                  ml - 6, py(t) + 3, t);
    os << buf;
  }
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
  std::size_t c = 0;
  for (const auto& s : series) {
    os << "<polyline fill=\"none\" stroke=\"" << colors[c % 5] << "\" stroke-width=\"1.2\" points=\"";
    for (std::size_t i = 0; i < s.spectrum.lambda_plus.size(); ++i) {
      const double v = s.spectrum.lambda_plus[i];
      if (!(v > 0.0) || std::log10(v) < y_lo) continue;
      std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(std::log10(double(i + 1))), py(std::log10(v)));
      os << buf;
    }
    os << "\"/>\n";
    std::snprintf(buf, sizeof buf, "<text x=\"%.2f\" y=\"%.2f\" font-size=\"10\" fill=\"%s\">%s%s</text>\n",
                  W - mr - 150, mt + 14.0 + 12.0 * c, colors[c % 5], xml_escape(s.stage).c_str(),
                  s.size ? (" N=" + std::to_string(s.size)).c_str() : "");
    os << buf;
    ++c;
  }
  // kappa(alpha) / n^alpha
  const double lk = std::log10(kappa(alpha));
  os << "<polyline fill=\"none\" stroke=\"black\" stroke-dasharray=\"6,4\" points=\"";
  for (int q = 0; q <= 64; ++q) {
    const double lx = x_max * q / 64.0;
    const double ly = lk - alpha * lx;
    if (ly < y_lo || ly > y_hi) continue;
    std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(lx), py(ly));
    os << buf;
  }
  os << "\"/>\n";
  std::snprintf(buf, sizeof buf,
                "<text x=\"%.2f\" y=\"%.2f\" font-size=\"10\">kappa(alpha)/n^alpha</text>\n",
                W - mr - 150, mt + 14.0 + 12.0 * c);
  os << buf << "</svg>\n";
}

double smooth_bump(double y) {
  if (std::abs(y) >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - y * y));
}

std::vector<RestrictionSymbol> band_limited_family(int N, std::size_t count, std::uint64_t seed) {
  if (N < 1) throw ContractError("band_limited_family: N must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  std::vector<RestrictionSymbol> fam;
  for (std::size_t q = 0; q < count; ++q) {
    struct Term {
      double c, mu, sigma, xi;
    };
    std::vector<Term> terms;
    for (int t = 0; t < 3; ++t) {
      Term term;
      term.sigma = 0.3 + 0.4 * U(rng);
      term.mu = term.sigma + (N - 2.0 * term.sigma) * U(rng);
      term.c = 2.0 * U(rng) - 1.0;
      term.xi = 2.0 * U(rng) - 1.0;
      terms.push_back(term);
    }
    RestrictionSymbol s;
    s.name = "family_" + std::to_string(q);
    s.N = N;
    s.b = [terms](double x) {
      std::complex<double> v = 0.0;
      for (const auto& t : terms) {
        v += t.c * smooth_bump((x - t.mu) / t.sigma) *
             std::polar(1.0, 2.0 * M_PI * t.xi * x);
      }
      return v;
    };
    fam.push_back(std::move(s));
  }
  return fam;
}

std::vector<double> integral_hankel_singular_values(
    const std::function<std::complex<double>(double)>& b, double N, std::size_t n) {
  const Grid g = make_grid(0.0, N, n, Spacing::gauss_legendre);
  DenseMatrix<std::complex<double>> m(g.size(), g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = i; j < g.size(); ++j) {
      m(i, j) = m(j, i) =
          std::sqrt(g.weights[i] * g.weights[j]) * b(g.nodes[i] + g.nodes[j]);
    }
  }
  return complex_singular_values(m);
}

std::vector<double> restricted_helson_singular_values(
    const std::function<std::complex<double>(double)>& b, int N) {
  const auto J = static_cast<std::size_t>(std::floor(std::exp(double(N))));
  if (J > 2048) throw ContractError("restricted_helson_singular_values: e^N too large");
  std::vector<std::complex<double>> a(J * J + 1, 0.0);
  for (std::size_t n = 2; n <= J * J; ++n) {
    const double L = std::log(double(n));
    if (L <= N) a[n] = b(L) / std::sqrt(double(n));
  }
  DenseMatrix<std::complex<double>> m(J, J);
  for (std::size_t j = 1; j <= J; ++j) {
    for (std::size_t k = j; k <= J; ++k) m(j - 1, k - 1) = m(k - 1, j - 1) = a[j * k];
  }
  return complex_singular_values(m);
}

RestrictionReport restriction_schatten_experiment(const std::vector<RestrictionSymbol>& family,
                                                  double p, std::size_t grid_n) {
  if (!(p > 0.0) || p > 1.0) throw ContractError("restriction experiment: p must lie in (0, 1]");
  RestrictionReport rep;
  rep.p = p;
  for (const auto& s : family) {
    RestrictionRow row;
    row.name = s.name;
    row.helson_norm = schatten_norm(restricted_helson_singular_values(s.b, s.N), p);
    row.integral_norm = schatten_norm(integral_hankel_singular_values(s.b, s.N, grid_n), p);
    row.integral_norm_fine = schatten_norm(integral_hankel_singular_values(s.b, s.N, 2 * grid_n), p);
    auto ratio = [](double num, double den) {
      if (den == 0.0) return num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
      return num / den;
    };
    row.ratio = ratio(row.helson_norm, row.integral_norm);
    row.ratio_fine = ratio(row.helson_norm, row.integral_norm_fine);
    const double scale = std::max(row.integral_norm, row.integral_norm_fine);
    row.resolved = scale == 0.0 || std::abs(row.integral_norm - row.integral_norm_fine) <= 0.1 * scale;
    rep.max_ratio = std::max(rep.max_ratio, row.ratio);
    rep.max_ratio_fine = std::max(rep.max_ratio_fine, row.ratio_fine);
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace helson
