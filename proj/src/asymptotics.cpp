#include "helson/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

#include "helson/errors.hpp"
#include "helson/quadrature.hpp"
#include "helson/special_functions.hpp"

namespace helson {

double kappa(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("kappa: alpha must be > 0");
  const double a = 0.5 / alpha;
  const double log_beta = log_gamma(a) + log_gamma(0.5) - log_gamma(a + 0.5);
  return std::exp(-alpha * std::log(2.0) + (1.0 - 2.0 * alpha) * std::log(std::numbers::pi) +
                  alpha * log_beta);
}

FitResult fit_power_tail(const std::vector<double>& lambda, std::size_t n0, std::size_t n1) {
  if (n0 < 1 || n1 > lambda.size() || n1 < n0 + 8) {
    throw ContractError("fit_power_tail: need 1 <= n0, n1 <= length, n1 - n0 >= 8");
  }
  const std::size_t cnt = n1 - n0 + 1;
  std::vector<double> x(cnt), y(cnt);
  for (std::size_t i = 0; i < cnt; ++i) {
    const double v = lambda[n0 - 1 + i];
    if (!(v > 0.0)) throw DomainError("fit_power_tail: non-positive value in window");
    x[i] = std::log(static_cast<double>(n0 + i));
    y[i] = std::log(v);
  }
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < cnt; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= cnt;
  my /= cnt;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < cnt; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  const double slope = sxy / sxx;
  const double icpt = my - slope * mx;
  FitResult f;
  f.alpha_hat = -slope;
  f.kappa_hat = std::exp(icpt);
  f.n0 = n0;
  f.n1 = n1;
  double ss = 0.0;
  for (std::size_t i = 0; i < cnt; ++i) {
    const double r = y[i] - (icpt + slope * x[i]);
    ss += r * r;
  }
  f.residual_rms = std::sqrt(ss / cnt);
  const std::size_t third = std::max<std::size_t>(cnt / 3, 1);
  double lx0 = 0, ly0 = 0, lx1 = 0, ly1 = 0;
  for (std::size_t i = 0; i < third; ++i) {
    lx0 += x[i];
    ly0 += y[i] + f.alpha_hat * x[i];
    lx1 += x[cnt - 1 - i];
    ly1 += y[cnt - 1 - i] + f.alpha_hat * x[cnt - 1 - i];
  }
  f.drift = (ly1 - ly0) / (lx1 - lx0);
  return f;
}

nlohmann::json to_json(const FitResult& f) {
  return {{"alpha_hat", f.alpha_hat}, {"kappa_hat", f.kappa_hat},
          {"n0", f.n0},               {"n1", f.n1},
          {"residual_rms", f.residual_rms}, {"drift", f.drift}};
}

namespace {

// x^{-1-ell} int |u - S|^{-alpha} e^{(ell+1) u - e^u} du over u < S + log c,
// after l = mu / x, mu = e^u.
double laplace_I_order(int ell, double alpha, double c, double x, int order) {
  const double S = std::log(x);
  const double top = std::min(S + std::log(c), 5.0);
  const double lo = std::min(top, 0.0) - 46.0;
  std::vector<double> breaks = panel_breaks(lo, std::min(top, -4.0), 2.0);
  if (top > -4.0) {
    const std::vector<double> fine = panel_breaks(-4.0, top, 0.5);
    breaks.insert(breaks.end(), fine.begin() + 1, fine.end());
  }
  const GaussRule& rule = gauss_legendre(order);
  const double e1 = static_cast<double>(ell + 1);
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    sum += integrate_panel(
        [&](double u) { return std::pow(S - u, -alpha) * std::exp(e1 * u - std::exp(u)); },
        breaks[i], breaks[i + 1], rule);
  }
  return sum * std::exp(-e1 * S);
}

}  // namespace

LaplaceIResult laplace_I(int ell, double alpha, double c, double x) {
  if (ell < 0) throw ContractError("laplace_I: ell must be >= 0");
  if (!(alpha > 0.0)) throw ContractError("laplace_I: alpha must be > 0");
  if (!(c > 0.0 && c < 1.0)) throw ContractError("laplace_I: need 0 < c < 1");
  if (!(x > std::numbers::e)) throw DomainError("laplace_I: need x > e");
  LaplaceIResult r;
  r.value = laplace_I_order(ell, alpha, c, x, 32);
  r.error_estimate = std::abs(r.value - laplace_I_order(ell, alpha, c, x, 20));
  r.converged = r.error_estimate <= 1e-10 * std::abs(r.value);
  return r;
}

int decay_order(double gamma) {
  if (!(gamma > 0.0)) throw ContractError("decay_order: gamma must be > 0");
  return gamma >= 0.5 ? static_cast<int>(std::floor(gamma)) + 1 : 0;
}

DecaySpec make_decay_spec(double gamma) {
  DecaySpec s;
  s.gamma = gamma;
  s.m = decay_order(gamma);
  for (int i = 0; i < 40; ++i) s.x_samples.push_back(std::pow(10.0, -12.0 + 11.0 * i / 39.0));
  for (int i = 0; i < 40; ++i) s.x_samples.push_back(std::pow(10.0, 1.0 + 11.0 * i / 39.0));
  return s;
}

double richardson_derivative(const std::function<double(double)>& f, double x, int ell,
                             double h, double* noise) {
  if (ell < 0 || ell > 4) throw ContractError("richardson_derivative: 0 <= ell <= 4");
  if (ell == 0) {
    if (noise) *noise = 0.0;
    return f(x);
  }
  // Central stencils of order h^2.
  auto stencil = [&](double hh, double* absum) {
    double v = 0.0;
    double a = 0.0;
    auto acc = [&](double coef, double off) {
      const double fv = f(x + off * hh);
      v += coef * fv;
      a += std::abs(coef * fv);
    };
    switch (ell) {
      case 1:
        acc(0.5, 1);
        acc(-0.5, -1);
        break;
      case 2:
        acc(1, 1);
        acc(-2, 0);
        acc(1, -1);
        break;
      case 3:
        acc(0.5, 2);
        acc(-1, 1);
        acc(1, -1);
        acc(-0.5, -2);
        break;
      case 4:
        acc(1, 2);
        acc(-4, 1);
        acc(6, 0);
        acc(-4, -1);
        acc(1, -2);
        break;
    }
    const double scale = std::pow(hh, ell);
    *absum = a / scale;
    return v / scale;
  };
  double a0, a1, a2;
  const double d0 = stencil(h, &a0);
  const double d1 = stencil(0.5 * h, &a1);
  const double d2 = stencil(0.25 * h, &a2);
  const double r0 = (4.0 * d1 - d0) / 3.0;
  const double r1 = (4.0 * d2 - d1) / 3.0;
  if (noise) *noise = 32.0 * std::numeric_limits<double>::epsilon() * a2;
  return (16.0 * r1 - r0) / 15.0;
}

namespace {

// Slope of log r against log|log x| over the outer half of one end.
double outer_slope(const std::vector<double>& xs, const std::vector<double>& rs) {
  const std::size_t n = xs.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t cnt = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(rs[i] > 0.0)) continue;
    const double x = std::log(std::abs(std::log(xs[i])));
    const double y = std::log(rs[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++cnt;
  }
  if (cnt < 3) return 0.0;
  const double denom = cnt * sxx - sx * sx;
  return denom > 0 ? (cnt * sxy - sx * sy) / denom : 0.0;
}

}  // namespace

DecayReport verify_kernel_decay(const std::function<double(double)>& b, const DecaySpec& spec) {
  DecayReport rep;
  rep.pass = true;
  std::vector<double> x0, xinf;
  for (double x : spec.x_samples) {
    if (x < 1.0) {
      x0.push_back(x);
    } else if (x > 1.0) {
      xinf.push_back(x);
    }
  }
  // Outer halves: smallest x at end 0, largest at infinity.
  std::sort(x0.begin(), x0.end(), std::greater<>());
  std::sort(xinf.begin(), xinf.end());
  for (int ell = 0; ell <= spec.m; ++ell) {
    DecayRow row;
    row.ell = ell;
    bool growth = false;
    for (int end = 0; end < 2; ++end) {
      const auto& xs = end == 0 ? x0 : xinf;
      std::vector<double> rs;
      double sup = 0.0;
      for (double x : xs) {
        double noise = 0.0;
        const double d = richardson_derivative(b, x, ell, 1e-2 * x, &noise);
        const double scale = std::pow(x, 1.0 + ell) * std::pow(std::abs(std::log(x)), spec.gamma);
        if (noise > 0.1 * std::abs(d) && noise * scale > 1e-12) row.inconclusive = true;
        const double r = std::abs(d) * scale;
        rs.push_back(r);
        sup = std::max(sup, r);
      }
      (end == 0 ? row.sup_ratio_end0 : row.sup_ratio_end_inf) = sup;
      const std::size_t half = xs.size() / 2;
      std::vector<double> ox(xs.begin() + half, xs.end());
      std::vector<double> orr(rs.begin() + half, rs.end());
      if (!std::isfinite(sup) || outer_slope(ox, orr) > 0.2) growth = true;
    }
    row.pass = !growth;
    rep.pass = rep.pass && row.pass;
    rep.rows.push_back(row);
  }
  return rep;
}

void write_decay_csv(std::ostream& os, const DecayReport& r) {
  os << "ell,sup_ratio_end0,sup_ratio_end_inf,pass\n";
  char buf[128];
  for (const auto& row : r.rows) {
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%s\n", row.ell, row.sup_ratio_end0,
                  row.sup_ratio_end_inf, row.pass ? "true" : "false");
    os << buf;
  }
}

StabilityReport stability_compare(const Spectrum& a, const Spectrum& b, double gamma) {
  const std::size_t n = std::min(a.lambda_plus.size(), b.lambda_plus.size());
  if (n < 3) throw ContractError("stability_compare: windows too short");
  StabilityReport r;
  r.n_hi = n;
  r.n_lo = n - n / 3 + 1;
  auto proxy = [&](const std::vector<double>& l, double& sup, double& inf) {
    sup = -std::numeric_limits<double>::infinity();
    inf = std::numeric_limits<double>::infinity();
    for (std::size_t k = r.n_lo; k <= r.n_hi; ++k) {
      const double v = std::pow(static_cast<double>(k), gamma) * l[k - 1];
      sup = std::max(sup, v);
      inf = std::min(inf, v);
    }
  };
  proxy(a.lambda_plus, r.sup_a, r.inf_a);
  proxy(b.lambda_plus, r.sup_b, r.inf_b);
  r.gap = std::max(std::abs(r.sup_a - r.sup_b), std::abs(r.inf_a - r.inf_b));
  return r;
}

DominationReport negative_part_domination(const Spectrum& full, const Spectrum& a1,
                                          const Spectrum& row0) {
  const double top = row0.lambda_plus.empty() ? 0.0 : row0.lambda_plus.front();
  const double bottom = row0.lambda_minus.empty() ? 0.0 : row0.lambda_minus.front();
  if (bottom > 1e-10 * top) {
    throw ContractError("negative_part_domination: M(a0) truncation is not PSD");
  }
  DominationReport r;
  r.worst_excess = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < full.lambda_minus.size(); ++i) {
    const double rhs = i < a1.lambda_minus.size() ? a1.lambda_minus[i] : 0.0;
    const double excess = full.lambda_minus[i] - rhs;
    r.worst_excess = std::max(r.worst_excess, excess);
    if (excess > 1e-10) r.holds = false;
    ++r.n_checked;
  }
  if (r.n_checked == 0) r.worst_excess = 0.0;
  return r;
}

}  // namespace helson
