#include "helson/discretize.hpp"

#include <algorithm>
#include <cmath>

#include "helson/chebyshev.hpp"
#include "helson/errors.hpp"
#include "helson/laplace_weight.hpp"
#include "helson/quadrature.hpp"
#include "helson/special_functions.hpp"

namespace helson {

std::string_view to_string(Spacing s) {
  switch (s) {
    case Spacing::uniform:
      return "uniform";
    case Spacing::geometric:
      return "geometric";
    case Spacing::gauss_legendre:
      return "gauss_legendre";
    case Spacing::exp_image:
      return "exp_image";
  }
  return "unknown";
}

Spacing spacing_from_string(std::string_view name) {
  if (name == "uniform") return Spacing::uniform;
  if (name == "geometric") return Spacing::geometric;
  if (name == "gauss_legendre") return Spacing::gauss_legendre;
  throw ContractError("unknown grid spacing '" + std::string(name) + "'");
}

namespace {

void fill_exp(Grid& g) {
  g.nodes.resize(g.size());
  g.weights.resize(g.size());
  for (std::size_t m = 0; m < g.size(); ++m) {
    g.nodes[m] = std::exp(g.log_nodes[m]);
    g.weights[m] = std::exp(g.log_weights[m]);
  }
}

void fill_log(Grid& g) {
  g.log_nodes.resize(g.nodes.size());
  g.log_weights.resize(g.nodes.size());
  for (std::size_t m = 0; m < g.nodes.size(); ++m) {
    g.log_nodes[m] = std::log(g.nodes[m]);
    g.log_weights[m] = std::log(g.weights[m]);
  }
}

std::vector<double> trapezoid_coeffs(std::size_t n) {
  std::vector<double> c(n, 1.0);
  c.front() = 0.5;
  c.back() = 0.5;
  return c;
}

}  // namespace

Grid make_log_grid(double log_lo, double log_hi, std::size_t n) {
  if (!(log_lo < log_hi) || !std::isfinite(log_lo) || !std::isfinite(log_hi)) {
    throw ContractError("make_log_grid: need finite log_lo < log_hi");
  }
  if (n < 2) throw ContractError("make_grid: n must be >= 2");
  Grid g;
  g.spacing = Spacing::geometric;
  g.log_lo = log_lo;
  g.log_hi = log_hi;
  g.lo = std::exp(log_lo);
  g.hi = std::exp(log_hi);
  g.step = (log_hi - log_lo) / static_cast<double>(n - 1);
  g.coeffs = trapezoid_coeffs(n);
  g.log_nodes.resize(n);
  g.log_weights.resize(n);
  for (std::size_t m = 0; m < n; ++m) {
    g.log_nodes[m] = m + 1 == n ? log_hi : log_lo + static_cast<double>(m) * g.step;
    g.log_weights[m] = std::log(g.coeffs[m] * g.step) + g.log_nodes[m];
  }
  fill_exp(g);
  return g;
}

Grid make_panel_grid(const std::vector<double>& breaks, int order) {
  if (breaks.size() < 2) throw ContractError("make_panel_grid: need two breaks");
  const CompositeRule rule = composite_gauss(breaks, order);
  Grid g;
  g.spacing = Spacing::gauss_legendre;
  g.nodes = rule.nodes;
  g.weights = rule.weights;
  g.lo = breaks.front();
  g.hi = breaks.back();
  g.log_lo = std::log(g.lo);
  g.log_hi = std::log(g.hi);
  fill_log(g);
  return g;
}

Grid make_grid(double lo, double hi, std::size_t n, Spacing spacing) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw ContractError("make_grid: need finite lo < hi");
  }
  if (n < 2) throw ContractError("make_grid: n must be >= 2");
  switch (spacing) {
    case Spacing::geometric:
      if (!(lo > 0.0)) throw ContractError("make_grid: geometric grid needs lo > 0");
      {
        Grid g = make_log_grid(std::log(lo), std::log(hi), n);
        g.lo = lo;
        g.hi = hi;
        return g;
      }
    case Spacing::uniform: {
      Grid g;
      g.spacing = Spacing::uniform;
      g.lo = lo;
      g.hi = hi;
      g.log_lo = std::log(lo);
      g.log_hi = std::log(hi);
      g.step = (hi - lo) / static_cast<double>(n - 1);
      g.coeffs = trapezoid_coeffs(n);
      g.nodes.resize(n);
      g.weights.resize(n);
      for (std::size_t m = 0; m < n; ++m) {
        g.nodes[m] = m + 1 == n ? hi : lo + static_cast<double>(m) * g.step;
        g.weights[m] = g.coeffs[m] * g.step;
      }
      fill_log(g);
      return g;
    }
    case Spacing::gauss_legendre: {
      int order = 0;
      if (n % 20 == 0) {
        order = 20;
      } else if (n % 16 == 0) {
        order = 16;
      } else if (n <= 64) {
        order = static_cast<int>(n);
      } else {
        throw ContractError("make_grid: gauss_legendre needs n divisible by 16 or 20");
      }
      const std::size_t panels = n / static_cast<std::size_t>(order);
      std::vector<double> breaks(panels + 1);
      for (std::size_t i = 0; i <= panels; ++i) {
        breaks[i] = i == panels ? hi : lo + (hi - lo) * static_cast<double>(i) / panels;
      }
      return make_panel_grid(breaks, order);
    }
    case Spacing::exp_image:
      throw ContractError("make_grid: exp_image grids come from exp_image()");
  }
  throw ContractError("make_grid: unknown spacing");
}

Grid weight_grid(const SymbolSpec& weight, std::size_t n, int order) {
  const double top = weight_support_hi(weight);
  std::vector<double> inner;
  for (double b : weight_breakpoints(weight)) {
    if (b > 0.0 && b < top) inner.push_back(b);
  }
  std::sort(inner.begin(), inner.end());
  const std::size_t panels = std::max<std::size_t>(n / order, inner.size() + 2);
  // Eight panels per transition piece, the rest halving toward 0.
  const std::size_t smooth_pieces = inner.size();
  const std::size_t per_piece = smooth_pieces ? 8 : 0;
  if (panels <= per_piece * smooth_pieces) {
    throw ContractError("weight_grid: too few nodes for the weight's pieces");
  }
  std::size_t halving = panels - per_piece * smooth_pieces;
  const double first = inner.empty() ? top : inner.front();
  std::vector<double> breaks{0.0};
  for (std::size_t k = halving - 1; k >= 1; --k) breaks.push_back(first * std::ldexp(1.0, -int(k)));
  breaks.push_back(first);
  std::vector<double> ends = inner;
  ends.push_back(top);
  for (std::size_t i = 0; i + 1 < ends.size(); ++i) {
    for (std::size_t k = 1; k <= per_piece; ++k) {
      breaks.push_back(ends[i] + (ends[i + 1] - ends[i]) * static_cast<double>(k) / per_piece);
    }
  }
  breaks.back() = top;
  return make_panel_grid(breaks, order);
}

Grid exp_image(const Grid& x) {
  Grid t;
  t.spacing = Spacing::exp_image;
  t.step = x.step;
  t.coeffs = x.coeffs;
  t.log_nodes = x.nodes;
  t.log_weights.resize(x.size());
  for (std::size_t m = 0; m < x.size(); ++m) {
    if (!std::isfinite(x.nodes[m])) throw ContractError("exp_image: x-grid overflows");
    t.log_weights[m] = x.log_weights[m] + x.nodes[m];
  }
  t.log_lo = x.lo;
  t.log_hi = x.hi;
  t.lo = std::exp(x.lo);
  t.hi = std::exp(x.hi);
  fill_exp(t);
  return t;
}

nlohmann::json to_json(const Grid& g) {
  return {{"lo", g.lo},          {"hi", g.hi},          {"n", g.size()},
          {"spacing", std::string(to_string(g.spacing))},
          {"log_lo", g.log_lo},  {"log_hi", g.log_hi}};
}

Grid grid_from_json(const nlohmann::json& j) {
  const Spacing s = spacing_from_string(j.at("spacing").get<std::string>());
  const auto n = j.at("n").get<std::size_t>();
  if (s == Spacing::geometric && j.contains("log_lo") && j.contains("log_hi") &&
      !(j.contains("lo") && j.contains("hi"))) {
    return make_log_grid(j.at("log_lo").get<double>(), j.at("log_hi").get<double>(), n);
  }
  if (s == Spacing::geometric && j.contains("log_hi") && !j.contains("hi")) {
    return make_log_grid(std::log(j.at("lo").get<double>()), j.at("log_hi").get<double>(), n);
  }
  return make_grid(j.at("lo").get<double>(), j.at("hi").get<double>(), n, s);
}

namespace {

bool needs_table(const SymbolSpec& b) {
  return b.kind == SymbolKind::b0 || b.kind == SymbolKind::b1;
}

SymbolSpec hankel_part(const SymbolSpec& b) {
  SymbolSpec s = b;
  s.kind = SymbolKind::hankel_b;
  return s;
}

bool singular_at_zero(const SymbolSpec& b) {
  return b.kind == SymbolKind::carleman || b.kind == SymbolKind::zeta1 ||
         b.kind == SymbolKind::h_beta || b.kind == SymbolKind::custom;
}

std::vector<double> table_breaks(double lo, double hi) {
  if (!(hi > lo)) hi = lo + 1.0;
  return graded_breaks(lo, hi, 1.0, 0.25);
}

NystromOperator finish(Grid grid, std::string name, DenseMatrix<double> m) {
  NystromOperator op;
  op.grid = std::move(grid);
  op.kernel = std::move(name);
  auto shared = std::make_shared<const DenseMatrix<double>>(std::move(m));
  op.matrix = shared;
  op.map.rows = op.map.cols = shared->rows;
  op.map.symmetric = true;
  op.map.description = "nystrom(" + op.kernel + ", n=" + std::to_string(shared->rows) + ")";
  op.map.apply = [shared](const std::vector<double>& x) { return shared->multiply(x); };
  return op;
}

}  // namespace

std::function<double(double)> kernel_fn(const SymbolSpec& b, double x_lo, double x_hi) {
  if (!needs_table(b)) {
    return [b](double x) { return eval_symbol(b, x); };
  }
  const LaplaceWeight lw(weight_of(b));
  auto table = std::make_shared<PiecewiseChebyshev>(
      [&](double x) { return lw.transform(x); }, table_breaks(std::max(0.0, x_lo), x_hi), 24);
  if (b.kind == SymbolKind::b0) return [table](double x) { return (*table)(x); };
  const SymbolSpec hb = hankel_part(b);
  return [table, hb](double x) { return eval_symbol(hb, x) - (*table)(x); };
}

std::function<double(double)> scaled_kernel_fn(const SymbolSpec& b, double s_lo,
                                               double s_hi) {
  if (!needs_table(b)) {
    return [b](double s) { return eval_scaled_log(b, s); };
  }
  const LaplaceWeight lw(weight_of(b));
  auto table = std::make_shared<PiecewiseChebyshev>(
      [&](double s) { return lw.transform_scaled_log(s); }, table_breaks(s_lo, s_hi), 24);
  if (b.kind == SymbolKind::b0) return [table](double s) { return (*table)(s); };
  const SymbolSpec hb = hankel_part(b);
  return [table, hb](double s) { return eval_scaled_log(hb, s) - (*table)(s); };
}

NystromOperator nystrom_hankel(const SymbolSpec& b, const Grid& grid) {
  const std::size_t n = grid.size();
  if (singular_at_zero(b) && !(grid.nodes.front() > 0.0)) {
    throw ContractError("nystrom_hankel: kernel '" + std::string(to_string(b.kind)) +
                        "' is singular at 0; grid needs nodes > 0");
  }
  DenseMatrix<double> m(n, n);
  if (grid.spacing == Spacing::geometric) {
    // sqrt(w_m w_n) b(x_m + x_n) = sqrt(c_m c_n) h B(S) / (2 cosh(d/2)),
    // S = log(x_m + x_n), d = s_m - s_n, B(S) = e^S b(e^S).
    const auto& s = grid.log_nodes;
    const auto B = scaled_kernel_fn(b, s.front() + std::log(2.0), s.back() + std::log(2.0));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) {
        const double d = s[i] - s[j];
        const double S = std::max(s[i], s[j]) + std::log1p(std::exp(-std::abs(d)));
        const double v = std::sqrt(grid.coeffs[i] * grid.coeffs[j]) * grid.step * B(S) /
                         (2.0 * std::cosh(0.5 * d));
        m(i, j) = m(j, i) = v;
      }
    }
  } else {
    const auto K = kernel_fn(b, 2.0 * grid.lo, 2.0 * grid.hi);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) {
        m(i, j) = m(j, i) =
            std::sqrt(grid.weights[i] * grid.weights[j]) * K(grid.nodes[i] + grid.nodes[j]);
      }
    }
  }
  return finish(grid, b.name.empty() ? std::string(to_string(b.kind)) : b.name, std::move(m));
}

NystromOperator nystrom_hankel(const std::function<double(double)>& b, const Grid& grid,
                               std::string name) {
  const std::size_t n = grid.size();
  DenseMatrix<double> m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double lw = 0.5 * (grid.log_weights[i] + grid.log_weights[j]);
      m(i, j) = m(j, i) = std::exp(lw) * b(grid.nodes[i] + grid.nodes[j]);
    }
  }
  return finish(grid, std::move(name), std::move(m));
}

NystromOperator nystrom_helson(const SymbolSpec& a, const Grid& grid) {
  if (!(grid.log_lo >= 0.0)) throw ContractError("nystrom_helson: grid needs lo >= 1");
  const std::size_t n = grid.size();
  const auto& L = grid.log_nodes;
  const double y_lo = 2.0 * L.front();
  const double y_hi = 2.0 * L.back();
  // Conjugate Hankel kernel for products beyond the double range.
  SymbolSpec b = a;
  std::function<double(double)> direct;
  switch (a.kind) {
    case SymbolKind::helson_a:
      b.kind = SymbolKind::hankel_b;
      direct = [a](double y) {
        return activation(a.cutoffs, y) == 0.0 ? 0.0 : eval_symbol(a, std::exp(y));
      };
      break;
    case SymbolKind::a0:
    case SymbolKind::a1: {
      b.kind = a.kind == SymbolKind::a0 ? SymbolKind::b0 : SymbolKind::b1;
      SymbolSpec b0 = a;
      b0.kind = SymbolKind::b0;
      const auto b0t = kernel_fn(b0, y_lo, std::min(y_hi, 700.0));
      SymbolSpec ha = a;
      ha.kind = SymbolKind::helson_a;
      const bool row0 = a.kind == SymbolKind::a0;
      direct = [b0t, ha, row0](double y) {
        // a0(t) = t^{-1/2} b0(log t).
        const double a0 = b0t(y) * std::exp(-0.5 * y);
        if (row0) return a0;
        const double full = activation(ha.cutoffs, y) == 0.0 ? 0.0 : eval_symbol(ha, std::exp(y));
        return full - a0;
      };
      break;
    }
    default:
      direct = [a](double y) { return eval_symbol(a, std::exp(y)); };
      b.kind = SymbolKind::custom;
      break;
  }
  std::function<double(double)> far;
  if (y_hi >= 700.0) {
    if (b.kind == SymbolKind::custom) {
      throw ContractError("nystrom_helson: grid exceeds the double range for this kernel");
    }
    far = kernel_fn(b, 700.0, y_hi);
  }
  DenseMatrix<double> m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double y = L[i] + L[j];
      const double lw = 0.5 * (grid.log_weights[i] + grid.log_weights[j]);
      const double v =
          y < 700.0 ? std::exp(lw) * direct(y) : std::exp(lw - 0.5 * y) * far(y);
      m(i, j) = m(j, i) = v;
    }
  }
  return finish(grid, a.name.empty() ? std::string(to_string(a.kind)) : a.name, std::move(m));
}

NystromOperator nystrom_helson(const std::function<double(double)>& a, const Grid& grid,
                               std::string name) {
  if (!(grid.lo >= 1.0)) throw ContractError("nystrom_helson: grid needs lo >= 1");
  const std::size_t n = grid.size();
  DenseMatrix<double> m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      m(i, j) = m(j, i) = std::sqrt(grid.weights[i] * grid.weights[j]) *
                          a(grid.nodes[i] * grid.nodes[j]);
    }
  }
  return finish(grid, std::move(name), std::move(m));
}

std::vector<double> change_of_variable(const std::vector<double>& f, const Grid& x_grid,
                                       const Grid& t_grid) {
  if (f.size() != x_grid.size() || t_grid.size() != x_grid.size()) {
    throw ContractError("change_of_variable: grid size mismatch");
  }
  for (std::size_t m = 0; m < x_grid.size(); ++m) {
    const double x = x_grid.nodes[m];
    if (std::abs(t_grid.log_nodes[m] - x) > 1e-12 * (1.0 + std::abs(x)) ||
        std::abs(t_grid.log_weights[m] - x_grid.log_weights[m] - x) >
            1e-12 * (1.0 + std::abs(x))) {
      throw ContractError("change_of_variable: t-grid is not the image of the x-grid");
    }
  }
  std::vector<double> out(f.size());
  for (std::size_t m = 0; m < f.size(); ++m) {
    out[m] = std::exp(-0.5 * t_grid.log_nodes[m]) * f[m];
  }
  return out;
}

double grid_norm(const std::vector<double>& f, const Grid& g) {
  double s = 0.0;
  for (std::size_t m = 0; m < f.size(); ++m) s += g.weights[m] * f[m] * f[m];
  return std::sqrt(s);
}

std::vector<double> weighted_sqrt(const SymbolSpec& weight, const Grid& grid) {
  std::vector<double> r(grid.size());
  for (std::size_t q = 0; q < grid.size(); ++q) {
    const double w = grid.nodes[q] > 0.0 ? eval_weight_log(weight, grid.log_nodes[q]) : 0.0;
    r[q] = std::sqrt(w * grid.weights[q]);
  }
  return r;
}

namespace {

void require_cover(const SymbolSpec& weight, const Grid& grid) {
  const double top = weight_support_hi(weight);
  if (grid.hi < top * (1.0 - 1e-12)) {
    throw ContractError("grid [" + std::to_string(grid.lo) + ", " + std::to_string(grid.hi) +
                        "] does not cover supp w up to " + std::to_string(top));
  }
}

}  // namespace

DenseMatrix<double> factor_N_matrix(const SymbolSpec& weight, std::size_t J,
                                    const Grid& grid) {
  if (J < 1) throw ContractError("factor_N_matrix: J must be >= 1");
  require_cover(weight, grid);
  const auto r = weighted_sqrt(weight, grid);
  DenseMatrix<double> m(J, grid.size());
  for (std::size_t j = 1; j <= J; ++j) {
    const double lj = std::log(static_cast<double>(j));
    for (std::size_t q = 0; q < grid.size(); ++q) {
      m(j - 1, q) = std::exp(-(grid.nodes[q] + 0.5) * lj) * r[q];
    }
  }
  return m;
}

std::string_view to_string(WeightedKind k) {
  switch (k) {
    case WeightedKind::zeta1:
      return "zeta1";
    case WeightedKind::carleman:
      return "carleman";
    case WeightedKind::h_beta:
      return "h_beta";
    case WeightedKind::zeta_minus_carleman:
      return "zeta_minus_carleman";
  }
  return "unknown";
}

WeightedKind weighted_kind_from_string(std::string_view name) {
  if (name == "zeta1") return WeightedKind::zeta1;
  if (name == "carleman") return WeightedKind::carleman;
  if (name == "h_beta") return WeightedKind::h_beta;
  if (name == "zeta_minus_carleman") return WeightedKind::zeta_minus_carleman;
  throw ContractError("unknown weighted kernel '" + std::string(name) + "'");
}

NystromOperator weighted_operator(WeightedKind kind, const SymbolSpec& weight,
                                  const Grid& grid) {
  require_cover(weight, grid);
  if (!(grid.nodes.front() > 0.0)) {
    throw ContractError("weighted_operator: kernel singular at 0; grid needs nodes > 0");
  }
  const double beta = weight.cutoffs.beta;
  std::function<double(double)> K;
  switch (kind) {
    case WeightedKind::zeta1:
      K = [](double s) { return zeta1(s); };
      break;
    case WeightedKind::carleman:
      K = [](double s) { return 1.0 / s; };
      break;
    case WeightedKind::h_beta:
      K = [beta](double s) { return std::exp(-beta * s) / s; };
      break;
    case WeightedKind::zeta_minus_carleman:
      K = [](double s) { return zeta1_regular(s) - 1.0; };
      break;
  }
  const auto r = weighted_sqrt(weight, grid);
  const std::size_t n = grid.size();
  DenseMatrix<double> m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      m(i, j) = m(j, i) = r[i] * K(grid.nodes[i] + grid.nodes[j]) * r[j];
    }
  }
  return finish(grid, "weighted_" + std::string(to_string(kind)), std::move(m));
}

}  // namespace helson
