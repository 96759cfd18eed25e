#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "helson/linear_map.hpp"
#include "helson/symbols.hpp"

namespace helson {

enum class Spacing { uniform, geometric, gauss_legendre, exp_image };

std::string_view to_string(Spacing s);
Spacing spacing_from_string(std::string_view name);

/// Quadrature grid. Geometric grids are described in log coordinates
/// (log_nodes, log_weights, trapezoid coefficients and step) so that nodes
/// far beyond the double range stay usable; `nodes` and `weights` then hold
/// the exponentials, possibly +inf.
struct Grid {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<double> log_nodes;
  std::vector<double> log_weights;
  std::vector<double> coeffs;  // trapezoid coefficients (1/2 at the ends)
  double step = 0.0;           // uniform or log step
  Spacing spacing = Spacing::uniform;
  double lo = 0.0;
  double hi = 0.0;
  double log_lo = 0.0;
  double log_hi = 0.0;

  std::size_t size() const { return log_nodes.size(); }
};

/// Trapezoid grid on [lo, hi] (uniform), trapezoid grid in log x with
/// weights c_m h x_m (geometric), or composite Gauss-Legendre with equal
/// panels of order 20 or 16 (gauss_legendre; n must be a multiple).
Grid make_grid(double lo, double hi, std::size_t n, Spacing spacing);

/// Geometric grid given by its log end points.
Grid make_log_grid(double log_lo, double log_hi, std::size_t n);

/// Composite Gauss-Legendre grid on the given panels.
Grid make_panel_grid(const std::vector<double>& breaks, int order);

/// Composite Gauss-Legendre grid adapted to a weight: panels halving toward
/// 0 on the first smooth piece, equal panels on the others. n is rounded
/// to a multiple of `order`.
Grid weight_grid(const SymbolSpec& weight, std::size_t n, int order = 20);

/// The image t = e^x of an x-grid with weights w_t = w_x e^x.
Grid exp_image(const Grid& x_grid);

nlohmann::json to_json(const Grid& g);
Grid grid_from_json(const nlohmann::json& j);

/// Symmetric Nystrom discretization sqrt(w_m) K(x_m, x_n) sqrt(w_n).
struct NystromOperator {
  Grid grid;
  std::string kernel;
  std::shared_ptr<const DenseMatrix<double>> matrix;
  RealMap map;
};

/// x -> b(x) for a Hankel-type symbol on [x_lo, x_hi]; b0 and b1 are backed
/// by a piecewise Chebyshev table of b0.
std::function<double(double)> kernel_fn(const SymbolSpec& b, double x_lo, double x_hi);

/// S -> e^S b(e^S) on [s_lo, s_hi], tabulated likewise.
std::function<double(double)> scaled_kernel_fn(const SymbolSpec& b, double s_lo,
                                               double s_hi);

NystromOperator nystrom_hankel(const SymbolSpec& b, const Grid& grid);

/// Same, for an arbitrary kernel given on x + y.
NystromOperator nystrom_hankel(const std::function<double(double)>& b, const Grid& grid,
                               std::string name);

/// sqrt(w_m) a(t_m t_n) sqrt(w_n) on a grid in (1, inf). Products beyond the
/// double range are evaluated through b(x) = e^{x/2} a(e^x).
NystromOperator nystrom_helson(const SymbolSpec& a, const Grid& grid);

NystromOperator nystrom_helson(const std::function<double(double)>& a, const Grid& grid,
                               std::string name);

/// (Vf)_m = t_m^{-1/2} f(log t_m) where t_grid = exp_image(x_grid).
std::vector<double> change_of_variable(const std::vector<double>& f, const Grid& x_grid,
                                       const Grid& t_grid);

/// Discrete L2 norm sqrt(sum w_m f_m^2).
double grid_norm(const std::vector<double>& f, const Grid& g);

/// N_{jq} = j^{-x_q - 1/2} sqrt(w(x_q) omega_q), j = 1..J.
DenseMatrix<double> factor_N_matrix(const SymbolSpec& weight, std::size_t J,
                                    const Grid& grid);

enum class WeightedKind { zeta1, carleman, h_beta, zeta_minus_carleman };

std::string_view to_string(WeightedKind k);
WeightedKind weighted_kind_from_string(std::string_view name);

/// sqrt(w(x_m) omega_m) K(x_m + x_n) sqrt(w(x_n) omega_n). zeta_minus_carleman
/// is K(s) = zeta(1 + s) - 1/s - 1, the difference of the first two kinds
/// less the rank-one constant part, evaluated without cancellation.
NystromOperator weighted_operator(WeightedKind kind, const SymbolSpec& weight,
                                  const Grid& grid);

/// sqrt(w(x) omega) on a grid.
std::vector<double> weighted_sqrt(const SymbolSpec& weight, const Grid& grid);

}  // namespace helson
