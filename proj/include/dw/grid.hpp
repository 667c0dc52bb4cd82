#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace dw {

enum class Geometry { line, radial };
enum class Bc { dirichlet, neumann_regular };

// Uniform 1-D grid: either a plain interval (line) or the radial coordinate of
// a rotationally symmetric N-dimensional domain.  Measure weights mu_i realize
// trapezoid quadrature against the surface measure |S^{N-1}| r^{N-1} dr; for
// radial grids the r^{N-1} factor is replaced by the detailed-balance density
// of the Laplacian stencil (equal to r^{N-1}(1+O(h^2))), which makes the
// discrete Laplacian exactly symmetric in the mu-weighted inner product on
// Dirichlet fields.
struct Grid {
  Geometry geometry = Geometry::line;
  int dim = 1;  // N
  double r_lo = 0.0;
  double r_hi = 1.0;
  double h = 0.0;
  std::size_t m = 0;  // node count
  Bc bc_lo = Bc::dirichlet;
  Bc bc_hi = Bc::dirichlet;
  std::vector<double> r;   // node coordinates
  std::vector<double> mu;  // measure weights

  static Grid make(Geometry geometry, int N, double r_lo, double r_hi,
                   double h_target, Bc bc_lo, Bc bc_hi);

  // |x| for weight evaluation: identity on radial grids, absolute value on line
  // grids (even extension of the radial weights).
  double radius(std::size_t i) const;
};

// Second-order central Laplacian; radial grids use u'' + (N-1)/r u' and the
// regularity limit 2N (u_1 - u_0)/h^2 at a neumann_regular origin.  Output is
// zero at Dirichlet nodes.
std::vector<double> laplacian_apply(const Grid& g, const std::vector<double>& u);

// The same operator as three diagonals (lower/diag/upper), Dirichlet rows are
// identity-free (all zero); used by the implicit solvers.
void laplacian_tridiag(const Grid& g, std::vector<double>& lower,
                       std::vector<double>& diag, std::vector<double>& upper);

// sum_i mu_i f_i w(r_i, i)
double weighted_integral(const Grid& g, const std::vector<double>& f,
                         const std::function<double(double r, std::size_t i)>& w);

double integral(const Grid& g, const std::vector<double>& f);
double l2_norm(const Grid& g, const std::vector<double>& f);

// Central-difference gradient of a snapshot, one-sided at the ends.
std::vector<double> gradient(const Grid& g, const std::vector<double>& u);

// A time-indexed sequence of grid functions at t_k = k dt, optionally paired
// with its time-derivative sequence at the same stamps.
struct FieldTrajectory {
  const Grid* grid = nullptr;
  double dt = 0.0;
  std::vector<std::vector<double>> values;
  std::vector<std::vector<double>> dvalues;  // empty when no co-trajectory
  std::string metadata;

  std::size_t steps() const { return values.size(); }
  double time(std::size_t k) const { return dt * static_cast<double>(k); }
  bool has_co() const { return !dvalues.empty(); }
};

// Max over time of max |u| on the outermost margin_nodes at each wall.
double truncation_monitor(const FieldTrajectory& traj, std::size_t margin_nodes);

}  // namespace dw
