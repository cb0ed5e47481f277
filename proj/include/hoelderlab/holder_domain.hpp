#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hoelderlab/grid_field.hpp"

namespace hoelderlab {

/// Lacunary cosine series sum_k a^k cos(2 pi b^k x + theta_k) / sum_k a^k.
struct WeierstrassGraph {
  double a = 0.5;
  int b = 4;
  int terms = 24;
  std::uint64_t phase_seed = 0;  // 0 means all phases zero
  double offset = 0.0;           // evaluated at x + offset
};

/// (2 |x - 1/2|)^gamma on [0, 1), extended periodically.
struct PowerCuspGraph {
  double gamma = 1.0;
};

/// Piecewise-linear interpolation through vertices (x_i, y_i) with x_0 = 0, x_last = 1
/// and matching end values (periodic).
struct PolylineGraph {
  std::vector<std::pair<double, double>> vertices;
};

/// Upper-boundary profile with its nominal Hoelder order.
class BoundaryGraph {
 public:
  using Kind = std::variant<WeierstrassGraph, PowerCuspGraph, PolylineGraph>;

  static BoundaryGraph weierstrass(double a, int b, int terms = 24, std::uint64_t phase_seed = 0);
  /// Weierstrass graph with base b and a = b^{-gamma}, so that its sharp order is gamma.
  static BoundaryGraph weierstrass_for_gamma(double gamma, int b = 3, int terms = 24, std::uint64_t offset_seed = 0);
  static BoundaryGraph power_cusp(double gamma);
  static BoundaryGraph polyline(std::vector<std::pair<double, double>> vertices);

  const Kind& kind() const { return kind_; }
  double nominal_gamma() const { return nominal_gamma_; }
  std::string kind_name() const;

 private:
  BoundaryGraph(Kind kind, double gamma) : kind_(std::move(kind)), nominal_gamma_(gamma) {}
  Kind kind_;
  double nominal_gamma_;
};

/// Normalized graph value in [-1, 1]; 1-periodic in x.
double graph_eval(const BoundaryGraph& g, double x);
/// Samples graph_eval at x = i/n as a 1D field.
GridField sample_graph(const BoundaryGraph& g, int n);

/// Omega = {(x, y) : y_lo < y < y_mid + amp * graph(x)} on the unit torus.
struct HolderDomain {
  double y_lo = 0.2;
  double y_mid = 0.6;
  double amp = 0.2;
  BoundaryGraph graph = BoundaryGraph::power_cusp(1.0);

  double upper(double x) const { return y_mid + amp * graph_eval(graph, x); }
  /// Throws InvalidArgument unless y_lo + 0.05 < min upper and max upper < 0.95.
  void validate() const;
};

/// Hoelder constant of the upper boundary y_mid + amp * graph at order
/// nominal_gamma, measured on the n-point sampling (sup over dyadic shifts).
double boundary_holder_constant(const HolderDomain& dom, int n);

/// Area of Omega by trapezoid quadrature of the boundary graph on `samples` points.
double domain_area(const HolderDomain& dom, int samples = 1 << 16);

/// Boolean carrier of a domain on the n^dim grid with a dense interior numbering.
struct DomainMask {
  int dim = 2;
  int n = 0;
  std::vector<std::uint8_t> inside;
  std::vector<int> interior_index;  // -1 for exterior nodes
  std::vector<std::size_t> nodes;   // inverse of interior_index
  int m = 0;

  bool contains(std::size_t node) const { return inside[node] != 0; }
  /// 0/1 indicator as a grid field.
  GridField indicator() const;
  /// Scatter an interior vector (length m) into a zero-extended grid field.
  GridField extend(const std::vector<double>& interior) const;
  /// Gather interior values of a full grid field.
  std::vector<double> restrict_to(const GridField& u) const;
};

/// Node (ix, iy) at (ix/n, iy/n) is inside iff y_lo < y < upper(x) strictly.
/// Requires n a power of two >= 4; throws ComputationError if no node is inside.
DomainMask rasterize(const HolderDomain& dom, int n);
/// Mask from an arbitrary membership predicate evaluated at node positions.
DomainMask mask_from_predicate(int dim, int n, const std::function<bool(double, double)>& inside);

/// C^{1,1} radial cutoff: 1 on |x - c| <= r/2, 0 on |x - c| >= r, periodic distance.
struct BumpFunction {
  Offset center;
  double radius = 0.1;
  GridField profile{2, 2};
  double lip_norm = 0.0;  // analytic Lipschitz constant 4 / radius
};

BumpFunction make_bump(int dim, int n, Offset center, double radius);
/// Radial profile value for distance r.
double bump_profile(double r, double radius);

/// T^psi_h u = psi u_h + (1 - psi) u. Throws InvalidArgument unless |h| < psi.radius.
GridField translation_operator(const GridField& u, const BumpFunction& psi, Offset h);

/// phi(h) = |h| + C |h|^gamma.
double phi_shift(double h, double c_omega, double gamma_omega);

/// True iff every node where u - T^psi_w u is nonzero lies in the mask, with
/// w = (h, phi(h)) pushing the support downward, u the mask indicator, and
/// phi evaluated with the boundary Hoelder constant. Grid-exact boolean check.
bool vertical_shift_keeps_support(const HolderDomain& dom, const DomainMask& mask, const BumpFunction& psi, double h);

}  // namespace hoelderlab
