#pragma once

#include <Eigen/SparseCore>
#include <cstdint>

#include "hoelderlab/grid_field.hpp"
#include "hoelderlab/holder_domain.hpp"
#include "hoelderlab/operator_data.hpp"

namespace hoelderlab {

/// Source term f in H^{-1+s}.
struct Rhs {
  double s = 1.0;
  std::uint64_t seed = 0;
  double decay_margin = 0.05;
  GridField field{2, 2};

  static Rhs from_field(GridField f, double s = 1.0);
};

/// Random-phase source with |c_k| = (1 + |k|)^{-(-1 + s + d/2 + margin)}.
/// The phase of frequency k depends only on (seed, k), so two resolutions
/// agree on every frequency strictly inside (-n/2, n/2); Nyquist lines are zero.
Rhs make_rhs(double s, std::uint64_t seed, int n, int dim = 2, double decay_margin = 0.05, bool zero_mean = false);

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// Phi = Phi_0 + Phi_r restricted to interior nodes (zero Dirichlet data outside).
///   sym    : Phi_0(u, v) = sum over P1 triangles of area * A grad u . grad v,
///            A taken at each triangle's right-angle vertex (3-point stencil in 1D)
///   skew   : int b.grad(u) v with centered differences
///   mass_c : lumped int c u v
struct DiscreteSystem {
  int m = 0;
  SparseMatrix sym;
  SparseMatrix skew;
  SparseMatrix mass_c;
  DomainMask mask;

  SparseMatrix total() const { return sym + skew + mass_c; }
  bool has_transport() const { return skew.nonZeros() > 0; }
};

DiscreteSystem assemble(const CoefficientSet& cs, const DomainMask& mask);

/// tau(f, v) = sum over inside nodes of f v h^d.
double apply_tau(const Rhs& f, const GridField& v, const DomainMask& mask);
double apply_tau(const GridField& f, const GridField& v, const DomainMask& mask);

/// Phi_0(u, v) for zero-extended grid fields, through the assembled matrix.
double phi0_form(const DiscreteSystem& sys, const GridField& u, const GridField& v);
/// Phi_r(u, z) = int_Omega b.grad(u) z + c u z for arbitrary grid fields,
/// evaluated pointwise with the same centered differences as the matrix.
double phi_r_form(const CoefficientSet& cs, const DomainMask& mask, const GridField& u, const GridField& z);

/// Smallest of x^T K x / x^T x over `samples` seeded random interior vectors.
double min_ritz_quotient(const DiscreteSystem& sys, int samples = 50, std::uint64_t seed = 1);

struct SolverOptions {
  double tol = 1e-10;
  int max_iterations = 0;  // 0: 50 * sqrt(m)
  bool check_coercivity = true;
};

struct Solution {
  GridField u{2, 2};  // zero on every exterior node
  int iterations = 0;
  double residual = 0.0;  // ||K x - r|| / ||r||
  double energy = 0.0;    // Phi(u, u)
};

/// Solves Phi(u, v) = tau(f, v) for all interior v. Conjugate gradients when the
/// operator is symmetric, BiCGSTAB otherwise. Throws ComputationError on
/// coercivity failure or when the relative residual stays above tol.
Solution solve(const DiscreteSystem& sys, const Rhs& f, const SolverOptions& opts = {});

}  // namespace hoelderlab
