#pragma once

#include <cstdint>
#include <optional>

#include "hoelderlab/grid_field.hpp"
#include "hoelderlab/holder_domain.hpp"

namespace hoelderlab {

/// Coefficients of  -div(A grad u) + b.grad u + c u  sampled on the grid.
/// A = [[a11, a12], [a12, a22]] is symmetric by construction (a12 is shared).
/// In 1D only a11, bx and c are used; the remaining fields are zero.
struct CoefficientSet {
  GridField a11, a12, a22;
  GridField bx, by;
  GridField c;
  double nominal_gamma_c = 1.0;
  double alpha = 1.0;
  double scale_b = 0.0;
  double scale_c = 0.0;
  double perturbation = 0.0;
  std::uint64_t seed = 0;

  int dim() const { return a11.dim(); }
  int n() const { return a11.n(); }

  /// Spatially constant A with b = c = 0.
  static CoefficientSet constant(int dim, int n, double a11, double a12 = 0.0, double a22 = 1.0);
  static CoefficientSet identity(int dim, int n) { return constant(dim, n, 1.0, 0.0, 1.0); }
};

/// A = I + perturbation * P with P built from Weierstrass mixtures of order
/// gamma_c (a smooth trigonometric mixture when gamma_c = 1):
/// a11 = 1 + sigma p1, a22 = 1 + sigma p2, a12 = (sigma/2) p3, |p_i| <= 1,
/// hence min eigenvalue >= 1 - 1.5 sigma (0.25 at the default sigma = 0.5).
/// b and c are smooth seeded fields with sup |b| = scale_b, c in [0.5, 1] * scale_c.
CoefficientSet gen_coefficients(double gamma_c, std::uint64_t seed, int n, double scale_b, double scale_c,
                                double perturbation = 0.5);

/// Periodic 2D field of Hoelder order gamma with values in [-1, 1].
GridField holder_field(double gamma, std::uint64_t seed, int n);

/// min over nodes of the smaller eigenvalue of A. Non-positive means A1 fails.
double ellipticity_constant(const CoefficientSet& cs);

/// ||A||_C + [A]_{C^{0,gamma_c}}: max nodal eigenvalue plus the largest dyadic
/// Hoelder seminorm of the components at order nominal_gamma_c.
double holder_norm_A(const CoefficientSet& cs);

/// Default surrogate embedding constant (Ladyzhenskaya, d = 2).
double default_embedding_constant();

struct AdmissibilityReport {
  double alpha = 0.0;
  double holder_seminorm_A = 0.0;
  double lq_norm_b = 0.0;
  double lq_norm_c = 0.0;
  double q_b = 0.0;
  double q_c = 0.0;
  double smallness_margin = 0.0;
  bool ellipticity_ok = false;
  bool smallness_ok = false;
  bool passed = false;
};

/// Integrability exponents q_b = (d + eps)/(1 - gamma) (infinity at gamma = 1) and
/// q_c = max(2 + eps, d); margin = alpha - kappa (||b||_{q_b} + ||c||_{q_c}).
/// Norms are taken over the mask when given, else over the whole torus.
AdmissibilityReport check_admissibility(const CoefficientSet& cs, double gamma, double eps,
                                        double kappa = default_embedding_constant(),
                                        const DomainMask* mask = nullptr);

}  // namespace hoelderlab
