#include <algorithm>
#include <cmath>
#include <limits>

#include "hoelderlab/regularity_lab.hpp"

namespace hoelderlab {

std::pair<int, int> default_fit_range(int n) {
  const int J = log2_exact(n) - 1;
  return {std::min(4, J - 4), J - 1};
}

OrderFit measure_order(const GridField& u, int j_lo, int j_hi) {
  const auto grad = gradient(u);
  BlockDecomposition combined;
  for (const GridField& g : grad) {
    const BlockDecomposition b = block_norms(g);
    if (combined.norms.empty()) {
      combined.J = b.J;
      combined.norms.assign(b.norms.size(), 0.0);
    }
    for (std::size_t j = 0; j < b.norms.size(); ++j) combined.norms[j] += b.norms[j] * b.norms[j];
  }
  for (double& v : combined.norms) v = std::sqrt(v);
  const auto [lo, hi] = default_fit_range(u.n());
  if (j_lo == 0) j_lo = lo;
  if (j_hi == 0) j_hi = hi;
  const SmoothnessFit fit = estimate_smoothness(combined, j_lo, j_hi);
  return {1.0 + fit.s_hat, fit.r2, combined.norms};
}

ProbeResult form_holder_probe(FormKind kind, const FormData& data, const GridField& u, const BumpFunction& psi,
                              double gamma_expected) {
  if (!data.mask) throw InvalidArgument("form probe: mask required");
  if (kind == FormKind::tau && !data.f) throw InvalidArgument("form probe: tau needs a source field");
  if (kind == FormKind::phi_r && !data.coefficients) throw InvalidArgument("form probe: phi_r needs coefficients");
  require_same_shape(u, psi.profile, "form_holder_probe");

  const int n = u.n();
  ProbeResult r;
  for (double h = 0.5; h * n >= 4.0; h *= 0.5) {
    if (!(h < psi.radius)) continue;
    const GridField uh = shift(u, {h, 0.0});
    GridField z(u.dim(), n);
    for (std::size_t i = 0; i < z.size(); ++i) z[i] = psi.profile[i] * (u[i] - uh[i]);
    const double zeta = kind == FormKind::tau ? apply_tau(*data.f, z, *data.mask)
                                              : phi_r_form(*data.coefficients, *data.mask, u, z);
    r.steps.push_back(h);
    r.values.push_back(std::abs(zeta));
  }
  if (r.steps.size() < 3) throw InvalidArgument("form probe: fewer than 3 admissible shifts; refine the grid");

  const double top = *std::max_element(r.values.begin(), r.values.end());
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < r.steps.size(); ++i) {
    if (r.values[i] > 0.0) {
      lx.push_back(std::log2(r.steps[i]));
      ly.push_back(std::log2(r.values[i]));
    }
  }
  if (top == 0.0 || lx.size() < 3) {
    r.degenerate = true;
    r.beta_hat = std::numeric_limits<double>::quiet_NaN();
    return r;
  }
  const LineFit fit = fit_line(lx, ly);
  r.beta_hat = fit.slope;
  r.r2 = fit.r2;

  const double energy = gradient_l2_norm(u);
  for (std::size_t i = 0; i < r.steps.size(); ++i)
    r.c_emp = std::max(r.c_emp, r.values[i] / (energy * std::pow(r.steps[i], gamma_expected)));
  return r;
}

BaseEstimate base_estimate_ratio(const GridField& u, const Rhs& f, const CoefficientSet& cs, const DomainMask& mask,
                                 double gamma_omega, double gamma_c, double s, double eps) {
  const double gamma_0 = std::min(gamma_c, s);
  const AdmissibilityReport adm = check_admissibility(cs, gamma_c, eps, default_embedding_constant(), &mask);
  BaseEstimate b;
  b.nikolskii_norm = besov_norm(u, 1.0 + gamma_omega * gamma_0 / 2.0, kInfinity);
  b.energy_norm = gradient_l2_norm(u);
  b.c_tau = besov_norm(f.field, -1.0 + s, 1.0);
  b.c_phi = (adm.lq_norm_b + adm.lq_norm_c) * b.energy_norm;
  const double denom = b.energy_norm * (b.energy_norm + b.c_tau + b.c_phi);
  if (!(denom > 0.0)) throw ComputationError("base estimate: zero solution");
  b.ratio = b.nikolskii_norm * b.nikolskii_norm / denom;
  return b;
}

}  // namespace hoelderlab
