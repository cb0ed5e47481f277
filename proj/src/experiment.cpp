#include <cmath>

#include "hoelderlab/random.hpp"
#include "hoelderlab/regularity_lab.hpp"

namespace hoelderlab {

void ExperimentSpec::validate() const {
  if (!(gamma_omega > 0.0 && gamma_omega <= 1.0)) throw InvalidArgument("gamma_omega must lie in (0, 1]");
  if (!(gamma_c > 0.0 && gamma_c <= 1.0)) throw InvalidArgument("gamma_c must lie in (0, 1]");
  if (!(s >= 0.0 && s < gamma_c / 2.0)) throw InvalidArgument("s must lie in [0, gamma_c/2)");
  if (n < 16 || !is_power_of_two(n)) throw InvalidArgument("n must be a power of two >= 16");
  const int J = log2_exact(n) - 1;
  const auto [dlo, dhi] = default_fit_range(n);
  const int lo = j_lo == 0 ? dlo : j_lo;
  const int hi = j_hi == 0 ? dhi : j_hi;
  if (lo < 2 || hi > J - 1 || hi - lo + 1 < 4)
    throw InvalidArgument("fit range [" + std::to_string(lo) + ", " + std::to_string(hi) +
                          "] must lie in [2, log2(n) - 2] and span at least 4 blocks");
  if (scale_b < 0.0 || scale_c < 0.0) throw InvalidArgument("coefficient scales must be non-negative");
  if (!(perturbation >= 0.0 && perturbation <= 0.5)) throw InvalidArgument("perturbation must lie in [0, 0.5]");
  if (!(tolerance >= 0.0)) throw InvalidArgument("tolerance must be non-negative");
  if (!(solver_tol > 0.0 && solver_tol < 1.0)) throw InvalidArgument("solver_tol must lie in (0, 1)");
}

HolderDomain experiment_domain(const ExperimentSpec& spec) {
  HolderDomain dom;
  if (spec.gamma_omega >= 1.0) {
    dom.y_mid = 0.55;
    dom.amp = 0.25;
    dom.graph = BoundaryGraph::polyline({{0.0, 0.0}, {0.5, 1.0}, {1.0, 0.0}});
  } else {
    dom.graph = BoundaryGraph::weierstrass_for_gamma(spec.gamma_omega, 3, 24, hash_combine(spec.seed, 17) | 1ULL);
  }
  dom.validate();
  return dom;
}

ExperimentResult run_experiment(const ExperimentSpec& spec) { return run_experiment_detailed(spec).result; }

ExperimentRun run_experiment_detailed(const ExperimentSpec& spec) {
  spec.validate();
  const HolderDomain dom = experiment_domain(spec);
  const DomainMask mask = rasterize(dom, spec.n);
  const CoefficientSet cs =
      gen_coefficients(spec.gamma_c, hash_combine(spec.seed, 1), spec.n, spec.scale_b, spec.scale_c, spec.perturbation);
  const AdmissibilityReport adm = check_admissibility(cs, spec.gamma_c, 0.1, default_embedding_constant(), &mask);
  if (!adm.passed)
    throw InvalidArgument("coefficients violate ellipticity or smallness (margin " +
                          std::to_string(adm.smallness_margin) + "); reduce scale_b, scale_c or perturbation");
  const Rhs f = make_rhs(spec.s, hash_combine(spec.seed, 2), spec.n);

  const DiscreteSystem sys = assemble(cs, mask);
  SolverOptions opts;
  opts.tol = spec.solver_tol;
  const Solution sol = solve(sys, f, opts);
  const OrderFit fit = measure_order(sol.u, spec.j_lo, spec.j_hi);

  ExperimentRun run;
  ExperimentResult& r = run.result;
  r.spec = spec;
  r.predicted = predicted_primary(spec.gamma_omega, spec.gamma_c, spec.s);
  r.measured = fit.order;
  r.r2 = fit.r2;
  r.pass = r.measured >= r.predicted - spec.tolerance;
  r.iterations = sol.iterations;
  r.residual = sol.residual;

  const BaseEstimate base = base_estimate_ratio(sol.u, f, cs, mask, spec.gamma_omega, spec.gamma_c, spec.s);
  r.norms["energy"] = sol.energy;
  r.norms["h1_seminorm"] = base.energy_norm;
  r.norms["base_ratio"] = base.ratio;
  r.norms["nikolskii"] = base.nikolskii_norm;
  r.norms["c_tau"] = base.c_tau;
  r.norms["alpha"] = adm.alpha;
  r.norms["smallness_margin"] = adm.smallness_margin;
  r.norms["sup_u"] = sup_norm(sol.u);
  r.norms["interior_nodes"] = mask.m;
  run.u = sol.u;
  run.f = f.field;
  return run;
}

}  // namespace hoelderlab
