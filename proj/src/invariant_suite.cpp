#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <numbers>
#include <sstream>

#include "hoelderlab/field_io.hpp"
#include "hoelderlab/random.hpp"
#include "hoelderlab/regularity_lab.hpp"

namespace hoelderlab {

namespace {

constexpr double kPi = std::numbers::pi;

GridField band_limited(std::uint64_t seed, int n, int kmax) {
  Spectrum spec(2, n);
  for (int ky = 0; ky <= kmax; ++ky)
    for (int kx = -kmax; kx <= kmax; ++kx) {
      if (ky == 0 && kx <= 0) continue;
      const double amp = unit_interval(hash_combine(seed, kx, ky, 1));
      const double th = 2.0 * kPi * unit_interval(hash_combine(seed, kx, ky, 2));
      spec.at(kx, ky) = std::polar(amp, th);
      spec.at(-kx, -ky) = std::conj(spec.at(kx, ky));
    }
  return from_spectrum(spec);
}

std::string num(double v) {
  std::ostringstream o;
  o.precision(6);
  o << v;
  return o.str();
}

CheckResult check(const std::string& name, const std::function<std::pair<bool, std::string>()>& body) {
  try {
    auto [ok, detail] = body();
    return {name, ok, detail};
  } catch (const std::exception& e) {
    return {name, false, std::string("exception: ") + e.what()};
  }
}

}  // namespace

std::vector<CheckResult> run_invariant_suite() {
  std::vector<CheckResult> out;

  out.push_back(check("spectral: Parseval", [] {
    double worst = 0.0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const GridField u = band_limited(seed, 64, 12);
      const Spectrum c = to_spectrum(u);
      double sum = 0.0;
      for (const auto& z : c.coeffs()) sum += std::norm(z);
      worst = std::max(worst, std::abs(sum - std::pow(l2_norm(u), 2)) / sum);
    }
    return std::pair{worst < 1e-10, "max rel err " + num(worst)};
  }));

  out.push_back(check("spectral: Besov norms decrease in q", [] {
    bool ok = true;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const auto b = block_norms(band_limited(seed, 64, 20));
      for (double s : {-0.5, 0.3, 1.2}) {
        const double q1 = besov_norm(b, s, 1.0), q2 = besov_norm(b, s, 2.0), qi = besov_norm(b, s, kInfinity);
        ok = ok && q1 >= q2 && q2 >= qi;
      }
    }
    return std::pair{ok, std::string(ok ? "" : "ordering violated")};
  }));

  out.push_back(check("spectral: shift isometry and |u_h - u| <= |h| |grad u|", [] {
    double iso = 0.0;
    bool ineq = true;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const GridField u = band_limited(seed, 64, 10);
      const double g = gradient_l2_norm(u);
      for (int t = 0; t < 5; ++t) {
        const Offset h{unit_interval(hash_combine(seed, t, 0, 3)) - 0.5, unit_interval(hash_combine(seed, t, 1, 3)) - 0.5};
        const GridField uh = shift(u, h);
        iso = std::max(iso, std::abs(l2_norm(uh) - l2_norm(u)) / l2_norm(u));
        ineq = ineq && l2_norm(uh - u) <= std::hypot(h.x, h.y) * g * (1.0 + 1e-12);
      }
    }
    return std::pair{iso < 1e-12 && ineq, "isometry err " + num(iso)};
  }));

  out.push_back(check("smoothness: |sin pi x|^0.5 gives s_hat near 1", [] {
    const GridField u = GridField::sample(1, 1 << 12, [](double x, double) { return std::pow(std::abs(std::sin(kPi * x)), 0.5); });
    const double s = estimate_smoothness(u).s_hat;
    return std::pair{std::abs(s - 1.0) < 0.1, "s_hat " + num(s)};
  }));

  out.push_back(check("smoothness: Weierstrass a = 0.5, b = 4 has order 0.5", [] {
    const double g = holder_exponent_estimate(sample_graph(BoundaryGraph::weierstrass(0.5, 4, 24, 7), 1 << 12));
    return std::pair{std::abs(g - 0.5) < 0.1, "gamma_hat " + num(g)};
  }));

  out.push_back(check("io: gfld round trip", [] {
    const auto dir = std::filesystem::temp_directory_path() / ("hoelderlab_verify_" + std::to_string(::getpid()));
    const GridField u = band_limited(3, 32, 5);
    write_gfld(dir / "u.gfld", u);
    const GridField v = read_gfld(dir / "u.gfld");
    std::filesystem::remove_all(dir);
    return std::pair{std::ranges::equal(v.values(), u.values()), std::string()};
  }));

  out.push_back(check("domain: vertical shift keeps the support inside", [] {
    ExperimentSpec spec;
    bool ok = true;
    for (double go : {0.5, 1.0}) {
      spec.gamma_omega = go;
      const HolderDomain dom = experiment_domain(spec);
      const DomainMask mask = rasterize(dom, 128);
      const BumpFunction psi = make_bump(2, 128, {0.5, 0.6}, 0.25);
      for (double h : {1.0 / 64, 1.0 / 32, 1.0 / 16}) ok = ok && vertical_shift_keeps_support(dom, mask, psi, h);
    }
    return std::pair{ok, std::string()};
  }));

  out.push_back(check("operator: default coefficients admissible", [] {
    const CoefficientSet cs = gen_coefficients(0.4, 5, 128, 0.1, 0.1, 0.3);
    const auto r = check_admissibility(cs, 0.4, 0.1);
    return std::pair{r.passed, "margin " + num(r.smallness_margin)};
  }));

  out.push_back(check("solver: f = 0, energy identity, maximum principle", [] {
    ExperimentSpec spec;
    const DomainMask mask = rasterize(experiment_domain(spec), 64);
    const DiscreteSystem sys = assemble(CoefficientSet::identity(2, 64), mask);
    const Solution zero = solve(sys, Rhs::from_field(GridField(2, 64)));
    GridField ones(2, 64);
    for (double& v : ones.values()) v = 1.0;
    const Solution sol = solve(sys, Rhs::from_field(ones));
    const double lhs = phi0_form(sys, sol.u, sol.u), rhs = apply_tau(ones, sol.u, mask);
    bool nonneg = true;
    for (double v : sol.u.values()) nonneg = nonneg && v >= 0.0;
    const bool ok = sup_norm(zero.u) == 0.0 && std::abs(lhs - rhs) <= 1e-8 * rhs && nonneg;
    return std::pair{ok, "energy rel err " + num(std::abs(lhs - rhs) / rhs)};
  }));

  out.push_back(check("exponents: closed-form values", [] {
    const bool ok = std::abs(predicted_primary(0.5, 0.8, 0.3) - 1.15) < 1e-12 &&
                    std::abs(remainder_r(1.0, 1.0, 0.5, 1) - 0.25) < 1e-12 &&
                    std::abs(bootstrap_target(1.0, 0.5, 2) - 1.375) < 1e-12 &&
                    std::abs(corollary_exponent(0.5, 0.6, 0.5).source + 0.775) < 1e-12;
    const auto sched = bootstrap_schedule(0.8, 0.9, 1.0, 20);
    const bool term = sched.r_N && sched.steps.back().target_order == 1.0 + 0.8 * 1.0 / 2.0;
    return std::pair{ok && term, std::string()};
  }));

  out.push_back(check("lab: sweep output independent of worker count", [] {
    ExperimentSpec base;
    const auto specs = sweep_grid(base, {1.0, 0.5}, {1.0}, {0.2, 0.0}, {256}, {2, 1});
    const std::string a = results_csv(run_sweep(specs, 1));
    const std::string b = results_csv(run_sweep(specs, 4));
    return std::pair{a == b, std::string()};
  }));

  return out;
}

}  // namespace hoelderlab
