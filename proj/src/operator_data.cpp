#include "hoelderlab/operator_data.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hoelderlab/random.hpp"
#include "hoelderlab/spectral_field.hpp"

namespace hoelderlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// 1D periodic table of a random-phase Weierstrass series (b = 4) or, for
// gamma = 1, a short smooth cosine mixture. Values normalized into [-1, 1].
std::vector<double> rough_table(double gamma, std::uint64_t seed, int n) {
  std::vector<double> t(n, 0.0);
  if (gamma >= 1.0) {
    double norm = 0.0;
    for (int k = 1; k <= 3; ++k) {
      const double w = 1.0 / k;
      const double theta = kTwoPi * unit_interval(hash_combine(seed, k, 0, 11));
      for (int i = 0; i < n; ++i) t[i] += w * std::cos(kTwoPi * k * i / n + theta);
      norm += w;
    }
    for (double& v : t) v /= norm;
    return t;
  }
  const BoundaryGraph g = BoundaryGraph::weierstrass_for_gamma(gamma, 3, 24, seed | 1ULL);
  for (int i = 0; i < n; ++i) t[i] = graph_eval(g, static_cast<double>(i) / n);
  return t;
}

// p(x, y) = (W1(x) + W2(y) + W3(x + y)) / 3
GridField rough_field(double gamma, std::uint64_t seed, int n) {
  const auto w1 = rough_table(gamma, hash_combine(seed, 1), n);
  const auto w2 = rough_table(gamma, hash_combine(seed, 2), n);
  const auto w3 = rough_table(gamma, hash_combine(seed, 3), n);
  GridField f(2, n);
  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix < n; ++ix) f.at(ix, iy) = (w1[ix] + w2[iy] + w3[(ix + iy) & (n - 1)]) / 3.0;
  return f;
}

// Smooth field with a few low modes, normalized to sup |.| = 1.
GridField smooth_field(std::uint64_t seed, int n) {
  GridField f(2, n);
  for (int kx = -2; kx <= 2; ++kx) {
    for (int ky = 0; ky <= 2; ++ky) {
      if (ky == 0 && kx <= 0) continue;
      const double amp = 1.0 / (1.0 + kx * kx + ky * ky);
      const double theta = kTwoPi * unit_interval(hash_combine(seed, kx, ky, 7));
      for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix)
          f.at(ix, iy) += amp * std::cos(kTwoPi * (kx * ix + ky * iy) / n + theta);
    }
  }
  const double s = sup_norm(f);
  if (s > 0.0) f *= 1.0 / s;
  return f;
}

}  // namespace

GridField holder_field(double gamma, std::uint64_t seed, int n) {
  if (!(gamma > 0.0 && gamma <= 1.0)) throw InvalidArgument("Hoelder order must lie in (0, 1]");
  return rough_field(gamma, seed, n);
}

CoefficientSet CoefficientSet::constant(int dim, int n, double a11, double a12, double a22) {
  GridField zero(dim, n);
  auto filled = [&](double v) {
    GridField g(dim, n);
    for (double& x : g.values()) x = v;
    return g;
  };
  CoefficientSet cs{filled(a11), dim == 2 ? filled(a12) : zero, dim == 2 ? filled(a22) : zero, zero, zero, zero};
  cs.alpha = ellipticity_constant(cs);
  return cs;
}

CoefficientSet gen_coefficients(double gamma_c, std::uint64_t seed, int n, double scale_b, double scale_c,
                                double perturbation) {
  if (!(gamma_c > 0.0 && gamma_c <= 1.0)) throw InvalidArgument("gamma_c must lie in (0, 1]");
  if (!(perturbation >= 0.0 && perturbation <= 0.5)) throw InvalidArgument("perturbation must lie in [0, 0.5]");
  if (scale_b < 0.0 || scale_c < 0.0) throw InvalidArgument("coefficient scales must be non-negative");

  CoefficientSet cs = CoefficientSet::identity(2, n);
  if (perturbation > 0.0) {
    const GridField p1 = rough_field(gamma_c, hash_combine(seed, 101), n);
    const GridField p2 = rough_field(gamma_c, hash_combine(seed, 102), n);
    const GridField p3 = rough_field(gamma_c, hash_combine(seed, 103), n);
    for (std::size_t i = 0; i < cs.a11.size(); ++i) {
      cs.a11[i] = 1.0 + perturbation * p1[i];
      cs.a22[i] = 1.0 + perturbation * p2[i];
      cs.a12[i] = 0.5 * perturbation * p3[i];
    }
  }
  if (scale_b > 0.0) {
    cs.bx = smooth_field(hash_combine(seed, 201), n);
    cs.by = smooth_field(hash_combine(seed, 202), n);
    double peak = 0.0;
    for (std::size_t i = 0; i < cs.bx.size(); ++i) peak = std::max(peak, std::hypot(cs.bx[i], cs.by[i]));
    cs.bx *= scale_b / peak;
    cs.by *= scale_b / peak;
  }
  if (scale_c > 0.0) {
    cs.c = smooth_field(hash_combine(seed, 301), n);
    for (double& v : cs.c.values()) v = scale_c * (0.75 + 0.25 * v);
  }
  cs.nominal_gamma_c = gamma_c;
  cs.scale_b = scale_b;
  cs.scale_c = scale_c;
  cs.perturbation = perturbation;
  cs.seed = seed;
  cs.alpha = ellipticity_constant(cs);
  return cs;
}

double ellipticity_constant(const CoefficientSet& cs) {
  double lo = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < cs.a11.size(); ++i) {
    if (cs.dim() == 1) {
      lo = std::min(lo, cs.a11[i]);
      continue;
    }
    const double mean = 0.5 * (cs.a11[i] + cs.a22[i]);
    const double half_gap = std::hypot(0.5 * (cs.a11[i] - cs.a22[i]), cs.a12[i]);
    lo = std::min(lo, mean - half_gap);
  }
  return lo;
}

double holder_norm_A(const CoefficientSet& cs) {
  double top = 0.0;
  for (std::size_t i = 0; i < cs.a11.size(); ++i) {
    if (cs.dim() == 1) {
      top = std::max(top, cs.a11[i]);
      continue;
    }
    const double mean = 0.5 * (cs.a11[i] + cs.a22[i]);
    const double half_gap = std::hypot(0.5 * (cs.a11[i] - cs.a22[i]), cs.a12[i]);
    top = std::max(top, mean + half_gap);
  }
  const double g = cs.nominal_gamma_c;
  double semi = dyadic_holder_seminorm(cs.a11, g);
  if (cs.dim() == 2) semi = std::max({semi, dyadic_holder_seminorm(cs.a12, g), dyadic_holder_seminorm(cs.a22, g)});
  return top + semi;
}

double default_embedding_constant() { return std::pow(2.0, 0.25); }

AdmissibilityReport check_admissibility(const CoefficientSet& cs, double gamma, double eps, double kappa,
                                        const DomainMask* mask) {
  if (!(gamma > 0.0 && gamma <= 1.0)) throw InvalidArgument("admissibility: gamma must lie in (0, 1]");
  if (!(eps > 0.0)) throw InvalidArgument("admissibility: eps must be positive");
  const int d = cs.dim();

  GridField bmag(cs.dim(), cs.n());
  GridField cabs(cs.dim(), cs.n());
  for (std::size_t i = 0; i < bmag.size(); ++i) {
    bmag[i] = std::hypot(cs.bx[i], cs.by[i]);
    cabs[i] = std::abs(cs.c[i]);
  }
  if (mask) {
    for (std::size_t i = 0; i < bmag.size(); ++i)
      if (!mask->inside[i]) bmag[i] = cabs[i] = 0.0;
  }

  AdmissibilityReport r;
  r.alpha = ellipticity_constant(cs);
  r.holder_seminorm_A = holder_norm_A(cs);
  r.q_b = gamma >= 1.0 ? kInfinity : (d + eps) / (1.0 - gamma);
  r.q_c = std::max(2.0 + eps, static_cast<double>(d));
  r.lq_norm_b = lq_norm(bmag, r.q_b);
  r.lq_norm_c = lq_norm(cabs, r.q_c);
  r.smallness_margin = r.alpha - kappa * (r.lq_norm_b + r.lq_norm_c);
  r.ellipticity_ok = r.alpha > 0.0;
  r.smallness_ok = r.smallness_margin > 0.0;
  r.passed = r.ellipticity_ok && r.smallness_ok;
  return r;
}

}  // namespace hoelderlab
