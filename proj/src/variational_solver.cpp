#include "hoelderlab/variational_solver.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "hoelderlab/random.hpp"
#include "hoelderlab/spectral_field.hpp"

namespace hoelderlab {

Rhs Rhs::from_field(GridField f, double s) {
  Rhs r;
  r.s = s;
  r.field = std::move(f);
  return r;
}

Rhs make_rhs(double s, std::uint64_t seed, int n, int dim, double decay_margin, bool zero_mean) {
  if (!(s >= 0.0 && s <= 1.0)) throw InvalidArgument("make_rhs: s must lie in [0, 1]");
  const double decay = (-1.0 + s) + dim / 2.0 + decay_margin;
  Spectrum spec(dim, n);
  const int half = n / 2;
  auto amplitude = [&](int kx, int ky) { return std::pow(1.0 + std::hypot(kx, ky), -decay); };
  auto phase = [&](int kx, int ky) { return 2.0 * std::numbers::pi * unit_interval(hash_combine(seed, kx, ky, 0x5eed)); };

  const int ky_max = dim == 1 ? 0 : half - 1;
  for (int ky = 0; ky <= ky_max; ++ky) {
    for (int kx = -half + 1; kx <= half - 1; ++kx) {
      if (ky == 0 && kx <= 0) continue;  // canonical half plane
      const auto c = std::polar(amplitude(kx, ky), phase(kx, ky));
      spec.at(kx, ky) = c;
      spec.at(-kx, -ky) = std::conj(c);
    }
  }
  spec.at(0, 0) = zero_mean ? 0.0 : 1.0;

  Rhs r;
  r.s = s;
  r.seed = seed;
  r.decay_margin = decay_margin;
  r.field = from_spectrum(spec);
  return r;
}

namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;

void add_local(Triplets& t, const DomainMask& mask, const std::size_t* verts, int count, const double* local) {
  for (int a = 0; a < count; ++a) {
    const int ra = mask.interior_index[verts[a]];
    if (ra < 0) continue;
    for (int b = 0; b < count; ++b) {
      const int cb = mask.interior_index[verts[b]];
      if (cb < 0) continue;
      const double v = local[a * count + b];
      if (v != 0.0) t.emplace_back(ra, cb, v);
    }
  }
}

SparseMatrix to_matrix(int m, const Triplets& t) {
  SparseMatrix k(m, m);
  k.setFromTriplets(t.begin(), t.end());
  k.makeCompressed();
  return k;
}

}  // namespace

DiscreteSystem assemble(const CoefficientSet& cs, const DomainMask& mask) {
  if (cs.dim() != mask.dim || cs.n() != mask.n) throw InvalidArgument("assemble: coefficients and mask differ in shape");
  if (mask.m == 0) throw InvalidArgument("assemble: empty interior");
  const int n = mask.n;
  const double h = 1.0 / n;
  const GridField& probe = cs.a11;

  Triplets ts, tb, tc;
  ts.reserve(static_cast<std::size_t>(mask.m) * (mask.dim == 1 ? 4 : 14));
  for (std::size_t p = 0; p < probe.size(); ++p) {
    const int ix = static_cast<int>(p % n);
    const int iy = mask.dim == 1 ? 0 : static_cast<int>(p / n);

    if (mask.dim == 1) {
      // a(p) (u_{p+1} - u_p)(v_{p+1} - v_p) / h
      const std::size_t v[2] = {p, probe.index(ix + 1)};
      const double a = cs.a11[p] / h;
      const double local[4] = {a, -a, -a, a};
      add_local(ts, mask, v, 2, local);
    } else {
      const double A[2][2] = {{cs.a11[p], cs.a12[p]}, {cs.a12[p], cs.a22[p]}};
      // lower triangle p, p+e1, p+e2 and upper triangle p, p-e1, p-e2, both with
      // their right angle at p; 0.5 = area / h^2
      const std::size_t lower[3] = {p, probe.index(ix + 1, iy), probe.index(ix, iy + 1)};
      const std::size_t upper[3] = {p, probe.index(ix - 1, iy), probe.index(ix, iy - 1)};
      const double D[2][3] = {{-1.0, 1.0, 0.0}, {-1.0, 0.0, 1.0}};
      double local[9];
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
          double acc = 0.0;
          for (int r = 0; r < 2; ++r)
            for (int s = 0; s < 2; ++s) acc += D[r][a] * A[r][s] * D[s][b];
          local[a * 3 + b] = 0.5 * acc;
        }
      // the upper triangle's difference operator is the negation of the lower one,
      // so the same local matrix applies
      add_local(ts, mask, lower, 3, local);
      add_local(ts, mask, upper, 3, local);
    }

    const int row = mask.interior_index[p];
    if (row < 0) continue;
    const double hd = probe.cell_volume();
    const double bscale = hd / (2.0 * h);
    auto couple = [&](std::size_t q, double w) {
      const int col = mask.interior_index[q];
      if (col >= 0 && w != 0.0) tb.emplace_back(row, col, w);
    };
    couple(probe.index(ix + 1, iy), bscale * cs.bx[p]);
    couple(probe.index(ix - 1, iy), -bscale * cs.bx[p]);
    if (mask.dim == 2) {
      couple(probe.index(ix, iy + 1), bscale * cs.by[p]);
      couple(probe.index(ix, iy - 1), -bscale * cs.by[p]);
    }
    if (cs.c[p] != 0.0) tc.emplace_back(row, row, hd * cs.c[p]);
  }

  DiscreteSystem sys;
  sys.m = mask.m;
  sys.sym = to_matrix(mask.m, ts);
  sys.skew = to_matrix(mask.m, tb);
  sys.mass_c = to_matrix(mask.m, tc);
  sys.mask = mask;
  return sys;
}

double apply_tau(const GridField& f, const GridField& v, const DomainMask& mask) {
  require_same_shape(f, v, "apply_tau");
  if (f.dim() != mask.dim || f.n() != mask.n) throw InvalidArgument("apply_tau: mask shape differs");
  double acc = 0.0;
  for (std::size_t node : mask.nodes) acc += f[node] * v[node];
  return acc * f.cell_volume();
}

double apply_tau(const Rhs& f, const GridField& v, const DomainMask& mask) { return apply_tau(f.field, v, mask); }

namespace {

Eigen::VectorXd interior_vector(const DomainMask& mask, const GridField& u) {
  const auto vals = mask.restrict_to(u);
  return Eigen::Map<const Eigen::VectorXd>(vals.data(), static_cast<Eigen::Index>(vals.size()));
}

}  // namespace

double phi0_form(const DiscreteSystem& sys, const GridField& u, const GridField& v) {
  const Eigen::VectorXd x = interior_vector(sys.mask, u);
  const Eigen::VectorXd y = interior_vector(sys.mask, v);
  return y.dot(sys.sym * x);
}

double phi_r_form(const CoefficientSet& cs, const DomainMask& mask, const GridField& u, const GridField& z) {
  require_same_shape(u, z, "phi_r_form");
  const int n = u.n();
  const double h = u.spacing();
  double acc = 0.0;
  for (std::size_t p : mask.nodes) {
    const int ix = static_cast<int>(p % n);
    const int iy = u.dim() == 1 ? 0 : static_cast<int>(p / n);
    double transport = cs.bx[p] * (u.at(ix + 1, iy) - u.at(ix - 1, iy)) / (2.0 * h);
    if (u.dim() == 2) transport += cs.by[p] * (u.at(ix, iy + 1) - u.at(ix, iy - 1)) / (2.0 * h);
    acc += z[p] * (transport + cs.c[p] * u[p]);
  }
  return acc * u.cell_volume();
}

double min_ritz_quotient(const DiscreteSystem& sys, int samples, std::uint64_t seed) {
  const SparseMatrix K = sys.total();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  double lo = std::numeric_limits<double>::infinity();
  Eigen::VectorXd x(sys.m);
  for (int s = 0; s < samples; ++s) {
    for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = gauss(rng);
    lo = std::min(lo, x.dot(K * x) / x.squaredNorm());
  }
  return lo;
}

namespace {
// AMD reordering roughly doubles the iteration count on these grid operators
using IcPreconditioner = Eigen::IncompleteCholesky<double, Eigen::Lower, Eigen::NaturalOrdering<int>>;
}  // namespace

Solution solve(const DiscreteSystem& sys, const Rhs& f, const SolverOptions& opts) {
  const DomainMask& mask = sys.mask;
  if (f.field.dim() != mask.dim || f.field.n() != mask.n) throw InvalidArgument("solve: rhs shape differs from mask");
  if (opts.check_coercivity) {
    const double ritz = min_ritz_quotient(sys);
    if (!(ritz > 0.0)) throw ComputationError("solve: discrete form is not coercive (min Ritz quotient " +
                                              std::to_string(ritz) + ")");
  }

  const double hd = f.field.cell_volume();
  Eigen::VectorXd rhs(sys.m);
  for (int k = 0; k < sys.m; ++k) rhs[k] = hd * f.field[mask.nodes[k]];

  Solution sol;
  sol.u = GridField(mask.dim, mask.n);
  if (rhs.norm() == 0.0) return sol;

  const int cap = opts.max_iterations > 0 ? opts.max_iterations
                                          : static_cast<int>(std::ceil(50.0 * std::sqrt(static_cast<double>(sys.m))));
  const SparseMatrix K = sys.total();
  Eigen::VectorXd x;
  int iterations = 0;
  if (!sys.has_transport()) {
    Eigen::ConjugateGradient<SparseMatrix, Eigen::Lower | Eigen::Upper, IcPreconditioner> cg;
    cg.setTolerance(0.5 * opts.tol);
    cg.setMaxIterations(cap);
    cg.compute(K);
    x = cg.solve(rhs);
    iterations = static_cast<int>(cg.iterations());
  } else {
    // transport is a small perturbation of the symmetric part, so an incomplete
    // Cholesky factor of the lower triangle still preconditions well
    Eigen::BiCGSTAB<SparseMatrix, IcPreconditioner> bicg;
    bicg.setTolerance(0.5 * opts.tol);
    bicg.setMaxIterations(cap);
    bicg.compute(K);
    x = bicg.solve(rhs);
    iterations = static_cast<int>(bicg.iterations());
  }

  sol.iterations = iterations;
  sol.residual = (K * x - rhs).norm() / rhs.norm();
  if (!(sol.residual <= opts.tol))
  {
    char buf[128];
    std::snprintf(buf, sizeof buf, "solve: relative residual %.3e above tolerance %.3e after %d iterations", sol.residual,
                  opts.tol, iterations);
    throw ComputationError(buf);
  }
  sol.energy = x.dot(K * x);
  sol.u = mask.extend(std::vector<double>(x.data(), x.data() + x.size()));
  return sol;
}

}  // namespace hoelderlab
