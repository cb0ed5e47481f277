#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hoelderlab/random.hpp"
#include "hoelderlab/spectral_field.hpp"
#include "hoelderlab/variational_solver.hpp"
#include "test_support.hpp"

using namespace hoelderlab;
using test_support::kPi;

namespace {

DomainMask strip_mask(int n) {
  return mask_from_predicate(2, n, [](double, double y) { return y > 0.25 && y < 0.75; });
}

DomainMask interval_mask(int n) {
  return mask_from_predicate(1, n, [](double x, double) { return x > 0.0 && x < 0.5; });
}

GridField random_interior(const DomainMask& mask, std::uint64_t seed) {
  GridField u(mask.dim, mask.n);
  for (std::size_t node : mask.nodes) u[node] = 2.0 * unit_interval(hash_combine(seed, node)) - 1.0;
  return u;
}

// sum over the two right triangles attached to each node of area * A(p) grad u . grad v
double quadrature_oracle(const CoefficientSet& cs, const GridField& u, const GridField& v) {
  const int n = u.n();
  const double h = 1.0 / n;
  double acc = 0.0;
  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix < n; ++ix) {
      const std::size_t p = u.index(ix, iy);
      const double a11 = cs.a11[p], a12 = cs.a12[p], a22 = cs.a22[p];
      auto term = [&](double ux, double uy, double vx, double vy) {
        return 0.5 * h * h * (a11 * ux * vx + a12 * (ux * vy + uy * vx) + a22 * uy * vy);
      };
      acc += term((u.at(ix + 1, iy) - u[p]) / h, (u.at(ix, iy + 1) - u[p]) / h, (v.at(ix + 1, iy) - v[p]) / h,
                  (v.at(ix, iy + 1) - v[p]) / h);
      acc += term((u[p] - u.at(ix - 1, iy)) / h, (u[p] - u.at(ix, iy - 1)) / h, (v[p] - v.at(ix - 1, iy)) / h,
                  (v[p] - v.at(ix, iy - 1)) / h);
    }
  return acc;
}

// -w'' + k^2 w = 1 on (0, L), w(0) = w(L) = 0, by its sine series
double strip_profile(double t, double L, double k, int terms) {
  double w = 0.0;
  for (int j = 1, used = 0; used < terms; j += 2, ++used) {
    const double mu = j * kPi / L;
    w += 4.0 / (j * kPi) * std::sin(mu * t) / (mu * mu + k * k);
  }
  return w;
}

}  // namespace

TEST_CASE("rough sources") {
  const Rhs f = make_rhs(0.4, 3, 512);
  CHECK(std::abs(estimate_smoothness(f.field).s_hat - (-0.55)) < 0.1);

  const Rhs l2 = make_rhs(1.0, 3, 256);
  CHECK(std::isfinite(sobolev_norm(l2.field, 0.0)));

  const Spectrum a = to_spectrum(make_rhs(0.4, 9, 64).field), b = to_spectrum(make_rhs(0.4, 9, 128).field);
  for (int ky = -31; ky <= 31; ++ky)
    for (int kx = -31; kx <= 31; ++kx) CHECK(std::abs(a.at(kx, ky) - b.at(kx, ky)) < 1e-13);

  for (double s : {0.0, 0.3, 0.6}) {
    const double lo = sobolev_norm(make_rhs(s, 5, 128).field, -1.0 + s);
    const double hi = sobolev_norm(make_rhs(s, 5, 512).field, -1.0 + s);
    CHECK(hi / lo < 1.5);
  }
  const Rhs z = make_rhs(0.2, 1, 64, 2, 0.05, true);
  CHECK(std::abs(to_spectrum(z.field).at(0, 0)) < 1e-14);
}

TEST_CASE("assembly") {
  const int n = 32;
  const DomainMask mask = strip_mask(n);

  SUBCASE("laplacian stencil") {
    const DiscreteSystem sys = assemble(CoefficientSet::identity(2, n), mask);
    for (int k = 0; k < sys.m; ++k) {
      const std::size_t p = mask.nodes[k];
      const int ix = static_cast<int>(p % n), iy = static_cast<int>(p / n);
      const bool deep = mask.contains(sys.mask.indicator().index(ix, iy + 1)) &&
                        mask.contains(sys.mask.indicator().index(ix, iy - 1));
      double row = 0.0;
      for (SparseMatrix::InnerIterator it(sys.sym, k); it; ++it) row += it.value();
      if (deep) CHECK(std::abs(row) < 1e-12);
      CHECK(sys.sym.coeff(k, k) == doctest::Approx(4.0));
    }
    CHECK(sys.skew.nonZeros() == 0);
    CHECK_FALSE(sys.has_transport());
  }

  SUBCASE("lumped zeroth order term") {
    CoefficientSet cs = CoefficientSet::identity(2, n);
    for (double& v : cs.c.values()) v = 1.0;
    const DiscreteSystem sys = assemble(cs, mask);
    CHECK(sys.mass_c.nonZeros() == sys.m);
    for (int k = 0; k < sys.m; ++k) CHECK(sys.mass_c.coeff(k, k) == doctest::Approx(1.0 / (n * n)));
  }

  SUBCASE("symmetric part against a quadrature loop") {
    const CoefficientSet cs = gen_coefficients(0.5, 4, n, 0.1, 0.1, 0.5);
    const DiscreteSystem sys = assemble(cs, mask);
    const SparseMatrix t = sys.sym.transpose();
    CHECK((sys.sym - t).norm() == 0.0);
    for (std::uint64_t seed : {1, 2, 3}) {
      const GridField u = random_interior(mask, seed), v = random_interior(mask, seed + 10);
      const double oracle = quadrature_oracle(cs, u, v);
      CHECK(std::abs(phi0_form(sys, u, v) - oracle) <= 1e-10 * std::max(1.0, std::abs(oracle)));
    }
    CHECK(sys.has_transport());
    CHECK(min_ritz_quotient(sys) > 0.0);
  }

  CHECK_THROWS_AS(assemble(CoefficientSet::identity(2, 16), mask), InvalidArgument);
}

TEST_CASE("source functional") {
  const int n = 32;
  const DomainMask mask = strip_mask(n);
  GridField one(2, n);
  for (double& v : one.values()) v = 1.0;
  CHECK(apply_tau(one, GridField(2, n), mask) == 0.0);
  CHECK(apply_tau(one, one, mask) == doctest::Approx(double(mask.m) / (n * n)));
  const GridField f = test_support::band_limited(1, 2, n, 6);
  const GridField v = test_support::band_limited(2, 2, n, 6), w = test_support::band_limited(3, 2, n, 6);
  const double lhs = apply_tau(f, 2.5 * v + (-1.5) * w, mask);
  const double rhs = 2.5 * apply_tau(f, v, mask) - 1.5 * apply_tau(f, w, mask);
  CHECK(std::abs(lhs - rhs) < 1e-12);
}

TEST_CASE("one-dimensional model problem") {
  // -u'' = 1 on (0, 1/2): u = x (1/2 - x) / 2, reproduced exactly by the 3-point stencil
  const int n = 64;
  const DomainMask mask = interval_mask(n);
  const DiscreteSystem sys = assemble(CoefficientSet::identity(1, n), mask);
  GridField one(1, n);
  for (double& v : one.values()) v = 1.0;
  const Solution sol = solve(sys, Rhs::from_field(one));
  CHECK(sup_norm(sol.u) == doctest::Approx(1.0 / 32).epsilon(1e-8));
  for (int i = 0; i < n; ++i) {
    const double x = double(i) / n;
    const double exact = x < 0.5 ? x * (0.5 - x) / 2 : 0.0;
    CHECK(std::abs(sol.u.at(i) - exact) < 1e-9);
  }
}

TEST_CASE("second-order convergence in one dimension") {
  // -u'' = 4 pi^2 sin(2 pi x) on (0, 1/2), u = sin(2 pi x)
  std::vector<double> lx, ly;
  for (int n = 1 << 7; n <= 1 << 11; n *= 2) {
    const DomainMask mask = interval_mask(n);
    const DiscreteSystem sys = assemble(CoefficientSet::identity(1, n), mask);
    const GridField f = GridField::sample(1, n, [](double x, double) { return 4 * kPi * kPi * std::sin(2 * kPi * x); });
    SolverOptions opts;
    opts.tol = 1e-10;
    const Solution sol = solve(sys, Rhs::from_field(f), opts);
    double err = 0.0;
    for (std::size_t node : mask.nodes) err = std::max(err, std::abs(sol.u[node] - std::sin(2 * kPi * node / double(n))));
    lx.push_back(std::log2(double(n)));
    ly.push_back(std::log2(err));
  }
  CHECK(std::abs(test_support::slope(lx, ly) + 2.0) < 0.2);
}

TEST_CASE("strip problem against a separated-variables series") {
  const int n = 512;
  const DomainMask mask = strip_mask(n);
  const DiscreteSystem sys = assemble(CoefficientSet::identity(2, n), mask);
  const GridField f = GridField::sample(2, n, [](double x, double) { return std::sin(2 * kPi * x); });
  const Solution sol = solve(sys, Rhs::from_field(f));
  double err = 0.0;
  for (std::size_t node : mask.nodes) {
    const double x = double(node % n) / n, y = double(node / n) / n;
    const double exact = std::sin(2 * kPi * x) * strip_profile(y - 0.25, 0.5, 2 * kPi, 100);
    err = std::max(err, std::abs(sol.u[node] - exact));
  }
  CHECK(err <= 1e-3);
}

TEST_CASE("solver properties") {
  const int n = 64;
  HolderDomain dom;
  dom.graph = BoundaryGraph::weierstrass_for_gamma(0.5, 3, 24, 3);
  const DomainMask mask = rasterize(dom, n);

  SUBCASE("zero source") {
    const DiscreteSystem sys = assemble(gen_coefficients(0.5, 1, n, 0.1, 0.1, 0.3), mask);
    const Solution sol = solve(sys, Rhs::from_field(GridField(2, n)));
    for (double v : sol.u.values()) CHECK(v == 0.0);
  }

  SUBCASE("energy identity without lower order terms") {
    const DiscreteSystem sys = assemble(gen_coefficients(0.5, 2, n, 0.0, 0.0, 0.5), mask);
    const Rhs f = make_rhs(0.3, 4, n);
    const Solution sol = solve(sys, f);
    const double tau = apply_tau(f, sol.u, mask);
    CHECK(std::abs(phi0_form(sys, sol.u, sol.u) - tau) <= 1e-8 * std::abs(tau));
    CHECK(std::abs(sol.energy - tau) <= 1e-8 * std::abs(tau));
  }

  SUBCASE("maximum principle") {
    const DiscreteSystem sys = assemble(CoefficientSet::identity(2, n), mask);
    GridField f = make_rhs(0.2, 6, n).field;
    for (double& v : f.values()) v = std::abs(v);
    const Solution sol = solve(sys, Rhs::from_field(f));
    for (double v : sol.u.values()) CHECK(v >= 0.0);
  }

  SUBCASE("support, residual and the full form") {
    const CoefficientSet cs = gen_coefficients(0.5, 3, n, 0.1, 0.1, 0.3);
    const DiscreteSystem sys = assemble(cs, mask);
    const Rhs f = make_rhs(0.3, 8, n);
    SolverOptions opts;
    opts.tol = 1e-9;
    const Solution sol = solve(sys, f, opts);
    for (std::size_t i = 0; i < sol.u.size(); ++i)
      if (!mask.contains(i)) CHECK(sol.u[i] == 0.0);
    CHECK(sol.residual <= opts.tol);
    CHECK(sol.iterations > 0);
    // Phi(u, v) = tau(f, v) for a test function v
    const GridField v = random_interior(mask, 77);
    const double lhs = phi0_form(sys, sol.u, v) + phi_r_form(cs, mask, sol.u, v);
    const double rhs = apply_tau(f, v, mask);
    CHECK(std::abs(lhs - rhs) <= 1e-6 * std::abs(rhs) + 1e-12);
  }

  SUBCASE("iteration cap") {
    const DiscreteSystem sys = assemble(CoefficientSet::identity(2, n), mask);
    SolverOptions opts;
    opts.max_iterations = 1;
    opts.tol = 1e-14;
    CHECK_THROWS_AS(solve(sys, make_rhs(0.3, 8, n), opts), ComputationError);
  }
}
