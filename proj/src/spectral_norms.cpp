#include <algorithm>
#include <cmath>
#include <numbers>

#include "hoelderlab/spectral_field.hpp"

namespace hoelderlab {

double sobolev_norm(const Spectrum& s, double order) {
  double acc = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double k = s.magnitude(i);
    acc += std::pow(1.0 + k * k, order) * std::norm(s[i]);
  }
  return std::sqrt(acc);
}

double sobolev_norm(const GridField& u, double s) { return sobolev_norm(to_spectrum(u), s); }

int block_of(double magnitude, int J) {
  if (magnitude <= 1.0) return 0;
  // smallest j with magnitude <= 2^j
  int j = static_cast<int>(std::ceil(std::log2(magnitude)));
  if (std::ldexp(1.0, j - 1) >= magnitude) --j;
  while (std::ldexp(1.0, j) < magnitude) ++j;
  return std::min(j, J);
}

BlockDecomposition block_norms(const Spectrum& s) {
  BlockDecomposition b;
  b.J = log2_exact(s.n()) - 1;
  std::vector<double> sq(b.J + 1, 0.0);
  for (std::size_t i = 0; i < s.size(); ++i) sq[block_of(s.magnitude(i), b.J)] += std::norm(s[i]);
  b.norms.resize(sq.size());
  std::transform(sq.begin(), sq.end(), b.norms.begin(), [](double v) { return std::sqrt(v); });
  return b;
}

BlockDecomposition block_norms(const GridField& u) { return block_norms(to_spectrum(u)); }

double besov_norm(const BlockDecomposition& blocks, double s, double q) {
  if (!(q >= 1.0)) throw InvalidArgument("Besov norm requires q >= 1");
  const auto& a = blocks.norms;
  if (std::isinf(q)) {
    double m = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::exp2(s * j) * a[j]);
    return m;
  }
  double acc = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) acc += std::pow(std::exp2(s * j) * a[j], q);
  return std::pow(acc, 1.0 / q);
}

double besov_norm(const GridField& u, double s, double q) { return besov_norm(block_norms(u), s, q); }

double besov_seminorm_inf(const BlockDecomposition& blocks, double s) {
  double m = 0.0;
  for (std::size_t j = 1; j < blocks.norms.size(); ++j) m = std::max(m, std::exp2(s * j) * blocks.norms[j]);
  return m;
}

std::vector<double> dyadic_steps(int n) {
  const int L = log2_exact(n);
  std::vector<double> steps;
  for (int m = 2; m <= L - 2; ++m) steps.push_back(std::ldexp(1.0, -m));
  if (steps.empty()) steps.push_back(0.5);
  return steps;
}

double nikolskii_seminorm_dq(const GridField& u, int k, double gamma) {
  if (!(gamma > 0.0 && gamma <= 1.0)) throw InvalidArgument("difference-quotient order gamma must lie in (0, 1]");
  if (k != 0 && k != 1) throw InvalidArgument("derivative order k must be 0 or 1");

  std::vector<GridField> parts;
  if (k == 0) parts.push_back(u);
  else parts = gradient(u);

  const int n = u.n();
  double best = 0.0;
  for (const GridField& v : parts) {
    for (double h : dyadic_steps(n)) {
      const int step = static_cast<int>(std::lround(h * n));
      for (int axis = 0; axis < u.dim(); ++axis) {
        const int sx = axis == 0 ? step : 0;
        const int sy = axis == 1 ? step : 0;
        // second difference v_{2h} - 2 v_h + v at gamma = 1
        const GridField diff =
            gamma == 1.0 ? roll(v, 2 * sx, 2 * sy) - 2.0 * roll(v, sx, sy) + v : roll(v, sx, sy) - v;
        best = std::max(best, l2_norm(diff) / std::pow(h, gamma));
      }
    }
  }
  return best;
}

double verify_shift_inequality(const GridField& u, double gamma1, double gamma2) {
  if (!(gamma1 > 0.0) || !(gamma1 < gamma2)) throw InvalidArgument("shift inequality requires 0 < gamma1 < gamma2");
  if (gamma2 - gamma1 > 1.0) throw InvalidArgument("shift inequality requires gamma2 - gamma1 <= 1");

  const Spectrum su = to_spectrum(u);
  const double rhs_norm = gamma2 == 1.0 ? sobolev_norm(su, 1.0) : besov_norm(block_norms(su), gamma2, kInfinity);
  if (rhs_norm == 0.0) return 0.0;

  // u - u_h has coefficients c_k (1 - e^{2 pi i k.h}); evaluate block norms directly.
  const int n = u.n();
  const int J = log2_exact(n) - 1;
  double best = 0.0;
  for (double h : dyadic_steps(n)) {
    for (int axis = 0; axis < u.dim(); ++axis) {
      std::vector<double> sq(J + 1, 0.0);
      for (std::size_t i = 0; i < su.size(); ++i) {
        const int idx = static_cast<int>(u.dim() == 1 ? i : (axis == 0 ? i % n : i / n));
        const double k = su.frequency(idx);
        const double factor = 2.0 * std::sin(std::numbers::pi * k * h);
        sq[block_of(su.magnitude(i), J)] += factor * factor * std::norm(su[i]);
      }
      BlockDecomposition diff{J, {}};
      for (double v : sq) diff.norms.push_back(std::sqrt(v));
      const double lhs = besov_norm(diff, gamma1, kInfinity);
      best = std::max(best, lhs / (std::pow(h, gamma2 - gamma1) * rhs_norm));
    }
  }
  return best;
}

}  // namespace hoelderlab
