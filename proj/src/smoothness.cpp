#include <algorithm>
#include <cmath>

#include "hoelderlab/spectral_field.hpp"

namespace hoelderlab {

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw InvalidArgument("line fit needs at least two points");
  const double m = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= m;
  my /= m;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw InvalidArgument("line fit abscissae are all equal");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (f.intercept + f.slope * x[i]);
    ss_res += r * r;
  }
  f.r2 = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  return f;
}

SmoothnessFit estimate_smoothness(const BlockDecomposition& blocks, int j_lo, int j_hi) {
  if (j_lo < 2 || j_hi > blocks.J - 1 || j_hi - j_lo + 1 < 4)
    throw InvalidArgument("smoothness fit range [" + std::to_string(j_lo) + ", " + std::to_string(j_hi) +
                          "] must lie in [2, J-1] and span at least 4 blocks");
  std::vector<double> xs, ys;
  for (int j = j_lo; j <= j_hi; ++j) {
    const double v = blocks.norms[j];
    if (!(v > 0.0)) throw ComputationError("smoothness fit: block " + std::to_string(j) + " is empty");
    xs.push_back(j);
    ys.push_back(std::log2(v));
  }
  const LineFit line = fit_line(xs, ys);
  return {-line.slope, line.r2, line.intercept};
}

SmoothnessFit estimate_smoothness(const GridField& u, int j_lo, int j_hi) {
  return estimate_smoothness(block_norms(u), j_lo, j_hi);
}

SmoothnessFit estimate_smoothness(const GridField& u) {
  const int J = log2_exact(u.n()) - 1;
  return estimate_smoothness(u, 2, J - 2);
}

DyadicModulus dyadic_modulus(const GridField& u) {
  const int n = u.n();
  const int L = log2_exact(n);
  DyadicModulus out;
  for (int m = 1; m <= L; ++m) {
    const int step = n >> m;
    double w = 0.0;
    for (int axis = 0; axis < u.dim(); ++axis) {
      const GridField d = roll(u, axis == 0 ? step : 0, axis == 1 ? step : 0) - u;
      w = std::max(w, sup_norm(d));
    }
    out.steps.push_back(std::ldexp(1.0, -m));
    out.omega.push_back(w);
  }
  return out;
}

double dyadic_holder_seminorm(const GridField& u, double gamma) {
  const DyadicModulus mod = dyadic_modulus(u);
  double best = 0.0;
  for (std::size_t i = 0; i < mod.steps.size(); ++i) best = std::max(best, mod.omega[i] / std::pow(mod.steps[i], gamma));
  return best;
}

namespace {

// lags 1..16 then geometric with ratio 1.0625, capped at n/2
std::vector<int> lag_set(int n) {
  std::vector<int> lags;
  for (int l = 1; l <= std::min(16, n / 2); ++l) lags.push_back(l);
  double l = 16.0;
  while (true) {
    l *= 1.0625;
    const int li = static_cast<int>(std::lround(l));
    if (li > n / 2) break;
    if (li > lags.back()) lags.push_back(li);
  }
  return lags;
}

// sup over axes of || u(x + l e) - 2 u(x) + u(x - l e) ||_inf
double second_difference_sup(const GridField& u, int lag) {
  const int n = u.n();
  double w = 0.0;
  if (u.dim() == 1) {
    for (int i = 0; i < n; ++i)
      w = std::max(w, std::abs(u[(i + lag) % n] - 2.0 * u[i] + u[(i - lag % n + n) % n]));
    return w;
  }
  for (int iy = 0; iy < n; ++iy) {
    const std::size_t row = static_cast<std::size_t>(iy) * n;
    const std::size_t up = static_cast<std::size_t>((iy + lag) % n) * n;
    const std::size_t dn = static_cast<std::size_t>((iy - lag % n + n) % n) * n;
    for (int ix = 0; ix < n; ++ix) {
      const double c = u[row + ix];
      w = std::max(w, std::abs(u[row + (ix + lag) % n] - 2.0 * c + u[row + (ix - lag % n + n) % n]));
      w = std::max(w, std::abs(u[up + ix] - 2.0 * c + u[dn + ix]));
    }
  }
  return w;
}

}  // namespace

double holder_exponent_estimate(const GridField& u) {
  const int n = u.n();
  const int L = log2_exact(n);
  if (L < 4) throw InvalidArgument("Hoelder exponent estimate needs n >= 16");
  // omega(delta) = sup over lags <= delta of the second-difference sup norm
  const std::vector<int> lags = lag_set(n);
  std::vector<double> running(lags.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < lags.size(); ++i) {
    acc = std::max(acc, second_difference_sup(u, lags[i]));
    running[i] = acc;
  }
  std::vector<double> xs, ys;
  for (int m = 2; m <= L - 1; ++m) {
    const int step = n >> m;
    double w = 0.0;
    for (std::size_t i = 0; i < lags.size() && lags[i] <= step; ++i) w = running[i];
    if (!(w > 0.0)) continue;
    xs.push_back(-m);
    ys.push_back(std::log2(w));
  }
  if (xs.size() < 2) throw ComputationError("Hoelder exponent undefined: field is affine at the dyadic scales");
  const double slope = fit_line(xs, ys).slope;
  return std::clamp(slope, 1e-12, 1.0);
}

}  // namespace hoelderlab
