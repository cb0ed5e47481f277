#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>

#include "hoelderlab/spectral_field.hpp"

namespace hoelderlab {

namespace {

// The FFTW planner is not reentrant; plan execution with the new-array API is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// Real-data transforms on the half spectrum kx = 0..n/2 (FFTW r2c layout).
std::vector<std::complex<double>> forward_half(int dim, int n, std::vector<double> values) {
  const int rows = dim == 1 ? 1 : n;
  std::vector<std::complex<double>> half(static_cast<std::size_t>(rows) * (n / 2 + 1));
  auto* out = reinterpret_cast<fftw_complex*>(half.data());
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = dim == 1 ? fftw_plan_dft_r2c_1d(n, values.data(), out, FFTW_ESTIMATE)
                    : fftw_plan_dft_r2c_2d(n, n, values.data(), out, FFTW_ESTIMATE);
  }
  fftw_execute_dft_r2c(plan, values.data(), out);
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(plan);
  return half;
}

// c2r overwrites its input, so half is taken by value
std::vector<double> backward_half(int dim, int n, std::vector<std::complex<double>> half) {
  const int rows = dim == 1 ? 1 : n;
  std::vector<double> values(static_cast<std::size_t>(rows) * n);
  auto* in = reinterpret_cast<fftw_complex*>(half.data());
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = dim == 1 ? fftw_plan_dft_c2r_1d(n, in, values.data(), FFTW_ESTIMATE)
                    : fftw_plan_dft_c2r_2d(n, n, in, values.data(), FFTW_ESTIMATE);
  }
  fftw_execute_dft_c2r(plan, in, values.data());
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(plan);
  return values;
}

}  // namespace

Spectrum::Spectrum(int dim, int n) : Spectrum(dim, n, {}) {}

Spectrum::Spectrum(int dim, int n, std::vector<std::complex<double>> coeffs)
    : dim_(dim), n_(n), coeffs_(std::move(coeffs)) {
  if (dim != 1 && dim != 2) throw InvalidArgument("spectrum dimension must be 1 or 2");
  if (n < 2 || !is_power_of_two(n)) throw InvalidArgument("spectrum size must be a power of two");
  const std::size_t expected = dim == 1 ? static_cast<std::size_t>(n) : static_cast<std::size_t>(n) * n;
  if (coeffs_.empty()) coeffs_.assign(expected, 0.0);
  if (coeffs_.size() != expected) throw InvalidArgument("spectrum length does not match n^dim");
}

std::complex<double>& Spectrum::at(int kx, int ky) {
  return dim_ == 1 ? coeffs_[slot(kx)] : coeffs_[static_cast<std::size_t>(slot(ky)) * n_ + slot(kx)];
}

const std::complex<double>& Spectrum::at(int kx, int ky) const {
  return dim_ == 1 ? coeffs_[slot(kx)] : coeffs_[static_cast<std::size_t>(slot(ky)) * n_ + slot(kx)];
}

double Spectrum::magnitude(std::size_t i) const {
  if (dim_ == 1) return std::abs(frequency(static_cast<int>(i)));
  const double kx = frequency(static_cast<int>(i % n_));
  const double ky = frequency(static_cast<int>(i / n_));
  return std::sqrt(kx * kx + ky * ky);
}

Spectrum to_spectrum(const GridField& u) {
  const int n = u.n(), w = n / 2 + 1;
  const int rows = u.dim() == 1 ? 1 : n;
  const std::vector<std::complex<double>> half = forward_half(u.dim(), n, std::vector<double>(u.values().begin(), u.values().end()));
  const double scale = 1.0 / static_cast<double>(u.size());
  std::vector<std::complex<double>> data(u.size());
  for (int ky = 0; ky < rows; ++ky) {
    const std::size_t row = static_cast<std::size_t>(ky) * n;
    const std::size_t mirror = static_cast<std::size_t>((rows - ky) % rows) * w;
    for (int kx = 0; kx < w; ++kx) data[row + kx] = scale * half[static_cast<std::size_t>(ky) * w + kx];
    for (int kx = w; kx < n; ++kx) data[row + kx] = scale * std::conj(half[mirror + (n - kx)]);
  }
  return Spectrum(u.dim(), n, std::move(data));
}

GridField from_spectrum(const Spectrum& s) {
  // the real part of the inverse sum equals the inverse of the Hermitian part of s
  const int n = s.n(), w = n / 2 + 1;
  const int rows = s.dim() == 1 ? 1 : n;
  const auto& c = s.coeffs();
  std::vector<std::complex<double>> half(static_cast<std::size_t>(rows) * w);
  for (int ky = 0; ky < rows; ++ky) {
    const std::size_t row = static_cast<std::size_t>(ky) * n;
    const std::size_t mirror = static_cast<std::size_t>((rows - ky) % rows) * n;
    for (int kx = 0; kx < w; ++kx)
      half[static_cast<std::size_t>(ky) * w + kx] = 0.5 * (c[row + kx] + std::conj(c[mirror + (n - kx) % n]));
  }
  return GridField(s.dim(), n, backward_half(s.dim(), n, std::move(half)));
}

GridField shift(const GridField& u, Offset h) {
  const int n = u.n();
  const double fx = h.x * n;
  const double fy = u.dim() == 2 ? h.y * n : 0.0;
  if (fx == std::round(fx) && fy == std::round(fy)) {
    return roll(u, static_cast<int>(std::llround(std::fmod(fx, n))), static_cast<int>(std::llround(std::fmod(fy, n))));
  }
  Spectrum s = to_spectrum(u);
  for (std::size_t i = 0; i < s.size(); ++i) {
    const int kx = s.frequency(static_cast<int>(u.dim() == 1 ? i : i % n));
    const int ky = u.dim() == 1 ? 0 : s.frequency(static_cast<int>(i / n));
    const double phase = 2.0 * std::numbers::pi * (kx * h.x + ky * h.y);
    s[i] *= std::polar(1.0, phase);
  }
  return from_spectrum(s);
}

GridField derivative(const GridField& u, int axis) {
  if (axis < 0 || axis >= u.dim()) throw InvalidArgument("derivative axis out of range");
  const int n = u.n();
  Spectrum s = to_spectrum(u);
  for (std::size_t i = 0; i < s.size(); ++i) {
    const int ix = static_cast<int>(u.dim() == 1 ? i : i % n);
    const int iy = u.dim() == 1 ? 0 : static_cast<int>(i / n);
    const int k = s.frequency(axis == 0 ? ix : iy);
    if (k == -n / 2) {
      s[i] = 0.0;
      continue;
    }
    s[i] *= std::complex<double>(0.0, 2.0 * std::numbers::pi * k);
  }
  return from_spectrum(s);
}

std::vector<GridField> gradient(const GridField& u) {
  std::vector<GridField> g;
  for (int a = 0; a < u.dim(); ++a) g.push_back(derivative(u, a));
  return g;
}

double gradient_l2_norm(const GridField& u) {
  const Spectrum s = to_spectrum(u);
  const int n = u.n();
  double acc = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const int ix = static_cast<int>(u.dim() == 1 ? i : i % n);
    const int iy = u.dim() == 1 ? 0 : static_cast<int>(i / n);
    double k2 = 0.0;
    const int kx = s.frequency(ix);
    if (kx != -n / 2) k2 += double(kx) * kx;
    if (u.dim() == 2) {
      const int ky = s.frequency(iy);
      if (ky != -n / 2) k2 += double(ky) * ky;
    }
    acc += 4.0 * std::numbers::pi * std::numbers::pi * k2 * std::norm(s[i]);
  }
  return std::sqrt(acc);
}

}  // namespace hoelderlab
