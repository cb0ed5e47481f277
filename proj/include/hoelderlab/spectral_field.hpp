#pragma once

#include <complex>
#include <limits>
#include <vector>

#include "hoelderlab/grid_field.hpp"

namespace hoelderlab {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Normalized discrete Fourier coefficients c_k = n^{-dim} sum_x u(x) e^{-2 pi i k.x}
/// of a real grid field, stored in FFT order (index i <-> frequency i or i - n).
class Spectrum {
 public:
  Spectrum(int dim, int n);
  Spectrum(int dim, int n, std::vector<std::complex<double>> coeffs);

  int dim() const { return dim_; }
  int n() const { return n_; }
  std::size_t size() const { return coeffs_.size(); }

  /// Signed frequency in [-n/2, n/2) for FFT index i.
  int frequency(int i) const { return i < n_ / 2 ? i : i - n_; }
  /// FFT index of signed frequency k (any integer, wrapped).
  int slot(int k) const { return k & (n_ - 1); }

  std::complex<double>& operator[](std::size_t i) { return coeffs_[i]; }
  const std::complex<double>& operator[](std::size_t i) const { return coeffs_[i]; }
  /// Coefficient at signed frequency (kx, ky).
  std::complex<double>& at(int kx, int ky = 0);
  const std::complex<double>& at(int kx, int ky = 0) const;

  /// |k| of storage slot i.
  double magnitude(std::size_t i) const;

  std::vector<std::complex<double>>& coeffs() { return coeffs_; }
  const std::vector<std::complex<double>>& coeffs() const { return coeffs_; }

 private:
  int dim_;
  int n_;
  std::vector<std::complex<double>> coeffs_;
};

Spectrum to_spectrum(const GridField& u);
/// Inverse transform; the imaginary residue of a non-Hermitian spectrum is discarded.
GridField from_spectrum(const Spectrum& s);

/// (sum_k (1 + |k|^2)^s |c_k|^2)^{1/2} over integer frequencies; any real s.
double sobolev_norm(const GridField& u, double s);
double sobolev_norm(const Spectrum& s, double order);

/// Dyadic frequency-block L2 norms. Block 0 holds |k| <= 1, block j >= 1 holds
/// 2^{j-1} < |k| <= 2^j, j = 1..J with J = log2(n/2). In 2D the corner
/// frequencies |k| > n/2 are folded into block J, so the squares of the norms
/// always sum to the squared L2 norm.
struct BlockDecomposition {
  int J = 0;
  std::vector<double> norms;
};

BlockDecomposition block_norms(const GridField& u);
BlockDecomposition block_norms(const Spectrum& s);
int block_of(double magnitude, int J);

/// l^q norm of {2^{s j} norms[j]}; q = kInfinity gives the Nikolskii norm N^s_2 = B^s_{2,inf}.
double besov_norm(const BlockDecomposition& blocks, double s, double q);
double besov_norm(const GridField& u, double s, double q);
/// Same as besov_norm with q = infinity but over j >= 1 only (drops the low block).
double besov_seminorm_inf(const BlockDecomposition& blocks, double s);

/// u_h(x) = u(x + h). Exact circular shift when h is a multiple of the spacing,
/// spectral phase shift otherwise.
GridField shift(const GridField& u, Offset h);

/// Spectral partial derivative along axis (0 = x, 1 = y). The Nyquist mode is dropped.
GridField derivative(const GridField& u, int axis);
std::vector<GridField> gradient(const GridField& u);
/// ||grad u||_{L2}, computed spectrally.
double gradient_l2_norm(const GridField& u);

/// Dyadic shift lengths 2^{-m}, m = 2..log2(n)-2 (at least one entry).
std::vector<double> dyadic_steps(int n);

/// Difference-quotient Nikolskii seminorm of order k + gamma (k in {0, 1}).
/// First differences for gamma < 1, second differences for gamma = 1; the sup
/// runs over dyadic_steps(n) along the coordinate axes.
double nikolskii_seminorm_dq(const GridField& u, int k, double gamma);

struct SmoothnessFit {
  double s_hat = 0.0;
  double r2 = 0.0;
  double intercept = 0.0;
};

/// Least-squares slope of log2 norms[j] against j over [j_lo, j_hi]; s_hat is
/// minus the slope. Requires 2 <= j_lo, j_hi <= J-1 and at least 4 blocks;
/// throws ComputationError if a block in range is zero.
SmoothnessFit estimate_smoothness(const BlockDecomposition& blocks, int j_lo, int j_hi);
SmoothnessFit estimate_smoothness(const GridField& u, int j_lo, int j_hi);
/// Default fit range j in [2, J-2].
SmoothnessFit estimate_smoothness(const GridField& u);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

/// Modulus of continuity at the dyadic scales: omega[m] = max over axes of
/// ||u(. + 2^{-m} e) - u||_{L_inf}, for m = 1..log2(n).
struct DyadicModulus {
  std::vector<double> steps;
  std::vector<double> omega;
};
DyadicModulus dyadic_modulus(const GridField& u);

/// sup over dyadic h of ||u_h - u||_inf / h^gamma: the dyadic C^{0,gamma} seminorm.
double dyadic_holder_seminorm(const GridField& u, double gamma);

/// Slope of log omega(2^{-m}) against log 2^{-m} over m = 2..log2(n)-1, clamped to (0, 1].
/// omega(delta) is the sup over lags |l| <= delta along either axis of the symmetric
/// second difference; it sees exponents up to 1 without the bias first differences
/// pick up from smooth low modes. Throws ComputationError for an affine field.
double holder_exponent_estimate(const GridField& u);

/// Empirical constant of the shift inequality
///   ||u - u_h||_{N^{g1}} <= C |h|^{g2-g1} ||u||_X,
/// with X = N^{g2} (H^1 when g2 = 1), sup over dyadic axis shifts.
/// Requires 0 < g1 < g2 and g2 - g1 <= 1.
double verify_shift_inequality(const GridField& u, double gamma1, double gamma2);

}  // namespace hoelderlab
