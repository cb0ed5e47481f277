#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hoelderlab {

/// Bad input: violated precondition, malformed config, out-of-range parameter.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computation that could not produce a meaningful result
/// (degenerate fit, non-convergence, coercivity failure).
class ComputationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

bool is_power_of_two(long long n);
int log2_exact(long long n);

/// Displacement on the torus, in units of the side length. `y` is ignored for 1D fields.
struct Offset {
  double x = 0.0;
  double y = 0.0;
};

/// Real samples on the uniform periodic n^dim grid of the unit torus.
///
/// Node (ix, iy) sits at (ix/n, iy/n); storage is row-major with x fastest,
/// i.e. values[iy * n + ix].
class GridField {
 public:
  GridField(int dim, int n);
  GridField(int dim, int n, std::vector<double> values);

  template <class F>
  static GridField sample(int dim, int n, F&& f) {
    GridField g(dim, n);
    const double h = 1.0 / n;
    if (dim == 1) {
      for (int i = 0; i < n; ++i) g.values_[i] = f(i * h, 0.0);
    } else {
      for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix) g.values_[iy * n + ix] = f(ix * h, iy * h);
    }
    g.check_finite();
    return g;
  }

  int dim() const { return dim_; }
  int n() const { return n_; }
  std::size_t size() const { return values_.size(); }
  double spacing() const { return 1.0 / n_; }
  /// Cell measure h^dim.
  double cell_volume() const;

  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  double& operator[](std::size_t i) { return values_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }
  double& at(int ix, int iy = 0) { return values_[index(ix, iy)]; }
  double at(int ix, int iy = 0) const { return values_[index(ix, iy)]; }

  /// Periodic index; arguments may be any integers.
  std::size_t index(int ix, int iy = 0) const;

  bool same_shape(const GridField& other) const { return dim_ == other.dim_ && n_ == other.n_; }

  /// Throws InvalidArgument if any entry is NaN or infinite.
  void check_finite() const;

  GridField& operator+=(const GridField& o);
  GridField& operator-=(const GridField& o);
  GridField& operator*=(double a);

 private:
  int dim_;
  int n_;
  std::vector<double> values_;
};

GridField operator+(GridField a, const GridField& b);
GridField operator-(GridField a, const GridField& b);
GridField operator*(double a, GridField b);
/// Pointwise product.
GridField hadamard(const GridField& a, const GridField& b);

/// Integer circular shift: result(x) = u(x + (sx, sy)/n).
GridField roll(const GridField& u, int sx, int sy = 0);

/// (mean |u|^2)^{1/2}, the L2 norm on the unit torus.
double l2_norm(const GridField& u);
/// (mean |u|^q)^{1/q}; q = infinity gives max |u|.
double lq_norm(const GridField& u, double q);
double sup_norm(const GridField& u);

void require_same_shape(const GridField& a, const GridField& b, const char* what);

}  // namespace hoelderlab
