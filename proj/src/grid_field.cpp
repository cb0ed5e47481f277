#include "hoelderlab/grid_field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hoelderlab {

bool is_power_of_two(long long n) { return n > 0 && (n & (n - 1)) == 0; }

int log2_exact(long long n) {
  if (!is_power_of_two(n)) throw InvalidArgument("expected a power of two, got " + std::to_string(n));
  int k = 0;
  while ((1LL << k) < n) ++k;
  return k;
}

namespace {

void validate_shape(int dim, int n) {
  if (dim != 1 && dim != 2) throw InvalidArgument("grid dimension must be 1 or 2");
  if (n < 2 || !is_power_of_two(n))
    throw InvalidArgument("grid size must be a power of two >= 2, got " + std::to_string(n));
}

std::size_t total_size(int dim, int n) {
  return dim == 1 ? static_cast<std::size_t>(n) : static_cast<std::size_t>(n) * n;
}

}  // namespace

GridField::GridField(int dim, int n) : dim_(dim), n_(n) {
  validate_shape(dim, n);
  values_.assign(total_size(dim, n), 0.0);
}

GridField::GridField(int dim, int n, std::vector<double> values) : dim_(dim), n_(n), values_(std::move(values)) {
  validate_shape(dim, n);
  if (values_.size() != total_size(dim, n))
    throw InvalidArgument("grid values length " + std::to_string(values_.size()) + " does not match n^dim");
  check_finite();
}

double GridField::cell_volume() const {
  const double h = spacing();
  return dim_ == 1 ? h : h * h;
}

std::size_t GridField::index(int ix, int iy) const {
  const int mask = n_ - 1;
  const int x = ix & mask;
  if (dim_ == 1) return static_cast<std::size_t>(x);
  return static_cast<std::size_t>(iy & mask) * n_ + x;
}

void GridField::check_finite() const {
  for (double v : values_)
    if (!std::isfinite(v)) throw InvalidArgument("grid field contains a non-finite value");
}

GridField& GridField::operator+=(const GridField& o) {
  require_same_shape(*this, o, "operator+=");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
  return *this;
}

GridField& GridField::operator-=(const GridField& o) {
  require_same_shape(*this, o, "operator-=");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
  return *this;
}

GridField& GridField::operator*=(double a) {
  for (double& v : values_) v *= a;
  return *this;
}

GridField operator+(GridField a, const GridField& b) { return a += b; }
GridField operator-(GridField a, const GridField& b) { return a -= b; }
GridField operator*(double a, GridField b) { return b *= a; }

GridField hadamard(const GridField& a, const GridField& b) {
  require_same_shape(a, b, "hadamard");
  GridField out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= b[i];
  return out;
}

GridField roll(const GridField& u, int sx, int sy) {
  GridField out(u.dim(), u.n());
  const int n = u.n();
  if (u.dim() == 1) {
    for (int i = 0; i < n; ++i) out.at(i) = u.at(i + sx);
  } else {
    for (int iy = 0; iy < n; ++iy)
      for (int ix = 0; ix < n; ++ix) out.at(ix, iy) = u.at(ix + sx, iy + sy);
  }
  return out;
}

double l2_norm(const GridField& u) {
  double acc = 0.0;
  for (double v : u.values()) acc += v * v;
  return std::sqrt(acc / static_cast<double>(u.size()));
}

double sup_norm(const GridField& u) {
  double m = 0.0;
  for (double v : u.values()) m = std::max(m, std::abs(v));
  return m;
}

double lq_norm(const GridField& u, double q) {
  if (!(q >= 1.0)) throw InvalidArgument("Lq norm requires q >= 1");
  if (std::isinf(q)) return sup_norm(u);
  const double scale = sup_norm(u);
  if (scale == 0.0) return 0.0;
  double acc = 0.0;
  for (double v : u.values()) acc += std::pow(std::abs(v) / scale, q);
  return scale * std::pow(acc / static_cast<double>(u.size()), 1.0 / q);
}

void require_same_shape(const GridField& a, const GridField& b, const char* what) {
  if (!a.same_shape(b)) throw InvalidArgument(std::string(what) + ": grid fields differ in dimension or size");
}

}  // namespace hoelderlab
