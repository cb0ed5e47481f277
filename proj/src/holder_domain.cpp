#include "hoelderlab/holder_domain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hoelderlab/random.hpp"
#include "hoelderlab/spectral_field.hpp"

namespace hoelderlab {

BoundaryGraph BoundaryGraph::weierstrass(double a, int b, int terms, std::uint64_t phase_seed) {
  if (!(a > 0.0 && a < 1.0)) throw InvalidArgument("weierstrass graph: a must lie in (0, 1)");
  if (b < 2) throw InvalidArgument("weierstrass graph: b must be an integer >= 2");
  if (a * b < 1.0 - 1e-12) throw InvalidArgument("weierstrass graph: a * b >= 1 required for an exponent <= 1");
  if (terms < 20) throw InvalidArgument("weierstrass graph: at least 20 terms required");
  const double gamma = std::min(1.0, std::log(1.0 / a) / std::log(static_cast<double>(b)));
  return BoundaryGraph(WeierstrassGraph{a, b, terms, phase_seed}, gamma);
}

BoundaryGraph BoundaryGraph::weierstrass_for_gamma(double gamma, int b, int terms, std::uint64_t offset_seed) {
  if (!(gamma > 0.0 && gamma <= 1.0)) throw InvalidArgument("weierstrass graph: gamma must lie in (0, 1]");
  BoundaryGraph g = weierstrass(std::pow(static_cast<double>(b), -gamma), b, terms, 0);
  // zero phases keep the exponent sharp at every scale; the seed only translates
  std::get<WeierstrassGraph>(g.kind_).offset = offset_seed == 0 ? 0.0 : unit_interval(hash_combine(offset_seed, 0x0ff5e7));
  return g;
}

BoundaryGraph BoundaryGraph::power_cusp(double gamma) {
  if (!(gamma > 0.0 && gamma <= 1.0)) throw InvalidArgument("power cusp: gamma must lie in (0, 1]");
  return BoundaryGraph(PowerCuspGraph{gamma}, gamma);
}

BoundaryGraph BoundaryGraph::polyline(std::vector<std::pair<double, double>> vertices) {
  if (vertices.size() < 2) throw InvalidArgument("polyline needs at least two vertices");
  if (vertices.front().first != 0.0 || vertices.back().first != 1.0)
    throw InvalidArgument("polyline vertices must start at x = 0 and end at x = 1");
  if (vertices.front().second != vertices.back().second)
    throw InvalidArgument("polyline must be periodic (equal end values)");
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (std::abs(vertices[i].second) > 1.0) throw InvalidArgument("polyline values must lie in [-1, 1]");
    if (i > 0 && !(vertices[i].first > vertices[i - 1].first))
      throw InvalidArgument("polyline abscissae must be strictly increasing");
  }
  return BoundaryGraph(PolylineGraph{std::move(vertices)}, 1.0);
}

std::string BoundaryGraph::kind_name() const {
  struct Visitor {
    std::string operator()(const WeierstrassGraph&) const { return "weierstrass"; }
    std::string operator()(const PowerCuspGraph&) const { return "power_cusp"; }
    std::string operator()(const PolylineGraph&) const { return "polyline"; }
  };
  return std::visit(Visitor{}, kind_);
}

namespace {

double eval_weierstrass(const WeierstrassGraph& w, double x) {
  double sum = 0.0, norm = 0.0, ak = 1.0;
  double freq = 1.0;
  for (int k = 0; k < w.terms; ++k) {
    const double theta =
        w.phase_seed == 0 ? 0.0 : 2.0 * std::numbers::pi * unit_interval(hash_combine(w.phase_seed, k));
    // reduce b^k x mod 1 before scaling by 2 pi to keep the phase accurate
    const double t = freq * (x + w.offset);
    sum += ak * std::cos(2.0 * std::numbers::pi * (t - std::floor(t)) + theta);
    norm += ak;
    ak *= w.a;
    freq *= w.b;
  }
  return sum / norm;
}

double eval_polyline(const PolylineGraph& p, double x) {
  const auto& v = p.vertices;
  auto it = std::upper_bound(v.begin(), v.end(), x, [](double xv, const auto& pt) { return xv < pt.first; });
  if (it == v.begin()) return v.front().second;
  if (it == v.end()) return v.back().second;
  const auto& [x1, y1] = *it;
  const auto& [x0, y0] = *(it - 1);
  return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
}

}  // namespace

double graph_eval(const BoundaryGraph& g, double x) {
  x -= std::floor(x);
  struct Visitor {
    double x;
    double operator()(const WeierstrassGraph& w) const { return eval_weierstrass(w, x); }
    double operator()(const PowerCuspGraph& p) const { return std::pow(2.0 * std::abs(x - 0.5), p.gamma); }
    double operator()(const PolylineGraph& p) const { return eval_polyline(p, x); }
  };
  return std::clamp(std::visit(Visitor{x}, g.kind()), -1.0, 1.0);
}

GridField sample_graph(const BoundaryGraph& g, int n) {
  return GridField::sample(1, n, [&](double x, double) { return graph_eval(g, x); });
}

void HolderDomain::validate() const {
  if (!(y_lo >= 0.0 && y_lo < 1.0)) throw InvalidArgument("domain: y_lo must lie in [0, 1)");
  // graph values lie in [-1, 1]
  if (!(y_lo + 0.05 < y_mid - std::abs(amp)))
    throw InvalidArgument("domain: the upper boundary must stay 0.05 above y_lo");
  if (!(y_mid + std::abs(amp) < 0.95)) throw InvalidArgument("domain: the upper boundary must stay below 0.95");
}

double boundary_holder_constant(const HolderDomain& dom, int n) {
  return std::abs(dom.amp) * dyadic_holder_seminorm(sample_graph(dom.graph, n), dom.graph.nominal_gamma());
}

double domain_area(const HolderDomain& dom, int samples) {
  double acc = 0.0;
  for (int i = 0; i < samples; ++i) acc += dom.upper(static_cast<double>(i) / samples) - dom.y_lo;
  return acc / samples;
}

GridField DomainMask::indicator() const {
  GridField g(dim, n);
  for (std::size_t i = 0; i < inside.size(); ++i) g[i] = inside[i] ? 1.0 : 0.0;
  return g;
}

GridField DomainMask::extend(const std::vector<double>& interior) const {
  if (interior.size() != static_cast<std::size_t>(m)) throw InvalidArgument("interior vector length differs from m");
  GridField g(dim, n);
  for (int k = 0; k < m; ++k) g[nodes[k]] = interior[k];
  return g;
}

std::vector<double> DomainMask::restrict_to(const GridField& u) const {
  if (u.dim() != dim || u.n() != n) throw InvalidArgument("field shape differs from mask");
  std::vector<double> out(m);
  for (int k = 0; k < m; ++k) out[k] = u[nodes[k]];
  return out;
}

DomainMask mask_from_predicate(int dim, int n, const std::function<bool(double, double)>& pred) {
  const GridField probe(dim, n);  // validates shape
  DomainMask mask;
  mask.dim = dim;
  mask.n = n;
  mask.inside.assign(probe.size(), 0);
  mask.interior_index.assign(probe.size(), -1);
  const double h = 1.0 / n;
  for (std::size_t i = 0; i < probe.size(); ++i) {
    const double x = static_cast<double>(i % n) * h;
    const double y = dim == 1 ? 0.0 : static_cast<double>(i / n) * h;
    if (pred(x, y)) {
      mask.inside[i] = 1;
      mask.interior_index[i] = mask.m++;
      mask.nodes.push_back(i);
    }
  }
  if (mask.m == 0) throw ComputationError("domain mask is empty at n = " + std::to_string(n));
  return mask;
}

DomainMask rasterize(const HolderDomain& dom, int n) {
  if (n < 4 || !is_power_of_two(n)) throw InvalidArgument("rasterize: n must be a power of two >= 4");
  dom.validate();
  std::vector<double> upper(n);
  for (int i = 0; i < n; ++i) upper[i] = dom.upper(static_cast<double>(i) / n);
  return mask_from_predicate(2, n, [&](double x, double y) {
    const int ix = static_cast<int>(std::lround(x * n));
    return dom.y_lo < y && y < upper[ix];
  });
}

double bump_profile(double r, double radius) {
  const double half = 0.5 * radius;
  if (r <= half) return 1.0;
  if (r >= radius) return 0.0;
  const double t = (r - half) / half;
  return t < 0.5 ? 1.0 - 2.0 * t * t : 2.0 * (1.0 - t) * (1.0 - t);
}

BumpFunction make_bump(int dim, int n, Offset center, double radius) {
  if (!(radius > 0.0 && radius < 0.5)) throw InvalidArgument("bump radius must lie in (0, 0.5)");
  auto wrap = [](double d) { return d - std::round(d); };
  BumpFunction b;
  b.center = center;
  b.radius = radius;
  b.lip_norm = 4.0 / radius;
  b.profile = GridField::sample(dim, n, [&](double x, double y) {
    const double dx = wrap(x - center.x);
    const double dy = dim == 2 ? wrap(y - center.y) : 0.0;
    return bump_profile(std::hypot(dx, dy), radius);
  });
  return b;
}

GridField translation_operator(const GridField& u, const BumpFunction& psi, Offset h) {
  require_same_shape(u, psi.profile, "translation_operator");
  const double len = u.dim() == 1 ? std::abs(h.x) : std::hypot(h.x, h.y);
  if (!(len < psi.radius)) throw InvalidArgument("translation operator: |h| must be smaller than the bump radius");
  if (len == 0.0) return u;
  const GridField uh = shift(u, h);
  GridField out(u.dim(), u.n());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = psi.profile[i] * uh[i] + (1.0 - psi.profile[i]) * u[i];
  return out;
}

double phi_shift(double h, double c_omega, double gamma_omega) {
  if (!(h >= 0.0)) throw InvalidArgument("phi_shift requires h >= 0");
  return h + c_omega * std::pow(h, gamma_omega);
}

bool vertical_shift_keeps_support(const HolderDomain& dom, const DomainMask& mask, const BumpFunction& psi, double h) {
  const int n = mask.n;
  const int sx = static_cast<int>(std::lround(h * n));
  if (std::abs(sx - h * n) > 1e-9) throw InvalidArgument("vertical shift check needs a grid-aligned h");
  const double c_omega = boundary_holder_constant(dom, n);
  const int sy = static_cast<int>(std::ceil(phi_shift(h, c_omega, dom.graph.nominal_gamma()) * n - 1e-9));
  const GridField u = mask.indicator();
  const GridField uw = roll(u, sx, sy);
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double diff = psi.profile[i] * (u[i] - uw[i]);
    if (diff != 0.0 && !mask.inside[i]) return false;
  }
  return true;
}

}  // namespace hoelderlab
