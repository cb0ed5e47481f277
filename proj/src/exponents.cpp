#include <cmath>

#include "hoelderlab/regularity_lab.hpp"

namespace hoelderlab {

namespace {

void check_gamma(double g, const char* what) {
  if (!(g > 0.0 && g <= 1.0)) throw InvalidArgument(std::string(what) + " must lie in (0, 1]");
}

// (2^n - g^n) / 2^n = 1 - (g/2)^n
double geometric_fraction(double g, int n) { return 1.0 - std::pow(g / 2.0, n); }

}  // namespace

double predicted_primary(double gamma_omega, double gamma_c, double s) {
  check_gamma(gamma_omega, "gamma_omega");
  check_gamma(gamma_c, "gamma_c");
  if (!(s >= 0.0 && s < gamma_c / 2.0)) throw InvalidArgument("predicted_primary: s must lie in [0, gamma_c/2)");
  return 1.0 + gamma_omega * s;
}

bool bootstrap_condition(double gamma_omega, double gamma_c, double gamma_0, int n) {
  return gamma_c >= 2.0 / (2.0 - gamma_omega) * geometric_fraction(gamma_omega, n) * gamma_0;
}

double bootstrap_source(double gamma_0, int n) { return -1.0 + (1.0 - std::ldexp(1.0, -n)) * gamma_0; }

double bootstrap_target(double gamma_omega, double gamma_0, int n) {
  return 1.0 + gamma_omega / (2.0 - gamma_omega) * geometric_fraction(gamma_omega, n) * gamma_0;
}

double remainder_r(double gamma_omega, double gamma_c, double gamma_0, int N) {
  return std::ldexp(gamma_0, -(N + 1)) +
         gamma_omega * (gamma_c / 2.0 - 1.0 / (2.0 - gamma_omega) * geometric_fraction(gamma_omega, N + 1) * gamma_0);
}

BootstrapSchedule bootstrap_schedule(double gamma_omega, double gamma_0, double gamma_c, int N_max) {
  check_gamma(gamma_omega, "gamma_omega");
  check_gamma(gamma_c, "gamma_c");
  if (!(gamma_0 > 0.0 && gamma_0 <= gamma_c)) throw InvalidArgument("bootstrap: gamma_0 must lie in (0, gamma_c]");
  if (N_max < 1) throw InvalidArgument("bootstrap: N_max must be >= 1");

  BootstrapSchedule sched;
  sched.gamma_omega = gamma_omega;
  sched.gamma_0 = gamma_0;
  sched.gamma_c = gamma_c;
  for (int n = 1; n <= N_max; ++n) {
    if (!bootstrap_condition(gamma_omega, gamma_c, gamma_0, n)) break;
    sched.steps.push_back({n, bootstrap_source(gamma_0, n), bootstrap_target(gamma_omega, gamma_0, n), false});
    sched.N = n;
  }
  // n = 1 always satisfies the condition because gamma_0 <= gamma_c
  const int N = sched.N;
  if (N < N_max && !bootstrap_condition(gamma_omega, gamma_c, gamma_0, N + 1)) {
    const double r = remainder_r(gamma_omega, gamma_c, gamma_0, N);
    sched.r_N = r;
    sched.steps.push_back({N + 1, bootstrap_source(gamma_0, N) + r, 1.0 + gamma_omega * gamma_c / 2.0, true});
  }
  return sched;
}

ExponentPair interpolated_step(double gamma_omega, double gamma_0, int n, double s) {
  if (n < 1) throw InvalidArgument("interpolated_step: n must be >= 1");
  if (!(s > 0.0 && s < 1.0)) throw InvalidArgument("interpolated_step: s must lie in (0, 1)");
  return {bootstrap_source(gamma_0, n - 1) + std::ldexp(gamma_0 * s, -n),
          bootstrap_target(gamma_omega, gamma_0, n - 1) + std::pow(gamma_omega / 2.0, n) * gamma_0 * s};
}

ExponentPair interpolated_terminal(double gamma_omega, double gamma_c, double gamma_0, int N, double s) {
  if (N < 1) throw InvalidArgument("interpolated_terminal: N must be >= 1");
  if (!(s > 0.0 && s < 1.0)) throw InvalidArgument("interpolated_terminal: s must lie in (0, 1)");
  const double gain = gamma_omega / (2.0 - gamma_omega) * geometric_fraction(gamma_omega, N) * gamma_0;
  return {bootstrap_source(gamma_0, N) + remainder_r(gamma_omega, gamma_c, gamma_0, N) * s,
          1.0 + gain * (1.0 - s) + gamma_omega * gamma_c * s / 2.0};
}

ExponentPair corollary_exponent(double gamma_omega, double gamma_c, double s) {
  check_gamma(gamma_omega, "gamma_omega");
  check_gamma(gamma_c, "gamma_c");
  if (!(s >= 0.0 && s < 1.0)) throw InvalidArgument("corollary_exponent: s must lie in [0, 1)");
  const double gamma_0 = (2.0 - gamma_omega) * gamma_c / 2.0;
  return {-1.0 + gamma_0 * s, 1.0 + gamma_c * gamma_omega * s / 2.0};
}

}  // namespace hoelderlab
