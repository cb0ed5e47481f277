#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hoelderlab/holder_domain.hpp"
#include "hoelderlab/operator_data.hpp"
#include "hoelderlab/spectral_field.hpp"
#include "hoelderlab/variational_solver.hpp"

namespace hoelderlab {

// ---------------------------------------------------------------- exponents

/// 1 + gamma_omega * s. Requires s in [0, gamma_c / 2).
double predicted_primary(double gamma_omega, double gamma_c, double s);

struct BootstrapStep {
  int n = 0;
  double source_order = 0.0;
  double target_order = 0.0;
  bool terminal = false;
};

struct BootstrapSchedule {
  double gamma_omega = 0.0;
  double gamma_0 = 0.0;
  double gamma_c = 0.0;
  std::vector<BootstrapStep> steps;
  int N = 0;                   // last index satisfying the gamma_c condition (capped by N_max)
  std::optional<double> r_N;   // set iff the terminal step was emitted
};

/// gamma_c >= 2/(2 - g_omega) * (2^n - g_omega^n)/2^n * gamma_0
bool bootstrap_condition(double gamma_omega, double gamma_c, double gamma_0, int n);
/// -1 + (2^n - 1)/2^n gamma_0
double bootstrap_source(double gamma_0, int n);
/// 1 + g_omega/(2 - g_omega) * (2^n - g_omega^n)/2^n * gamma_0
double bootstrap_target(double gamma_omega, double gamma_0, int n);
/// gamma_0 / 2^{N+1} + g_omega (gamma_c/2 - 1/(2 - g_omega) (2^{N+1} - g_omega^{N+1})/2^{N+1} gamma_0)
double remainder_r(double gamma_omega, double gamma_c, double gamma_0, int N);

/// Steps n = 1, 2, ... with (source, target) = (bootstrap_source, bootstrap_target)
/// while the condition holds, at most N_max of them. If the condition fails at
/// some N + 1 <= N_max, a terminal step (source + r_N, 1 + g_omega gamma_c / 2)
/// follows step N. Requires gamma_0 in (0, gamma_c], g_omega in (0, 1], N_max >= 1.
BootstrapSchedule bootstrap_schedule(double gamma_omega, double gamma_0, double gamma_c, int N_max);

struct ExponentPair {
  double source = 0.0;
  double target = 0.0;
};

/// Interpolated pair between steps n - 1 and n at parameter s in (0, 1).
ExponentPair interpolated_step(double gamma_omega, double gamma_0, int n, double s);
/// Interpolated pair between step N and the terminal step at s in (0, 1).
ExponentPair interpolated_terminal(double gamma_omega, double gamma_c, double gamma_0, int N, double s);

/// gamma_0 = (2 - g_omega) gamma_c / 2; source -1 + gamma_0 s, target 1 + gamma_c g_omega s / 2.
ExponentPair corollary_exponent(double gamma_omega, double gamma_c, double s);

// ---------------------------------------------------------------- measurement

struct OrderFit {
  double order = 0.0;  // 1 + s_hat of the gradient blocks
  double r2 = 0.0;
  std::vector<double> gradient_blocks;
};

/// Default window [min(4, J - 4), J - 1], J = log2(n) - 1. Blocks below 4 resolve
/// the domain scale itself and are not yet asymptotic.
std::pair<int, int> default_fit_range(int n);

/// Littlewood-Paley block norms of grad u (both components combined) fitted over
/// [j_lo, j_hi]; 0 selects the corresponding end of default_fit_range.
OrderFit measure_order(const GridField& u, int j_lo = 0, int j_hi = 0);

enum class FormKind { tau, phi_r };

/// Inputs of a probed linear form. tau needs f; phi_r needs coefficients.
struct FormData {
  const DomainMask* mask = nullptr;
  const GridField* f = nullptr;
  const CoefficientSet* coefficients = nullptr;
};

struct ProbeResult {
  double beta_hat = 0.0;  // NaN when degenerate
  double c_emp = 0.0;     // sup |zeta| / (||u||_{H1} h^gamma)
  double r2 = 0.0;
  bool degenerate = false;
  std::vector<double> steps;
  std::vector<double> values;
};

/// Evaluates |zeta(psi (u - u_h))| for horizontal dyadic shifts 4/n <= h < psi.radius,
/// fits the log-log slope and reports the empirical constant at gamma_expected.
ProbeResult form_holder_probe(FormKind kind, const FormData& data, const GridField& u, const BumpFunction& psi,
                              double gamma_expected);

struct BaseEstimate {
  double ratio = 0.0;
  double nikolskii_norm = 0.0;  // ||u||_{N^{1 + g_omega gamma_0 / 2}}
  double energy_norm = 0.0;     // ||grad u||_{L2}
  double c_tau = 0.0;           // ||f||_{B^{-1+s}_{2,1}}
  double c_phi = 0.0;           // (||b||_{q_b} + ||c||_{q_c}) ||u||_{H1}
};

/// ||u||^2_N / (||u||_H1 (||u||_H1 + C_tau + C_phi)) with gamma_0 = min(gamma_c, s).
BaseEstimate base_estimate_ratio(const GridField& u, const Rhs& f, const CoefficientSet& cs, const DomainMask& mask,
                                 double gamma_omega, double gamma_c, double s, double eps = 0.1);

// ---------------------------------------------------------------- experiments

struct ExperimentSpec {
  double gamma_omega = 1.0;
  double gamma_c = 1.0;
  double s = 0.0;
  int n = 256;
  std::uint64_t seed = 0;
  double scale_b = 0.1;
  double scale_c = 0.1;
  double perturbation = 0.3;  // 0 gives A = I
  int j_lo = 0;               // 0: default_fit_range
  int j_hi = 0;
  double tolerance = 0.1;
  double solver_tol = 1e-10;

  /// Throws InvalidArgument unless s in [0, gamma_c/2), n a power of two whose
  /// block count supports the fit range (n >= 256 by default),
  /// exponents in (0, 1], scales non-negative.
  void validate() const;
};

/// gamma_omega = 1: polyline through (0,0), (1/2,1), (1,0) with y_mid 0.55, amp 0.25.
/// Otherwise a Weierstrass graph (b = 4) of order gamma_omega with seeded phases.
HolderDomain experiment_domain(const ExperimentSpec& spec);

struct ExperimentResult {
  ExperimentSpec spec;
  double predicted = 0.0;
  double measured = 0.0;
  double r2 = 0.0;
  bool pass = false;
  int iterations = 0;
  double residual = 0.0;
  std::map<std::string, double> norms;
};

/// Builds domain, coefficients and source from the seed, solves, and compares the
/// measured order of the zero-extended solution with predicted_primary.
ExperimentResult run_experiment(const ExperimentSpec& spec);

struct ExperimentRun {
  ExperimentResult result;
  GridField u{2, 2};
  GridField f{2, 2};
};
/// run_experiment that also returns the solution and source fields.
ExperimentRun run_experiment_detailed(const ExperimentSpec& spec);

/// Runs specs on `workers` threads; results sorted by (gamma_omega, gamma_c, s, n, seed).
/// Throws InvalidArgument on an empty grid; the first failing spec's exception is rethrown.
std::vector<ExperimentResult> run_sweep(const std::vector<ExperimentSpec>& specs, int workers = 1);

/// Cartesian product of the parameter lists; other spec fields copied from `base`.
std::vector<ExperimentSpec> sweep_grid(const ExperimentSpec& base, const std::vector<double>& gamma_omega,
                                       const std::vector<double>& gamma_c, const std::vector<double>& s,
                                       const std::vector<int>& n, const std::vector<std::uint64_t>& seeds);

inline constexpr const char* kCsvHeader = "gamma_omega,gamma_c,s,n,seed,predicted,measured,r2,pass";

/// Shortest decimal that round-trips the double.
std::string format_number(double v);
std::string results_csv(const std::vector<ExperimentResult>& results);
std::string results_json(const std::vector<ExperimentResult>& results);
/// Writes <stem>.csv and <stem>.json.
void report(const std::vector<ExperimentResult>& results, const std::filesystem::path& stem);

// ---------------------------------------------------------------- invariant suite

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Reduced-size property checks across all modules.
std::vector<CheckResult> run_invariant_suite();

}  // namespace hoelderlab
