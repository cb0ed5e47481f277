#include "cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <map>

#include "hoelderlab/field_io.hpp"
#include "hoelderlab/random.hpp"
#include "hoelderlab/regularity_lab.hpp"

namespace hoelderlab::cli {

namespace {

using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

enum class Kind { real, integer, text, real_list, int_list };

struct Param {
  Kind kind;
  Json value;  // null: required, no default
  std::string raw;
  CLI::Option* option = nullptr;
};

// Parameters of one subcommand. Values come from the defaults, then the JSON
// config file, then explicit flags.
class Params {
 public:
  explicit Params(CLI::App* app) : app_(app) {
    app_->add_option("--config", config_, "JSON file with parameter values");
  }

  void add(const std::string& key, Kind kind, Json def, const std::string& help) {
    Param& p = params_[key];
    p.kind = kind;
    p.value = std::move(def);
    std::string flag = "--" + key;
    std::replace(flag.begin(), flag.end(), '_', '-');
    p.option = app_->add_option(flag, p.raw, help);
  }

  void resolve() {
    if (!config_.empty()) {
      std::ifstream in(config_);
      if (!in) throw InvalidArgument("cannot open config file " + config_);
      Json file;
      try {
        file = Json::parse(in);
      } catch (const Json::parse_error& e) {
        throw InvalidArgument("config file " + config_ + " is not valid JSON: " + e.what());
      }
      if (!file.is_object()) throw InvalidArgument("config file must hold a JSON object");
      for (const auto& [key, v] : file.items()) {
        auto it = params_.find(key);
        if (it == params_.end()) throw InvalidArgument("unknown config key '" + key + "'");
        it->second.value = checked(key, it->second.kind, v);
      }
    }
    for (auto& [key, p] : params_) {
      if (p.option->count() > 0) p.value = parse_flag(key, p.kind, p.raw);
      if (p.value.is_null()) throw InvalidArgument("missing required parameter '" + key + "' (--" + key + ")");
    }
  }

  double real(const std::string& k) const { return params_.at(k).value.get<double>(); }
  long long integer(const std::string& k) const { return params_.at(k).value.get<long long>(); }
  std::string text(const std::string& k) const { return params_.at(k).value.get<std::string>(); }
  std::vector<double> reals(const std::string& k) const { return params_.at(k).value.get<std::vector<double>>(); }
  std::vector<long long> integers(const std::string& k) const {
    return params_.at(k).value.get<std::vector<long long>>();
  }

 private:
  static Json checked(const std::string& key, Kind kind, const Json& v) {
    auto bad = [&] { return InvalidArgument("config key '" + key + "' has the wrong type"); };
    switch (kind) {
      case Kind::real:
        if (!v.is_number()) throw bad();
        return v.get<double>();
      case Kind::integer:
        if (!v.is_number_integer()) throw bad();
        return v;
      case Kind::text:
        if (!v.is_string()) throw bad();
        return v;
      case Kind::real_list:
      case Kind::int_list: {
        if (!v.is_array()) throw bad();
        Json out = Json::array();
        for (const auto& e : v) {
          if (kind == Kind::real_list ? !e.is_number() : !e.is_number_integer()) throw bad();
          out.push_back(kind == Kind::real_list ? Json(e.get<double>()) : e);
        }
        return out;
      }
    }
    throw bad();
  }

  static Json scalar(const std::string& key, Kind kind, const std::string& text) {
    std::size_t used = 0;
    try {
      if (kind == Kind::integer || kind == Kind::int_list) {
        const long long v = std::stoll(text, &used);
        if (used == text.size()) return v;
      } else {
        const double v = std::stod(text, &used);
        if (used == text.size()) return v;
      }
    } catch (const std::exception&) {
    }
    throw InvalidArgument("cannot parse '" + text + "' for --" + key);
  }

  static Json parse_flag(const std::string& key, Kind kind, const std::string& text) {
    if (kind == Kind::text) return text;
    if (kind == Kind::real || kind == Kind::integer) return scalar(key, kind, text);
    Json out = Json::array();
    std::stringstream in(text);
    for (std::string item; std::getline(in, item, ',');)
      if (!item.empty()) out.push_back(scalar(key, kind, item));
    return out;
  }

  CLI::App* app_;
  std::string config_;
  std::map<std::string, Param> params_;
};

std::string default_out_dir() {
  const char* env = std::getenv("HOELDERLAB_OUT");
  return env && *env ? env : "hoelderlab_out";
}

void write_json(const fs::path& path, const Json& j) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << j.dump(2) << '\n';
  if (!out) throw ComputationError("cannot write " + path.string());
}

std::uint64_t seed_of(const Params& p) {
  const long long s = p.integer("seed");
  if (s < 0) throw InvalidArgument("seed must be non-negative");
  return static_cast<std::uint64_t>(s);
}

int checked_int(long long v, const char* what) {
  if (v < 0 || v > (1 << 20)) throw InvalidArgument(std::string(what) + " out of range");
  return static_cast<int>(v);
}

// Parameters shared by solve and sweep; the grid parameters (gamma_omega,
// gamma_c, s, n) are scalars for solve and lists for sweep.
void add_experiment_params(Params& p) {
  p.add("seed", Kind::integer, nullptr, "random seed (required)");
  p.add("scale_b", Kind::real, 0.1, "sup |b|");
  p.add("scale_c", Kind::real, 0.1, "scale of c");
  p.add("perturbation", Kind::real, 0.3, "amplitude of the rough part of A (0 gives A = I)");
  p.add("tolerance", Kind::real, 0.1, "exponent tolerance for pass");
  p.add("solver_tol", Kind::real, 1e-10, "relative residual tolerance");
  p.add("j_lo", Kind::integer, 0, "first fitted block (0: default)");
  p.add("j_hi", Kind::integer, 0, "last fitted block (0: default)");
  p.add("out_dir", Kind::text, default_out_dir(), "output directory (default $HOELDERLAB_OUT or ./hoelderlab_out)");
}

ExperimentSpec spec_from(const Params& p) {
  ExperimentSpec s;
  s.seed = seed_of(p);
  s.scale_b = p.real("scale_b");
  s.scale_c = p.real("scale_c");
  s.perturbation = p.real("perturbation");
  s.tolerance = p.real("tolerance");
  s.solver_tol = p.real("solver_tol");
  s.j_lo = checked_int(p.integer("j_lo"), "j_lo");
  s.j_hi = checked_int(p.integer("j_hi"), "j_hi");
  return s;
}

int cmd_gen_domain(const Params& p) {
  ExperimentSpec spec;
  spec.gamma_omega = p.real("gamma_omega");
  spec.seed = seed_of(p);
  const int n = checked_int(p.integer("n"), "n");
  if (!(spec.gamma_omega > 0.0 && spec.gamma_omega <= 1.0)) throw InvalidArgument("gamma_omega must lie in (0, 1]");
  const HolderDomain dom = experiment_domain(spec);
  const DomainMask mask = rasterize(dom, n);
  const fs::path out = p.text("out_dir");
  write_gfld(out / "domain_mask.gfld", mask.indicator());
  write_gfld(out / "domain_boundary.gfld", GridField::sample(1, n, [&](double x, double) { return dom.upper(x); }));
  const double holder = boundary_holder_constant(dom, n);
  write_json(out / "domain.json", {{"kind", dom.graph.kind_name()},
                                   {"gamma_omega", dom.graph.nominal_gamma()},
                                   {"y_lo", dom.y_lo},
                                   {"y_mid", dom.y_mid},
                                   {"amp", dom.amp},
                                   {"n", n},
                                   {"interior_nodes", mask.m},
                                   {"area", domain_area(dom)},
                                   {"holder_constant", holder}});
  std::cout << "domain " << dom.graph.kind_name() << "  gamma_omega " << format_number(dom.graph.nominal_gamma())
            << "  n " << n << "  interior nodes " << mask.m << "  holder constant " << format_number(holder) << "\n"
            << "wrote " << (out / "domain_mask.gfld").string() << "\n";
  return 0;
}

int cmd_gen_coeffs(const Params& p) {
  const int n = checked_int(p.integer("n"), "n");
  const double gamma_c = p.real("gamma_c");
  const std::uint64_t seed = seed_of(p);
  // same derivation as run_experiment, so the files match a solve with this seed
  const CoefficientSet cs =
      gen_coefficients(gamma_c, hash_combine(seed, 1), n, p.real("scale_b"), p.real("scale_c"), p.real("perturbation"));
  const fs::path out = p.text("out_dir");
  const std::pair<const char*, const GridField*> fields[] = {{"a11", &cs.a11}, {"a12", &cs.a12}, {"a22", &cs.a22},
                                                             {"bx", &cs.bx},   {"by", &cs.by},   {"c", &cs.c}};
  for (const auto& [name, f] : fields) write_gfld(out / ("coeff_" + std::string(name) + ".gfld"), *f);
  const AdmissibilityReport r = check_admissibility(cs, gamma_c, 0.1);
  write_json(out / "coefficients.json", {{"gamma_c", gamma_c},
                                         {"n", n},
                                         {"seed", seed},
                                         {"alpha", r.alpha},
                                         {"holder_norm_A", r.holder_seminorm_A},
                                         {"lq_norm_b", r.lq_norm_b},
                                         {"lq_norm_c", r.lq_norm_c},
                                         {"q_b", std::isinf(r.q_b) ? Json("inf") : Json(r.q_b)},
                                         {"q_c", r.q_c},
                                         {"smallness_margin", r.smallness_margin},
                                         {"admissible", r.passed}});
  std::cout << "alpha " << format_number(r.alpha) << "  margin " << format_number(r.smallness_margin)
            << "  admissible " << (r.passed ? "yes" : "no") << "\n"
            << "wrote " << out.string() << "/coeff_*.gfld\n";
  return 0;
}

int cmd_solve(const Params& p) {
  ExperimentSpec spec = spec_from(p);
  spec.gamma_omega = p.real("gamma_omega");
  spec.gamma_c = p.real("gamma_c");
  spec.s = p.real("s");
  spec.n = checked_int(p.integer("n"), "n");
  const ExperimentRun run = run_experiment_detailed(spec);
  const fs::path out = p.text("out_dir");
  write_gfld(out / "solution.gfld", run.u);
  write_gfld(out / "source.gfld", run.f);
  report({run.result}, out / "solve");
  const auto& r = run.result;
  std::cout << "predicted " << format_number(r.predicted) << "  measured " << format_number(r.measured) << "  r2 "
            << format_number(r.r2) << "  pass " << (r.pass ? "yes" : "no") << "  iterations " << r.iterations << "\n"
            << "wrote " << (out / "solution.gfld").string() << "\n";
  return 0;
}

int cmd_estimate(const Params& p) {
  const GridField u = read_gfld(p.text("input"));
  const int J = log2_exact(u.n()) - 1;
  int lo = checked_int(p.integer("j_lo"), "j_lo"), hi = checked_int(p.integer("j_hi"), "j_hi");
  if (lo == 0) lo = 2;
  if (hi == 0) hi = J - 2;
  const BlockDecomposition blocks = block_norms(u);
  const SmoothnessFit fit = estimate_smoothness(blocks, lo, hi);
  std::cout << "dim " << u.dim() << "  n " << u.n() << "  blocks [" << lo << ", " << hi << "]\n"
            << "s_hat " << std::fixed << std::setprecision(4) << fit.s_hat << "\n"
            << "r2    " << fit.r2 << "\n";
  try {
    std::cout << "holder_gamma " << holder_exponent_estimate(u) << "\n";
  } catch (const ComputationError&) {
    std::cout << "holder_gamma n/a\n";
  }
  std::cout << "block  log2(norm)\n";
  for (std::size_t j = 0; j < blocks.norms.size(); ++j)
    std::cout << std::setw(5) << j << "  " << std::setw(10) << std::log2(blocks.norms[j]) << "\n";
  return 0;
}

int cmd_sweep(const Params& p) {
  ExperimentSpec base = spec_from(p);
  const auto go = p.reals("gamma_omega");
  const auto gc = p.reals("gamma_c");
  const auto s_abs = p.reals("s");
  const auto s_rel = p.reals("s_fraction");
  if (s_abs.empty() == s_rel.empty()) throw InvalidArgument("give exactly one of --s and --s-fraction");
  std::vector<int> ns;
  for (long long v : p.integers("n")) ns.push_back(checked_int(v, "n"));
  const long long reps = p.integer("replicates");
  if (reps < 1) throw InvalidArgument("replicates must be >= 1");
  std::vector<std::uint64_t> seeds;
  for (long long i = 0; i < reps; ++i) seeds.push_back(base.seed + static_cast<std::uint64_t>(i));

  std::vector<ExperimentSpec> specs;
  for (double gcv : gc) {
    std::vector<double> svals = s_abs;
    for (double f : s_rel) svals.push_back(f * gcv);
    for (const auto& s : sweep_grid(base, go, {gcv}, svals, ns, seeds)) specs.push_back(s);
  }
  const int workers = checked_int(p.integer("workers"), "workers");
  const auto results = run_sweep(specs, workers);
  const fs::path stem = fs::path(p.text("out_dir")) / p.text("name");
  report(results, stem);

  std::cout << "gamma_omega  gamma_c        s     n  seed  predicted  measured     r2  pass\n";
  int passed = 0;
  for (const auto& r : results) {
    std::cout << std::fixed << std::setprecision(3) << std::setw(11) << r.spec.gamma_omega << std::setw(9)
              << r.spec.gamma_c << std::setw(9) << r.spec.s << std::setw(6) << r.spec.n << std::setw(6) << r.spec.seed
              << std::setw(11) << r.predicted << std::setw(10) << r.measured << std::setw(7) << r.r2 << "  "
              << (r.pass ? "yes" : "no") << "\n";
    passed += r.pass;
  }
  std::cout << passed << "/" << results.size() << " runs pass\nwrote " << stem.string() << ".csv\n";
  return 0;
}

int cmd_verify() {
  const auto checks = run_invariant_suite();
  bool ok = true;
  for (const auto& c : checks) {
    std::cout << (c.passed ? "PASS  " : "FAIL  ") << c.name;
    if (!c.detail.empty()) std::cout << "  (" << c.detail << ")";
    std::cout << "\n";
    ok = ok && c.passed;
  }
  std::cout << (ok ? "all invariant checks passed\n" : "invariant checks FAILED\n");
  return ok ? 0 : 2;
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"hoelderlab: regularity experiments for elliptic problems on Hoelder domains"};
  app.require_subcommand(1);

  auto* gen_domain = app.add_subcommand("gen-domain", "rasterize a Hoelder domain and write its mask");
  Params p_domain(gen_domain);
  p_domain.add("gamma_omega", Kind::real, 1.0, "boundary Hoelder order in (0, 1]");
  p_domain.add("n", Kind::integer, 256, "grid points per axis (power of two)");
  p_domain.add("seed", Kind::integer, nullptr, "random seed (required)");
  p_domain.add("out_dir", Kind::text, default_out_dir(), "output directory");

  auto* gen_coeffs = app.add_subcommand("gen-coeffs", "generate coefficient fields A, b, c");
  Params p_coeffs(gen_coeffs);
  p_coeffs.add("gamma_c", Kind::real, 1.0, "coefficient Hoelder order in (0, 1]");
  p_coeffs.add("n", Kind::integer, 256, "grid points per axis (power of two)");
  p_coeffs.add("seed", Kind::integer, nullptr, "random seed (required)");
  p_coeffs.add("scale_b", Kind::real, 0.1, "sup |b|");
  p_coeffs.add("scale_c", Kind::real, 0.1, "scale of c");
  p_coeffs.add("perturbation", Kind::real, 0.3, "amplitude of the rough part of A");
  p_coeffs.add("out_dir", Kind::text, default_out_dir(), "output directory");

  auto* solve_cmd = app.add_subcommand("solve", "solve one problem and measure the solution's smoothness");
  Params p_solve(solve_cmd);
  p_solve.add("gamma_omega", Kind::real, 1.0, "boundary Hoelder order in (0, 1]");
  p_solve.add("gamma_c", Kind::real, 1.0, "coefficient Hoelder order in (0, 1]");
  p_solve.add("s", Kind::real, 0.0, "source smoothness, f in H^{-1+s}, s in [0, gamma_c/2)");
  p_solve.add("n", Kind::integer, 256, "grid points per axis (power of two)");
  add_experiment_params(p_solve);

  auto* estimate = app.add_subcommand("estimate", "estimate the smoothness of a stored .gfld field");
  Params p_estimate(estimate);
  p_estimate.add("input", Kind::text, nullptr, "path of the .gfld payload");
  p_estimate.add("j_lo", Kind::integer, 0, "first fitted block (0: 2)");
  p_estimate.add("j_hi", Kind::integer, 0, "last fitted block (0: J - 2)");

  auto* sweep = app.add_subcommand("sweep", "run a parameter grid and write CSV and JSON reports");
  Params p_sweep(sweep);
  p_sweep.add("gamma_omega", Kind::real_list, Json::array({1.0}), "comma-separated gamma_omega values");
  p_sweep.add("gamma_c", Kind::real_list, Json::array({1.0}), "comma-separated gamma_c values");
  p_sweep.add("s", Kind::real_list, Json::array(), "comma-separated s values");
  p_sweep.add("s_fraction", Kind::real_list, Json::array(), "s as fractions of gamma_c");
  p_sweep.add("n", Kind::int_list, Json::array({256}), "comma-separated grid sizes");
  add_experiment_params(p_sweep);
  p_sweep.add("replicates", Kind::integer, 1, "seeds seed, seed+1, ...");
  p_sweep.add("workers", Kind::integer, 1, "worker threads");
  p_sweep.add("name", Kind::text, "sweep", "report file stem");

  auto* verify = app.add_subcommand("verify", "run the invariant suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (gen_domain->parsed()) return p_domain.resolve(), cmd_gen_domain(p_domain);
    if (gen_coeffs->parsed()) return p_coeffs.resolve(), cmd_gen_coeffs(p_coeffs);
    if (solve_cmd->parsed()) return p_solve.resolve(), cmd_solve(p_solve);
    if (estimate->parsed()) return p_estimate.resolve(), cmd_estimate(p_estimate);
    if (sweep->parsed()) return p_sweep.resolve(), cmd_sweep(p_sweep);
    if (verify->parsed()) return cmd_verify();
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "computation failed: " << e.what() << "\n";
    return 2;
  }
  return 1;
}

}  // namespace hoelderlab::cli
