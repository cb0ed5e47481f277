#include <fftw3.h>

#include <Eigen/Core>
#include <algorithm>
#include <atomic>
#include <charconv>
#include <exception>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <thread>
#include <tuple>

#include "hoelderlab/regularity_lab.hpp"

namespace hoelderlab {

namespace {

auto sort_key(const ExperimentSpec& s) { return std::tie(s.gamma_omega, s.gamma_c, s.s, s.n, s.seed); }

}  // namespace

std::vector<ExperimentResult> run_sweep(const std::vector<ExperimentSpec>& specs, int workers) {
  if (specs.empty()) throw InvalidArgument("sweep: empty parameter grid");
  if (workers < 1) throw InvalidArgument("sweep: workers must be >= 1");
  for (const auto& s : specs) s.validate();

  std::vector<ExperimentResult> results(specs.size());
  std::vector<std::exception_ptr> errors(specs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < specs.size(); i = next++) {
      try {
        results[i] = run_experiment(specs[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int count = std::min<int>(workers, static_cast<int>(specs.size()));
  if (count == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < count; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::stable_sort(results.begin(), results.end(),
                   [](const ExperimentResult& a, const ExperimentResult& b) { return sort_key(a.spec) < sort_key(b.spec); });
  return results;
}

std::vector<ExperimentSpec> sweep_grid(const ExperimentSpec& base, const std::vector<double>& gamma_omega,
                                       const std::vector<double>& gamma_c, const std::vector<double>& s,
                                       const std::vector<int>& n, const std::vector<std::uint64_t>& seeds) {
  std::vector<ExperimentSpec> out;
  for (double go : gamma_omega)
    for (double gc : gamma_c)
      for (double sv : s)
        for (int nv : n)
          for (std::uint64_t seed : seeds) {
            ExperimentSpec spec = base;
            spec.gamma_omega = go;
            spec.gamma_c = gc;
            spec.s = sv;
            spec.n = nv;
            spec.seed = seed;
            out.push_back(spec);
          }
  return out;
}

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string results_csv(const std::vector<ExperimentResult>& results) {
  std::ostringstream out;
  out << kCsvHeader << '\n';
  for (const auto& r : results) {
    out << format_number(r.spec.gamma_omega) << ',' << format_number(r.spec.gamma_c) << ','
        << format_number(r.spec.s) << ',' << r.spec.n << ',' << r.spec.seed << ',' << format_number(r.predicted)
        << ',' << format_number(r.measured) << ',' << format_number(r.r2) << ',' << (r.pass ? "true" : "false")
        << '\n';
  }
  return out.str();
}

std::string results_json(const std::vector<ExperimentResult>& results) {
  using Json = nlohmann::ordered_json;
  Json versions = {{"hoelderlab", "1.0.0"},
                   {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                 std::to_string(EIGEN_MINOR_VERSION)},
                   {"fftw", std::string(fftw_version)}};
  Json runs = Json::array();
  for (const auto& r : results) {
    const auto& s = r.spec;
    Json norms = Json::object();
    for (const auto& [k, v] : r.norms) norms[k] = v;
    runs.push_back({{"spec",
                     {{"gamma_omega", s.gamma_omega},
                      {"gamma_c", s.gamma_c},
                      {"s", s.s},
                      {"n", s.n},
                      {"seed", s.seed},
                      {"scale_b", s.scale_b},
                      {"scale_c", s.scale_c},
                      {"perturbation", s.perturbation},
                      {"j_lo", s.j_lo},
                      {"j_hi", s.j_hi},
                      {"tolerance", s.tolerance},
                      {"solver_tol", s.solver_tol}}},
                    {"result",
                     {{"predicted", r.predicted},
                      {"measured", r.measured},
                      {"r2", r.r2},
                      {"pass", r.pass},
                      {"norms", norms}}},
                    {"versions", versions},
                    {"timings", {{"solver_iterations", r.iterations}, {"solver_residual", r.residual}}}});
  }
  return runs.dump(2) + "\n";
}

void report(const std::vector<ExperimentResult>& results, const std::filesystem::path& stem) {
  if (stem.has_parent_path()) std::filesystem::create_directories(stem.parent_path());
  auto write = [](const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
    if (!out) throw ComputationError("cannot write " + p.string());
  };
  write(stem.string() + ".csv", results_csv(results));
  write(stem.string() + ".json", results_json(results));
}

}  // namespace hoelderlab
