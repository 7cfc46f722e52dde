#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "commands.h"
#include "common.h"
#include "frlp/bounds/bounds.h"
#include "frlp/facloc/algorithms.h"
#include "frlp/facloc/generators.h"
#include "frlp/facloc/instance.h"
#include "frlp/facloc/lp_rounding.h"
#include "frlp/programs/cutting_plane.h"
#include "json.hpp"

namespace frlp::cli {

namespace {

using facloc::CostClass;
using facloc::Instance;
using facloc::Solution;

struct FaclocConfig {
  std::string alg = "a1";
  std::string instance;
  std::string gen;
  int n = 8;
  int m = 5;
  int dim = 2;
  std::uint64_t seed = 1;
  double delta = 2.0543;
  double gamma = 2.04011;
  int trials = 0;
  double bound = NAN;
  std::string frlp_result;
  int certify_t = 10;
  double gamma_f = 1.45;
  std::string format = "csv";
  std::string output;
};

Instance Generate(const FaclocConfig& cfg, std::uint64_t seed) {
  if (cfg.gen == "sq-euclidean") {
    return facloc::gen_random_sq_euclidean(cfg.n, cfg.m, cfg.dim, seed);
  }
  if (cfg.gen == "metric") return facloc::gen_random_metric(cfg.n, cfg.m, seed);
  throw UsageError("--gen must be sq-euclidean or metric");
}

Instance LoadInstance(const FaclocConfig& cfg) {
  if (!cfg.instance.empty()) {
    if (!cfg.gen.empty()) throw UsageError("--instance and --gen conflict");
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(ReadFile(cfg.instance));
    } catch (const nlohmann::json::parse_error& e) {
      throw IoError(cfg.instance + ": " + e.what());
    }
    return facloc::InstanceFromJson(j);
  }
  if (cfg.gen.empty()) throw UsageError("--instance or --gen is required");
  return Generate(cfg, cfg.seed);
}

Solution RunAlgorithm(const FaclocConfig& cfg, const Instance& inst,
                      std::uint64_t seed) {
  if (cfg.alg == "a1") return facloc::run_a1(inst);
  if (cfg.alg == "a2") return facloc::run_a2(inst);
  if (cfg.alg == "a3") return facloc::run_a3(inst, cfg.delta);
  if (cfg.alg == "cs") return facloc::run_cs(inst, cfg.gamma, seed);
  if (cfg.alg == "opt") return facloc::brute_force_opt(inst);
  throw UsageError("--alg must be a1, a2, a3, cs or opt");
}

bool IdentityHolds(const Solution& sol) {
  if (sol.alpha.empty()) return true;
  const double sum = std::accumulate(sol.alpha.begin(), sol.alpha.end(), 0.0);
  return std::abs(sum - sol.total) <= 1e-9 * std::max(1.0, std::abs(sol.total));
}

std::string OpenList(const Solution& sol) {
  std::string s;
  for (int i : sol.open) s += (s.empty() ? "" : " ") + std::to_string(i);
  return s;
}

int Run(const FaclocConfig& cfg) {
  const Format format = ParseFormat(cfg.format);
  const Instance inst = LoadInstance(cfg);
  const Solution sol = RunAlgorithm(cfg, inst, cfg.seed);
  const bool ok = IdentityHolds(sol);
  if (!ok) std::cerr << "invariant violated: sum(alpha) != total\n";
  std::ostringstream out;
  if (format == Format::kJson) {
    nlohmann::ordered_json j;
    j["algorithm"] = cfg.alg;
    j["solution"] = facloc::ToJson(sol);
    if (!sol.alpha.empty()) {
      j["sum_alpha"] = std::accumulate(sol.alpha.begin(), sol.alpha.end(), 0.0);
    }
    out << j.dump(2) << "\n";
  } else {
    out << "algorithm,facility_cost,connection_cost,total,open\n"
        << cfg.alg << ',' << Fixed5(sol.facility_cost) << ','
        << Fixed5(sol.connection_cost) << ',' << Fixed5(sol.total) << ','
        << OpenList(sol) << "\n";
  }
  WriteOutput(cfg.output, out.str());
  return ok ? kOk : kFailure;
}

double SolveBound(programs::FamilyId id, int t, std::optional<double> gf = {}) {
  const programs::FrlpResult r =
      programs::solve_with_cuts(programs::ProgramFamily::Make(id, t, gf));
  if (r.status != lp::Status::kOptimal || !r.converged) {
    throw UsageError("certifying program did not converge");
  }
  return r.bound;
}

double BoundFromResultFile(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(ReadFile(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw IoError(path + ": " + e.what());
  }
  if (j.is_array()) {
    if (j.empty()) throw IoError(path + ": empty result list");
    j = j.back();
  }
  if (!j.contains("bound") || !j["bound"].is_number()) {
    throw IoError(path + ": no numeric bound");
  }
  return j["bound"].get<double>();
}

// Worst-case ratio certified for the selected algorithm; NaN when none.
double CertifiedBound(const FaclocConfig& cfg, CostClass cls) {
  if (!std::isnan(cfg.bound)) return cfg.bound;
  if (!cfg.frlp_result.empty()) return BoundFromResultFile(cfg.frlp_result);
  using programs::FamilyId;
  const bool metric = cls == CostClass::kMetric;
  if (cfg.alg == "opt") return 1.0;
  if (cfg.alg == "a1") {
    return SolveBound(metric ? FamilyId::kA1MetricUpper : FamilyId::kA1Upper,
                      cfg.certify_t);
  }
  if (cfg.alg == "a2") {
    return SolveBound(metric ? FamilyId::kA2MetricUpper : FamilyId::kA2Upper,
                      cfg.certify_t);
  }
  if (cfg.alg == "a3" && !metric) {
    const double gc =
        SolveBound(FamilyId::kA2BifactorUpper, cfg.certify_t, cfg.gamma_f);
    return std::max(cfg.gamma_f + std::log(cfg.delta),
                    1.0 + (gc - 1.0) / cfg.delta);
  }
  return NAN;
}

int RunRatio(const FaclocConfig& cfg) {
  const Format format = ParseFormat(cfg.format);
  if (cfg.trials < 1) throw UsageError("--trials must be >= 1");
  if (cfg.gen.empty()) throw UsageError("ratio studies need --gen");
  const CostClass cls = Generate(cfg, 0).cost_class;
  const double bound = CertifiedBound(cfg, cls);

  struct Trial {
    std::uint64_t seed;
    double total, optimum, ratio;
  };
  std::vector<Trial> trials(cfg.trials);
  ParallelFor(cfg.trials, [&](int t) {
    const std::uint64_t seed = facloc::TrialSeed(cfg.seed, t);
    const Instance inst = Generate(cfg, seed);
    const double total = RunAlgorithm(cfg, inst, seed).total;
    const double opt = facloc::brute_force_opt(inst).total;
    trials[t] = {seed, total, opt, opt > 0.0 ? total / opt : 1.0};
  });
  double worst = 0.0;
  for (const Trial& t : trials) worst = std::max(worst, t.ratio);
  const bool ok = std::isnan(bound) || worst <= bound + 1e-9;

  std::ostringstream out;
  if (format == Format::kCsv) {
    out << "trial,seed,total,optimum,ratio\n";
    for (int t = 0; t < cfg.trials; ++t) {
      out << t << ',' << trials[t].seed << ',' << Fixed5(trials[t].total) << ','
          << Fixed5(trials[t].optimum) << ',' << Fixed5(trials[t].ratio) << "\n";
    }
    std::cerr << "max_ratio " << Fixed5(worst) << " bound " << Fixed5(bound)
              << (ok ? "" : " VIOLATED") << "\n";
  } else {
    nlohmann::ordered_json j;
    j["algorithm"] = cfg.alg;
    j["max_ratio"] = worst;
    j["bound"] = std::isnan(bound) ? nlohmann::ordered_json(nullptr)
                                   : nlohmann::ordered_json(bound);
    j["within_bound"] = ok;
    auto& rows = j["trials"] = nlohmann::ordered_json::array();
    for (const Trial& t : trials) {
      rows.push_back({{"seed", t.seed}, {"total", t.total},
                      {"optimum", t.optimum}, {"ratio", t.ratio}});
    }
    out << j.dump(2) << "\n";
  }
  WriteOutput(cfg.output, out.str());
  return ok ? kOk : kFailure;
}

int RunMonteCarlo(const FaclocConfig& cfg) {
  const Format format = ParseFormat(cfg.format);
  const int trials = cfg.trials > 0 ? cfg.trials : 20000;
  const Instance inst = LoadInstance(cfg);
  const facloc::CsPlan plan = facloc::PrepareCs(inst, cfg.gamma);
  const facloc::CsMonteCarlo mc = facloc::monte_carlo_cs(plan, trials, cfg.seed);
  std::ostringstream out;
  if (format == Format::kCsv) {
    out << "trials,gamma,mean_facility,stderr_facility,expected_facility,"
           "facility_ok,nearest_checked,nearest_failed,center_checked,"
           "center_failed,mean_total\n"
        << mc.trials << ',' << Fixed5(cfg.gamma) << ',' << Fixed5(mc.facility.mean)
        << ',' << Fixed5(mc.facility.stderr_) << ','
        << Fixed5(mc.expected_facility_cost) << ',' << mc.facility_ok << ','
        << mc.nearest_checked << ',' << mc.nearest_failed << ','
        << mc.center_checked << ',' << mc.center_failed << ','
        << Fixed5(mc.total.mean) << "\n";
  } else {
    nlohmann::ordered_json j;
    j["trials"] = mc.trials;
    j["gamma"] = cfg.gamma;
    j["lp_objective"] = plan.lp.objective;
    j["mean_facility"] = mc.facility.mean;
    j["stderr_facility"] = mc.facility.stderr_;
    j["expected_facility"] = mc.expected_facility_cost;
    j["facility_ok"] = mc.facility_ok;
    j["nearest_checked"] = mc.nearest_checked;
    j["nearest_failed"] = mc.nearest_failed;
    j["center_checked"] = mc.center_checked;
    j["center_failed"] = mc.center_failed;
    j["mean_total"] = mc.total.mean;
    out << j.dump(2) << "\n";
  }
  WriteOutput(cfg.output, out.str());
  return mc.ok() ? kOk : kFailure;
}

int RunGenerate(const FaclocConfig& cfg) {
  if (cfg.gen.empty()) throw UsageError("--gen is required");
  WriteOutput(cfg.output, facloc::ToJson(Generate(cfg, cfg.seed)).dump(2) + "\n");
  return kOk;
}

void AddInstanceOptions(CLI::App* sub, FaclocConfig& cfg) {
  sub->add_option("--instance", cfg.instance, "Instance JSON file");
  sub->add_option("--gen", cfg.gen, "Generator: sq-euclidean or metric");
  sub->add_option("--n", cfg.n, "Number of cities");
  sub->add_option("--m", cfg.m, "Number of facilities");
  sub->add_option("--dim", cfg.dim, "Dimension of sq-euclidean points");
  sub->add_option("--seed", cfg.seed, "Random seed");
  sub->add_option("--format", cfg.format, "csv or json");
  sub->add_option("-o,--output", cfg.output, "Output file (default stdout)");
}

void AddAlgorithmOptions(CLI::App* sub, FaclocConfig& cfg) {
  sub->add_option("--alg", cfg.alg, "a1, a2, a3, cs or opt");
  sub->add_option("--delta", cfg.delta, "Facility scaling of A3");
  sub->add_option("--gamma", cfg.gamma, "Opening scaling of CS");
}

}  // namespace

void AddFaclocCommand(CLI::App& app, int& exit_code) {
  auto cfg = std::make_shared<FaclocConfig>();
  CLI::App* facloc = app.add_subcommand("facloc", "Facility-location algorithms");
  facloc->require_subcommand(1);

  CLI::App* run = facloc->add_subcommand("run", "Run one algorithm on one instance");
  AddInstanceOptions(run, *cfg);
  AddAlgorithmOptions(run, *cfg);
  run->callback([cfg, &exit_code] { exit_code = Run(*cfg); });

  CLI::App* ratio = facloc->add_subcommand("ratio", "Ratio study against brute force");
  AddInstanceOptions(ratio, *cfg);
  AddAlgorithmOptions(ratio, *cfg);
  ratio->add_option("--trials", cfg->trials, "Number of seeded instances");
  ratio->add_option("--bound", cfg->bound, "Certified ratio to check against");
  ratio->add_option("--frlp-result", cfg->frlp_result,
                    "JSON written by `frlp --format json`; its bound is used");
  ratio->add_option("--certify-t", cfg->certify_t,
                    "Size of the upper program solved for the bound");
  ratio->add_option("--gamma-f", cfg->gamma_f, "Facility factor for the A3 bound");
  ratio->callback([cfg, &exit_code] { exit_code = RunRatio(*cfg); });

  CLI::App* mc = facloc->add_subcommand("mc", "Monte-Carlo checks of CS(gamma)");
  AddInstanceOptions(mc, *cfg);
  mc->add_option("--gamma", cfg->gamma, "Opening scaling of CS");
  mc->add_option("--trials", cfg->trials, "Number of draws (default 20000)");
  mc->callback([cfg, &exit_code] { exit_code = RunMonteCarlo(*cfg); });

  CLI::App* gen = facloc->add_subcommand("gen", "Write a generated instance");
  AddInstanceOptions(gen, *cfg);
  gen->callback([cfg, &exit_code] { exit_code = RunGenerate(*cfg); });
}

}  // namespace frlp::cli
