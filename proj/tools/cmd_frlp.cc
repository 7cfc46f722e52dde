#include <cmath>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "commands.h"
#include "common.h"
#include "frlp/bounds/bounds.h"
#include "frlp/programs/cutting_plane.h"
#include "frlp/programs/family.h"
#include "json.hpp"

namespace frlp::cli {

namespace {

using programs::FamilyId;

struct FrlpConfig {
  int table = 0;
  std::string family;
  std::vector<int> sizes;
  int kmax = 20;
  double gamma_f = NAN;
  double tol_cut = 1e-6;
  int max_rounds = 200;
  std::string mode = "all";
  std::string format = "csv";
  std::string output;
};

struct Job {
  FamilyId family;
  int size;
};

std::vector<int> TableGrid(int kmax) {
  std::vector<int> grid;
  for (int k : {10, 20, 50, 100, 200, 500, 1000}) {
    if (k <= kmax) grid.push_back(k);
  }
  if (grid.empty()) grid.push_back(kmax);
  return grid;
}

std::vector<Job> Jobs(const FrlpConfig& cfg) {
  std::vector<FamilyId> families;
  std::vector<int> sizes = cfg.sizes;
  switch (cfg.table) {
    case 0: {
      if (cfg.family.empty()) throw UsageError("--family or --table is required");
      const auto id = programs::ParseFamily(cfg.family);
      if (!id) throw UsageError("unknown family: " + cfg.family);
      families = {*id};
      if (sizes.empty()) throw UsageError("--k is required with --family");
      break;
    }
    case 1:
      families = {FamilyId::kA1Lower, FamilyId::kA1Upper};
      break;
    case 2:
      families = {FamilyId::kA2Lower, FamilyId::kA2Upper};
      break;
    case 3:
      families = {FamilyId::kA2BifactorUpper};
      break;
    default:
      throw UsageError("--table must be 1, 2 or 3");
  }
  if (cfg.table != 0) {
    if (!cfg.family.empty()) throw UsageError("--table and --family conflict");
    if (cfg.kmax < 1) throw UsageError("--kmax must be >= 1");
    if (sizes.empty()) sizes = TableGrid(cfg.kmax);
  }
  std::vector<Job> jobs;
  for (int size : sizes) {
    if (size < 1) throw UsageError("sizes must be >= 1");
    for (FamilyId f : families) jobs.push_back({f, size});
  }
  return jobs;
}

int Run(const FrlpConfig& cfg) {
  const Format format = ParseFormat(cfg.format);
  programs::CutOptions options;
  options.tol_cut = cfg.tol_cut;
  options.max_rounds = cfg.max_rounds;
  if (cfg.mode == "all") {
    options.mode = programs::CutMode::kAllViolated;
  } else if (cfg.mode == "most") {
    options.mode = programs::CutMode::kMostViolated;
  } else {
    throw UsageError("--mode must be all or most");
  }
  const std::vector<Job> jobs = Jobs(cfg);
  std::vector<programs::ProgramFamily> families;
  for (const Job& job : jobs) {
    std::optional<double> gf;
    if (job.family == FamilyId::kA2BifactorUpper) {
      gf = std::isnan(cfg.gamma_f) ? 1.45 : cfg.gamma_f;
    }
    families.push_back(programs::ProgramFamily::Make(job.family, job.size, gf));
    families.back().Validate();
  }

  std::vector<programs::FrlpResult> results(jobs.size());
  ParallelFor(static_cast<int>(jobs.size()), [&](int i) {
    results[i] = programs::solve_with_cuts(families[i], options);
  });

  const bool balance = cfg.table == 3;
  std::ostringstream out;
  nlohmann::ordered_json array = nlohmann::ordered_json::array();
  if (format == Format::kCsv) {
    out << programs::CsvHeader() << (balance ? ",delta,factor" : "") << "\n";
  }
  int flagged = 0;
  for (const programs::FrlpResult& r : results) {
    std::optional<bounds::Balanced> b;
    if (balance && std::isfinite(r.bound) && r.bound >= 1.0) {
      b = bounds::balance_bifactor({*r.family.gamma_f, r.bound});
    }
    if (format == Format::kCsv) {
      out << programs::ToCsvRow(r);
      if (balance) {
        out << ',' << (b ? Fixed5(b->delta) : "") << ','
            << (b ? Fixed5(b->factor) : "");
      }
      out << "\n";
    } else {
      nlohmann::ordered_json j = nlohmann::ordered_json::parse(programs::ToJson(r));
      if (b) {
        j["delta"] = b->delta;
        j["factor"] = b->factor;
      }
      array.push_back(std::move(j));
    }
    if (!r.converged) {
      ++flagged;
      std::cerr << "not converged: " << programs::ToString(r.family.id) << " size "
                << r.family.size << " after " << r.rounds << " rounds\n";
    }
  }
  if (format == Format::kJson) out << array.dump(2) << "\n";
  WriteOutput(cfg.output, out.str());
  return flagged > 0 ? kFailure : kOk;
}

}  // namespace

void AddFrlpCommand(CLI::App& app, int& exit_code) {
  auto cfg = std::make_shared<FrlpConfig>();
  CLI::App* sub = app.add_subcommand("frlp", "Solve factor-revealing programs");
  sub->add_option("--table", cfg->table, "Preset grid: 1 (A1), 2 (A2), 3 (bi-factor)");
  sub->add_option("--family", cfg->family, "Program family, e.g. a1-lower");
  sub->add_option("--k,--t,--size", cfg->sizes, "Program size(s)")->delimiter(',');
  sub->add_option("--kmax", cfg->kmax, "Largest size of a table grid");
  sub->add_option("--gamma-f", cfg->gamma_f, "Facility factor of the bi-factor program");
  sub->add_option("--tol-cut", cfg->tol_cut, "Square-root violation tolerance");
  sub->add_option("--max-rounds", cfg->max_rounds, "Cutting-plane round limit");
  sub->add_option("--mode", cfg->mode, "Cut mode: all or most");
  sub->add_option("--format", cfg->format, "csv or json");
  sub->add_option("-o,--output", cfg->output, "Output file (default stdout)");
  sub->callback([cfg, &exit_code] { exit_code = Run(*cfg); });
}

}  // namespace frlp::cli
