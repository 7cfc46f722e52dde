#include <memory>
#include <sstream>
#include <string>

#include "commands.h"
#include "common.h"
#include "frlp/bounds/bounds.h"
#include "json.hpp"

namespace frlp::cli {

namespace {

struct BoundsConfig {
  double tau = 3.0;
  double gf = 1.45;
  double gc = 0.0;
  double gamma = 2.04011;
  double from = 1.05;
  double to = 4.0;
  int steps = 60;
  std::string format = "csv";
  std::string output;
};

// Emits one record as CSV (header + row) or a JSON object.
class Record {
 public:
  explicit Record(const std::string& format) : format_(ParseFormat(format)) {}

  void Add(const std::string& key, double value) {
    header_ += (header_.empty() ? "" : ",") + key;
    row_ += (row_.empty() ? "" : ",") + Fixed5(value);
    json_[key] = value;
  }

  std::string str() const {
    if (format_ == Format::kJson) return json_.dump(2) + "\n";
    return header_ + "\n" + row_ + "\n";
  }

 private:
  Format format_;
  std::string header_, row_;
  nlohmann::ordered_json json_;
};

int Alpha(const BoundsConfig& cfg) {
  const bounds::FixedPoint fp = bounds::optimal_alpha(cfg.tau);
  Record r(cfg.format);
  r.Add("alpha", fp.alpha);
  r.Add("gamma0", fp.gamma0);
  WriteOutput(cfg.output, r.str());
  return kOk;
}

int Balance(const BoundsConfig& cfg) {
  const bounds::Balanced b = bounds::balance_bifactor({cfg.gf, cfg.gc});
  Record r(cfg.format);
  r.Add("delta", b.delta);
  r.Add("factor", b.factor);
  WriteOutput(cfg.output, r.str());
  return kOk;
}

int Cs(const BoundsConfig& cfg) {
  const bounds::BiFactor bf = bounds::cs_bifactor(cfg.gamma, cfg.tau);
  Record r(cfg.format);
  r.Add("gamma_f", bf.gamma_f);
  r.Add("gamma_c", bf.gamma_c);
  WriteOutput(cfg.output, r.str());
  return kOk;
}

int Curve(const BoundsConfig& cfg) {
  if (cfg.steps < 2 || !(cfg.from > 1.0) || !(cfg.to > cfg.from)) {
    throw UsageError("curve needs 1 < from < to and steps >= 2");
  }
  std::ostringstream out;
  nlohmann::ordered_json array = nlohmann::ordered_json::array();
  const bool csv = ParseFormat(cfg.format) == Format::kCsv;
  if (csv) out << "gamma_f,cs_gamma_c,hardness_gamma_c\n";
  for (int s = 0; s < cfg.steps; ++s) {
    const double g = cfg.from + (cfg.to - cfg.from) * s / (cfg.steps - 1);
    const double cs = bounds::cs_bifactor(g, cfg.tau).gamma_c;
    const double hard = bounds::hardness_curve(g, cfg.tau);
    if (csv) {
      out << Fixed5(g) << ',' << Fixed5(cs) << ',' << Fixed5(hard) << "\n";
    } else {
      array.push_back({{"gamma_f", g}, {"cs_gamma_c", cs}, {"hardness_gamma_c", hard}});
    }
  }
  if (!csv) out << array.dump(2) << "\n";
  WriteOutput(cfg.output, out.str());
  return kOk;
}

void Common(CLI::App* sub, BoundsConfig& cfg) {
  sub->add_option("--format", cfg.format, "csv or json");
  sub->add_option("-o,--output", cfg.output, "Output file (default stdout)");
}

}  // namespace

void AddBoundsCommand(CLI::App& app, int& exit_code) {
  auto cfg = std::make_shared<BoundsConfig>();
  CLI::App* b = app.add_subcommand("bounds", "Closed-form bound calculators");
  b->require_subcommand(1);

  CLI::App* alpha = b->add_subcommand("alpha", "Fixed point gamma = 1 + (3 tau - 1) e^-gamma");
  alpha->add_option("--tau", cfg->tau, "Relaxation of the triangle inequality");
  Common(alpha, *cfg);
  alpha->callback([cfg, &exit_code] { exit_code = Alpha(*cfg); });

  CLI::App* balance = b->add_subcommand("balance", "Balance a bi-factor pair by scaling");
  balance->add_option("--gf", cfg->gf, "Facility factor")->required();
  balance->add_option("--gc", cfg->gc, "Connection factor")->required();
  Common(balance, *cfg);
  balance->callback([cfg, &exit_code] { exit_code = Balance(*cfg); });

  CLI::App* cs = b->add_subcommand("cs", "Bi-factor guarantee of CS(gamma)");
  cs->add_option("--gamma", cfg->gamma, "Opening scaling");
  cs->add_option("--tau", cfg->tau, "Relaxation of the triangle inequality");
  Common(cs, *cfg);
  cs->callback([cfg, &exit_code] { exit_code = Cs(*cfg); });

  CLI::App* curve = b->add_subcommand("curve", "Trade-off curve samples for plotting");
  curve->add_option("--tau", cfg->tau, "Relaxation of the triangle inequality");
  curve->add_option("--from", cfg->from, "Smallest gamma_f (> 1)");
  curve->add_option("--to", cfg->to, "Largest gamma_f");
  curve->add_option("--steps", cfg->steps, "Number of samples");
  Common(curve, *cfg);
  curve->callback([cfg, &exit_code] { exit_code = Curve(*cfg); });
}

}  // namespace frlp::cli
