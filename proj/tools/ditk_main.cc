// Copyright 2026 The ditk Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// ditk command-line front end.
//
// Exit codes: 0 success, 2 usage error, 1 computation or input error.
// Numbers are written with 9 significant digits.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <istream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ditk/box_io.h"
#include "ditk/boxes.h"
#include "ditk/definetti.h"
#include "ditk/eat.h"
#include "ditk/entropy.h"
#include "ditk/keyrates.h"
#include "ditk/nslp.h"
#include "ditk/signalling.h"
#include "ditk/simulate.h"

namespace {

using Out = nlohmann::ordered_json;

double Round9(double v) {
  if (!std::isfinite(v)) return v;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return std::strtod(buf, nullptr);
}

Out Num(double v) {
  if (!std::isfinite(v)) return nullptr;
  return Round9(v);
}

std::string CsvCell(const Out& v) {
  if (v.is_null()) return "nan";
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return v.dump();
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v.get<double>());
  return buf;
}

struct Result {
  Out json;
  // CSV columns: taken from csv_rows, else json["rows"], else json.
  std::vector<std::string> columns;
  Out csv_rows;
  std::string default_format = "json";
};

std::string RenderCsv(const Result& r) {
  std::ostringstream s;
  for (std::size_t i = 0; i < r.columns.size(); ++i) {
    s << (i ? "," : "") << r.columns[i];
  }
  s << '\n';
  auto row = [&](const Out& obj) {
    for (std::size_t i = 0; i < r.columns.size(); ++i) {
      // Absent fields stay empty; null values print as nan.
      const auto it = obj.find(r.columns[i]);
      s << (i ? "," : "") << (it == obj.end() ? "" : CsvCell(*it));
    }
    s << '\n';
  };
  if (r.csv_rows.is_array()) {
    for (const Out& obj : r.csv_rows) row(obj);
  } else if (r.json.contains("rows")) {
    for (const Out& obj : r.json["rows"]) row(obj);
  } else {
    row(r.json);
  }
  return s.str();
}

// Reads JSON config files. Nested objects are subcommand sections; other
// top-level keys go to the main program when it has such an option and to
// the selected subcommand otherwise.
class JsonConfig : public CLI::Config {
 public:
  explicit JsonConfig(const CLI::App* app) : app_(app) {}

  std::string to_config(const CLI::App*, bool, bool,
                        std::string) const override {
    return "{}\n";
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& in) const override {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw CLI::FileError(std::string("config is not valid JSON: ") +
                           e.what());
    }
    if (!doc.is_object()) throw CLI::FileError("config must be a JSON object");
    std::vector<CLI::ConfigItem> items;
    for (const auto& [key, value] : doc.items()) {
      if (value.is_object()) {
        for (const auto& [name, inner] : value.items()) {
          items.push_back(Item({key}, name, inner));
        }
        continue;
      }
      std::vector<std::string> parents;
      if (app_->get_option_no_throw("--" + key) == nullptr) {
        const auto selected = app_->get_subcommands();
        if (!selected.empty()) parents.push_back(selected.front()->get_name());
      }
      items.push_back(Item(parents, key, value));
    }
    return items;
  }

 private:
  static std::string Scalar(const std::string& key, const nlohmann::json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number()) return v.dump();
    throw CLI::ConversionError("config value for \"" + key +
                               "\" must be a string, number or boolean");
  }

  static CLI::ConfigItem Item(std::vector<std::string> parents,
                              const std::string& key,
                              const nlohmann::json& v) {
    CLI::ConfigItem item;
    item.parents = std::move(parents);
    item.name = key;
    if (v.is_array()) {
      for (const auto& e : v) item.inputs.push_back(Scalar(key, e));
    } else {
      item.inputs.push_back(Scalar(key, v));
    }
    return item;
  }

  const CLI::App* app_;
};

std::vector<double> Spaced(double from, double to, int points, bool log) {
  std::vector<double> out;
  for (int i = 0; i < points; ++i) {
    const double t = points == 1 ? 0.0 : static_cast<double>(i) / (points - 1);
    out.push_back(log ? std::exp(std::log(from) + t * (std::log(to) -
                                                       std::log(from)))
                      : from + t * (to - from));
  }
  return out;
}

ditk::Game LoadGame(const std::string& path, const std::string& builtin) {
  if (!path.empty()) return ditk::GameFromJson(ditk::ReadJsonFile(path));
  return builtin == "extended-chsh" ? ditk::ExtendedChshGame()
                                    : ditk::ChshGame();
}

// ---------------------------------------------------------------------------

struct EntropyCurveArgs {
  double from = ditk::kOmegaClassical;
  double to = ditk::kOmegaQuantum;
  int points = 50;
};

Result EntropyCurve(const EntropyCurveArgs& a) {
  if (!(a.from < a.to)) throw std::invalid_argument("--from must be < --to");
  Result r;
  r.default_format = "csv";
  r.columns = {"omega", "secrecy_bound", "bell_diag_bound"};
  Out rows = Out::array();
  for (double omega : Spaced(a.from, a.to, a.points, false)) {
    Out row;
    row["omega"] = Num(omega);
    row["secrecy_bound"] = Num(ditk::SecrecyBound(omega));
    row["bell_diag_bound"] = ditk::InQuantumChshRegime(omega)
                                 ? Num(ditk::BellDiagBound(omega))
                                 : Out();
    rows.push_back(std::move(row));
  }
  r.json["rows"] = std::move(rows);
  return r;
}

struct MuOptArgs {
  double omega_exp = 0;
  double delta_est = 1e-3;
  double gamma = 1;
  double n = 0;
  double eps_s = 1e-6;
  double eps_ea = 1e-6;
  bool block = false;
  int s_max = 1;
};

Result MuOptCommand(const MuOptArgs& a) {
  const ditk::EatEpsilons eps{a.eps_s, a.eps_ea};
  const ditk::MuOptResult m =
      a.block ? ditk::MuBlockOpt(a.omega_exp, a.delta_est, {a.gamma, a.s_max},
                                 a.n, eps)
              : ditk::MuOpt(a.omega_exp, a.delta_est, a.gamma, a.n, eps);
  Result r;
  r.columns = {"mode",   "omega_exp", "delta_est", "gamma", "n",
               "eps_s",  "eps_ea",    "s_max",     "mu_opt", "best_cut",
               "f_min",  "penalty",   "slope",     "p1"};
  Out& j = r.json;
  j["mode"] = a.block ? "block" : "per-round";
  j["omega_exp"] = Num(a.omega_exp);
  j["delta_est"] = Num(a.delta_est);
  j["gamma"] = Num(a.gamma);
  j["n"] = Num(a.n);
  j["eps_s"] = Num(a.eps_s);
  j["eps_ea"] = Num(a.eps_ea);
  j["s_max"] = a.block ? a.s_max : 1;
  j["mu_opt"] = Num(m.value);
  j["best_cut"] = Num(m.best_cut);
  j["f_min"] = Num(m.f_min);
  j["penalty"] = Num(m.penalty);
  j["slope"] = Num(m.slope);
  j["p1"] = Num(m.p1);
  return r;
}

struct RateCurveArgs {
  std::string axis = "qber";
  std::vector<double> grid;
  double from = 0;
  double to = 0;
  int points = 0;
  std::optional<double> fixed, fixed_q, fixed_n;
  std::string out;
  std::string mode = "block";
  double soundness = 1e-5;
  double completeness = 1e-2;
  double eps_ec = 1e-10;
};

Result RateCurveCommand(const RateCurveArgs& a) {
  const bool qber_axis = a.axis == "qber" || a.axis == "q";
  const double fixed = a.fixed.value_or(
      (qber_axis ? a.fixed_n : a.fixed_q).value_or(0));
  std::vector<double> grid = a.grid;
  if (grid.empty()) {
    if (a.points < 1 || !(a.from <= a.to)) {
      throw std::invalid_argument(
          "give --grid or --from <= --to with --points >= 1");
    }
    grid = Spaced(a.from, a.to, a.points, !qber_axis);
  }
  ditk::RateCaps caps;
  caps.soundness = a.soundness;
  caps.completeness = a.completeness;
  caps.eps_ec = a.eps_ec;
  const ditk::RateMode mode =
      a.mode == "block" ? ditk::RateMode::kBlock : ditk::RateMode::kPerRound;
  const auto reports = ditk::RateCurve(
      qber_axis ? ditk::RateAxis::kQber : ditk::RateAxis::kRounds, grid,
      fixed, caps, mode);
  Result r;
  r.default_format = a.out.empty() ? "csv" : a.out;
  r.columns = {"qber",            "n",
               "rate",            "key_length",
               "gamma",           "delta_est",
               "cut",             "mu_opt",
               "eps_s",           "eps_ea",
               "eps_pa",          "eps_ec_complete",
               "eps_t",           "s_max",
               "entropy",         "leak_ec",
               "smoothing",       "max_entropy",
               "privacy_amplification",
               "soundness_error", "completeness_error"};
  Out rows = Out::array();
  for (const ditk::RateReport& rep : reports) {
    Out row;
    row["qber"] = Num(rep.params.qber);
    row["n"] = Num(rep.params.n);
    row["rate"] = Num(rep.rate);
    row["key_length"] = Num(rep.key_length);
    row["gamma"] = Num(rep.params.gamma);
    row["delta_est"] = Num(rep.params.delta_est);
    row["cut"] = Num(rep.mu.best_cut);
    row["mu_opt"] = Num(rep.mu.value);
    row["eps_s"] = Num(rep.budget.eps_s);
    row["eps_ea"] = Num(rep.budget.eps_ea);
    row["eps_pa"] = Num(rep.budget.eps_pa);
    row["eps_ec_complete"] = Num(rep.budget.eps_ec_complete);
    row["eps_t"] = Num(rep.budget.eps_t);
    row["s_max"] = rep.s_max;
    row["entropy"] = Num(rep.terms.entropy);
    row["leak_ec"] = Num(rep.terms.leak_ec);
    row["smoothing"] = Num(rep.terms.smoothing);
    row["max_entropy"] = Num(rep.terms.max_entropy);
    row["privacy_amplification"] = Num(rep.terms.privacy_amplification);
    row["soundness_error"] = Num(rep.soundness_error);
    row["completeness_error"] = Num(rep.completeness_error);
    rows.push_back(std::move(row));
  }
  r.json["axis"] = qber_axis ? "qber" : "rounds";
  r.json["mode"] = ditk::RateModeName(mode);
  r.json["rows"] = std::move(rows);
  return r;
}

struct NsValueArgs {
  std::string game;
  std::string builtin = "chsh";
  std::vector<double> slack;
};

Result NsValueCommand(const NsValueArgs& a) {
  const ditk::Game game = LoadGame(a.game, a.builtin);
  const ditk::NsValue ns = ditk::SolveNsValue(game);
  Result r;
  r.columns = {"ns_value", "classical_value", "kappa", "d",
               "slack",    "value",           "sensitivity_bound"};
  Out& j = r.json;
  j["ns_value"] = Num(ns.value);
  try {
    j["classical_value"] = Num(ditk::ClassicalValue(game));
  } catch (const std::length_error&) {
    j["classical_value"] = nullptr;
  }
  j["kappa"] = Num(ns.kappa);
  j["d"] = ns.d;
  Out dual = Out::array();
  for (double y : ns.dual) dual.push_back(Num(y));
  j["dual"] = std::move(dual);
  Out perturbed = Out::array();
  for (double s : a.slack) {
    Out p;
    p["slack"] = Num(s);
    p["value"] = Num(ditk::PerturbedValue(game, s));
    p["sensitivity_bound"] = Num(ditk::SensitivityBound(ns.value, s, ns.kappa));
    perturbed.push_back(std::move(p));
  }
  // One CSV row per slack value, repeating the unperturbed fields.
  r.csv_rows = Out::array();
  for (const Out& p : perturbed) {
    Out row = j;
    row.erase("dual");
    row.update(p);
    r.csv_rows.push_back(std::move(row));
  }
  if (perturbed.empty()) r.csv_rows.push_back(j);
  j["perturbed"] = std::move(perturbed);
  return r;
}

struct ThresholdArgs {
  std::string game;
  std::string builtin = "chsh";
  double n = 0;
  double beta = 0;
  std::string box;
};

Result ThresholdCommand(const ThresholdArgs& a) {
  const ditk::Game game = LoadGame(a.game, a.builtin);
  const int d = ditk::ThresholdDimension(game.alphabets());
  Result r;
  r.columns = {"n",        "beta",     "d",
               "eps",      "bound",    "iid_omega",
               "iid_threshold_wins", "iid_exact", "iid_hoeffding"};
  Out& j = r.json;
  j["n"] = Num(a.n);
  j["beta"] = Num(a.beta);
  j["d"] = d;
  j["eps"] = Num(a.beta / (10.0 * d));
  j["bound"] = Num(ditk::ThresholdBound(game, a.n, a.beta));
  if (!a.box.empty()) {
    const ditk::SingleRoundBox box = ditk::BoxFromJson(ditk::ReadJsonFile(a.box));
    const ditk::IidThreshold iid = ditk::IidThresholdProbability(
        box, game, static_cast<std::int64_t>(std::llround(a.n)), a.beta);
    j["iid_omega"] = Num(iid.omega);
    j["iid_threshold_wins"] = Num(iid.threshold_wins);
    j["iid_exact"] = Num(iid.exact);
    j["iid_hoeffding"] = Num(iid.hoeffding);
  }
  return r;
}

struct DefinettiArgs {
  std::string box;
  int n = 0;
  int random = 0;
  std::uint64_t seed = 1;
  int a_size = 2, b_size = 2, x_size = 2, y_size = 2;
  bool exact = false;
};

Result DefinettiCommand(const DefinettiArgs& a) {
  std::vector<ditk::MultiRoundBox> boxes;
  if (!a.box.empty()) {
    boxes.push_back(ditk::MultiRoundBoxFromJson(ditk::ReadJsonFile(a.box)));
  } else {
    if (a.n < 1) throw std::invalid_argument("give --box or --n >= 1");
    const ditk::Alphabets s{a.a_size, a.b_size, a.x_size, a.y_size};
    boxes = ditk::DeterministicIidBoxes(a.n, s);
    for (int i = 0; i < a.random; ++i) {
      boxes.push_back(ditk::RandomSymmetricBox(a.n, s, a.seed + i));
    }
  }
  bool holds = true;
  double max_ratio = 0;
  std::uint64_t exact = 0;
  std::string factor;
  for (const auto& box : boxes) {
    const ditk::ReductionCheck c = ditk::VerifyReduction(box, 1e-9, a.exact);
    holds = holds && c.holds;
    max_ratio = std::max(max_ratio, c.max_ratio);
    exact += c.exact_comparisons;
    factor = c.factor.str();
  }
  Result r;
  r.columns = {"n", "boxes_checked", "factor", "max_ratio", "holds",
               "exact_comparisons"};
  Out& j = r.json;
  j["n"] = boxes.front().n();
  j["boxes_checked"] = boxes.size();
  j["factor"] = factor;
  j["max_ratio"] = Num(max_ratio);
  j["holds"] = holds;
  j["exact_comparisons"] = exact;
  return r;
}

struct SigTestArgs {
  std::string data;
  double zeta = 0;
  double eps = 0;
  std::string direction = "a-to-b";
  std::optional<int> x, y, outcome;
};

Result SigTestCommand(const SigTestArgs& a, bool single_target) {
  const ditk::DataFile file = ditk::DataFromJson(ditk::ReadJsonFile(a.data));
  const ditk::Alphabets& s = file.alphabets;
  ditk::TestParams params;
  params.zeta = a.zeta;
  params.eps = a.eps;
  params.n = static_cast<std::int64_t>(file.data.size());
  params.Validate();
  std::vector<ditk::SigTarget> targets;
  if (single_target) {
    targets.push_back({a.direction == "b-to-a" ? ditk::SigDirection::kBtoA
                                               : ditk::SigDirection::kAtoB,
                       a.x.value_or(0), a.y.value_or(0), a.outcome.value_or(0)});
  } else {
    for (auto dir : {ditk::SigDirection::kAtoB, ditk::SigDirection::kBtoA}) {
      const int outcomes =
          dir == ditk::SigDirection::kAtoB ? s.b_size : s.a_size;
      for (int x = 0; x < s.x_size; ++x) {
        for (int y = 0; y < s.y_size; ++y) {
          for (int o = 0; o < outcomes; ++o) targets.push_back({dir, x, y, o});
        }
      }
    }
  }
  Result r;
  r.columns = {"direction", "x", "y", "outcome", "sig", "passed"};
  Out rows = Out::array();
  bool any = false;
  bool missing = false;
  for (const auto& t : targets) {
    const ditk::SigTestResult res =
        ditk::RunSignallingTest(file.data, s, file.q, params, t);
    any = any || res.passed;
    missing = res.missing_pairs;
    Out row;
    row["direction"] =
        t.direction == ditk::SigDirection::kAtoB ? "a-to-b" : "b-to-a";
    row["x"] = t.x;
    row["y"] = t.y;
    row["outcome"] = t.outcome;
    row["sig"] = Num(res.sig);
    row["passed"] = res.passed;
    rows.push_back(std::move(row));
  }
  Out& j = r.json;
  j["n"] = params.n;
  j["zeta"] = Num(a.zeta);
  j["eps"] = Num(a.eps);
  j["threshold"] = Num(a.zeta - 2 * a.eps);
  j["sanov_delta"] =
      Num(ditk::SanovDelta(static_cast<double>(params.n) / 2, a.eps, s.cells()));
  j["missing_pairs"] = missing;
  j["any_passed"] = any;
  j["rows"] = std::move(rows);
  return r;
}

struct SimulateArgs {
  std::int64_t n = 10000;
  double gamma = 0.1;
  double omega_exp = 0.81;
  std::optional<double> omega_threshold;
  double delta_est = 0.02;
  double qber = 0;
  std::int64_t trials = 500;
  std::uint64_t seed = 7;
  bool block = false;
  int s_max = 1;
};

Result SimulateCommand(const SimulateArgs& a) {
  ditk::SimulationConfig config;
  config.block_mode = a.block;
  config.n = a.n;
  config.gamma = a.gamma;
  config.s_max = a.s_max;
  config.omega_threshold = a.omega_threshold.value_or(a.omega_exp);
  config.delta_est = a.delta_est;
  config.device = {a.omega_exp, a.qber};
  const ditk::AbortEstimate e =
      ditk::EstimateAbortProbability(config, a.trials, a.seed);
  Result r;
  r.columns = {"trials", "aborts", "abort_freq", "ci_lo", "ci_hi",
               "hoeffding_bound"};
  Out& j = r.json;
  j["trials"] = e.trials;
  j["aborts"] = e.aborts;
  j["abort_freq"] = Num(e.frequency);
  j["ci"] = Out::array({Num(e.ci.lo), Num(e.ci.hi)});
  j["ci_lo"] = Num(e.ci.lo);
  j["ci_hi"] = Num(e.ci.hi);
  j["hoeffding_bound"] = Num(e.hoeffding_bound);
  j["seed"] = a.seed;
  j["mode"] = a.block ? "block" : "per-round";
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Device-independent toolkit: boxes, non-signalling LPs, de "
               "Finetti checks, signalling tests and finite-size key rates."};
  app.name("ditk");
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.option_defaults()->always_capture_default();

  std::string format;
  std::string output_path;
  int threads = 0;
  app.add_option("--format", format, "Output format (default per command)")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("-o,--output", output_path, "Write output to this file");
  app.add_option("--threads", threads, "Worker threads (DI_TOOLKIT_THREADS)")
      ->check(CLI::PositiveNumber);
  app.set_config("--config", "", "JSON file mirroring the flags");
  app.config_formatter(std::make_shared<JsonConfig>(&app));
  app.allow_config_extras(CLI::config_extras_mode::error);

  std::function<Result()> run;
  const CLI::Range prob(0.0, 1.0);
  const CLI::Range positive(1e-300, 1e300, "POSITIVE");

  EntropyCurveArgs ec;
  auto* cmd = app.add_subcommand("entropy-curve",
                                 "Secrecy bound and Bell-diagonal bound "
                                 "against the CHSH winning probability");
  cmd->add_option("--from", ec.from)->check(prob);
  cmd->add_option("--to", ec.to)->check(prob);
  cmd->add_option("--points", ec.points)->check(CLI::Range(2, 1000000));
  cmd->callback([&] { run = [&] { return EntropyCurve(ec); }; });

  MuOptArgs mo;
  cmd = app.add_subcommand("mu-opt", "Finite-size entropy rate optimized "
                                     "over the min-tradeoff cut");
  cmd->add_option("--omega-exp", mo.omega_exp)->required()->check(prob);
  cmd->add_option("--delta-est", mo.delta_est)->check(prob);
  cmd->add_option("--gamma", mo.gamma)->check(prob);
  cmd->add_option("--n", mo.n, "Rounds, or blocks with --block")
      ->required()->check(positive);
  cmd->add_option("--eps-s", mo.eps_s)->check(prob);
  cmd->add_option("--eps-e,--eps-ea", mo.eps_ea)->check(prob);
  cmd->add_flag("--block", mo.block, "Use the block protocol");
  cmd->add_option("--s-max", mo.s_max)->check(CLI::PositiveNumber);
  cmd->callback([&] { run = [&] { return MuOptCommand(mo); }; });

  RateCurveArgs rc;
  cmd = app.add_subcommand("rate-curve",
                           "Optimized key rate along the QBER or round axis");
  cmd->add_option("--axis", rc.axis, "qber (or q), rounds (or n)")
      ->check(CLI::IsMember({"qber", "q", "rounds", "n"}));
  cmd->add_option("--grid", rc.grid, "Explicit axis values")->delimiter(',');
  cmd->add_option("--from", rc.from);
  cmd->add_option("--to", rc.to);
  cmd->add_option("--points", rc.points, "Linear in QBER, logarithmic in n")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--fixed", rc.fixed,
                  "The other coordinate: n for the qber axis, QBER otherwise");
  cmd->add_option("--q", rc.fixed_q, "Fixed QBER on the round axis")
      ->check(prob);
  cmd->add_option("--n", rc.fixed_n, "Fixed round count on the qber axis")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--out", rc.out, "Output format unless --format is given")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--mode", rc.mode)
      ->check(CLI::IsMember({"block", "per-round"}));
  cmd->add_option("--soundness", rc.soundness)->check(prob);
  cmd->add_option("--completeness", rc.completeness)->check(prob);
  cmd->add_option("--eps-ec", rc.eps_ec)->check(prob);
  cmd->callback([&] {
    // The fixed coordinate: --fixed, or --n on the QBER axis, --q on the
    // round axis.
    const bool qber_axis = rc.axis == "qber" || rc.axis == "q";
    if ((qber_axis ? rc.fixed_q : rc.fixed_n).has_value()) {
      throw CLI::ValidationError(qber_axis ? "--q" : "--n",
                                 "does not apply to this axis");
    }
    const auto& named = qber_axis ? rc.fixed_n : rc.fixed_q;
    if (rc.fixed.has_value() == named.has_value()) {
      throw CLI::ValidationError(
          "--fixed", qber_axis ? "give exactly one of --fixed, --n"
                               : "give exactly one of --fixed, --q");
    }
    run = [&] { return RateCurveCommand(rc); };
  });

  NsValueArgs ns;
  cmd = app.add_subcommand("ns-value",
                           "Non-signalling value, duals and sensitivity");
  auto* ns_game = cmd->add_option("--game", ns.game)->check(CLI::ExistingFile);
  cmd->add_option("--builtin", ns.builtin)
      ->check(CLI::IsMember({"chsh", "extended-chsh"}))
      ->excludes(ns_game);
  cmd->add_option("--slack", ns.slack, "Signalling slack values")
      ->delimiter(',')->check(CLI::NonNegativeNumber);
  cmd->callback([&] { run = [&] { return NsValueCommand(ns); }; });

  ThresholdArgs th;
  cmd = app.add_subcommand("threshold-bound",
                           "Non-signalling threshold bound and IID tail");
  auto* th_game = cmd->add_option("--game", th.game)->check(CLI::ExistingFile);
  cmd->add_option("--builtin", th.builtin)
      ->check(CLI::IsMember({"chsh", "extended-chsh"}))
      ->excludes(th_game);
  cmd->add_option("--n", th.n)->required()->check(CLI::Range(1.0, 1e300));
  cmd->add_option("--beta", th.beta)->required()->check(prob);
  cmd->add_option("--box", th.box, "Single-round box for the IID tail")
      ->check(CLI::ExistingFile);
  cmd->callback([&] { run = [&] { return ThresholdCommand(th); }; });

  DefinettiArgs df;
  cmd = app.add_subcommand("definetti-verify",
                           "Check P <= (n+1)^(l(m-1)) tau exactly");
  auto* df_box = cmd->add_option("--box", df.box, "Multi-round box file")
                     ->check(CLI::ExistingFile);
  cmd->add_option("--n", df.n, "Rounds for the generated test set")
      ->check(CLI::Range(1, ditk::kMaxSymmetrizeRounds))
      ->excludes(df_box);
  cmd->add_option("--trials", df.random, "Random symmetrized boxes")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--seed", df.seed);
  cmd->add_option("--a-size", df.a_size)->check(CLI::PositiveNumber);
  cmd->add_option("--b-size", df.b_size)->check(CLI::PositiveNumber);
  cmd->add_option("--x-size", df.x_size)->check(CLI::PositiveNumber);
  cmd->add_option("--y-size", df.y_size)->check(CLI::PositiveNumber);
  cmd->add_flag("--exact", df.exact, "Compare every entry as a rational");
  cmd->callback([&] { run = [&] { return DefinettiCommand(df); }; });

  SigTestArgs st;
  cmd = app.add_subcommand("sig-test", "Signalling test on observed data");
  cmd->add_option("--data", st.data)->required()->check(CLI::ExistingFile);
  cmd->add_option("--zeta", st.zeta)->required()->check(prob);
  cmd->add_option("--eps", st.eps)->required()->check(prob);
  auto* st_dir = cmd->add_option("--direction", st.direction)
                     ->check(CLI::IsMember({"a-to-b", "b-to-a"}));
  auto* st_x = cmd->add_option("--x", st.x)->check(CLI::NonNegativeNumber);
  auto* st_y = cmd->add_option("--y", st.y)->check(CLI::NonNegativeNumber);
  auto* st_o =
      cmd->add_option("--outcome", st.outcome)->check(CLI::NonNegativeNumber);
  cmd->callback([&] {
    const bool single = st_dir->count() + st_x->count() + st_y->count() +
                            st_o->count() > 0;
    run = [&, single] { return SigTestCommand(st, single); };
  });

  SimulateArgs sm;
  cmd = app.add_subcommand("simulate",
                           "Monte Carlo abort probability of the honest "
                           "protocol");
  cmd->add_option("--n", sm.n, "Rounds, or blocks with --block")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--gamma", sm.gamma)->check(prob);
  cmd->add_option("--omega-exp", sm.omega_exp)->check(prob);
  cmd->add_option("--omega-threshold", sm.omega_threshold,
                  "Expected winning probability in the abort rule "
                  "(default: --omega-exp)")
      ->check(prob);
  cmd->add_option("--delta-est", sm.delta_est)->check(prob);
  cmd->add_option("--qber", sm.qber)->check(prob);
  cmd->add_option("--trials", sm.trials)->check(CLI::PositiveNumber);
  cmd->add_option("--seed", sm.seed);
  cmd->add_flag("--block", sm.block);
  cmd->add_option("--s-max", sm.s_max)->check(CLI::PositiveNumber);
  cmd->callback([&] { run = [&] { return SimulateCommand(sm); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  if (threads > 0) setenv("DI_TOOLKIT_THREADS", std::to_string(threads).c_str(), 1);

  try {
    const Result result = run();
    const std::string fmt = format.empty() ? result.default_format : format;
    const std::string text =
        fmt == "csv" ? RenderCsv(result) : result.json.dump(2) + "\n";
    if (output_path.empty()) {
      std::cout << text << std::flush;
    } else {
      std::ofstream out(output_path);
      if (!out || !(out << text)) {
        throw std::runtime_error("cannot write " + output_path);
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
