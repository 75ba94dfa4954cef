// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <sstream>

#include <CLI11.hpp>

#include "duplex/errors.hpp"
#include "duplex/version.hpp"
#include "report.hpp"

namespace duplex::cli {

namespace {

std::string_view command_tag(Command c) noexcept {
  switch (c) {
    case Command::Dof: return "dof";
    case Command::Rate: return "rate";
    case Command::Advise: return "advise";
  }
  return "";
}

struct RawArgs {
  std::string scenario;
  int na = 0;
  int nb = 0;
  int nr = 0;
  double lambda = 1.0;
  double beta = 1.0;
  double mu = 1.0;
  std::string modes = "hd,ac,rc";
  double tau = 0.5;
  double gamma = 1.0;
  std::uint64_t seed = 1;
  std::size_t samples = 20000;
  double snr_min = 40.0;
  double snr_max = 70.0;
  double snr_step = 5.0;
  std::string out;
  std::string format = "csv";
};

struct Flags {
  CLI::App* app = nullptr;
  CLI::Option* nr = nullptr;
  CLI::Option* lambda = nullptr;
  CLI::Option* tau = nullptr;
  CLI::Option* gamma = nullptr;
  CLI::Option* samples = nullptr;
  CLI::Option* out = nullptr;
};

Flags add_command(CLI::App& app, const std::string& name, const std::string& help, RawArgs& raw,
                  bool rate_flags) {
  Flags f;
  f.app = app.add_subcommand(name, help);
  std::vector<std::string> scenarios{"two-way", "two-hop", "twr"};
  if (rate_flags) scenarios.insert(scenarios.begin(), "p2p");
  f.app->add_option("scenario", raw.scenario, "Scenario")->required()->check(CLI::IsMember(scenarios));
  f.app->add_option("--na", raw.na, "Antennas at node A (transmitter for p2p)")->required();
  f.app->add_option("--nb", raw.nb, "Antennas at node B (receiver for p2p)")->required();
  f.nr = f.app->add_option("--nr", raw.nr, "Relay antennas");
  f.lambda = f.app->add_option("--lambda", raw.lambda, "Self-interference exponent in [0, 1]");
  f.app->add_option("--beta", raw.beta, "Self-interference cancellation constant");
  f.app->add_option("--mu", raw.mu, "Self-interference cancellation constant");
  f.app->add_option("--modes", raw.modes, "Comma separated subset of hd,ac,rc");
  f.tau = f.app->add_option("--tau", raw.tau, "Time-sharing fraction");
  f.gamma = f.app->add_option("--gamma", raw.gamma, "Power coupling exponent");
  f.app->add_option("--seed", raw.seed, "Monte-Carlo seed");
  f.samples = f.app->add_option("--samples", raw.samples, "Monte-Carlo samples per SNR point");
  if (rate_flags) {
    f.app->add_option("--snr-min", raw.snr_min, "Lowest SNR in dB");
    f.app->add_option("--snr-max", raw.snr_max, "Highest SNR in dB");
    f.app->add_option("--snr-step", raw.snr_step, "SNR step in dB");
  }
  f.out = f.app->add_option("--out", raw.out, "Output path (stdout when omitted)");
  f.app->add_option("--format", raw.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  return f;
}

std::vector<DuplexMode> parse_modes(const std::string& list) {
  std::vector<DuplexMode> modes;
  std::stringstream ss(list);
  std::string tag;
  while (std::getline(ss, tag, ',')) {
    const auto m = parse_mode_tag(tag);
    if (!m) throw std::invalid_argument("unknown mode '" + tag + "' (expected hd, ac or rc)");
    if (std::find(modes.begin(), modes.end(), *m) == modes.end()) modes.push_back(*m);
  }
  if (modes.empty()) throw std::invalid_argument("--modes must name at least one mode");
  return modes;
}

RunConfig build_config(Command command, const RawArgs& raw, const Flags& f) {
  RunConfig cfg;
  cfg.command = command;
  if (raw.scenario == "p2p") cfg.scenario = Scenario::PointToPoint;
  if (raw.scenario == "two-way") cfg.scenario = Scenario::TwoWay;
  if (raw.scenario == "two-hop") cfg.scenario = Scenario::TwoHop;
  if (raw.scenario == "twr") cfg.scenario = Scenario::TwoWayTwoHop;

  cfg.n_a = raw.na;
  cfg.n_b = raw.nb;
  if (cfg.n_a < 1 || cfg.n_b < 1) throw std::invalid_argument("--na and --nb must be >= 1");
  const bool relay = cfg.scenario == Scenario::TwoHop || cfg.scenario == Scenario::TwoWayTwoHop;
  if (relay) {
    if (!f.nr->count()) throw std::invalid_argument("--nr is required for relay scenarios");
    cfg.n_r = raw.nr;
    if (cfg.n_r < 1) throw std::invalid_argument("--nr must be >= 1");
  } else if (f.nr->count()) {
    throw std::invalid_argument("--nr only applies to relay scenarios");
  }

  cfg.modes = parse_modes(raw.modes);
  cfg.beta = raw.beta;
  cfg.mu = raw.mu;
  if (f.lambda->count()) {
    cfg.lambda = raw.lambda;
  } else if (cfg.scenario == Scenario::TwoWayTwoHop) {
    cfg.lambda = 0.9;
    cfg.assumptions.push_back("lambda not specified; assumed 0.9");
  }
  const bool any_fd = std::any_of(cfg.modes.begin(), cfg.modes.end(), is_full_duplex);
  if (!cfg.lambda && (any_fd || command == Command::Advise) && cfg.scenario != Scenario::PointToPoint) {
    throw std::invalid_argument("--lambda is required for full-duplex modes");
  }
  (void)cfg.si();  // validates lambda, beta, mu

  if (f.tau->count()) {
    if (!(raw.tau >= 0.0 && raw.tau <= 1.0)) throw std::invalid_argument("--tau must be in [0, 1]");
    cfg.tau = raw.tau;
  }
  if (f.gamma->count()) {
    if (!(raw.gamma > 0.0)) throw std::invalid_argument("--gamma must be > 0");
    if (relay && raw.gamma > 1.0) throw std::invalid_argument("--gamma must be in (0, 1] for relay scenarios");
    cfg.gamma = raw.gamma;
  }
  cfg.seed = raw.seed;
  if (f.samples->count()) {
    if (raw.samples < 1) throw std::invalid_argument("--samples must be >= 1");
    cfg.samples = raw.samples;
  }
  cfg.snr_min_db = raw.snr_min;
  cfg.snr_max_db = raw.snr_max;
  cfg.snr_step_db = raw.snr_step;
  if (f.out->count()) {
    if (raw.out.empty()) throw std::invalid_argument("--out must not be empty");
    cfg.out = raw.out;
  }
  cfg.format = raw.format == "json" ? Format::Json : Format::Csv;
  return cfg;
}

}  // namespace

SiParams RunConfig::si() const { return SiParams(lambda.value_or(1.0), beta, mu); }

nlohmann::json RunConfig::to_json() const {
  nlohmann::json modes_json = nlohmann::json::array();
  for (auto m : modes) modes_json.push_back(std::string(mode_tag(m)));
  auto opt = [](const auto& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
  nlohmann::json j{{"command", std::string(command_tag(command))},
                   {"scenario", std::string(scenario_tag(scenario))},
                   {"n_a", n_a},
                   {"n_b", n_b},
                   {"n_r", scenario == Scenario::TwoHop || scenario == Scenario::TwoWayTwoHop
                               ? nlohmann::json(n_r)
                               : nlohmann::json(nullptr)},
                   {"lambda", opt(lambda)},
                   {"beta", beta},
                   {"mu", mu},
                   {"modes", modes_json},
                   {"tau", opt(tau)},
                   {"gamma", opt(gamma)},
                   {"format", format == Format::Json ? "json" : "csv"},
                   {"out", opt(out)}};
  if (command == Command::Rate) {
    j["seed"] = seed;
    j["samples"] = opt(samples);
    j["snr_db"] = {{"min", snr_min_db}, {"max", snr_max_db}, {"step", snr_step_db}};
  }
  return j;
}

std::string_view scenario_tag(Scenario s) noexcept {
  switch (s) {
    case Scenario::PointToPoint: return "p2p";
    case Scenario::TwoWay: return "two-way";
    case Scenario::TwoHop: return "two-hop";
    case Scenario::TwoWayTwoHop: return "twr";
  }
  return "";
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Half-duplex vs full-duplex degrees-of-freedom analysis", "duplex-dof"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));
  RawArgs raw;
  const Flags dof = add_command(app, "dof", "DoF regions and optimal DoF", raw, false);
  const Flags rate = add_command(app, "rate", "Monte-Carlo ergodic rates and slope fits", raw, true);
  const Flags advise = add_command(app, "advise", "Recommend HD or FD", raw, false);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }

  RunConfig cfg;
  try {
    if (dof.app->parsed()) cfg = build_config(Command::Dof, raw, dof);
    if (rate.app->parsed()) cfg = build_config(Command::Rate, raw, rate);
    if (advise.app->parsed()) cfg = build_config(Command::Advise, raw, advise);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }

  Report report;
  try {
    check_output_location(cfg);
    switch (cfg.command) {
      case Command::Dof: report = cmd_dof(cfg); break;
      case Command::Rate: report = cmd_rate(cfg); break;
      case Command::Advise: report = cmd_advise(cfg); break;
    }
    write_report(cfg, report, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }
  for (const auto& w : report.warnings) err << "warning: " << w << '\n';
  return report.exit_code;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

std::map<std::string, DofRegion> regions_from_json(const nlohmann::json& doc) {
  std::map<std::string, DofRegion> regions;
  const auto& node = doc.at("results").at("regions");
  for (const auto& [tag, vertices] : node.items()) {
    std::vector<DofPoint> pts;
    for (const auto& v : vertices) pts.push_back(DofPoint::checked(v.at(0).get<double>(), v.at(1).get<double>()));
    regions.emplace(tag, DofRegion::from_vertices(std::move(pts)));
  }
  return regions;
}

}  // namespace duplex::cli
