// SPDX-License-Identifier: Apache-2.0
//
// duplex-dof command line front end, usable as a library.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "duplex/core_model.hpp"
#include "duplex/dof_types.hpp"

namespace duplex::cli {

enum ExitCode : int { kOk = 0, kConfigError = 2, kIoError = 3, kFitUnstable = 4 };

enum class Command { Dof, Rate, Advise };
enum class Scenario { PointToPoint, TwoWay, TwoHop, TwoWayTwoHop };
enum class Format { Csv, Json };

struct RunConfig {
  Command command = Command::Dof;
  Scenario scenario = Scenario::TwoWay;
  int n_a = 0;
  int n_r = 0;
  int n_b = 0;
  std::optional<double> lambda;
  double beta = 1.0;
  double mu = 1.0;
  std::vector<DuplexMode> modes;
  std::optional<double> tau;
  std::optional<double> gamma;
  std::uint64_t seed = 1;
  std::optional<std::size_t> samples;
  double snr_min_db = 40.0;
  double snr_max_db = 70.0;
  double snr_step_db = 5.0;
  std::optional<std::string> out;
  Format format = Format::Csv;
  std::vector<std::string> assumptions;

  SiParams si() const;
  nlohmann::json to_json() const;
};

std::string_view scenario_tag(Scenario s) noexcept;

// Parses argv (without the program name) and runs the command. Output
// goes to `out` when no --out path is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

// Region vertices from a JSON document written by `dof`, keyed by mode tag.
std::map<std::string, DofRegion> regions_from_json(const nlohmann::json& doc);

}  // namespace duplex::cli
