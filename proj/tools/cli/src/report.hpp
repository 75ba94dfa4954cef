// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <ostream>
#include <stdexcept>
#include <string>
#include <optional>
#include <variant>
#include <vector>

#include <json.hpp>

#include "duplex_cli/cli.hpp"

namespace duplex::cli {

using Cell = std::variant<std::monostate, std::string, double, long long>;

struct Table {
  std::string suffix;  // appended to the output stem, e.g. ".oracle"
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
};

struct Report {
  nlohmann::json results = nlohmann::json::object();
  nlohmann::json oracle_report = nlohmann::json::array();
  std::vector<Table> tables;
  int exit_code = kOk;
  std::vector<std::string> warnings;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Report cmd_dof(RunConfig& cfg);
Report cmd_rate(RunConfig& cfg);
Report cmd_advise(RunConfig& cfg);

// Fails early with IoError when --out points into a missing directory.
void check_output_location(const RunConfig& cfg);
void write_report(const RunConfig& cfg, const Report& report, std::ostream& out);

std::string format_number(double v);

// Oracle rows share one layout in CSV and JSON.
void add_oracle_row(Report& report, const std::string& mode, const std::string& quantity,
                    std::optional<double> closed_form, std::optional<double> oracle, double max_abs_diff);

}  // namespace duplex::cli
