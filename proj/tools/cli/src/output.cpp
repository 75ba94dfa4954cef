// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "duplex/version.hpp"
#include "report.hpp"

namespace duplex::cli {

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

std::string render_cell(const Cell& c) {
  struct Visitor {
    std::string operator()(std::monostate) const { return {}; }
    std::string operator()(const std::string& s) const { return csv_escape(s); }
    std::string operator()(double v) const { return format_number(v); }
    std::string operator()(long long v) const { return std::to_string(v); }
  };
  return std::visit(Visitor{}, c);
}

void write_csv(std::ostream& os, const RunConfig& cfg, const Table& table, bool tagged) {
  if (tagged) os << "# table=" << (table.suffix.empty() ? "main" : table.suffix.substr(1)) << '\n';
  os << "# version=" << kVersion << '\n';
  os << "# config=" << cfg.to_json().dump() << '\n';
  for (const auto& a : cfg.assumptions) os << "# assumption=" << a << '\n';
  for (std::size_t i = 0; i < table.header.size(); ++i) os << (i ? "," : "") << table.header[i];
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << render_cell(row[i]);
    os << '\n';
  }
}

std::string csv_stem(const std::string& path) {
  const std::string ext = ".csv";
  if (path.size() > ext.size() && path.compare(path.size() - ext.size(), ext.size(), ext) == 0) {
    return path.substr(0, path.size() - ext.size());
  }
  return path;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open " + path + " for writing");
  f << content;
  f.flush();
  if (!f) throw IoError("write to " + path + " failed");
}

}  // namespace

std::string format_number(double v) { return fmt::format("{:.10g}", v); }

void add_oracle_row(Report& report, const std::string& mode, const std::string& quantity,
                    std::optional<double> closed_form, std::optional<double> oracle, double max_abs_diff) {
  nlohmann::json j{{"mode", mode}, {"quantity", quantity}, {"max_abs_diff", max_abs_diff}};
  j["closed_form"] = closed_form ? nlohmann::json(*closed_form) : nlohmann::json(nullptr);
  j["oracle"] = oracle ? nlohmann::json(*oracle) : nlohmann::json(nullptr);
  report.oracle_report.push_back(j);

  auto it = std::find_if(report.tables.begin(), report.tables.end(),
                         [](const Table& t) { return t.suffix == ".oracle"; });
  if (it == report.tables.end()) {
    report.tables.push_back({".oracle", {"mode", "quantity", "closed_form", "oracle", "max_abs_diff"}, {}});
    it = std::prev(report.tables.end());
  }
  auto opt = [](std::optional<double> v) { return v ? Cell{*v} : Cell{}; };
  it->rows.push_back({mode, quantity, opt(closed_form), opt(oracle), max_abs_diff});
}

void check_output_location(const RunConfig& cfg) {
  if (!cfg.out) return;
  const std::filesystem::path parent = std::filesystem::absolute(*cfg.out).parent_path();
  std::error_code ec;
  if (!std::filesystem::is_directory(parent, ec)) {
    throw IoError("output directory does not exist: " + parent.string());
  }
}

void write_report(const RunConfig& cfg, const Report& report, std::ostream& out) {
  if (cfg.format == Format::Json) {
    nlohmann::json doc{{"config", cfg.to_json()},
                       {"results", report.results},
                       {"oracle_report", report.oracle_report},
                       {"assumptions", cfg.assumptions},
                       {"version", kVersion}};
    const std::string text = doc.dump(2) + "\n";
    if (cfg.out) {
      write_file(*cfg.out, text);
    } else {
      out << text;
    }
    return;
  }

  if (!cfg.out) {
    for (std::size_t i = 0; i < report.tables.size(); ++i) {
      if (i) out << '\n';
      write_csv(out, cfg, report.tables[i], true);
    }
    return;
  }
  const std::string stem = csv_stem(*cfg.out);
  for (const auto& table : report.tables) {
    std::ostringstream os;
    write_csv(os, cfg, table, false);
    write_file(stem + table.suffix + ".csv", os.str());
  }
}

}  // namespace duplex::cli
