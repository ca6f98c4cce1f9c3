// Copyright 2026 The qnet Authors.
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

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "qnet/error.hpp"
#include "qnet/experiments.hpp"

namespace qnet {
namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

void check_string_field(const std::string& s) {
  require(s.find_first_of(",\n\r\"") == std::string::npos, ErrorCode::kIo,
          "string field '" + s + "' cannot be written unquoted");
}

}  // namespace

std::string format_value(const Value& v) {
  if (const auto* i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
  if (const auto* s = std::get_if<std::string>(&v)) return *s;
  const double d = std::get<double>(v);
  if (std::isnan(d)) return "nan";
  if (std::isinf(d)) return d > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), d);
  std::string out(buf, res.ptr);
  // Keep doubles distinguishable from integers on read-back.
  if (out.find_first_of(".e") == std::string::npos) out += ".0";
  return out;
}

Value parse_value(std::string_view text) {
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty()) {
    std::int64_t i = 0;
    auto ri = std::from_chars(first, last, i);
    if (ri.ec == std::errc() && ri.ptr == last) return i;
    double d = 0.0;
    auto rd = std::from_chars(first, last, d);
    if (rd.ec == std::errc() && rd.ptr == last) return d;
  }
  return std::string(text);
}

void write_results(const ResultTable& table, OutputFormat format,
                   std::ostream& out) {
  for (const std::string& c : table.columns) check_string_field(c);
  for (const EnsembleRecord& r : table.records) {
    require(r.values.size() == table.columns.size(), ErrorCode::kInvalidState,
            "record width does not match columns");
    for (const Value& v : r.values) {
      if (const auto* s = std::get_if<std::string>(&v)) check_string_field(*s);
    }
  }

  if (format == OutputFormat::kCsv) {
    for (const auto& [key, value] : table.config) {
      out << "# " << key << '=' << value << '\n';
    }
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
      out << (i ? "," : "") << table.columns[i];
    }
    out << '\n';
    for (const EnsembleRecord& r : table.records) {
      for (std::size_t i = 0; i < r.values.size(); ++i) {
        out << (i ? "," : "") << format_value(r.values[i]);
      }
      out << '\n';
    }
  } else {
    nlohmann::ordered_json doc;
    doc["config"] = nlohmann::ordered_json::object();
    for (const auto& [key, value] : table.config) doc["config"][key] = value;
    doc["columns"] = table.columns;
    doc["records"] = nlohmann::ordered_json::array();
    for (const EnsembleRecord& r : table.records) {
      nlohmann::ordered_json row = nlohmann::ordered_json::object();
      for (std::size_t i = 0; i < r.values.size(); ++i) {
        std::visit(
            [&](const auto& v) {
              using T = std::decay_t<decltype(v)>;
              if constexpr (std::is_same_v<T, double>) {
                // JSON has no NaN; emit null.
                if (std::isfinite(v)) {
                  row[table.columns[i]] = v;
                } else {
                  row[table.columns[i]] = nullptr;
                }
              } else {
                row[table.columns[i]] = v;
              }
            },
            r.values[i]);
      }
      doc["records"].push_back(std::move(row));
    }
    out << doc.dump(2) << '\n';
  }
  require(static_cast<bool>(out), ErrorCode::kIo, "failed writing results");
}

void write_results(const ResultTable& table, OutputFormat format,
                   const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), ErrorCode::kIo,
          "cannot open " + path.string() + " for writing");
  write_results(table, format, out);
  out.close();
  require(!out.fail(), ErrorCode::kIo, "failed writing " + path.string());
}

ResultTable read_csv(std::istream& in) {
  ResultTable table;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.front() == '#') {
      const std::string body = line.substr(line.find_first_not_of("# "));
      const auto eq = body.find('=');
      require(eq != std::string::npos, ErrorCode::kIo,
              "malformed config line: " + line);
      std::string key = body.substr(0, eq);
      std::string value = body.substr(eq + 1);
      if (key == "failed_realizations") {
        table.failed_realizations = std::stoi(value);
      }
      table.config.emplace_back(std::move(key), std::move(value));
      continue;
    }
    if (!have_header) {
      table.columns = split(line, ',');
      have_header = true;
      continue;
    }
    const std::vector<std::string> fields = split(line, ',');
    require(fields.size() == table.columns.size(), ErrorCode::kIo,
            "row width does not match header");
    EnsembleRecord r;
    r.values.reserve(fields.size());
    for (const std::string& f : fields) r.values.push_back(parse_value(f));
    table.records.push_back(std::move(r));
  }
  require(have_header, ErrorCode::kIo, "CSV has no header row");
  return table;
}

}  // namespace qnet
