// Copyright 2026 The qmlp Authors
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

#include "qmlp/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "qmlp/error.hpp"

namespace qmlp {
namespace {

Json totals_to_json(const ResourceTotals& t) {
  return Json{{"controlled_g_applications", t.controlled_g_applications},
              {"events", t.events},
              {"measurements", t.measurements},
              {"peak_qubits", t.peak_qubits},
              {"prep_calls", t.prep_calls},
              {"qpe_invocations", t.qpe_invocations},
              {"rotations", t.rotations}};
}

void emit_string(const std::string& s, std::string& out) {
  out += '"';
  for (unsigned char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  out += '"';
}

void emit_double(double v, std::string& out) {
  if (!std::isfinite(v)) fail(ErrorCode::kNaNForbidden, "non-finite number in result document");
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  // Keep the value a float when parsed back.
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  out += s;
}

void emit(const Json& v, int indent, std::string& out) {
  const std::string pad(2 * (indent + 1), ' ');
  const std::string close(2 * indent, ' ');
  switch (v.type()) {
    case Json::value_t::null: out += "null"; break;
    case Json::value_t::boolean: out += v.get<bool>() ? "true" : "false"; break;
    case Json::value_t::number_integer: out += std::to_string(v.get<std::int64_t>()); break;
    case Json::value_t::number_unsigned: out += std::to_string(v.get<std::uint64_t>()); break;
    case Json::value_t::number_float: emit_double(v.get<double>(), out); break;
    case Json::value_t::string: emit_string(v.get<std::string>(), out); break;
    case Json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        break;
      }
      out += "[\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        out += pad;
        emit(v[i], indent + 1, out);
        out += i + 1 < v.size() ? ",\n" : "\n";
      }
      out += close + "]";
      break;
    }
    case Json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        break;
      }
      out += "{\n";
      std::size_t i = 0;
      // nlohmann's default object is a std::map, so items come sorted.
      for (auto it = v.begin(); it != v.end(); ++it, ++i) {
        out += pad;
        emit_string(it.key(), out);
        out += ": ";
        emit(it.value(), indent + 1, out);
        out += i + 1 < v.size() ? ",\n" : "\n";
      }
      out += close + "}";
      break;
    }
    default: fail(ErrorCode::kInvalidArgument, "unsupported JSON value");
  }
}

}  // namespace

Json ResultDocument::to_json() const {
  Json j{{"config", config},
         {"ledger", ledger},
         {"metrics", metrics},
         {"schema_version", schema_version}};
  if (wall_time_seconds) j["wall_time_seconds"] = *wall_time_seconds;
  return j;
}

ResultDocument ResultDocument::from_json(const Json& j) {
  if (!j.is_object()) fail(ErrorCode::kConfigInvalid, "result document must be an object");
  for (const char* key : {"config", "ledger", "metrics", "schema_version"}) {
    if (!j.contains(key)) fail(ErrorCode::kConfigInvalid, std::string("missing field ") + key);
  }
  ResultDocument d;
  d.schema_version = j.at("schema_version").get<std::string>();
  if (d.schema_version != kSchemaVersion) {
    fail(ErrorCode::kConfigInvalid, "unsupported schema version " + d.schema_version);
  }
  d.config = j.at("config");
  d.ledger = j.at("ledger");
  d.metrics = j.at("metrics");
  if (j.contains("wall_time_seconds")) d.wall_time_seconds = j.at("wall_time_seconds").get<double>();
  return d;
}

Json ledger_to_json(const ResourceLedger& ledger) {
  Json phases = Json::object();
  for (const auto& [name, t] : ledger.phases()) phases[name] = totals_to_json(t);
  Json notes = Json::object();
  for (const auto& [key, values] : ledger.notes()) notes[key] = values;
  return Json{{"notes", notes}, {"phases", phases}, {"totals", totals_to_json(ledger.totals())}};
}

std::string emit_json(const Json& value) {
  std::string out;
  emit(value, 0, out);
  return out;
}

void emit_report(const ResultDocument& doc, const std::string& path) {
  const std::string text = emit_json(doc.to_json()) + "\n";
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(ErrorCode::kIoError, "cannot open " + path + " for writing");
  f << text;
  f.close();
  if (!f) fail(ErrorCode::kIoError, "failed writing " + path);
}

}  // namespace qmlp
