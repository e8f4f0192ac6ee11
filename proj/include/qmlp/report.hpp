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

#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "qmlp/resource.hpp"

namespace qmlp {

using Json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "1";

struct ResultDocument {
  Json config = Json::object();
  Json metrics = Json::object();
  Json ledger = Json::object();
  // Only emitted when the config asks for it, so that documents of
  // deterministic runs stay byte-identical.
  std::optional<double> wall_time_seconds;
  std::string schema_version = kSchemaVersion;

  Json to_json() const;
  // Throws ConfigInvalid on a missing field or another schema version.
  static ResultDocument from_json(const Json& j);
};

Json ledger_to_json(const ResourceLedger& ledger);

// Two-space indented JSON with keys in byte order and doubles printed with
// 17 significant digits. Throws NaNForbidden for a NaN or infinite number.
std::string emit_json(const Json& value);

// Writes emit_json(doc) and a newline; throws IoError.
void emit_report(const ResultDocument& doc, const std::string& path);

}  // namespace qmlp
