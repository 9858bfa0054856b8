// Copyright 2026 The contam-audit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CONTAM_SERIALIZE_HPP_
#define CONTAM_SERIALIZE_HPP_

#include <map>
#include <string>

#include "json.hpp"

#include "contam/core.hpp"
#include "contam/harness.hpp"
#include "contam/level4.hpp"
#include "contam/statkit.hpp"

namespace contam {

using Json = nlohmann::ordered_json;

Json to_json(const ThresholdConfig& cfg);
Json to_json(const Verdict& v);
Json to_json(const CliffReport& r);
Json to_json(const SummaryCounts& s);
Json to_json(const DetectionMetrics& m);
Json to_json(const McNemarResult& r);
Json to_json(const TextSample& s);

// Sets one config field from its textual value. Throws on unknown keys or
// unparsable values; does not validate cross-field bounds.
void set_config_field(ThresholdConfig& cfg, const std::string& key,
                      const std::string& value);

// Flat "key = value" file, '#' starts a comment. Keys are ThresholdConfig
// field names.
ThresholdConfig parse_config_text(const std::string& text,
                                  ThresholdConfig base = {});

// Deterministic text rendering shared by every writer.
std::string dump(const Json& j);

}  // namespace contam

#endif  // CONTAM_SERIALIZE_HPP_
