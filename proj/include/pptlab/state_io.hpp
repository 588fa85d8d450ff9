// Copyright 2026 The pptlab Authors
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


// State files: {"dims": [M, N], "matrix": [[[re, im], ...], ...], "meta": {...}}
// Entries are written with 17 significant digits so doubles survive a
// round trip exactly.

#pragma once

#include <string>
#include <string_view>

#include "json.hpp"
#include "pptlab/bipartite.hpp"

namespace pptlab {

struct StateDocument {
    BipartiteState state;
    nlohmann::json meta = nlohmann::json::object();
};

std::string serialize_state(const BipartiteState& state, const nlohmann::json& meta = nlohmann::json::object());
/// Throws ParseError on malformed input, including a Hermiticity defect
/// above 1e-12 relative.
StateDocument parse_state(std::string_view text);

StateDocument read_state_file(const std::string& path);
void write_state_file(const std::string& path, const BipartiteState& state,
                      const nlohmann::json& meta = nlohmann::json::object());

/// Shortest-exact decimal form used by the writer ("%.17g").
std::string format_double(double x);

}  // namespace pptlab
