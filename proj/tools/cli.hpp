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


// Command-line front end. Kept out of main() so tests can drive it.

#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

namespace pptlab::cli {

struct CheckRecord {
    std::string name;
    std::string location;
    nlohmann::json expected;
    nlohmann::json observed;
    double tolerance = 0.0;
    bool pass = false;
};

/// Every claim the harness knows how to check, in a fixed order.
std::vector<CheckRecord> verify_paper(double tau, std::uint64_t seed);

nlohmann::json to_json(const CheckRecord& r);

/// Exit codes: 0 success, 1 failed verification or numerical failure,
/// 2 malformed arguments or input.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pptlab::cli
