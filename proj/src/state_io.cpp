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


#include "pptlab/state_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "pptlab/errors.hpp"

namespace pptlab {

std::string format_double(double x) {
    if (x == 0.0) {
        return "0";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string serialize_state(const BipartiteState& state, const nlohmann::json& meta) {
    std::string out;
    out += "{\n  \"dims\": [" + std::to_string(state.dim_a) + ", " + std::to_string(state.dim_b) + "],\n";
    out += "  \"matrix\": [\n";
    const std::size_t n = state.dim();
    for (std::size_t r = 0; r < n; ++r) {
        out += "    [";
        for (std::size_t c = 0; c < n; ++c) {
            const cplx x = state.matrix(r, c);
            out += "[" + format_double(x.real()) + ", " + format_double(x.imag()) + "]";
            if (c + 1 < n) {
                out += ", ";
            }
        }
        out += r + 1 < n ? "],\n" : "]\n";
    }
    out += "  ],\n";
    out += "  \"meta\": " + (meta.is_null() ? std::string("{}") : meta.dump()) + "\n}\n";
    return out;
}

StateDocument parse_state(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("state file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("dims") || !doc.contains("matrix")) {
        throw ParseError("state file needs \"dims\" and \"matrix\"");
    }
    const auto& dims = doc["dims"];
    if (!dims.is_array() || dims.size() != 2 || !dims[0].is_number_unsigned() || !dims[1].is_number_unsigned()) {
        throw ParseError("\"dims\" must be two positive integers");
    }
    const auto m = dims[0].get<std::size_t>();
    const auto n = dims[1].get<std::size_t>();
    if (m == 0 || n == 0 || m * n > 64) {
        throw ParseError("\"dims\" out of range");
    }
    const auto& rows = doc["matrix"];
    const std::size_t d = m * n;
    if (!rows.is_array() || rows.size() != d) {
        throw ParseError("\"matrix\" must have M*N rows");
    }
    Matrix mat(d, d);
    for (std::size_t r = 0; r < d; ++r) {
        if (!rows[r].is_array() || rows[r].size() != d) {
            throw ParseError("\"matrix\" row " + std::to_string(r) + " has the wrong length");
        }
        for (std::size_t c = 0; c < d; ++c) {
            const auto& e = rows[r][c];
            if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
                throw ParseError("matrix entries must be [re, im] pairs");
            }
            mat(r, c) = cplx(e[0].get<double>(), e[1].get<double>());
        }
    }
    if (!mat.all_finite()) {
        throw ParseError("matrix has non-finite entries");
    }
    if (!mat.is_hermitian(1e-12)) {
        throw ParseError("matrix is not Hermitian within 1e-12 relative");
    }
    StateDocument out;
    out.state.dim_a = m;
    out.state.dim_b = n;
    // Keep the entries verbatim so a parse/serialize round trip is exact.
    out.state.matrix = std::move(mat);
    if (doc.contains("meta")) {
        out.meta = doc["meta"];
    }
    return out;
}

StateDocument read_state_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open " + path);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_state(buf.str());
}

void write_state_file(const std::string& path, const BipartiteState& state, const nlohmann::json& meta) {
    std::ofstream out(path);
    if (!out) {
        throw ParseError("cannot write " + path);
    }
    out << serialize_state(state, meta);
}

}  // namespace pptlab
