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


#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "gtest/gtest.h"

using nlohmann::json;

namespace {

struct CliRun {
    int code = -1;
    std::string out;
    std::string err;
};

CliRun run(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    CliRun r;
    r.code = pptlab::cli::run(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string temp_path(const std::string& name) { return testing::TempDir() + "pptlab_cli_" + name; }

void write_file(const std::string& path, const std::string& text) {
    std::ofstream(path) << text;
}

}  // namespace

TEST(cli, construct_then_analyze) {
    const std::string path = temp_path("tura3.json");
    const CliRun c = run({"construct", "--family", "tura", "--N", "3", "--out", path});
    ASSERT_EQ(c.code, 0) << c.err;
    const CliRun a = run({"analyze", path});
    ASSERT_EQ(a.code, 0) << a.err;
    const json report = json::parse(a.out);
    EXPECT_EQ(report["birank"], json::array({4, 4}));
    EXPECT_TRUE(report["ppt"].get<bool>());
    EXPECT_EQ(report["settings"]["tau"].get<double>(), 1e-9);
    EXPECT_EQ(report["settings"]["seed"].get<int>(), 7);
}

TEST(cli, settings_are_reported) {
    const std::string path = temp_path("diag.json");
    ASSERT_EQ(run({"construct", "--family", "fixed", "--id", "table2-(4,4)", "--out", path}).code, 0);
    const CliRun a = run({"analyze", path, "--tau", "1e-7", "--seed", "99"});
    ASSERT_EQ(a.code, 0);
    const json report = json::parse(a.out);
    EXPECT_EQ(report["settings"]["tau"].get<double>(), 1e-7);
    EXPECT_EQ(report["settings"]["seed"].get<int>(), 99);
}

TEST(cli, construct_to_stdout_is_deterministic) {
    const std::vector<std::string> args{"construct", "--family", "lemma27", "--N", "4", "--k", "2"};
    const CliRun first = run(args);
    const CliRun second = run(args);
    ASSERT_EQ(first.code, 0);
    EXPECT_EQ(first.out, second.out);
    const json doc = json::parse(first.out);
    EXPECT_EQ(doc["meta"]["family"], "lemma27");
    EXPECT_EQ(doc["meta"]["tau"].get<double>(), 1e-9);
    EXPECT_TRUE(doc["meta"].contains("seed"));
}

TEST(cli, non_hermitian_input_exits_2) {
    const std::string path = temp_path("bad.json");
    write_file(path, R"({"dims": [1, 2], "matrix": [[[1, 0], [1, 0]], [[0, 0], [1, 0]]]})");
    const CliRun a = run({"analyze", path});
    EXPECT_EQ(a.code, 2);
    EXPECT_NE(a.err.find("Hermitian"), std::string::npos);
}

TEST(cli, malformed_arguments_exit_2) {
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"analyze"}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({"analyze", temp_path("missing.json")}).code, 2);
    EXPECT_EQ(run({"construct", "--family", "nonsense"}).code, 2);
    EXPECT_EQ(run({"verify-paper", "--format", "xml"}).code, 2);
    EXPECT_EQ(run({"verify-paper", "--tau", "-1"}).code, 2);
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(cli, subtract) {
    const std::string path = temp_path("diag55.json");
    const std::string out = temp_path("diag55_minus.json");
    ASSERT_EQ(run({"construct", "--family", "fixed", "--id", "table2-(4,4)", "--out", path}).code, 0);
    const CliRun s = run({"subtract", path, "--a", "[1, 0]", "--b", "[[1, 0], [0, 0], [0, 0]]", "--out", out});
    ASSERT_EQ(s.code, 0) << s.err;
    const json report = json::parse(s.out);
    EXPECT_EQ(report["observed"], json::array({3, 3}));
    EXPECT_TRUE(report["confirmed"].get<bool>());
    EXPECT_EQ(json::parse(run({"analyze", out}).out)["birank"], json::array({3, 3}));

    EXPECT_EQ(run({"subtract", path, "--a", "[1, 0]", "--b", "[1, 0, 0]", "--lambda", "2"}).code, 1);
    EXPECT_EQ(run({"subtract", path, "--a", "[1, 0", "--b", "[1, 0, 0]"}).code, 2);
    EXPECT_EQ(run({"subtract", path, "--a", "[1, 0, 0]", "--b", "[1, 0, 0]"}).code, 2);
}

TEST(cli, length_edge_and_decompose) {
    const std::string sep = temp_path("ex26.json");
    ASSERT_EQ(run({"construct", "--family", "fixed", "--id", "example26", "--out", sep}).code, 0);
    const CliRun l = run({"length", sep});
    ASSERT_EQ(l.code, 0) << l.err;
    EXPECT_EQ(json::parse(l.out)["length"].get<int>(), 6);

    const std::string tura = temp_path("tura4.json");
    ASSERT_EQ(run({"construct", "--family", "tura", "--N", "4", "--out", tura}).code, 0);
    const CliRun e = run({"edge", tura, "--grid", "1024"});
    ASSERT_EQ(e.code, 0);
    EXPECT_EQ(json::parse(e.out)["verdict"], "edge");
    const CliRun d = run({"decompose", tura, "--grid", "1024"});
    ASSERT_EQ(d.code, 0);
    EXPECT_TRUE(json::parse(d.out)["entangled"].get<bool>());
    EXPECT_EQ(run({"length", tura}).code, 2);
}

TEST(cli, product_vectors) {
    const std::string path = temp_path("prop2.json");
    ASSERT_EQ(run({"construct", "--family", "prop2", "--params", "1,1,1,1", "--out", path}).code, 0);
    const CliRun k = run({"product-vectors", path, "--space", "kernel"});
    ASSERT_EQ(k.code, 0) << k.err;
    EXPECT_EQ(json::parse(k.out)["vectors"].size(), 6u);
    const CliRun r = run({"product-vectors", path});
    ASSERT_EQ(r.code, 0);
    EXPECT_TRUE(json::parse(r.out)["vectors"].empty());
}

TEST(cli, verify_paper) {
    const CliRun v = run({"verify-paper"});
    EXPECT_EQ(v.code, 0);
    const json report = json::parse(v.out);
    EXPECT_EQ(report["summary"]["failed"].get<int>(), 0);
    ASSERT_FALSE(report["checks"].empty());
    for (const auto& c : report["checks"]) {
        for (const char* key : {"name", "location", "expected", "observed", "tolerance", "pass"}) {
            EXPECT_TRUE(c.contains(key)) << key;
        }
    }
    std::vector<std::string> names;
    for (const auto& c : report["checks"]) {
        names.push_back(c["name"]);
    }
    for (const char* want : {"table2-(4,6) birank", "table2-(5,5) length", "example26 char poly max coefficient error",
                             "example29 N=5 k=2 negative eigenvalues"}) {
        EXPECT_NE(std::find(names.begin(), names.end(), want), names.end()) << want;
    }
    EXPECT_EQ(run({"verify-paper"}).out, v.out);
}

TEST(cli, text_format) {
    const CliRun v = run({"verify-paper", "--format", "text"});
    EXPECT_EQ(v.code, 0);
    EXPECT_NE(v.out.find("[PASS] table1-(2,2) birank (Table I (2,2))"), std::string::npos);
    EXPECT_EQ(v.out.find("[FAIL]"), std::string::npos);
}
