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

#include <cstdio>
#include <string>

#include "gtest/gtest.h"
#include "pptlab/errors.hpp"
#include "test_util.hpp"

using namespace pptlab;
using namespace pptlab_test;

TEST(state_io, format_double) {
    EXPECT_EQ(format_double(0.0), "0");
    EXPECT_EQ(format_double(-0.0), "0");
    EXPECT_EQ(format_double(1.0), "1");
    EXPECT_EQ(format_double(-2.5), "-2.5");
    EXPECT_EQ(format_double(0.1), "0.10000000000000001");
    EXPECT_EQ(std::stod(format_double(1.0 / 3.0)), 1.0 / 3.0);
}

TEST(state_io, serialize_small) {
    const BipartiteState s = pure_state(1, 2, CVector{1.0, cplx(0.0, 1.0)});
    EXPECT_EQ(serialize_state(s, {{"family", "x"}}),
              "{\n"
              "  \"dims\": [1, 2],\n"
              "  \"matrix\": [\n"
              "    [[1, 0], [0, -1]],\n"
              "    [[0, 1], [1, 0]]\n"
              "  ],\n"
              "  \"meta\": {\"family\":\"x\"}\n"
              "}\n");
}

TEST(state_io, round_trip_is_exact) {
    Rng rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t m = 2 + rng.index(2);
        const std::size_t n = 2 + rng.index(4);
        const BipartiteState s = random_state(rng, m, n, 1 + rng.index(m * n));
        const nlohmann::json meta = {{"trial", trial}, {"tau", 1e-9}};
        const std::string text = serialize_state(s, meta);
        const StateDocument doc = parse_state(text);
        ASSERT_EQ(doc.state.dim_a, m);
        ASSERT_EQ(doc.state.dim_b, n);
        ASSERT_EQ(doc.state.matrix, s.matrix);
        ASSERT_EQ(doc.meta, meta);
        ASSERT_EQ(serialize_state(doc.state, doc.meta), text);
    }
}

TEST(state_io, file_round_trip) {
    const std::string path = ::testing::TempDir() + "pptlab_state_io_test.json";
    const BipartiteState s = pure_state(2, 2, CVector{1.0, 0.0, 0.0, 1.0});
    write_state_file(path, s, {{"family", "bell"}});
    const StateDocument doc = read_state_file(path);
    EXPECT_EQ(doc.state.matrix, s.matrix);
    EXPECT_EQ(doc.meta["family"], "bell");
    std::remove(path.c_str());
    EXPECT_THROW(read_state_file(path), ParseError);
}

TEST(state_io, rejects_malformed_input) {
    EXPECT_THROW(parse_state("not json"), ParseError);
    EXPECT_THROW(parse_state("[]"), ParseError);
    EXPECT_THROW(parse_state(R"({"dims": [1, 1]})"), ParseError);
    EXPECT_THROW(parse_state(R"({"dims": [0, 1], "matrix": []})"), ParseError);
    EXPECT_THROW(parse_state(R"({"dims": [-1, 1], "matrix": []})"), ParseError);
    EXPECT_THROW(parse_state(R"({"dims": [9, 9], "matrix": []})"), ParseError);
    EXPECT_THROW(parse_state(R"({"dims": [1, 2], "matrix": [[[1, 0], [0, 0]]]})"), ParseError);
    EXPECT_THROW(parse_state(R"({"dims": [1, 1], "matrix": [[1]]})"), ParseError);
    EXPECT_THROW(parse_state(R"({"dims": [1, 1], "matrix": [[[1, 0, 0]]]})"), ParseError);
    EXPECT_THROW(parse_state(R"({"dims": [1, 1], "matrix": [[["a", 0]]]})"), ParseError);
}

TEST(state_io, rejects_non_hermitian) {
    EXPECT_THROW(parse_state(R"({"dims": [1, 2], "matrix": [[[1, 0], [0.5, 0]], [[0.4, 0], [1, 0]]]})"),
                 ParseError);
    EXPECT_THROW(parse_state(R"({"dims": [1, 1], "matrix": [[[1, 1e-6]]]})"), ParseError);
    // A defect inside the tolerance is accepted and kept verbatim.
    const StateDocument doc = parse_state(R"({"dims": [1, 2], "matrix": [[[1, 0], [0.5, 0]], [[0.5000000000000001, 0], [1, 0]]]})");
    EXPECT_EQ(doc.state.matrix(1, 0), cplx(0.5000000000000001, 0.0));
    EXPECT_TRUE(doc.meta.is_object());
}
