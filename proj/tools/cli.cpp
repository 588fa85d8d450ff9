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

#include <optional>
#include <span>

#include "CLI11.hpp"
#include "pptlab/atlas.hpp"
#include "pptlab/errors.hpp"
#include "pptlab/pencil.hpp"
#include "pptlab/state_io.hpp"
#include "pptlab/surgery.hpp"

namespace pptlab::cli {
namespace {

using nlohmann::json;

struct Settings {
    double tau = kDefaultTau;
    std::size_t grid = kDefaultGrid;
    std::uint64_t seed = 7;
    std::string out;
    std::string format = "json";
};

struct ConstructArgs {
    std::string family;
    std::string id;
    std::size_t n = 3;
    std::size_t k = 1;
    std::size_t j = 1;
    std::size_t p = 0;
    double epsilon = 1e-2;
    double epsilon_prime = 1e-2;
    std::vector<double> params;
    std::vector<double> c;
    std::vector<double> a_list;
};

struct SubtractArgs {
    std::string a;
    std::string b;
    std::optional<double> lambda;
};

json vector_json(std::span<const cplx> v) {
    json out = json::array();
    for (const cplx x : v) {
        out.push_back({x.real(), x.imag()});
    }
    return out;
}

json product_json(const ProductVector& pv) { return {{"a", vector_json(pv.a)}, {"b", vector_json(pv.b)}}; }

json products_json(std::span<const ProductVector> pvs) {
    json out = json::array();
    for (const auto& pv : pvs) {
        out.push_back(product_json(pv));
    }
    return out;
}

json birank_json(const Birank& b) { return json::array({b.r, b.s}); }

// Accepts [x, ...] with real entries or [re, im] pairs.
CVector parse_vector(const std::string& text, const char* what) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error&) {
        throw ParseError(std::string(what) + " is not valid JSON");
    }
    if (!doc.is_array() || doc.empty()) {
        throw ParseError(std::string(what) + " must be a nonempty array");
    }
    CVector v;
    for (const auto& e : doc) {
        if (e.is_number()) {
            v.emplace_back(e.get<double>(), 0.0);
        } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
            v.emplace_back(e[0].get<double>(), e[1].get<double>());
        } else {
            throw ParseError(std::string(what) + " entries must be numbers or [re, im] pairs");
        }
    }
    return v;
}

Construction build(const ConstructArgs& a) {
    const std::string& f = a.family;
    if (f == "fixed") {
        return fixed_example(a.id);
    }
    if (f == "tura") {
        Construction c;
        c.family = "tura";
        c.state = tura_state(a.n);
        c.cert.birank = Birank{a.n + 1, a.n + 1};
        c.params = {{"N", a.n}};
        return c;
    }
    if (f == "lemma27") {
        return lemma27_state(a.n, a.k, a.epsilon, a.a_list);
    }
    if (f == "prop28") {
        return prop28_state(a.n, a.k, a.p, a.epsilon, a.epsilon_prime);
    }
    if (f == "prop25") {
        return prop25_separable(a.n, a.j, a.k);
    }
    if (f == "example29") {
        return example29_state(a.n, a.k, a.c);
    }
    if (f == "example29-single") {
        return example29_single_negative(a.n);
    }
    if (f == "prop2") {
        const std::vector<double> q = a.params.empty() ? std::vector<double>{1, 1, 1, 1} : a.params;
        if (q.size() != 4) {
            throw ContractViolation("prop2 takes --params a,b,c,d");
        }
        Construction c;
        c.family = "prop2";
        c.state = prop2_sigma(q[0], q[1], q[2], q[3]);
        c.params = {{"a", q[0]}, {"b", q[1]}, {"c", q[2]}, {"d", q[3]}};
        return c;
    }
    if (f == "lemma14" || f == "lemma14-target") {
        const std::vector<double> q = a.params.empty() ? std::vector<double>{1, 1, 1} : a.params;
        if (q.size() != 3) {
            throw ContractViolation(f + " takes --params p0,p1,p2");
        }
        Construction c;
        c.family = f;
        if (f == "lemma14") {
            const Lemma14Match m = lemma14_match(q[0], q[1], q[2]);
            c.state = lemma14_family(m.a, m.b, m.d);
            c.params = {{"p", q}, {"a", m.a}, {"b", m.b}, {"d", m.d}};
        } else {
            c.state = lemma14_target(q[0], q[1], q[2]);
            c.params = {{"p", q}};
        }
        return c;
    }
    if (f == "example21") {
        const Example21 ex = example21_sigma();
        Construction c;
        c.family = "example21";
        c.state = ex.sigma;
        c.decomposition = ex.kernel;
        c.cert.birank = Birank{5, 5};
        return c;
    }
    throw ContractViolation("unknown family '" + f + "'");
}

json analyze(const BipartiteState& rho, const Settings& s) {
    const Classification c = classify(rho, s.tau);
    const auto [ra, rb] = local_ranks(rho, s.tau);
    return {{"dims", {rho.dim_a, rho.dim_b}},
            {"trace", rho.trace()},
            {"birank", birank_json(birank(rho, s.tau))},
            {"ppt", c.verdict == Verdict::PPT},
            {"min_eigenvalue_gamma", c.min_eigenvalue},
            {"negative_count", c.negative_count},
            {"local_ranks", {ra, rb}}};
}

void print_text(const json& j, std::ostream& out, const std::string& prefix = "") {
    if (j.contains("checks")) {
        for (const auto& r : j["checks"]) {
            out << (r["pass"].get<bool>() ? "[PASS] " : "[FAIL] ") << r["name"].get<std::string>() << " ("
                << r["location"].get<std::string>() << "): expected " << r["expected"].dump() << ", observed "
                << r["observed"].dump() << "\n";
        }
    }
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (it.key() == "checks") {
            continue;
        }
        if (it->is_object()) {
            print_text(*it, out, prefix + it.key() + ".");
        } else {
            out << prefix << it.key() << ": " << (it->is_string() ? it->get<std::string>() : it->dump()) << "\n";
        }
    }
}

void emit(json report, const Settings& s, std::ostream& out) {
    report["settings"] = {{"tau", s.tau}, {"grid", s.grid}, {"seed", s.seed}};
    if (s.format == "text") {
        print_text(report, out);
    } else {
        out << report.dump(2) << "\n";
    }
}

json state_meta(const json& base, const Settings& s) {
    json meta = base.is_object() ? base : json::object();
    meta["tau"] = s.tau;
    meta["seed"] = s.seed;
    return meta;
}

int do_construct(const ConstructArgs& a, const Settings& s, std::ostream& out) {
    const Construction c = build(a);
    json meta = {{"family", c.family}, {"params", c.params}};
    if (c.cert.birank) {
        meta["expected_birank"] = birank_json(*c.cert.birank);
    }
    meta = state_meta(meta, s);
    if (s.out.empty()) {
        out << serialize_state(c.state, meta);
        return 0;
    }
    write_state_file(s.out, c.state, meta);
    json report = {{"command", "construct"}, {"family", c.family}, {"params", c.params}, {"out", s.out}};
    report["birank"] = birank_json(birank(c.state, s.tau));
    emit(report, s, out);
    return 0;
}

int do_subtract(const BipartiteState& rho, const json& meta, const SubtractArgs& a, const Settings& s,
                std::ostream& out) {
    const ProductVector pv{parse_vector(a.a, "--a"), parse_vector(a.b, "--b")};
    if (pv.a.size() != rho.dim_a || pv.b.size() != rho.dim_b) {
        throw ContractViolation("product vector factors do not match the state dims");
    }
    const SubtractionAnalysis an = subtraction_analysis(rho, pv, s.tau);
    const double lambda = a.lambda.value_or(an.min_lambda());
    const SubtractionResult r = subtract(rho, pv, lambda, s.tau);
    if (!s.out.empty()) {
        json m = state_meta(meta, s);
        m["subtracted"] = {{"vector", product_json(pv)}, {"lambda", lambda}};
        write_state_file(s.out, r.state, m);
    }
    emit({{"command", "subtract"},
          {"lambda0", an.lambda0},
          {"lambda1", an.lambda1},
          {"g", an.g},
          {"lambda", lambda},
          {"before", birank_json(r.before)},
          {"predicted", birank_json(r.predicted)},
          {"observed", birank_json(r.observed)},
          {"confirmed", r.confirmed()}},
         s, out);
    return r.confirmed() ? 0 : 1;
}

json edge_json(const EdgeVerdict& v) {
    json j = {{"verdict", to_string(v.verdict)}, {"grid", v.grid}, {"residual", v.residual}, {"note", v.note}};
    if (v.witness) {
        j["witness"] = product_json(*v.witness);
    }
    return j;
}

int do_product_vectors(const BipartiteState& rho, const std::string& space, const Settings& s, std::ostream& out) {
    json report = {{"command", "product-vectors"}};
    if (rho.dim_a == 2) {
        const RangeSearch r = range_product_search(rho, s.grid, s.tau);
        report["method"] = "range sweep";
        report["everywhere"] = r.everywhere;
        report["min_residual"] = r.min_residual;
        report["vectors"] = products_json(r.vectors);
    } else if (rho.dim_a == 3 && rho.dim_b == 3) {
        const Matrix basis = space == "kernel" ? kernel_basis(rho.matrix, s.tau) : range_basis(rho.matrix, s.tau);
        std::vector<CVector> cols;
        for (std::size_t c = 0; c < basis.cols(); ++c) {
            cols.push_back(basis.col(c));
        }
        if (cols.size() != 4 && cols.size() != 5) {
            throw ContractViolation("3x3 product-vector search needs a 4- or 5-dimensional " + space);
        }
        const Subspace3x3Result r = product_vectors_in_subspace_3x3(cols, s.seed);
        report["method"] = "resultant (" + space + ")";
        report["non_generic"] = r.non_generic;
        report["vectors"] = products_json(r.vectors);
    } else {
        throw ContractViolation("product-vectors supports 2xN and 3x3 states");
    }
    emit(report, s, out);
    return 0;
}

int do_decompose(const BipartiteState& rho, const json& meta, const Settings& s, std::ostream& out) {
    const Theorem23Result t = theorem23_decompose(rho, s.grid, s.tau);
    if (!s.out.empty()) {
        write_state_file(s.out, t.core, state_meta(meta, s));
    }
    emit({{"command", "decompose"},
          {"split", products_json(t.split)},
          {"core_birank", birank_json(birank(t.core, s.tau))},
          {"core", edge_json(t.core_verdict)},
          {"core_terms", products_json(t.core_terms)},
          {"entangled", t.entangled},
          {"term_count", t.term_count()}},
         s, out);
    return 0;
}

int do_verify(const Settings& s, std::ostream& out) {
    const std::vector<CheckRecord> records = verify_paper(s.tau, s.seed);
    json checks = json::array();
    std::size_t passed = 0;
    for (const auto& r : records) {
        checks.push_back(to_json(r));
        passed += r.pass ? 1 : 0;
    }
    emit({{"command", "verify-paper"},
          {"checks", checks},
          {"summary", {{"passed", passed}, {"failed", records.size() - passed}}}},
         s, out);
    return passed == records.size() ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app("PPT states on qubit-qudit systems", "pptlab");
    app.require_subcommand(1);
    app.fallthrough();
    Settings s;
    app.add_option("--tau", s.tau, "relative tolerance")->check(CLI::PositiveNumber);
    app.add_option("--grid", s.grid, "sphere grid size for range searches")->check(CLI::PositiveNumber);
    app.add_option("--seed", s.seed, "seed for randomized steps");
    app.add_option("--out", s.out, "output state file");
    app.add_option("--format", s.format, "report format")->check(CLI::IsMember({"json", "text"}));

    ConstructArgs ca;
    auto* construct = app.add_subcommand("construct", "build an atlas state");
    construct->add_option("--family", ca.family,
                          "fixed, tura, lemma27, prop28, prop25, example29, example29-single, prop2, lemma14, "
                          "lemma14-target, example21")
        ->required();
    construct->add_option("--id", ca.id, "fixed example id");
    construct->add_option("--N", ca.n);
    construct->add_option("--k", ca.k);
    construct->add_option("--j", ca.j);
    construct->add_option("--p", ca.p);
    construct->add_option("--epsilon", ca.epsilon);
    construct->add_option("--epsilon-prime", ca.epsilon_prime);
    construct->add_option("--params", ca.params, "numeric family parameters")->delimiter(',');
    construct->add_option("--c", ca.c, "example29 coefficients")->delimiter(',');
    construct->add_option("--a-list", ca.a_list, "lemma27 nodes")->delimiter(',');

    std::string input;
    const auto with_input = [&input](CLI::App* sub) {
        sub->add_option("input", input, "state file")->required();
        return sub;
    };
    auto* analyze_cmd = with_input(app.add_subcommand("analyze", "birank, PPT test and local ranks"));
    SubtractArgs sa;
    auto* subtract_cmd = with_input(app.add_subcommand("subtract", "subtract a product projector"));
    subtract_cmd->add_option("--a", sa.a, "A factor as a JSON array")->required();
    subtract_cmd->add_option("--b", sa.b, "B factor as a JSON array")->required();
    subtract_cmd->add_option("--lambda", sa.lambda, "weight (default: the largest admissible)");
    auto* length_cmd = with_input(app.add_subcommand("length", "length of a 2x2 or 2x3 PPT state"));
    std::string space = "range";
    auto* pv_cmd = with_input(app.add_subcommand("product-vectors", "product vectors in the ranges"));
    pv_cmd->add_option("--space", space, "3x3 only: range or kernel")->check(CLI::IsMember({"range", "kernel"}));
    auto* edge_cmd = with_input(app.add_subcommand("edge", "edge-state test"));
    auto* decompose_cmd = with_input(app.add_subcommand("decompose", "split off B-direct product summands"));
    auto* verify_cmd = app.add_subcommand("verify-paper", "check the published claims");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (construct->parsed()) {
            return do_construct(ca, s, out);
        }
        if (verify_cmd->parsed()) {
            return do_verify(s, out);
        }
        const StateDocument doc = read_state_file(input);
        const BipartiteState& rho = doc.state;
        if (analyze_cmd->parsed()) {
            json report = analyze(rho, s);
            report["command"] = "analyze";
            report["input"] = input;
            emit(report, s, out);
            return 0;
        }
        if (subtract_cmd->parsed()) {
            return do_subtract(rho, doc.meta, sa, s, out);
        }
        if (length_cmd->parsed()) {
            const LengthResult l = length_2x3(rho, {}, s.tau);
            json chain = json::array();
            for (const auto& b : l.chain) {
                chain.push_back(birank_json(b));
            }
            emit({{"command", "length"},
                  {"length", l.length},
                  {"chain", chain},
                  {"decomposition", products_json(l.decomposition)}},
                 s, out);
            return 0;
        }
        if (pv_cmd->parsed()) {
            return do_product_vectors(rho, space, s, out);
        }
        if (edge_cmd->parsed()) {
            json report = edge_json(is_edge_state(rho, s.grid, s.tau));
            report["command"] = "edge";
            emit(report, s, out);
            return 0;
        }
        if (decompose_cmd->parsed()) {
            return do_decompose(rho, doc.meta, s, out);
        }
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const ContractViolation& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "failed: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace pptlab::cli
