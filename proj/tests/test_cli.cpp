#include <doctest.h>

#include <sstream>
#include <string>

#include <json.hpp>

#include "noneq/chain.hpp"
#include "noneq/commands.hpp"
#include "noneq/io.hpp"
#include "noneq/report.hpp"

using namespace noneq;
using nlohmann::json;

namespace {

const std::string kFixtures = NONEQ_FIXTURE_DIR;

json analyze_json(const std::string& path, bool exact = false, bool csv = false) {
    AnalyzeOptions opt;
    opt.input = path;
    opt.exact = exact;
    opt.csv = csv;
    opt.json = true;
    std::ostringstream out, err;
    REQUIRE(run_analyze(opt, out, err) == kExitOk);
    return json::parse(out.str());
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("chain documents parse from JSON, with or without the diagonal") {
    auto doc = parse_chain_json(R"({"q": [[0, 2, 1], [1, 0, 2], [2, 1, 0]]})");
    CHECK(doc.n == 3);
    CHECK(doc.q(0, 1) == 2.0);

    CHECK_THROWS_AS(parse_chain_json("{\"n\": 3}"), ParseError);
    CHECK_THROWS_AS(parse_chain_json("not json"), ParseError);
    CHECK_THROWS_AS(parse_chain_json(R"({"n": 4, "q": [[0,1],[1,0]]})"), ParseError);
    CHECK_THROWS_AS(parse_chain_json(R"({"q": [[0,1],[1,0],[1,1]]})"), ParseError);
}

TEST_CASE("rational literals parse exactly") {
    CHECK(parse_rational("3") == Rational(3));
    CHECK(parse_rational("-4/7") == Rational(-4, 7));
    CHECK(parse_rational("0.125") == Rational(1, 8));
    CHECK(parse_rational(".5") == Rational(1, 2));
    CHECK(parse_rational("2.5e-3") == Rational(1, 400));
    CHECK(parse_rational("1e3") == Rational(1000));
    CHECK(parse_rational("+0.1") == Rational(1, 10));
    // Leading zeros are decimal, never octal.
    CHECK(parse_rational("0.8") == Rational(4, 5));
    CHECK(parse_rational("0.125") == Rational(1, 8));
    CHECK(parse_rational("012/100") == Rational(3, 25));
    CHECK_THROWS_AS(parse_rational(""), ParseError);
    CHECK_THROWS_AS(parse_rational("-"), ParseError);
    CHECK_THROWS_AS(parse_rational("1.2.3"), ParseError);
    CHECK_THROWS_AS(parse_rational("1e"), ParseError);
    CHECK_THROWS_AS(parse_rational("abc"), ParseError);
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
}

TEST_CASE("exact parsing keeps integers, strings and float literals faithful") {
    auto doc = parse_chain_json(R"({"q": [[0, 2, "1/3"], [0.1, 0, 2], [2, 1, 0]]})", true);
    REQUIRE(doc.q_exact.has_value());
    CHECK((*doc.q_exact)(0, 2) == Rational(1, 3));
    CHECK((*doc.q_exact)(1, 0) == Rational(1, 10));
    CHECK((*doc.q_exact)(0, 1) == Rational(2));
    CHECK(doc.q(0, 2) == doctest::Approx(1.0 / 3));
}

TEST_CASE("CSV documents parse") {
    auto doc = parse_chain_csv("-3, 2, 1\n1, -3, 2\n2, 1, -3\n");
    CHECK(doc.n == 3);
    CHECK(doc.q(2, 0) == 2.0);
    CHECK_THROWS_AS(parse_chain_csv("1, 2\n3\n"), ParseError);
    CHECK_THROWS_AS(parse_chain_csv(""), ParseError);
}

TEST_CASE("chain document serialization round-trips and is deterministic") {
    ChainDocument doc;
    doc.n = 2;
    doc.q = MatD(2, 2);
    doc.q << -0.25, 0.25, 1.5, -1.5;
    doc.name = "pair";
    std::string text = write_chain_json(doc);
    CHECK(text == write_chain_json(doc));
    auto parsed = parse_chain_json(text);
    CHECK(parsed.n == 2);
    CHECK(parsed.q(0, 1) == 0.25);
    CHECK(parsed.name == "pair");
}

TEST_CASE("analyze reports the hand-worked ring") {
    json report = analyze_json(kFixtures + "/cyclic3.json");
    CHECK(report["n"] == 3);
    CHECK(report["equilibrium"] == false);
    for (int i = 0; i < 3; ++i)
        CHECK(report["pi"][i].get<double>() == doctest::Approx(1.0 / 3).epsilon(1e-12));
    CHECK(report["one_ne"]["valid"] == true);
    CHECK(report["one_ne"]["d"].get<double>() == doctest::Approx(1.0 / 3).epsilon(1e-12));
    CHECK(report["k_detect"]["k"] == 1);
    CHECK(report["kolmogorov_gap"].get<double>() == doctest::Approx(7.0));
    CHECK(report["det_delta"].get<double>() == doctest::Approx(-7.0));
}

TEST_CASE("analyze reports exact values in rational mode") {
    json report = analyze_json(kFixtures + "/cyclic3.json", true);
    CHECK(report["exact"] == true);
    CHECK(report["pi"][0] == "1/3");
    CHECK(report["one_ne"]["d"] == "1/3");
    CHECK(report["one_ne"]["residual"] == "0");
    CHECK(report["kolmogorov_gap"] == "7");
    CHECK(report["det_delta"] == "-7");
    CHECK(report["coefficients"][0]["value"] == "1/3");
}

TEST_CASE("analyze classifies a detailed-balance document as equilibrium") {
    json report = analyze_json(kFixtures + "/equilibrium4.json");
    CHECK(report["equilibrium"] == true);
    CHECK(report["k_detect"].is_null());
    for (const auto& c : report["coefficients"])
        CHECK(c["value"].get<double>() == doctest::Approx(0.0));
    CHECK(report["one_ne"]["valid"] == false);
    CHECK(report["one_ne"]["reason"] == "reversible-ring");
}

TEST_CASE("analyze accepts CSV input") {
    json report = analyze_json(kFixtures + "/cyclic3.csv", false, true);
    CHECK(report["n"] == 3);
    CHECK(report["one_ne"]["valid"] == true);
}

TEST_CASE("analyze rejects malformed documents with exit code 2") {
    AnalyzeOptions opt;
    opt.input = kFixtures + "/broken.json";
    std::ostringstream out, err;
    CHECK(run_analyze(opt, out, err) == kExitInputError);
    CHECK(err.str().find("row 2") != std::string::npos);

    opt.input = kFixtures + "/missing-file.json";
    std::ostringstream out2, err2;
    CHECK(run_analyze(opt, out2, err2) == kExitInputError);
}

TEST_CASE("a coarse tolerance override suppresses detection") {
    AnalyzeOptions opt;
    opt.input = kFixtures + "/cyclic3.json";
    opt.json = true;
    opt.tol = 1.0;  // larger than every current
    std::ostringstream out, err;
    REQUIRE(run_analyze(opt, out, err) == kExitOk);
    json report = json::parse(out.str());
    CHECK(report["k_detect"].is_null());
    CHECK(report["equilibrium"] == true);
}

TEST_CASE("two-state chains report only the fields that exist") {
    ChainDocument doc;
    doc.n = 2;
    doc.q = MatD(2, 2);
    doc.q << 0, 1, 1, 0;
    auto g = validate_generator<double>(doc.q);
    auto a = analyze_chain<double>(g);
    CHECK(a.n == 2);
    CHECK(a.coefficients.empty());
    CHECK_FALSE(a.detection.has_value());
    CHECK_FALSE(a.solver_applicable);
    CHECK_FALSE(a.kolmogorov.has_value());

    json report = json::parse(render_analysis_json(a));
    CHECK(report["one_ne"].is_null());
    CHECK(report["det_delta"].is_null());
    CHECK(report["kolmogorov_gap"].is_null());
    CHECK(report["coefficients"].empty());
    CHECK(report["equilibrium"] == true);
}

TEST_CASE("analyze report schema is stable") {
    json report = analyze_json(kFixtures + "/cyclic3.json");
    for (const char* key : {"n", "exact", "name", "pi", "D", "equilibrium", "coefficients",
                            "k_detect", "one_ne", "kolmogorov_gap", "det_delta"})
        CHECK(report.contains(key));
}

TEST_CASE("analyze is deterministic for fixed input and flags") {
    AnalyzeOptions opt;
    opt.input = kFixtures + "/cyclic3.json";
    opt.json = true;
    std::ostringstream a, b, err;
    REQUIRE(run_analyze(opt, a, err) == kExitOk);
    REQUIRE(run_analyze(opt, b, err) == kExitOk);
    CHECK(a.str() == b.str());
}

TEST_CASE("analyze JSON numbers survive a round-trip at full precision") {
    json report = analyze_json(kFixtures + "/cyclic3.json");
    double pi0 = report["pi"][0].get<double>();
    json reparsed = json::parse(report.dump());
    CHECK(reparsed["pi"][0].get<double>() == pi0);
}

TEST_CASE("synth emits a document that analyzes to its regime") {
    SynthOptions opt;
    opt.regime = "one-ne";
    opt.n = 5;
    opt.seed = 7;
    std::ostringstream out, err;
    REQUIRE(run_synth(opt, out, err) == kExitOk);

    auto doc = parse_chain_json(out.str());
    CHECK(doc.n == 5);

    AnalyzeOptions aopt;
    aopt.input = "-";
    aopt.json = true;
    // Route the synthesized document through a temp file via stdin is awkward
    // here; analyze the parsed matrix directly instead.
    Generator<double> g = validate_generator<double>(doc.q);
    auto analysis = analyze_chain<double>(g);
    REQUIRE(analysis.detection.has_value());
    CHECK(analysis.detection->k == 1);
    CHECK(analysis.one_ne_valid);
}

TEST_CASE("synth equilibrium documents satisfy detailed balance") {
    SynthOptions opt;
    opt.regime = "equilibrium";
    opt.n = 4;
    opt.seed = 3;
    std::ostringstream out, err;
    REQUIRE(run_synth(opt, out, err) == kExitOk);
    auto doc = parse_chain_json(out.str());
    auto g = validate_generator<double>(doc.q);
    CHECK(analyze_chain<double>(g).detailed_balance);
}

TEST_CASE("synth output is byte-identical for identical flags") {
    SynthOptions opt;
    opt.regime = "generic";
    opt.n = 6;
    opt.seed = 99;
    std::ostringstream a, b, err;
    REQUIRE(run_synth(opt, a, err) == kExitOk);
    REQUIRE(run_synth(opt, b, err) == kExitOk);
    CHECK(a.str() == b.str());

    opt.seed = 100;
    std::ostringstream c;
    REQUIRE(run_synth(opt, c, err) == kExitOk);
    CHECK(a.str() != c.str());
}

TEST_CASE("synth rejects unknown regimes") {
    SynthOptions opt;
    opt.regime = "bogus";
    std::ostringstream out, err;
    CHECK(run_synth(opt, out, err) == kExitInputError);
}

TEST_CASE("simulate compares empirical and analytic currents") {
    SimulateOptions opt;
    opt.input = kFixtures + "/cyclic3.json";
    opt.horizon = 1e5;
    opt.seed = 11;
    opt.runs = 3;
    opt.json = true;
    std::ostringstream out, err;
    REQUIRE(run_simulate(opt, out, err) == kExitOk);
    json report = json::parse(out.str());
    REQUIRE(report["runs"].size() == 3);

    int runs_within = 0;
    for (const auto& run : report["runs"]) {
        bool ring_ok = true;
        for (const auto& edge : run["edges"]) {
            if (edge["i"] == 1 && edge["j"] == 2) {
                CHECK(edge["analytic"].get<double>() == doctest::Approx(1.0 / 3));
                if (std::abs(edge["z"].get<double>()) > 3.0) ring_ok = false;
            }
        }
        if (ring_ok) ++runs_within;
    }
    CHECK(runs_within >= 2);
}

TEST_CASE("simulate on an equilibrium document targets zero currents") {
    SimulateOptions opt;
    opt.input = kFixtures + "/equilibrium4.json";
    opt.horizon = 1e4;
    opt.json = true;
    std::ostringstream out, err;
    REQUIRE(run_simulate(opt, out, err) == kExitOk);
    json report = json::parse(out.str());
    for (const auto& edge : report["runs"][0]["edges"])
        CHECK(edge["analytic"].get<double>() == doctest::Approx(0.0));
}

TEST_CASE("simulate propagates input errors with exit code 2") {
    SimulateOptions opt;
    opt.input = kFixtures + "/broken.json";
    std::ostringstream out, err;
    CHECK(run_simulate(opt, out, err) == kExitInputError);
    CHECK(err.str().find("q") != std::string::npos);

    opt.input = kFixtures + "/cyclic3.json";
    opt.horizon = -1.0;
    std::ostringstream out2, err2;
    CHECK(run_simulate(opt, out2, err2) == kExitInputError);
}

TEST_CASE("cycles prints the four-state structures") {
    CyclesOptions opt;
    opt.n = 4;
    opt.k = 1;
    opt.json = true;
    std::ostringstream out, err;
    REQUIRE(run_cycles(opt, out, err) == kExitOk);
    json doc = json::parse(out.str());
    CHECK(doc["theta"].size() == 6);
    CHECK(doc["gamma"][0] == json::array({-1, -1, -1, 0, 0, 0}));
    REQUIRE(doc["basis"].size() == 3);
    CHECK(doc["basis"][0]["vector"] == json::array({1, -1, 0, 1, 0, 0}));
    CHECK(doc["basis"][1]["triple"] == json::array({1, 2, 4}));
    CHECK(doc["k_cycle"]["hamiltonian"] == true);
    CHECK(doc["k_cycle"]["lambda_antisym"][0] == json::array({0, 1, 0, -1}));

    CyclesOptions text_opt;
    text_opt.n = 4;
    std::ostringstream tout, terr;
    REQUIRE(run_cycles(text_opt, tout, terr) == kExitOk);
    CHECK(tout.str().find("incidence matrix") != std::string::npos);
}

}  // TEST_SUITE
