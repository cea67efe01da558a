#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "radkit/emitter.hpp"
#include "test_support.hpp"

#include <charconv>
#include <set>
#include <sstream>

using namespace radkit;
using namespace radkit::testing;

namespace {

Network two_bus_net() {
    return Network("b2", 1, 1, {make_bus(1, 0, 0, true), make_bus(2, 0.1, 0.05)},
                   {make_branch(1, 2, 0.02, 0.01)}, true);
}

std::size_t count_substr(const std::string& text, const std::string& needle) {
    std::size_t n = 0, pos = 0;
    while ((pos = text.find(needle, pos)) != std::string::npos) {
        ++n;
        pos += needle.size();
    }
    return n;
}

} // namespace

TEST_CASE("empty model emits the bare skeleton") {
    ModelIR empty;
    empty.name = "nothing";
    std::string lp = write_lp(empty);
    CHECK(lp.find("Minimize") != std::string::npos);
    CHECK(lp.find("obj: 0") != std::string::npos);
    CHECK(lp.find("End") != std::string::npos);
    CHECK(lp.find("Subject To") == std::string::npos);

    std::string mps = write_mps(empty);
    for (const char* section : {"NAME", "ROWS", "COLUMNS", "RHS", "BOUNDS", "ENDATA"})
        CHECK(mps.find(section) != std::string::npos);

    CHECK(read_back_stats(lp, EmitFormat::lp) == model_stats(empty));
    CHECK(read_back_stats(mps, EmitFormat::mps) == model_stats(empty));
}

TEST_CASE("2-bus model carries exactly one quadratic row") {
    ModelIR model = build_model(two_bus_net(), FormulationKind::base);
    std::string lp = write_lp(model);
    CHECK(count_substr(lp, "[ ") == 1);
    CHECK(count_substr(lp, "^ 2") == 2);
    std::string mps = write_mps(model);
    CHECK(count_substr(mps, "QCMATRIX") == 1);
}

TEST_CASE("33-bus base model lists all switch binaries") {
    Network pu = to_per_unit(load_case("case33.net"));
    ModelIR model = build_model(pu, FormulationKind::base);
    std::string lp = write_lp(model);
    auto binaries_at = lp.find("Binaries");
    REQUIRE(binaries_at != std::string::npos);
    std::string tail = lp.substr(binaries_at);
    CHECK(count_substr(tail, "y(") == 37);

    std::string mps = write_mps(model);
    CHECK(count_substr(mps, " BV BND") == 37);
}

TEST_CASE("33-bus MCF columns carry the commodity flows") {
    Network pu = to_per_unit(load_case("case33.net"));
    ModelIR model = build_model(pu, FormulationKind::mcf);
    std::string mps = write_mps(model);
    // distinct fk column names in the COLUMNS section
    std::set<std::string> fk_names;
    std::istringstream in(mps.substr(mps.find("COLUMNS")));
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line) && line.rfind("RHS", 0) != 0) {
        std::istringstream ls(line);
        std::string first;
        ls >> first;
        if (first.rfind("fk(", 0) == 0) fk_names.insert(first);
    }
    CHECK(fk_names.size() == 2368);
}

TEST_CASE("emission is deterministic") {
    Network pu = to_per_unit(load_case("case14.net"));
    for (FormulationKind kind : all_formulations()) {
        ModelIR model = build_model(pu, kind);
        CHECK(write_lp(model) == write_lp(model));
        CHECK(write_mps(model) == write_mps(model));
    }
}

TEST_CASE("stat counts survive the round trip") {
    for (const char* file : {"case14.net", "case33.net"}) {
        Network pu = to_per_unit(load_case(file));
        for (FormulationKind kind : all_formulations()) {
            CAPTURE(file);
            CAPTURE(to_string(kind));
            ModelIR model = build_model(pu, kind);
            const ModelStats expect = model_stats(model);
            CHECK(read_back_stats(write_lp(model), EmitFormat::lp) == expect);
            CHECK(read_back_stats(write_mps(model), EmitFormat::mps) == expect);
        }
    }
    SUBCASE("two-bus core as well") {
        ModelIR model = build_model(two_bus_net(), FormulationKind::base);
        CHECK(read_back_stats(write_lp(model), EmitFormat::lp) == model_stats(model));
        CHECK(read_back_stats(write_mps(model), EmitFormat::mps) == model_stats(model));
    }
}

TEST_CASE("printed coefficients parse back to full precision") {
    Network pu = to_per_unit(load_case("case33.net"));
    ModelIR model = build_model(pu, FormulationKind::base);
    std::string lp = write_lp(model, {.precision = 12});
    // objective terms are R values: recover and compare against the model
    auto start = lp.find("obj:");
    auto end = lp.find("Subject To");
    REQUIRE(start != std::string::npos);
    std::istringstream in(lp.substr(start + 4, end - start - 4));
    std::vector<double> parsed;
    std::string tok;
    double pending_sign = 1.0;
    while (in >> tok) {
        if (tok == "+") { pending_sign = 1.0; continue; }
        if (tok == "-") { pending_sign = -1.0; continue; }
        double v = 0.0;
        auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec == std::errc{} && p == tok.data() + tok.size()) parsed.push_back(pending_sign * v);
    }
    REQUIRE(parsed.size() == model.objective.size());
    for (std::size_t i = 0; i < parsed.size(); ++i)
        CHECK(parsed[i] == doctest::Approx(model.objective[i].second).epsilon(1e-11));
}

TEST_CASE("name handling") {
    SUBCASE("bracketed names transliterate deterministically") {
        ModelIR model;
        model.name = "names";
        model.variables.push_back({"fk[5][2->7]", VarKind::continuous, 0, 1});
        std::string lp = write_lp(model);
        CHECK(lp.find("fk(5)(2_7)") != std::string::npos);
    }
    SUBCASE("forbidden characters raise") {
        ModelIR model;
        model.variables.push_back({"bad name", VarKind::continuous, 0, 1});
        CHECK_THROWS_AS(write_lp(model), EmitError);
        ModelIR plus;
        plus.variables.push_back({"a+b", VarKind::continuous, 0, 1});
        CHECK_THROWS_AS(write_lp(plus), EmitError);
    }
    SUBCASE("over-long names raise in MPS") {
        ModelIR model;
        model.variables.push_back({std::string(300, 'x'), VarKind::continuous, 0, 1});
        CHECK_THROWS_AS(write_mps(model), EmitError);
    }
    SUBCASE("precision outside [6,17] raises") {
        ModelIR empty;
        CHECK_THROWS_AS(write_lp(empty, {.precision = 5}), EmitError);
        CHECK_THROWS_AS(write_lp(empty, {.precision = 18}), EmitError);
    }
}

TEST_CASE("foreign or mangled text is rejected or detected") {
    SUBCASE("foreign text throws") {
        CHECK_THROWS_AS(read_back_stats("hello world\n", EmitFormat::lp), EmitError);
        CHECK_THROWS_AS(read_back_stats("hello world\n", EmitFormat::mps), EmitError);
    }
    SUBCASE("a deleted row shows up as a count mismatch") {
        ModelIR model = build_model(two_bus_net(), FormulationKind::base);
        std::string lp = write_lp(model);
        auto pos = lp.find(" card:");
        REQUIRE(pos != std::string::npos);
        auto eol = lp.find('\n', pos);
        std::string mangled = lp.substr(0, pos) + lp.substr(eol + 1);
        ModelStats got = read_back_stats(mangled, EmitFormat::lp);
        CHECK(got != model_stats(model));
        CHECK(got.n_linear_constraints == model_stats(model).n_linear_constraints - 1);
    }
}

TEST_CASE("fixed binaries keep their pin in both formats") {
    std::vector<Bus> buses{make_bus(1, 0, 0, true), make_bus(2, 0.1, 0.0),
                           make_bus(3, 0.1, 0.0)};
    std::vector<Branch> branches{make_branch(1, 2), make_branch(2, 3)};
    branches[0].switchable = false; // stays closed
    Network net("fixed", 1, 1, std::move(buses), std::move(branches), true);
    ModelIR model = build_model(net, FormulationKind::base);
    std::string lp = write_lp(model);
    CHECK(lp.find("y(1.2) = 1") != std::string::npos);
    std::string mps = write_mps(model);
    CHECK(mps.find(" FX BND  y(1.2)  1") != std::string::npos);
    CHECK(read_back_stats(lp, EmitFormat::lp) == model_stats(model));
    CHECK(read_back_stats(mps, EmitFormat::mps) == model_stats(model));
}
