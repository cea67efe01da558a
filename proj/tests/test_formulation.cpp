#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "radkit/formulation.hpp"
#include "radkit/powerflow.hpp"
#include "test_support.hpp"

#include <algorithm>
#include <set>

using namespace radkit;
using namespace radkit::testing;

namespace {

std::size_t count_prefix(const ModelIR& model, const std::string& prefix) {
    std::size_t n = 0;
    for (const Variable& v : model.variables)
        if (v.name.rfind(prefix, 0) == 0) ++n;
    return n;
}

std::size_t count_row_prefix(const ModelIR& model, const std::string& prefix) {
    std::size_t n = 0;
    for (const LinearRow& r : model.linear_constraints)
        if (r.name.rfind(prefix, 0) == 0) ++n;
    return n;
}

const LinearRow* find_row(const ModelIR& model, const std::string& name) {
    for (const LinearRow& r : model.linear_constraints)
        if (r.name == name) return &r;
    return nullptr;
}

std::set<std::vector<std::uint8_t>> as_set(const std::vector<Configuration>& cfgs) {
    std::set<std::vector<std::uint8_t>> out;
    for (const Configuration& c : cfgs) out.insert(c.closed);
    return out;
}

} // namespace

TEST_CASE("core model shape on the 33-bus system") {
    Network pu = to_per_unit(load_case("case33.net"));
    ModelIR model = build_core_model(pu);
    ModelStats stats = model_stats(model);

    CHECK(stats.n_binary == 37);
    CHECK(stats.n_cone_constraints == 37);
    CHECK(count_row_prefix(model, "pbal[") == 33);
    CHECK(count_row_prefix(model, "qbal[") == 33);
    CHECK(count_row_prefix(model, "vdrop[") == 37);
    CHECK(count_row_prefix(model, "vslack_hi[") == 37);
    CHECK(count_row_prefix(model, "vslack_lo[") == 37);
    CHECK(count_row_prefix(model, "amp[") == 37);
    // P,Q,Isqr,dV per branch + Vsqr per bus + substation injections
    CHECK(stats.n_continuous == 4 * 37 + 33 + 2);
    CHECK(model.objective.size() == 37);

    SUBCASE("substation voltage pinned at 1 pu") {
        auto idx = model.variable_index("Vsqr[1]");
        REQUIRE(idx >= 0);
        CHECK(model.variables[static_cast<std::size_t>(idx)].lb == 1.0);
        CHECK(model.variables[static_cast<std::size_t>(idx)].ub == 1.0);
    }
    SUBCASE("load-bus voltage window is squared") {
        auto idx = model.variable_index("Vsqr[2]");
        REQUIRE(idx >= 0);
        CHECK(model.variables[static_cast<std::size_t>(idx)].lb ==
              doctest::Approx(0.93 * 0.93));
        CHECK(model.variables[static_cast<std::size_t>(idx)].ub ==
              doctest::Approx(1.05 * 1.05));
    }
}

TEST_CASE("smallest instances") {
    SUBCASE("2-bus model has one binary, one cone, one objective term") {
        Network net("b2", 1, 1, {make_bus(1, 0, 0, true), make_bus(2, 0.1, 0.05)},
                    {make_branch(1, 2, 0.02, 0.01)}, true);
        ModelIR model = build_core_model(net);
        ModelStats stats = model_stats(model);
        CHECK(stats.n_binary == 1);
        CHECK(stats.n_cone_constraints == 1);
        CHECK(model.objective.size() == 1);
    }
    SUBCASE("degenerate r=x=0 branch rejected") {
        Network net("bad", 1, 1, {make_bus(1, 0, 0, true), make_bus(2, 0.1, 0.05)},
                    {make_branch(1, 2, 0.0, 0.0)}, true);
        CHECK_THROWS_AS(build_core_model(net), ModelError);
    }
    SUBCASE("physical-unit network rejected") {
        CHECK_THROWS_AS(build_core_model(load_case("case33.net")), ModelError);
    }
}

TEST_CASE("radiality families on the 33-bus system") {
    Network pu = to_per_unit(load_case("case33.net"));
    ModelIR core = build_core_model(pu);
    const ModelStats base_stats = model_stats(core);

    SUBCASE("cardinality row") {
        ModelIR model = add_radiality(core, FormulationKind::base, pu);
        ModelStats stats = model_stats(model);
        CHECK(stats.n_linear_constraints == base_stats.n_linear_constraints + 1);
        const LinearRow* card = find_row(model, "card");
        REQUIRE(card != nullptr);
        CHECK(card->sense == Sense::le);
        CHECK(card->rhs == 32.0);
        CHECK(card->coeffs.size() == 37);
    }
    SUBCASE("parent-child adds directed binaries and one row per branch") {
        ModelIR model = add_radiality(core, FormulationKind::pc, pu);
        ModelStats stats = model_stats(model);
        CHECK(stats.n_binary == 37 + 74);
        CHECK(count_row_prefix(model, "link[") == 37);
        CHECK(count_row_prefix(model, "pc[") == 37);
        const LinearRow* pc = find_row(model, "pc[1,2]");
        REQUIRE(pc != nullptr);
        CHECK(pc->sense == Sense::le);
        CHECK(pc->rhs == 1.0);
        CHECK(pc->coeffs.size() == 2);
    }
    SUBCASE("spanning-tree rows replace the cardinality row") {
        ModelIR model = add_radiality(core, FormulationKind::st, pu);
        CHECK(find_row(model, "card") == nullptr);
        CHECK(count_row_prefix(model, "st_par[") == 33);
        ModelStats stats = model_stats(model);
        // 32 demand rows (=1), 1 substation row (=0), no transfer buses
        CHECK(stats.n_linear_constraints ==
              base_stats.n_linear_constraints + 37 + 33);
    }
    SUBCASE("single-commodity flow sizes") {
        ModelIR model = add_radiality(core, FormulationKind::scf, pu);
        ModelStats stats = model_stats(model);
        CHECK(count_prefix(model, "f[") == 37);
        CHECK(count_prefix(model, "yD[") == 0); // scf stays undirected
        // card + 32 balances + 2 gates per branch
        CHECK(stats.n_linear_constraints ==
              base_stats.n_linear_constraints + 1 + 32 + 74);
    }
    SUBCASE("multi-commodity flow sizes") {
        ModelIR model = add_radiality(core, FormulationKind::mcf, pu);
        ModelStats stats = model_stats(model);
        CHECK(count_prefix(model, "fk[") == 2 * 37 * 32); // 2368 commodity flows
        CHECK(stats.n_continuous == base_stats.n_continuous + 37 * 32 * 2);
        CHECK(stats.n_binary == 37 + 74); // Eq. (22) needs the directed binaries
        // link + card + per commodity: src + snk + 31 balances + 74 caps
        CHECK(stats.n_linear_constraints ==
              base_stats.n_linear_constraints + 37 + 1 + 32 * (1 + 1 + 31 + 74));
    }
    SUBCASE("hybrids compose without duplicate rows") {
        ModelIR scf_st = add_radiality(core, FormulationKind::scf_st, pu);
        CHECK(find_row(scf_st, "card") == nullptr);
        CHECK(count_row_prefix(scf_st, "st_par[") == 33);
        CHECK(count_prefix(scf_st, "f[") == 37);
        CHECK(count_row_prefix(scf_st, "scf_cap[") == 74); // one-sided per direction

        ModelIR mcf_st = add_radiality(core, FormulationKind::mcf_st, pu);
        CHECK(find_row(mcf_st, "card") == nullptr);
        CHECK(count_prefix(mcf_st, "fk[") == 2368);

        ModelIR mcf_scf = add_radiality(core, FormulationKind::mcf_scf, pu);
        CHECK(find_row(mcf_scf, "card") != nullptr); // no ST rows: cardinality stays
        CHECK(count_prefix(mcf_scf, "f[") == 37);
        CHECK(count_prefix(mcf_scf, "fk[") == 2368);

        // stats are exactly the sum of the generators' contributions
        ModelStats st = model_stats(add_radiality(core, FormulationKind::st, pu));
        ModelStats scf = model_stats(add_radiality(core, FormulationKind::scf, pu));
        ModelStats both = model_stats(scf_st);
        // shared rows: linking (37, in st) and the scf card row replaced by st
        CHECK(both.n_linear_constraints ==
              st.n_linear_constraints + scf.n_linear_constraints -
                  base_stats.n_linear_constraints - 1);
    }
}

TEST_CASE("directed arc catalogue") {
    Network pu = to_per_unit(load_case("case33.net"));
    CHECK(directed_arc_map(pu, FormulationKind::base).empty());
    CHECK(directed_arc_map(pu, FormulationKind::scf).empty());
    auto arcs = directed_arc_map(pu, FormulationKind::st);
    CHECK(arcs.size() == 74);
    CHECK(arcs[0].name == "yD[1->2]");
    CHECK(arcs[1].name == "yD[2->1]");
    // every catalogue entry exists in the built model
    ModelIR model = build_model(pu, FormulationKind::st);
    for (const DirectedArc& arc : arcs) CHECK(model.variable_index(arc.name) >= 0);
}

TEST_CASE("fingerprint guards against network mixups") {
    Network pu = to_per_unit(load_case("case33.net"));
    Network other = to_per_unit(load_case("case14.net"));
    ModelIR core = build_core_model(pu);
    CHECK_THROWS_AS(add_radiality(core, FormulationKind::base, other), ModelError);
}

TEST_CASE("variable naming covers the documented catalogue") {
    Network pu = to_per_unit(load_case("case33.net"));
    ModelIR model = build_model(pu, FormulationKind::mcf_scf);
    for (const char* prefix : {"P[", "Q[", "Isqr[", "Vsqr[", "dV[", "y[", "f[", "fk["})
        CHECK(count_prefix(model, prefix) > 0);
    // and nothing outside the documented scheme
    for (const Variable& v : model.variables) {
        bool known = false;
        for (const char* prefix :
             {"P[", "Q[", "Isqr[", "Vsqr[", "dV[", "y[", "yD[", "f[", "fk[", "Ps[", "Qs["})
            known |= v.name.rfind(prefix, 0) == 0;
        CHECK_MESSAGE(known, v.name);
    }
    // names are unique
    std::set<std::string> names;
    for (const Variable& v : model.variables) CHECK(names.insert(v.name).second);
    // every referenced variable exists and bounds are ordered
    for (const Variable& v : model.variables) CHECK(v.lb <= v.ub);
    for (const LinearRow& r : model.linear_constraints)
        for (auto [var, coeff] : r.coeffs) {
            CHECK(var >= 0);
            CHECK(static_cast<std::size_t>(var) < model.variables.size());
            CHECK(coeff != 0.0);
        }
}

TEST_CASE("model stats basics") {
    SUBCASE("empty model counts zero") {
        ModelIR empty;
        ModelStats stats = model_stats(empty);
        CHECK(stats.n_binary == 0);
        CHECK(stats.n_continuous == 0);
        CHECK(stats.n_linear_constraints == 0);
        CHECK(stats.n_cone_constraints == 0);
        CHECK(stats.nonzeros == 0);
    }
    SUBCASE("nonzeros recomputable from the rows") {
        Network pu = to_per_unit(load_case("case14.net"));
        ModelIR model = build_model(pu, FormulationKind::scf);
        std::size_t nnz = 0;
        for (const LinearRow& r : model.linear_constraints) nnz += r.coeffs.size();
        CHECK(model_stats(model).nonzeros == nnz);
    }
}

TEST_CASE("binary feasible sets") {
    SUBCASE("families that guarantee forests match is_radial exhaustively") {
        std::mt19937_64 gen(42);
        for (int trial = 0; trial < 25; ++trial) {
            const int n = 3 + static_cast<int>(gen() % 6);           // 3..8 buses
            const int extra = static_cast<int>(gen() % 4);           // up to +3 loops
            const int m = std::min(n - 1 + extra, 14);
            const int subs = (gen() % 4 == 0 && n > 3) ? 2 : 1;
            Network net = random_connected(gen, n, m, subs);
            auto radial = as_set(radial_set_bruteforce(net));
            for (FormulationKind kind :
                 {FormulationKind::st, FormulationKind::scf, FormulationKind::mcf,
                  FormulationKind::scf_st, FormulationKind::mcf_st,
                  FormulationKind::mcf_scf}) {
                CAPTURE(trial);
                CAPTURE(to_string(kind));
                CHECK(as_set(binary_feasible_set(net, kind)) == radial);
            }
        }
    }
    SUBCASE("cardinality-only families admit the zero-demand triangle") {
        Network net = zero_demand_triangle();
        // triangle closed, pendant open: 3 branches <= |N|-|N_s| = 4
        Configuration loopy{std::vector<std::uint8_t>{0, 1, 1, 1}};
        REQUIRE_FALSE(is_radial(net, loopy));
        auto base_set = as_set(binary_feasible_set(net, FormulationKind::base));
        CHECK(base_set.count(loopy.closed) == 1);
        auto pc_set = as_set(binary_feasible_set(net, FormulationKind::pc));
        CHECK(pc_set.count(loopy.closed) == 1);
        for (FormulationKind kind :
             {FormulationKind::st, FormulationKind::scf, FormulationKind::mcf}) {
            auto feasible = as_set(binary_feasible_set(net, kind));
            CHECK(feasible.count(loopy.closed) == 0);
        }
        // with transfer buses the guaranteed families still only accept
        // configurations whose demand buses hang off a substation
        for (FormulationKind kind :
             {FormulationKind::st, FormulationKind::scf, FormulationKind::mcf}) {
            for (const Configuration& cfg : binary_feasible_set(net, kind)) {
                auto label = connected_components(net, cfg);
                CHECK(label[1] == label[0]); // demand bus 2 tied to substation 1
            }
        }
    }
    SUBCASE("st-family substation components stay cycle-free under transfer buses") {
        std::mt19937_64 gen(43);
        for (int trial = 0; trial < 10; ++trial) {
            const int n = 4 + static_cast<int>(gen() % 5);
            const int m = std::min(n + 2, 14);
            Network net = random_connected(gen, n, m, 1, /*zero_frac=*/0.5);
            for (const Configuration& cfg : binary_feasible_set(net, FormulationKind::st)) {
                auto label = connected_components(net, cfg);
                // count edges and buses of the substation component
                std::size_t edges = 0, buses = 0;
                for (std::size_t i = 0; i < net.bus_count(); ++i)
                    if (label[i] == label[0]) ++buses;
                for (std::size_t b = 0; b < net.branch_count(); ++b)
                    if (cfg.closed[b] && label[net.endpoints(b).first] == label[0])
                        ++edges;
                CHECK(edges == buses - 1);
            }
        }
    }
    SUBCASE("empty branch set yields the empty configuration") {
        Network net("lonely", 1, 1, {make_bus(1, 0, 0, true)}, {});
        auto feasible = binary_feasible_set(net, FormulationKind::st);
        REQUIRE(feasible.size() == 1);
        CHECK(feasible[0].closed.empty());
    }
    SUBCASE("instances beyond 16 branches are refused") {
        CHECK_THROWS_AS(binary_feasible_set(to_per_unit(load_case("case33.net")),
                                            FormulationKind::base),
                        ModelError);
    }
}

TEST_CASE("a solved radial point satisfies every model constraint") {
    for (const char* file : {"case14.net", "case33.net"}) {
        Network pu = to_per_unit(load_case(file));
        Configuration cfg = initial_configuration(pu);
        PowerFlowResult res = solve_distflow(pu, cfg);
        ModelPoint point = model_point_from_powerflow(pu, cfg, res);
        for (FormulationKind kind : all_formulations()) {
            CAPTURE(file);
            CAPTURE(to_string(kind));
            ModelIR model = build_model(pu, kind);
            ModelResidual gap = evaluate_model_point(model, point);
            CHECK(gap.linear <= 1e-6);
            CHECK(gap.bounds <= 1e-9);
            CHECK(gap.cone_gap <= 1e-6);
        }
    }
}
