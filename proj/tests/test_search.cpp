#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "radkit/search.hpp"
#include "test_support.hpp"

#include <queue>
#include <set>

using namespace radkit;
using namespace radkit::testing;

TEST_CASE("4-bus loop enumerates one tree per opened branch") {
    Network net = four_bus_loop();
    SearchReport report = enumerate_radial(net);
    CHECK(report.trees_enumerated == 4);
    CHECK(report.configurations_evaluated == 4);
    CHECK(report.mode == SearchMode::exact);
    CHECK(is_radial(net, report.best_cfg));
    CHECK(std::isfinite(report.best_losses_kw));
}

TEST_CASE("14-bus exact optimum matches the published reference") {
    Network net = load_case("case14.net");
    SearchReport report = enumerate_radial(net);
    CHECK(report.trees_enumerated == 190);
    CHECK(report.trees_enumerated ==
          static_cast<std::uint64_t>(count_spanning_trees(net)));
    CHECK(report.best_losses_kw == doctest::Approx(605.92).epsilon(0.005));
    CHECK(is_radial(net, report.best_cfg));
    // recomputing the losses reproduces the report
    Network pu = to_per_unit(net);
    CHECK(evaluate_losses(pu, report.best_cfg) ==
          doctest::Approx(report.best_losses_kw).epsilon(1e-9));
}

TEST_CASE("enumeration visits every radial configuration exactly once") {
    // brute-force cross-check on graphs small enough to scan
    std::mt19937_64 gen(11);
    for (int trial = 0; trial < 12; ++trial) {
        const int n = 3 + static_cast<int>(gen() % 5);
        const int m = std::min(n + 2, 12);
        const int subs = (trial % 3 == 0 && n > 3) ? 2 : 1;
        Network net = random_connected(gen, n, m, subs);
        const auto radial = radial_set_bruteforce(net);
        if (radial.empty()) continue;
        SearchReport report = enumerate_radial(net);
        CHECK(report.trees_enumerated == radial.size());
        CHECK(report.trees_enumerated ==
              static_cast<std::uint64_t>(count_spanning_trees(net)));
    }
}

TEST_CASE("enumeration respects non-switchable branches") {
    Network base = four_bus_loop();
    std::vector<Bus> buses(base.buses().begin(), base.buses().end());
    std::vector<Branch> branches(base.branches().begin(), base.branches().end());
    branches[0].switchable = false; // 1-2 welded closed
    Network net("welded", 1, 1, std::move(buses), std::move(branches));
    SearchReport report = enumerate_radial(net);
    CHECK(report.trees_enumerated == 3);
    CHECK(report.best_cfg.closed[0] == 1);

    std::vector<Branch> branches2(base.branches().begin(), base.branches().end());
    branches2[3].switchable = false;
    branches2[3].initially_closed = false; // 4-1 welded open
    std::vector<Bus> buses2(base.buses().begin(), base.buses().end());
    Network net2("severed", 1, 1, std::move(buses2), std::move(branches2));
    SearchReport report2 = enumerate_radial(net2);
    CHECK(report2.trees_enumerated == 1);
    CHECK(report2.best_cfg.closed[3] == 0);
}

TEST_CASE("budget overflow reports the exact count") {
    Network net = load_case("case33.net");
    SearchBudget tiny;
    tiny.max_trees = 10;
    CHECK_THROWS_WITH_AS(enumerate_radial(net, tiny), doctest::Contains("50751"),
                         SearchError);
}

TEST_CASE("branch exchange") {
    Network net = load_case("case33.net");
    Network pu = to_per_unit(net);
    SUBCASE("the global optimum is locally optimal") {
        SearchReport exact = enumerate_radial(net);
        SearchReport local = local_search_branch_exchange(net, exact.best_cfg);
        CHECK(local.best_cfg == exact.best_cfg);
        CHECK(local.best_losses_kw == doctest::Approx(exact.best_losses_kw));
    }
    SUBCASE("descent from the initial topology") {
        Configuration start = initial_configuration(net);
        const double start_losses = evaluate_losses(pu, start);
        SearchReport report = local_search_branch_exchange(net, start);
        CHECK(report.best_losses_kw <= start_losses);
        CHECK(is_radial(net, report.best_cfg));
        CHECK(report.mode == SearchMode::local_search);
        // on this system steepest-descent exchange reaches the global optimum
        CHECK(report.best_losses_kw == doctest::Approx(139.55).epsilon(0.005));
    }
    SUBCASE("non-radial start rejected") {
        CHECK_THROWS_AS(local_search_branch_exchange(net, all_closed_configuration(net)),
                        SearchError);
    }
    SUBCASE("trace records the improvements") {
        SearchBudget budget;
        budget.keep_trace = true;
        SearchReport report =
            local_search_branch_exchange(net, initial_configuration(net), budget);
        CHECK(!report.trace.empty());
    }
}

TEST_CASE("exchange moves preserve radiality") {
    // property: closing an open branch and opening any branch on the induced
    // cycle (or substation-substation path) stays radial
    std::mt19937_64 gen(5);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 4 + static_cast<int>(gen() % 5);
        const int m = std::min(n + 3, 14);
        const int subs = (trial % 4 == 0) ? 2 : 1;
        Network net = random_connected(gen, n, m, subs);
        auto radial = radial_set_bruteforce(net);
        if (radial.empty()) continue;
        const Configuration& cfg = radial[gen() % radial.size()];

        // forest parents by BFS from the substations
        const std::size_t nb = net.bus_count();
        std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(nb);
        for (std::size_t b = 0; b < net.branch_count(); ++b)
            if (cfg.closed[b]) {
                auto [u, v] = net.endpoints(b);
                adj[u].emplace_back(v, b);
                adj[v].emplace_back(u, b);
            }
        constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
        std::vector<std::size_t> parent_branch(nb, kUnset), parent_bus(nb, kUnset);
        std::queue<std::size_t> q;
        std::vector<char> seen(nb, 0);
        for (std::size_t i = 0; i < nb; ++i)
            if (net.bus(i).is_substation) {
                q.push(i);
                seen[i] = 1;
            }
        while (!q.empty()) {
            std::size_t u = q.front();
            q.pop();
            for (auto [v, b] : adj[u])
                if (!seen[v]) {
                    seen[v] = 1;
                    parent_branch[v] = b;
                    parent_bus[v] = u;
                    q.push(v);
                }
        }
        auto path_up = [&](std::size_t u) {
            std::vector<std::size_t> path;
            while (parent_branch[u] != kUnset) {
                path.push_back(parent_branch[u]);
                u = parent_bus[u];
            }
            return path;
        };
        for (std::size_t b = 0; b < net.branch_count(); ++b) {
            if (cfg.closed[b]) continue;
            auto [u, v] = net.endpoints(b);
            auto pu_path = path_up(u), pv_path = path_up(v);
            while (!pu_path.empty() && !pv_path.empty() && pu_path.back() == pv_path.back()) {
                pu_path.pop_back();
                pv_path.pop_back();
            }
            pu_path.insert(pu_path.end(), pv_path.begin(), pv_path.end());
            for (std::size_t c : pu_path) {
                Configuration moved = cfg;
                moved.closed[b] = 1;
                moved.closed[c] = 0;
                CAPTURE(trial);
                CHECK(is_radial(net, moved));
            }
        }
    }
}

TEST_CASE("multistart") {
    Network net = load_case("case33.net");
    SUBCASE("fixed seed reproduces the report exactly") {
        SearchReport a = multistart(net, 3, 99);
        SearchReport b = multistart(net, 3, 99);
        CHECK(a.best_losses_kw == b.best_losses_kw);
        CHECK(a.best_cfg == b.best_cfg);
        CHECK(a.configurations_evaluated == b.configurations_evaluated);
    }
    SUBCASE("twenty starts reach the exact optimum on the 33-bus system") {
        SearchReport exact = enumerate_radial(net);
        SearchReport ms = multistart(net, 20, 1);
        CHECK(ms.best_losses_kw >= exact.best_losses_kw - 1e-9); // enumeration is the oracle
        CHECK(ms.best_losses_kw == doctest::Approx(139.55).epsilon(0.005));
        CHECK(ms.mode == SearchMode::multistart);
    }
    SUBCASE("zero starts rejected") {
        CHECK_THROWS_AS(multistart(net, 0, 1), SearchError);
    }
}
