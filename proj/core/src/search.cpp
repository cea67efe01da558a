#include "radkit/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <deque>
#include <mutex>
#include <numeric>
#include <random>
#include <thread>

#include "radkit/parallel.hpp"

namespace radkit {

std::string to_string(SearchMode mode) {
    switch (mode) {
    case SearchMode::exact: return "exact";
    case SearchMode::local_search: return "local_search";
    case SearchMode::multistart: return "multistart";
    }
    return "?";
}

namespace {

constexpr std::size_t kUnset = static_cast<std::size_t>(-1);

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

/// (losses, lexicographically smallest closed vector) running minimum.
struct BestTracker {
    double losses = kInfeasibleLosses;
    Configuration cfg;

    void offer(double candidate, const Configuration& c) {
        if (candidate < losses ||
            (candidate == losses && !cfg.closed.empty() && c.lex_less(cfg))) {
            losses = candidate;
            cfg = c;
        } else if (losses == kInfeasibleLosses && cfg.closed.empty()) {
            cfg = c; // remember something even if everything is infeasible
        }
    }
    void merge(const BestTracker& other) {
        if (other.cfg.closed.empty()) return;
        offer(other.losses, other.cfg);
    }
};

struct ForcedSplit {
    std::vector<std::size_t> forced;   // non-switchable, closed
    std::vector<std::size_t> excluded; // non-switchable, open
};

ForcedSplit forced_split(const Network& net) {
    ForcedSplit s;
    for (std::size_t b = 0; b < net.branch_count(); ++b)
        if (!net.branch(b).switchable) {
            if (net.branch(b).initially_closed) s.forced.push_back(b);
            else s.excluded.push_back(b);
        }
    return s;
}

/// Copy-on-branch union-find over contraction classes.
struct Dsu {
    std::vector<std::size_t> parent;

    explicit Dsu(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), std::size_t{0});
    }
    std::size_t find(std::size_t a) {
        while (parent[a] != a) {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        return a;
    }
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[b] = a;
        return true;
    }
};

/// Shared immutable state of one enumeration run.
struct EnumShared {
    const Network& net;
    const Network& pu; // per-unit twin used by the evaluator
    std::vector<std::size_t> edge_branch; // usable switchable branches
    std::vector<std::pair<std::size_t, std::size_t>> edge_ends; // class endpoints
    std::vector<std::uint8_t> base_closed; // forced branches pre-set
    std::size_t n_needed = 0;
    bool hard_limits = false;

    std::atomic<std::uint64_t> trees{0};
    std::atomic<std::uint64_t> evaluated{0};
    std::mutex best_mutex;
    BestTracker best;
};

struct EnumNode {
    Dsu dsu;
    std::vector<std::uint8_t> chosen; // over EnumShared::edge_branch
    std::size_t idx = 0;
    std::size_t joined = 0; // class merges so far
};

/// Can the edges from `idx` on still merge everything into one class?
bool completable(const EnumShared& shared, Dsu dsu, std::size_t idx,
                 std::size_t joined) {
    std::size_t need = shared.n_needed - joined;
    if (need == 0) return true;
    for (std::size_t i = idx; i < shared.edge_ends.size() && need > 0; ++i)
        if (dsu.unite(shared.edge_ends[i].first, shared.edge_ends[i].second)) --need;
    return need == 0;
}

void emit_tree(EnumShared& shared, const EnumNode& node) {
    shared.trees.fetch_add(1, std::memory_order_relaxed);
    Configuration cfg{shared.base_closed};
    for (std::size_t i = 0; i < node.chosen.size(); ++i)
        if (node.chosen[i]) cfg.closed[shared.edge_branch[i]] = 1;
    const double losses = evaluate_losses(shared.pu, cfg, shared.hard_limits);
    shared.evaluated.fetch_add(1, std::memory_order_relaxed);
    std::lock_guard lock(shared.best_mutex);
    shared.best.offer(losses, cfg);
}

void enumerate_from(EnumShared& shared, EnumNode node) {
    while (true) {
        if (node.joined == shared.n_needed) {
            emit_tree(shared, node);
            return;
        }
        if (node.idx >= shared.edge_branch.size()) return; // pruned earlier
        auto [u, v] = shared.edge_ends[node.idx];
        Dsu& dsu = node.dsu;
        if (dsu.find(u) == dsu.find(v)) {
            ++node.idx; // closing it would cycle; the only option is skipping
            continue;
        }
        // include branch: take the edge if the rest can still finish the tree
        {
            Dsu with = dsu;
            with.unite(u, v);
            if (completable(shared, with, node.idx + 1, node.joined + 1)) {
                EnumNode child{std::move(with), node.chosen, node.idx + 1,
                               node.joined + 1};
                child.chosen[node.idx] = 1;
                enumerate_from(shared, std::move(child));
            }
        }
        // exclude branch: keep going only if a tree is still reachable
        if (!completable(shared, dsu, node.idx + 1, node.joined)) return;
        ++node.idx;
    }
}

void enumerate_parallel(EnumShared& shared, EnumNode root) {
    const std::size_t workers = thread_limit();
    if (workers <= 1) {
        enumerate_from(shared, std::move(root));
        return;
    }
    // breadth-first expansion into independent subproblems, then a pool
    std::deque<EnumNode> frontier;
    frontier.push_back(std::move(root));
    const std::size_t target = workers * 8;
    while (frontier.size() < target) {
        EnumNode node = std::move(frontier.front());
        frontier.pop_front();
        if (node.joined == shared.n_needed) {
            emit_tree(shared, node);
            if (frontier.empty()) return;
            continue;
        }
        if (node.idx >= shared.edge_branch.size()) {
            if (frontier.empty()) return;
            continue;
        }
        auto [u, v] = shared.edge_ends[node.idx];
        if (node.dsu.find(u) == node.dsu.find(v)) {
            ++node.idx;
            frontier.push_back(std::move(node));
            continue;
        }
        Dsu with = node.dsu;
        with.unite(u, v);
        if (completable(shared, with, node.idx + 1, node.joined + 1)) {
            EnumNode child{std::move(with), node.chosen, node.idx + 1, node.joined + 1};
            child.chosen[node.idx] = 1;
            frontier.push_back(std::move(child));
        }
        if (completable(shared, node.dsu, node.idx + 1, node.joined)) {
            ++node.idx;
            frontier.push_back(std::move(node));
        }
        if (frontier.empty()) return;
    }

    std::mutex queue_mutex;
    auto next = [&]() -> std::optional<EnumNode> {
        std::lock_guard lock(queue_mutex);
        if (frontier.empty()) return std::nullopt;
        EnumNode n = std::move(frontier.front());
        frontier.pop_front();
        return n;
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&shared, &next] {
            while (auto node = next()) enumerate_from(shared, std::move(*node));
        });
    for (auto& t : pool) t.join();
}

/// Rooted forest view of a radial configuration.
struct Forest {
    std::vector<std::size_t> parent_bus;
    std::vector<std::size_t> parent_branch;
    std::vector<std::size_t> root; // substation at the top of each bus's tree
};

Forest build_forest(const Network& net, const Configuration& cfg) {
    const std::size_t n = net.bus_count();
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(n);
    for (std::size_t b = 0; b < net.branch_count(); ++b)
        if (cfg.closed[b]) {
            auto [u, v] = net.endpoints(b);
            adj[u].emplace_back(v, b);
            adj[v].emplace_back(u, b);
        }
    Forest f;
    f.parent_bus.assign(n, kUnset);
    f.parent_branch.assign(n, kUnset);
    f.root.assign(n, kUnset);
    std::vector<std::size_t> order;
    order.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        if (net.bus(i).is_substation) {
            f.root[i] = i;
            order.push_back(i);
        }
    std::size_t head = 0;
    while (head < order.size()) {
        std::size_t u = order[head++];
        for (auto [v, b] : adj[u])
            if (f.root[v] == kUnset) {
                f.root[v] = f.root[u];
                f.parent_bus[v] = u;
                f.parent_branch[v] = b;
                order.push_back(v);
            }
    }
    return f;
}

/// Branches along the tree path from a bus up to its root.
void path_to_root(const Forest& f, std::size_t u, std::vector<std::size_t>& out) {
    while (f.parent_branch[u] != kUnset) {
        out.push_back(f.parent_branch[u]);
        u = f.parent_bus[u];
    }
}

/// Openable branches of the cycle (or substation-substation path) created by
/// closing branch b on the current forest.
std::vector<std::size_t> exchange_candidates(const Network& net, const Forest& f,
                                             std::size_t b) {
    auto [u, v] = net.endpoints(b);
    std::vector<std::size_t> pu, pv;
    path_to_root(f, u, pu);
    path_to_root(f, v, pv);
    if (f.root[u] == f.root[v]) {
        // common tree: drop the shared tail above the meeting point
        while (!pu.empty() && !pv.empty() && pu.back() == pv.back()) {
            pu.pop_back();
            pv.pop_back();
        }
    }
    pu.insert(pu.end(), pv.begin(), pv.end());
    return pu;
}

SearchReport finish_report(SearchReport report, Clock::time_point t0) {
    report.wall_seconds = seconds_since(t0);
    return report;
}

} // namespace

SearchReport enumerate_radial(const Network& net, const SearchBudget& budget) {
    const auto t0 = Clock::now();
    const ForcedSplit fixed = forced_split(net);
    const TreeCount count = count_spanning_trees(net, fixed.forced, fixed.excluded);
    if (count == 0)
        throw SearchError("no spanning forest honors the non-switchable branches");
    if (count > TreeCount(budget.max_trees))
        throw SearchError("spanning-forest count " + count.str() +
                          " exceeds the enumeration budget " +
                          std::to_string(budget.max_trees) +
                          "; use local search or raise --max-trees");

    const Network pu = to_per_unit(net);

    // contraction classes: substations merged, forced branches merged
    const std::size_t n = net.bus_count();
    Dsu contract(n);
    std::size_t root = kUnset;
    for (std::size_t i = 0; i < n; ++i)
        if (net.bus(i).is_substation) {
            if (root == kUnset) root = i;
            else contract.unite(root, i);
        }
    for (std::size_t b : fixed.forced) {
        auto [u, v] = net.endpoints(b);
        contract.unite(u, v);
    }
    std::vector<std::size_t> cls(n, kUnset);
    std::size_t n_classes = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (contract.find(i) == i) cls[i] = n_classes++;
    for (std::size_t i = 0; i < n; ++i) cls[i] = cls[contract.find(i)];

    EnumShared shared{net, pu};
    shared.hard_limits = budget.hard_limits;
    shared.base_closed.assign(net.branch_count(), 0);
    for (std::size_t b : fixed.forced) shared.base_closed[b] = 1;
    std::vector<char> skip(net.branch_count(), 0);
    for (std::size_t b : fixed.excluded) skip[b] = 1;
    for (std::size_t b = 0; b < net.branch_count(); ++b) {
        if (skip[b] || !net.branch(b).switchable) continue;
        auto [u, v] = net.endpoints(b);
        if (cls[u] == cls[v]) continue; // can never be in a forest
        shared.edge_branch.push_back(b);
        shared.edge_ends.emplace_back(cls[u], cls[v]);
    }
    shared.n_needed = n_classes - 1;

    EnumNode rootnode{Dsu(n_classes),
                      std::vector<std::uint8_t>(shared.edge_branch.size(), 0), 0, 0};
    enumerate_parallel(shared, std::move(rootnode));

    SearchReport report;
    report.mode = SearchMode::exact;
    report.trees_enumerated = shared.trees.load();
    report.configurations_evaluated = shared.evaluated.load();
    report.best_cfg = shared.best.cfg;
    report.best_losses_kw = shared.best.losses;
    if (budget.keep_trace)
        report.trace.push_back("enumerated " + std::to_string(report.trees_enumerated) +
                               " spanning forests");
    return finish_report(std::move(report), t0);
}

SearchReport local_search_branch_exchange(const Network& net,
                                          const Configuration& start,
                                          const SearchBudget& budget) {
    const auto t0 = Clock::now();
    if (!is_radial(net, start)) throw SearchError("start configuration is not radial");
    const Network pu = to_per_unit(net);

    SearchReport report;
    report.mode = SearchMode::local_search;
    Configuration cur = start;
    double cur_losses = evaluate_losses(pu, cur, budget.hard_limits);
    report.configurations_evaluated += 1;

    std::uint64_t moves = 0;
    while (moves < budget.max_moves) {
        const Forest forest = build_forest(net, cur);
        double best_losses = cur_losses;
        std::size_t best_close = kUnset, best_open = kUnset;
        for (std::size_t b = 0; b < net.branch_count(); ++b) {
            if (cur.closed[b] || !net.branch(b).switchable) continue;
            for (std::size_t c : exchange_candidates(net, forest, b)) {
                if (!net.branch(c).switchable) continue;
                Configuration cand = cur;
                cand.closed[b] = 1;
                cand.closed[c] = 0;
                const double losses = evaluate_losses(pu, cand, budget.hard_limits);
                report.configurations_evaluated += 1;
                if (losses < best_losses) {
                    best_losses = losses;
                    best_close = b;
                    best_open = c;
                }
            }
        }
        if (best_close == kUnset) break; // local optimum
        cur.closed[best_close] = 1;
        cur.closed[best_open] = 0;
        cur_losses = best_losses;
        ++moves;
        if (budget.keep_trace) {
            const Branch& cb = net.branch(best_close);
            const Branch& ob = net.branch(best_open);
            report.trace.push_back(
                "close " + std::to_string(cb.from_bus) + "-" + std::to_string(cb.to_bus) +
                ", open " + std::to_string(ob.from_bus) + "-" + std::to_string(ob.to_bus) +
                " -> " + std::to_string(cur_losses) + " kW");
        }
    }
    report.best_cfg = std::move(cur);
    report.best_losses_kw = cur_losses;
    return finish_report(std::move(report), t0);
}

SearchReport multistart(const Network& net, int n_starts, std::uint64_t seed,
                        const SearchBudget& budget) {
    const auto t0 = Clock::now();
    if (n_starts < 1) throw SearchError("multistart needs n_starts >= 1");
    const ForcedSplit fixed = forced_split(net);

    std::mt19937_64 gen(seed);
    BestTracker best;
    SearchReport report;
    report.mode = SearchMode::multistart;

    const std::size_t n = net.bus_count();
    for (int s = 0; s < n_starts; ++s) {
        // random spanning forest: minimum forest under random integer weights
        std::vector<std::pair<std::uint64_t, std::size_t>> weighted;
        for (std::size_t b = 0; b < net.branch_count(); ++b) {
            const std::uint64_t w = gen(); // one draw per branch, every start
            if (net.branch(b).switchable) weighted.emplace_back(w, b);
        }
        std::sort(weighted.begin(), weighted.end());

        Dsu dsu(n);
        std::size_t root = kUnset;
        for (std::size_t i = 0; i < n; ++i)
            if (net.bus(i).is_substation) {
                if (root == kUnset) root = i;
                else dsu.unite(root, i);
            }
        Configuration cfg = all_open_configuration(net);
        std::size_t joined = 0;
        const std::size_t wanted = n - net.substation_count();
        for (std::size_t b : fixed.forced) {
            auto [u, v] = net.endpoints(b);
            if (!dsu.unite(u, v))
                throw SearchError("non-switchable closed branches contain a cycle");
            cfg.closed[b] = 1;
            ++joined;
        }
        for (auto [w, b] : weighted) {
            if (joined == wanted) break;
            auto [u, v] = net.endpoints(b);
            if (dsu.unite(u, v)) {
                cfg.closed[b] = 1;
                ++joined;
            }
        }
        if (joined != wanted)
            throw SearchError("network admits no spanning forest");

        SearchReport local = local_search_branch_exchange(net, cfg, budget);
        report.configurations_evaluated += local.configurations_evaluated;
        best.offer(local.best_losses_kw, local.best_cfg);
        if (budget.keep_trace)
            report.trace.push_back("start " + std::to_string(s + 1) + ": " +
                                   std::to_string(local.best_losses_kw) + " kW");
    }
    report.best_cfg = best.cfg;
    report.best_losses_kw = best.losses;
    return finish_report(std::move(report), t0);
}

} // namespace radkit
