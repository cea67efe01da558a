#include "radkit/topology.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

namespace radkit {

namespace {

/// Plain union-find, path halving + union by size.
class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }
    std::size_t find(std::size_t a) {
        while (parent_[a] != a) {
            parent_[a] = parent_[parent_[a]];
            a = parent_[a];
        }
        return a;
    }
    /// false if a and b were already joined (the edge closes a cycle).
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
        return true;
    }

private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> size_;
};

void require_length(const Network& net, const Configuration& cfg) {
    if (cfg.closed.size() != net.branch_count())
        throw std::invalid_argument(
            "configuration length " + std::to_string(cfg.closed.size()) +
            " does not match branch count " + std::to_string(net.branch_count()));
}

} // namespace

std::size_t Configuration::closed_count() const {
    return static_cast<std::size_t>(
        std::count(closed.begin(), closed.end(), std::uint8_t{1}));
}

std::vector<std::size_t> Configuration::closed_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < closed.size(); ++i)
        if (closed[i]) out.push_back(i);
    return out;
}

std::vector<std::size_t> Configuration::open_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < closed.size(); ++i)
        if (!closed[i]) out.push_back(i);
    return out;
}

bool Configuration::lex_less(const Configuration& other) const {
    return std::lexicographical_compare(closed.begin(), closed.end(),
                                        other.closed.begin(), other.closed.end());
}

Configuration all_closed_configuration(const Network& net) {
    return {std::vector<std::uint8_t>(net.branch_count(), 1)};
}

Configuration all_open_configuration(const Network& net) {
    return {std::vector<std::uint8_t>(net.branch_count(), 0)};
}

Configuration initial_configuration(const Network& net) {
    Configuration cfg = all_open_configuration(net);
    for (std::size_t b = 0; b < net.branch_count(); ++b)
        cfg.closed[b] = net.branch(b).initially_closed ? 1 : 0;
    return cfg;
}

Configuration configuration_from_closed(const Network& net,
                                        std::span<const std::size_t> closed) {
    Configuration cfg = all_open_configuration(net);
    for (std::size_t b : closed) {
        if (b >= net.branch_count())
            throw std::invalid_argument("branch index " + std::to_string(b) +
                                        " out of range");
        cfg.closed[b] = 1;
    }
    return cfg;
}

Configuration configuration_from_open(const Network& net,
                                      std::span<const std::size_t> open) {
    Configuration cfg = all_closed_configuration(net);
    for (std::size_t b : open) {
        if (b >= net.branch_count())
            throw std::invalid_argument("branch index " + std::to_string(b) +
                                        " out of range");
        cfg.closed[b] = 0;
    }
    return cfg;
}

std::vector<std::size_t> connected_components(const Network& net,
                                              const Configuration& cfg) {
    require_length(net, cfg);
    UnionFind uf(net.bus_count());
    for (std::size_t b = 0; b < net.branch_count(); ++b)
        if (cfg.closed[b]) {
            auto [u, v] = net.endpoints(b);
            uf.unite(u, v);
        }
    // label = smallest bus position in the component
    std::vector<std::size_t> label(net.bus_count());
    std::vector<std::size_t> smallest(net.bus_count(), net.bus_count());
    for (std::size_t i = 0; i < net.bus_count(); ++i) {
        std::size_t r = uf.find(i);
        smallest[r] = std::min(smallest[r], i);
    }
    for (std::size_t i = 0; i < net.bus_count(); ++i)
        label[i] = smallest[uf.find(i)];
    return label;
}

RadialityCheck check_radiality(const Network& net, const Configuration& cfg) {
    require_length(net, cfg);
    RadialityCheck check;
    check.closed_count_ok =
        cfg.closed_count() == net.bus_count() - net.substation_count();

    UnionFind uf(net.bus_count());
    check.acyclic = true;
    for (std::size_t b = 0; b < net.branch_count(); ++b)
        if (cfg.closed[b]) {
            auto [u, v] = net.endpoints(b);
            if (!uf.unite(u, v)) check.acyclic = false;
        }

    std::vector<int> subs_in_component(net.bus_count(), 0);
    for (std::size_t i = 0; i < net.bus_count(); ++i)
        if (net.bus(i).is_substation) ++subs_in_component[uf.find(i)];
    check.substations_ok = true;
    for (std::size_t i = 0; i < net.bus_count(); ++i)
        if (subs_in_component[uf.find(i)] != 1) check.substations_ok = false;
    return check;
}

bool is_radial(const Network& net, const Configuration& cfg) {
    return check_radiality(net, cfg).radial();
}

std::vector<std::vector<std::size_t>> fundamental_loops(const Network& net) {
    const std::size_t n = net.bus_count();
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(n);
    for (std::size_t b = 0; b < net.branch_count(); ++b) {
        auto [u, v] = net.endpoints(b);
        adj[u].emplace_back(v, b);
        adj[v].emplace_back(u, b);
    }

    // multi-source BFS from all substations: substations act as one root
    constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> parent_bus(n, kUnset);
    std::vector<std::size_t> parent_branch(n, kUnset);
    std::vector<char> visited(n, 0);
    std::vector<char> tree_branch(net.branch_count(), 0);
    std::queue<std::size_t> q;
    for (std::size_t i = 0; i < n; ++i)
        if (net.bus(i).is_substation) {
            visited[i] = 1;
            q.push(i);
        }
    while (!q.empty()) {
        std::size_t u = q.front();
        q.pop();
        for (auto [v, b] : adj[u])
            if (!visited[v]) {
                visited[v] = 1;
                parent_bus[v] = u;
                parent_branch[v] = b;
                tree_branch[b] = 1;
                q.push(v);
            }
    }
    for (std::size_t i = 0; i < n; ++i)
        if (!visited[i])
            throw NetworkError("all-closed graph leaves bus " +
                               std::to_string(net.bus(i).id) +
                               " disconnected from every substation");

    auto path_to_root = [&](std::size_t u) {
        std::vector<std::size_t> path;
        while (parent_branch[u] != kUnset) {
            path.push_back(parent_branch[u]);
            u = parent_bus[u];
        }
        return path;
    };

    std::vector<std::vector<std::size_t>> loops;
    for (std::size_t b = 0; b < net.branch_count(); ++b) {
        if (tree_branch[b]) continue;
        auto [u, v] = net.endpoints(b);
        std::vector<std::size_t> pu = path_to_root(u);
        std::vector<std::size_t> pv = path_to_root(v);
        // drop the shared tail above the common ancestor
        while (!pu.empty() && !pv.empty() && pu.back() == pv.back()) {
            pu.pop_back();
            pv.pop_back();
        }
        std::vector<std::size_t> cycle;
        cycle.push_back(b);
        cycle.insert(cycle.end(), pu.begin(), pu.end());
        cycle.insert(cycle.end(), pv.rbegin(), pv.rend());
        loops.push_back(std::move(cycle));
    }
    return loops;
}

TreeCount count_spanning_trees(const Network& net,
                               std::span<const std::size_t> forced_closed,
                               std::span<const std::size_t> excluded) {
    const std::size_t n = net.bus_count();
    // contract substations into one root, then contract forced branches
    UnionFind uf(n);
    std::size_t root = n;
    for (std::size_t i = 0; i < n; ++i)
        if (net.bus(i).is_substation) {
            if (root == n) root = i;
            else uf.unite(root, i);
        }
    if (root == n) throw NetworkError("no substation");

    std::vector<char> skip(net.branch_count(), 0);
    for (std::size_t b : excluded) skip[b] = 1;
    for (std::size_t b : forced_closed) {
        if (skip[b]) return 0; // forced and excluded at once
        auto [u, v] = net.endpoints(b);
        if (!uf.unite(u, v)) return 0; // forced branches close a cycle
        skip[b] = 1;
    }

    // remaining vertices = contraction classes; root class is deleted
    std::vector<std::size_t> cls(n, 0);
    std::vector<std::size_t> reps;
    const std::size_t root_cls = uf.find(root);
    for (std::size_t i = 0; i < n; ++i)
        if (uf.find(i) == i && i != root_cls) {
            cls[i] = reps.size();
            reps.push_back(i);
        }
    const std::size_t m = reps.size();
    if (m == 0) return 1; // everything contracted: the forced forest itself

    // reduced Laplacian with parallel-edge multiplicities
    std::vector<std::vector<TreeCount>> lap(m, std::vector<TreeCount>(m, 0));
    for (std::size_t b = 0; b < net.branch_count(); ++b) {
        if (skip[b]) continue;
        auto [u, v] = net.endpoints(b);
        std::size_t ru = uf.find(u), rv = uf.find(v);
        if (ru == rv) continue; // self-loop after contraction
        if (ru != root_cls) lap[cls[ru]][cls[ru]] += 1;
        if (rv != root_cls) lap[cls[rv]][cls[rv]] += 1;
        if (ru != root_cls && rv != root_cls) {
            lap[cls[ru]][cls[rv]] -= 1;
            lap[cls[rv]][cls[ru]] -= 1;
        }
    }

    // Bareiss fraction-free elimination: determinant lands in lap[m-1][m-1]
    TreeCount prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < m; ++k) {
        if (lap[k][k] == 0) {
            std::size_t piv = k + 1;
            while (piv < m && lap[piv][k] == 0) ++piv;
            if (piv == m) return 0; // singular: disconnected graph
            std::swap(lap[k], lap[piv]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < m; ++i) {
            for (std::size_t j = k + 1; j < m; ++j) {
                lap[i][j] = (lap[i][j] * lap[k][k] - lap[i][k] * lap[k][j]) / prev;
            }
            lap[i][k] = 0;
        }
        prev = lap[k][k];
    }
    TreeCount det = lap[m - 1][m - 1];
    return sign == 1 ? det : -det;
}

} // namespace radkit
