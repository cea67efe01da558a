#include "radkit/powerflow.hpp"

#include <algorithm>
#include <cmath>

namespace radkit {

std::string to_string(Violation::Kind kind) {
    switch (kind) {
    case Violation::Kind::undervoltage: return "undervoltage";
    case Violation::Kind::overvoltage: return "overvoltage";
    case Violation::Kind::overcurrent: return "overcurrent";
    }
    return "?";
}

namespace {

constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
constexpr double kCollapseVsqr = 1e-4;

/// Rooted forest of the closed branches: bus visit order (roots first) plus
/// parent pointers. Roots are the substations.
struct Forest {
    std::vector<std::size_t> order;
    std::vector<std::size_t> parent_bus;
    std::vector<std::size_t> parent_branch;
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
    std::vector<char> visited(n, 0);
    f.order.reserve(n);
    std::size_t head = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (net.bus(i).is_substation) {
            visited[i] = 1;
            f.order.push_back(i);
        }
    while (head < f.order.size()) {
        std::size_t u = f.order[head++];
        for (auto [v, b] : adj[u])
            if (!visited[v]) {
                visited[v] = 1;
                f.parent_bus[v] = u;
                f.parent_branch[v] = b;
                f.order.push_back(v);
            }
    }
    return f;
}

} // namespace

PowerFlowResult solve_distflow(const Network& net, const Configuration& cfg,
                               const DistFlowOptions& opts) {
    if (!net.per_unit())
        throw PowerFlowError("solve_distflow needs a per-unit network");
    if (!is_radial(net, cfg))
        throw PowerFlowError("configuration is not radial");

    const std::size_t n = net.bus_count();
    const Forest forest = build_forest(net, cfg);

    PowerFlowResult res;
    res.v_sqr.assign(n, 1.0);
    res.p_flow.assign(net.branch_count(), 0.0);
    res.q_flow.assign(net.branch_count(), 0.0);
    res.i_sqr.assign(net.branch_count(), 0.0);

    // tree-oriented receiving-end flow through the parent branch of each bus
    std::vector<double> p_acc(n), q_acc(n);

    int iter = 0;
    double delta = 0.0;
    for (iter = 1; iter <= opts.max_iter; ++iter) {
        // backward: accumulate subtree demand plus branch losses (previous
        // iterate i_sqr) from the leaves toward the roots
        for (std::size_t i = 0; i < n; ++i) {
            p_acc[i] = net.bus(i).p_demand;
            q_acc[i] = net.bus(i).q_demand;
        }
        for (std::size_t k = forest.order.size(); k-- > 0;) {
            std::size_t u = forest.order[k];
            std::size_t b = forest.parent_branch[u];
            if (b == kUnset) continue;
            const Branch& br = net.branch(b);
            res.p_flow[b] = p_acc[u];
            res.q_flow[b] = q_acc[u];
            std::size_t p = forest.parent_bus[u];
            p_acc[p] += res.p_flow[b] + br.r * res.i_sqr[b];
            q_acc[p] += res.q_flow[b] + br.x * res.i_sqr[b];
        }
        // forward: voltage drop toward the leaves, then the current update
        delta = 0.0;
        for (std::size_t u : forest.order) {
            std::size_t b = forest.parent_branch[u];
            if (b == kUnset) continue;
            const Branch& br = net.branch(b);
            const double z2 = br.r * br.r + br.x * br.x;
            const double v_new = res.v_sqr[forest.parent_bus[u]] -
                                 2.0 * (br.r * res.p_flow[b] + br.x * res.q_flow[b]) -
                                 z2 * res.i_sqr[b];
            delta = std::max(delta, std::abs(v_new - res.v_sqr[u]));
            res.v_sqr[u] = v_new;
            if (res.v_sqr[u] < kCollapseVsqr)
                throw PowerFlowError("voltage collapse at bus " +
                                     std::to_string(net.bus(u).id));
            res.i_sqr[b] = (res.p_flow[b] * res.p_flow[b] +
                            res.q_flow[b] * res.q_flow[b]) /
                           res.v_sqr[u];
        }
        res.delta_history.push_back(delta);
        if (delta <= opts.tol) break;
    }
    if (delta > opts.tol)
        throw PowerFlowError("no convergence in " + std::to_string(opts.max_iter) +
                             " iterations (residual " + std::to_string(delta) + ")");
    res.converged = true;
    res.iterations = static_cast<int>(res.delta_history.size());

    // Express flows in the dataset orientation, measured at the dataset 'to'
    // bus. When the tree feeds against the orientation, the 'to' bus is the
    // physical sending end, so the measured flow picks up the branch loss:
    // P[to] = -(P_recv + R*Isqr). This keeps the drop equation
    // v_from^2 - 2(R P + X Q) - Z^2 Isqr = v_to^2 and the cone
    // v_to^2 * Isqr = P^2 + Q^2 exact in both directions.
    for (std::size_t u : forest.order) {
        std::size_t b = forest.parent_branch[u];
        if (b == kUnset) continue;
        auto [from, to] = net.endpoints(b);
        if (to != u) {
            const Branch& br = net.branch(b);
            res.p_flow[b] = -(res.p_flow[b] + br.r * res.i_sqr[b]);
            res.q_flow[b] = -(res.q_flow[b] + br.x * res.i_sqr[b]);
            res.i_sqr[b] = (res.p_flow[b] * res.p_flow[b] +
                            res.q_flow[b] * res.q_flow[b]) /
                           res.v_sqr[to];
        }
    }

    double losses_pu = 0.0;
    for (std::size_t b = 0; b < net.branch_count(); ++b)
        if (cfg.closed[b]) losses_pu += net.branch(b).r * res.i_sqr[b];
    res.losses_kw = losses_pu * net.base_mva() * 1000.0;

    // residuals of the balance and drop equations at the final point,
    // uniformly in the dataset orientation
    double resid = 0.0;
    {
        std::vector<double> p_bal(n), q_bal(n);
        for (std::size_t i = 0; i < n; ++i) {
            p_bal[i] = -net.bus(i).p_demand;
            q_bal[i] = -net.bus(i).q_demand;
        }
        for (std::size_t b = 0; b < net.branch_count(); ++b) {
            if (!cfg.closed[b]) continue;
            const Branch& br = net.branch(b);
            auto [from, to] = net.endpoints(b);
            p_bal[to] += res.p_flow[b];
            q_bal[to] += res.q_flow[b];
            p_bal[from] -= res.p_flow[b] + br.r * res.i_sqr[b];
            q_bal[from] -= res.q_flow[b] + br.x * res.i_sqr[b];
            const double z2 = br.r * br.r + br.x * br.x;
            resid = std::max(resid, std::abs(res.v_sqr[from] -
                                             2.0 * (br.r * res.p_flow[b] +
                                                    br.x * res.q_flow[b]) -
                                             z2 * res.i_sqr[b] - res.v_sqr[to]));
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (net.bus(i).is_substation) continue; // injection absorbs the rest
            resid = std::max(resid, std::abs(p_bal[i]));
            resid = std::max(resid, std::abs(q_bal[i]));
        }
    }
    res.max_residual = resid;
    res.violations = check_limits(net, res);
    return res;
}

double evaluate_losses(const Network& net, const Configuration& cfg,
                       bool hard_limits, const DistFlowOptions& opts) {
    if (cfg.closed.size() != net.branch_count()) return kInfeasibleLosses;
    if (!is_radial(net, cfg)) return kInfeasibleLosses;
    try {
        PowerFlowResult res = solve_distflow(net, cfg, opts);
        if (hard_limits && !res.violations.empty()) return kInfeasibleLosses;
        return res.losses_kw;
    } catch (const PowerFlowError&) {
        return kInfeasibleLosses;
    }
}

std::vector<Violation> check_limits(const Network& net,
                                    const PowerFlowResult& result) {
    std::vector<Violation> out;
    for (std::size_t i = 0; i < net.bus_count(); ++i) {
        const Bus& bus = net.bus(i);
        const double lo = bus.v_min * bus.v_min;
        const double hi = bus.v_max * bus.v_max;
        if (result.v_sqr[i] < lo - 1e-12)
            out.push_back({Violation::Kind::undervoltage, i, lo - result.v_sqr[i]});
        else if (result.v_sqr[i] > hi + 1e-12)
            out.push_back({Violation::Kind::overvoltage, i, result.v_sqr[i] - hi});
    }
    for (std::size_t b = 0; b < net.branch_count(); ++b) {
        const double cap = net.imax_pu(b) * net.imax_pu(b);
        if (result.i_sqr[b] > cap + 1e-12)
            out.push_back({Violation::Kind::overcurrent, b, result.i_sqr[b] - cap});
    }
    return out;
}

} // namespace radkit
