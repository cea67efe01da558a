#include "radkit/formulation.hpp"

#include <algorithm>
#include <cmath>

namespace radkit {

std::string to_string(FormulationKind kind) {
    switch (kind) {
    case FormulationKind::base: return "base";
    case FormulationKind::pc: return "pc";
    case FormulationKind::st: return "st";
    case FormulationKind::scf: return "scf";
    case FormulationKind::scf_st: return "scf+st";
    case FormulationKind::mcf: return "mcf";
    case FormulationKind::mcf_st: return "mcf+st";
    case FormulationKind::mcf_scf: return "mcf+scf";
    }
    return "?";
}

std::optional<FormulationKind> parse_formulation(std::string_view text) {
    for (FormulationKind k : all_formulations())
        if (text == to_string(k)) return k;
    return std::nullopt;
}

std::vector<FormulationKind> all_formulations() {
    return {FormulationKind::base,   FormulationKind::pc,
            FormulationKind::st,     FormulationKind::scf,
            FormulationKind::scf_st, FormulationKind::mcf,
            FormulationKind::mcf_st, FormulationKind::mcf_scf};
}

bool uses_directed_arcs(FormulationKind kind) {
    switch (kind) {
    case FormulationKind::base:
    case FormulationKind::scf:
        return false;
    default:
        return true; // parent-child, spanning-tree rows, or Eq.(22) caps
    }
}

bool replaces_cardinality(FormulationKind kind) {
    return kind == FormulationKind::st || kind == FormulationKind::scf_st ||
           kind == FormulationKind::mcf_st;
}

namespace {

bool has_scf(FormulationKind kind) {
    return kind == FormulationKind::scf || kind == FormulationKind::scf_st ||
           kind == FormulationKind::mcf_scf;
}

bool has_mcf(FormulationKind kind) {
    return kind == FormulationKind::mcf || kind == FormulationKind::mcf_st ||
           kind == FormulationKind::mcf_scf;
}

bool has_st_rows(FormulationKind kind) { return replaces_cardinality(kind); }

std::uint64_t fingerprint(const Network& net) {
    std::uint64_t h = 1469598103934665603ull; // FNV-1a
    auto mix = [&h](std::uint64_t v) {
        h ^= v;
        h *= 1099511628211ull;
    };
    mix(net.bus_count());
    mix(net.branch_count());
    for (const Bus& b : net.buses()) mix(static_cast<std::uint64_t>(b.id));
    for (std::size_t b = 0; b < net.branch_count(); ++b) {
        auto [u, v] = net.endpoints(b);
        mix(u * 131071 + v);
    }
    return h;
}

std::string bus_pair(const Network& net, std::size_t b) {
    const Branch& br = net.branch(b);
    return std::to_string(br.from_bus) + "," + std::to_string(br.to_bus);
}

std::string arc_name(const Network& net, std::size_t b, bool forward) {
    const Branch& br = net.branch(b);
    int a = forward ? br.from_bus : br.to_bus;
    int c = forward ? br.to_bus : br.from_bus;
    return std::to_string(a) + "->" + std::to_string(c);
}

/// Accumulates one sparse row, combining repeated variable references.
class RowBuilder {
public:
    void add(std::int32_t var, double coeff) {
        if (coeff == 0.0) return;
        for (auto& [v, c] : coeffs_)
            if (v == var) {
                c += coeff;
                return;
            }
        coeffs_.emplace_back(var, coeff);
    }
    LinearRow done(std::string name, Sense sense, double rhs) {
        // entries can cancel (e.g. a branch joining two substations)
        std::erase_if(coeffs_, [](const auto& e) { return e.second == 0.0; });
        LinearRow row{std::move(name), std::move(coeffs_), sense, rhs};
        coeffs_.clear();
        return row;
    }

private:
    std::vector<std::pair<std::int32_t, double>> coeffs_;
};

struct CoreLayout {
    std::int32_t p0, q0, isqr0, dv0, vsqr0, y0; // first index of each block
    std::vector<std::int32_t> ps;               // per bus, -1 for non-substations
    std::vector<std::int32_t> qs;
};

CoreLayout core_layout(const Network& net, const ModelIR& model) {
    CoreLayout lay;
    const auto e = static_cast<std::int32_t>(net.branch_count());
    lay.p0 = 0;
    lay.q0 = e;
    lay.isqr0 = 2 * e;
    lay.dv0 = 3 * e;
    lay.vsqr0 = 4 * e;
    lay.ps.assign(net.bus_count(), -1);
    lay.qs.assign(net.bus_count(), -1);
    std::int32_t next = lay.vsqr0 + static_cast<std::int32_t>(net.bus_count());
    for (std::size_t i = 0; i < net.bus_count(); ++i)
        if (net.bus(i).is_substation) lay.ps[i] = next++;
    for (std::size_t i = 0; i < net.bus_count(); ++i)
        if (net.bus(i).is_substation) lay.qs[i] = next++;
    lay.y0 = next;
    (void)model;
    return lay;
}

double flow_big_m(const Network& net) {
    double total = 0.0;
    for (const Bus& b : net.buses()) total += b.p_demand + b.q_demand;
    return std::max(1.0, 2.0 * total);
}

double voltage_slack_bound(const Network& net) {
    double bv = 0.0;
    for (std::size_t b = 0; b < net.branch_count(); ++b) {
        auto [u, v] = net.endpoints(b);
        const Bus& bu = net.bus(u);
        const Bus& bvs = net.bus(v);
        const double hi = std::max(bu.v_max * bu.v_max, bvs.v_max * bvs.v_max);
        const double lo = std::min(bu.v_min * bu.v_min, bvs.v_min * bvs.v_min);
        bv = std::max(bv, hi - lo);
    }
    return bv;
}

} // namespace

std::int32_t ModelIR::variable_index(std::string_view name) const {
    for (std::size_t i = 0; i < variables.size(); ++i)
        if (variables[i].name == name) return static_cast<std::int32_t>(i);
    return -1;
}

ModelIR build_core_model(const Network& net) {
    if (!net.per_unit())
        throw ModelError("core model needs a per-unit network");
    {
        auto diags = validate(net);
        for (const Diagnostic& d : diags)
            if (d.severity == Diagnostic::Severity::error)
                throw ModelError("invalid network: " + d.location + ": " + d.message);
    }

    const std::size_t nb = net.bus_count();
    const std::size_t ne = net.branch_count();
    const double m_flow = flow_big_m(net);
    const double bv = voltage_slack_bound(net);

    ModelIR model;
    model.name = net.name();
    model.n_buses = nb;
    model.n_branches = ne;
    model.net_fingerprint = fingerprint(net);

    auto add_var = [&model](std::string name, VarKind kind, double lb, double ub) {
        model.variables.push_back({std::move(name), kind, lb, ub});
        return static_cast<std::int32_t>(model.variables.size() - 1);
    };

    for (std::size_t b = 0; b < ne; ++b)
        add_var("P[" + bus_pair(net, b) + "]", VarKind::continuous, -m_flow, m_flow);
    for (std::size_t b = 0; b < ne; ++b)
        add_var("Q[" + bus_pair(net, b) + "]", VarKind::continuous, -m_flow, m_flow);
    for (std::size_t b = 0; b < ne; ++b) {
        const double cap = net.imax_pu(b) * net.imax_pu(b);
        add_var("Isqr[" + bus_pair(net, b) + "]", VarKind::continuous, 0.0, cap);
    }
    for (std::size_t b = 0; b < ne; ++b)
        add_var("dV[" + bus_pair(net, b) + "]", VarKind::continuous, -bv, bv);
    for (std::size_t i = 0; i < nb; ++i) {
        const Bus& bus = net.bus(i);
        if (bus.is_substation)
            add_var("Vsqr[" + std::to_string(bus.id) + "]", VarKind::continuous, 1.0, 1.0);
        else
            add_var("Vsqr[" + std::to_string(bus.id) + "]", VarKind::continuous,
                    bus.v_min * bus.v_min, bus.v_max * bus.v_max);
    }
    for (std::size_t i = 0; i < nb; ++i)
        if (net.bus(i).is_substation)
            add_var("Ps[" + std::to_string(net.bus(i).id) + "]", VarKind::continuous,
                    -m_flow, m_flow);
    for (std::size_t i = 0; i < nb; ++i)
        if (net.bus(i).is_substation)
            add_var("Qs[" + std::to_string(net.bus(i).id) + "]", VarKind::continuous,
                    -m_flow, m_flow);
    for (std::size_t b = 0; b < ne; ++b) {
        const Branch& br = net.branch(b);
        const double fix = br.initially_closed ? 1.0 : 0.0;
        add_var("y[" + bus_pair(net, b) + "]", VarKind::binary,
                br.switchable ? 0.0 : fix, br.switchable ? 1.0 : fix);
    }

    const CoreLayout lay = core_layout(net, model);

    for (std::size_t b = 0; b < ne; ++b) {
        const double r = net.branch(b).r;
        if (r != 0.0)
            model.objective.emplace_back(lay.isqr0 + static_cast<std::int32_t>(b), r);
    }

    // per-bus incidence in branch order: (branch, branch enters the bus)
    std::vector<std::vector<std::pair<std::size_t, bool>>> incident(nb);
    for (std::size_t b = 0; b < ne; ++b) {
        auto [from, to] = net.endpoints(b);
        incident[to].emplace_back(b, true);
        incident[from].emplace_back(b, false);
    }

    RowBuilder row;
    // active/reactive power balance per bus
    for (std::size_t i = 0; i < nb; ++i) {
        for (auto [b, entering] : incident[i]) {
            if (entering) row.add(lay.p0 + static_cast<std::int32_t>(b), 1.0);
            else {
                row.add(lay.p0 + static_cast<std::int32_t>(b), -1.0);
                row.add(lay.isqr0 + static_cast<std::int32_t>(b), -net.branch(b).r);
            }
        }
        if (lay.ps[i] >= 0) row.add(lay.ps[i], 1.0);
        model.linear_constraints.push_back(row.done(
            "pbal[" + std::to_string(net.bus(i).id) + "]", Sense::eq, net.bus(i).p_demand));
    }
    for (std::size_t i = 0; i < nb; ++i) {
        for (auto [b, entering] : incident[i]) {
            if (entering) row.add(lay.q0 + static_cast<std::int32_t>(b), 1.0);
            else {
                row.add(lay.q0 + static_cast<std::int32_t>(b), -1.0);
                row.add(lay.isqr0 + static_cast<std::int32_t>(b), -net.branch(b).x);
            }
        }
        if (lay.qs[i] >= 0) row.add(lay.qs[i], 1.0);
        model.linear_constraints.push_back(row.done(
            "qbal[" + std::to_string(net.bus(i).id) + "]", Sense::eq, net.bus(i).q_demand));
    }
    // voltage drop with switch-gated slack
    for (std::size_t b = 0; b < ne; ++b) {
        const Branch& br = net.branch(b);
        auto [from, to] = net.endpoints(b);
        const double z2 = br.r * br.r + br.x * br.x;
        const auto bi = static_cast<std::int32_t>(b);
        row.add(lay.vsqr0 + static_cast<std::int32_t>(from), 1.0);
        row.add(lay.vsqr0 + static_cast<std::int32_t>(to), -1.0);
        row.add(lay.p0 + bi, -2.0 * br.r);
        row.add(lay.q0 + bi, -2.0 * br.x);
        row.add(lay.isqr0 + bi, -z2);
        row.add(lay.dv0 + bi, -1.0);
        model.linear_constraints.push_back(
            row.done("vdrop[" + bus_pair(net, b) + "]", Sense::eq, 0.0));
    }
    for (std::size_t b = 0; b < ne; ++b) {
        const auto bi = static_cast<std::int32_t>(b);
        row.add(lay.dv0 + bi, 1.0);
        row.add(lay.y0 + bi, bv);
        model.linear_constraints.push_back(
            row.done("vslack_hi[" + bus_pair(net, b) + "]", Sense::le, bv));
        row.add(lay.dv0 + bi, -1.0);
        row.add(lay.y0 + bi, bv);
        model.linear_constraints.push_back(
            row.done("vslack_lo[" + bus_pair(net, b) + "]", Sense::le, bv));
    }
    // ampacity gated by the switch state
    for (std::size_t b = 0; b < ne; ++b) {
        const auto bi = static_cast<std::int32_t>(b);
        const double cap = net.imax_pu(b) * net.imax_pu(b);
        row.add(lay.isqr0 + bi, 1.0);
        row.add(lay.y0 + bi, -cap);
        model.linear_constraints.push_back(
            row.done("amp[" + bus_pair(net, b) + "]", Sense::le, 0.0));
    }
    // current consistency cones at the receiving bus
    for (std::size_t b = 0; b < ne; ++b) {
        auto [from, to] = net.endpoints(b);
        (void)from;
        const auto bi = static_cast<std::int32_t>(b);
        model.cone_constraints.push_back(
            {"cone[" + bus_pair(net, b) + "]",
             lay.vsqr0 + static_cast<std::int32_t>(to), lay.isqr0 + bi,
             lay.p0 + bi, lay.q0 + bi});
    }
    return model;
}

std::vector<DirectedArc> directed_arc_map(const Network& net, FormulationKind kind) {
    std::vector<DirectedArc> arcs;
    if (!uses_directed_arcs(kind)) return arcs;
    arcs.reserve(2 * net.branch_count());
    for (std::size_t b = 0; b < net.branch_count(); ++b) {
        arcs.push_back({b, true, "yD[" + arc_name(net, b, true) + "]"});
        arcs.push_back({b, false, "yD[" + arc_name(net, b, false) + "]"});
    }
    return arcs;
}

ModelIR add_radiality(ModelIR model, FormulationKind kind, const Network& net) {
    if (model.n_buses != net.bus_count() || model.n_branches != net.branch_count() ||
        model.net_fingerprint != fingerprint(net))
        throw ModelError("model was not built from this network");
    model.name = net.name() + "_" + to_string(kind);

    const std::size_t nb = net.bus_count();
    const std::size_t ne = net.branch_count();
    const CoreLayout lay = core_layout(net, model);
    const BusClasses classes = classify_buses(net);
    const double m_scf = static_cast<double>(nb - net.substation_count());

    std::vector<char> is_sub(nb, 0), is_demand(nb, 0);
    for (std::size_t i : classes.substations) is_sub[i] = 1;
    for (std::size_t i : classes.demand) is_demand[i] = 1;

    auto add_var = [&model](std::string name, VarKind vk, double lb, double ub) {
        model.variables.push_back({std::move(name), vk, lb, ub});
        return static_cast<std::int32_t>(model.variables.size() - 1);
    };
    RowBuilder row;

    // per-bus incidence in branch order: (branch, branch enters the bus)
    std::vector<std::vector<std::pair<std::size_t, bool>>> incident(nb);
    for (std::size_t b = 0; b < ne; ++b) {
        auto [from, to] = net.endpoints(b);
        incident[to].emplace_back(b, true);
        incident[from].emplace_back(b, false);
    }

    // directed binaries with one linking row per branch
    std::vector<std::int32_t> arc_fwd(ne, -1), arc_rev(ne, -1);
    if (uses_directed_arcs(kind)) {
        for (std::size_t b = 0; b < ne; ++b) {
            arc_fwd[b] = add_var("yD[" + arc_name(net, b, true) + "]", VarKind::binary, 0, 1);
            arc_rev[b] = add_var("yD[" + arc_name(net, b, false) + "]", VarKind::binary, 0, 1);
        }
        for (std::size_t b = 0; b < ne; ++b) {
            row.add(arc_fwd[b], 1.0);
            row.add(arc_rev[b], 1.0);
            row.add(lay.y0 + static_cast<std::int32_t>(b), -1.0);
            model.linear_constraints.push_back(
                row.done("link[" + bus_pair(net, b) + "]", Sense::eq, 0.0));
        }
    }

    // single-commodity fictitious flow variables
    std::vector<std::int32_t> f_var(ne, -1);
    if (has_scf(kind))
        for (std::size_t b = 0; b < ne; ++b)
            f_var[b] = add_var("f[" + bus_pair(net, b) + "]", VarKind::continuous,
                               -m_scf, m_scf);

    // multi-commodity flows: one commodity per demand bus, two arcs per branch
    std::vector<std::vector<std::int32_t>> fk_fwd, fk_rev;
    if (has_mcf(kind)) {
        fk_fwd.assign(classes.demand.size(), std::vector<std::int32_t>(ne, -1));
        fk_rev.assign(classes.demand.size(), std::vector<std::int32_t>(ne, -1));
        for (std::size_t kc = 0; kc < classes.demand.size(); ++kc) {
            const std::string kid = std::to_string(net.bus(classes.demand[kc]).id);
            for (std::size_t b = 0; b < ne; ++b) {
                fk_fwd[kc][b] = add_var("fk[" + kid + "][" + arc_name(net, b, true) + "]",
                                        VarKind::continuous, 0, 1);
                fk_rev[kc][b] = add_var("fk[" + kid + "][" + arc_name(net, b, false) + "]",
                                        VarKind::continuous, 0, 1);
            }
        }
    }

    // cardinality row, except where the spanning-tree rows replace it
    if (!replaces_cardinality(kind)) {
        for (std::size_t b = 0; b < ne; ++b)
            row.add(lay.y0 + static_cast<std::int32_t>(b), 1.0);
        model.linear_constraints.push_back(
            row.done("card", Sense::le,
                     static_cast<double>(nb - net.substation_count())));
    }

    if (kind == FormulationKind::pc)
        for (std::size_t b = 0; b < ne; ++b) {
            row.add(arc_fwd[b], 1.0);
            row.add(arc_rev[b], 1.0);
            model.linear_constraints.push_back(
                row.done("pc[" + bus_pair(net, b) + "]", Sense::le, 1.0));
        }

    if (has_st_rows(kind)) {
        // one parent per demand bus, at most one per transfer bus, none for
        // substations
        for (std::size_t i = 0; i < nb; ++i) {
            for (auto [b, entering] : incident[i])
                row.add(entering ? arc_fwd[b] : arc_rev[b], 1.0);
            const std::string id = std::to_string(net.bus(i).id);
            if (is_sub[i])
                model.linear_constraints.push_back(row.done("st_par[" + id + "]", Sense::eq, 0.0));
            else if (is_demand[i])
                model.linear_constraints.push_back(row.done("st_par[" + id + "]", Sense::eq, 1.0));
            else
                model.linear_constraints.push_back(row.done("st_par[" + id + "]", Sense::le, 1.0));
        }
    }

    if (has_scf(kind)) {
        // fictitious unit-demand balance at non-substation buses
        for (std::size_t i = 0; i < nb; ++i) {
            if (is_sub[i]) continue;
            for (auto [b, entering] : incident[i])
                row.add(f_var[b], entering ? 1.0 : -1.0);
            model.linear_constraints.push_back(
                row.done("scf_bal[" + std::to_string(net.bus(i).id) + "]", Sense::eq,
                         is_demand[i] ? 1.0 : 0.0));
        }
        // switch gating; one-sided per direction when directed arcs exist
        for (std::size_t b = 0; b < ne; ++b) {
            const auto bi = static_cast<std::int32_t>(b);
            if (uses_directed_arcs(kind)) {
                row.add(f_var[b], 1.0);
                row.add(arc_fwd[b], -m_scf);
                model.linear_constraints.push_back(
                    row.done("scf_cap[" + arc_name(net, b, true) + "]", Sense::le, 0.0));
                row.add(f_var[b], -1.0);
                row.add(arc_rev[b], -m_scf);
                model.linear_constraints.push_back(
                    row.done("scf_cap[" + arc_name(net, b, false) + "]", Sense::le, 0.0));
            } else {
                row.add(f_var[b], 1.0);
                row.add(lay.y0 + bi, -m_scf);
                model.linear_constraints.push_back(
                    row.done("scf_cap_hi[" + bus_pair(net, b) + "]", Sense::le, 0.0));
                row.add(f_var[b], -1.0);
                row.add(lay.y0 + bi, -m_scf);
                model.linear_constraints.push_back(
                    row.done("scf_cap_lo[" + bus_pair(net, b) + "]", Sense::le, 0.0));
            }
        }
    }

    if (has_mcf(kind)) {
        for (std::size_t kc = 0; kc < classes.demand.size(); ++kc) {
            const std::size_t kbus = classes.demand[kc];
            const std::string kid = std::to_string(net.bus(kbus).id);
            // net commodity-k inflow at bus i: fwd arcs entering minus leaving
            auto net_inflow = [&](std::size_t i) {
                for (auto [b, entering] : incident[i]) {
                    row.add(fk_fwd[kc][b], entering ? 1.0 : -1.0);
                    row.add(fk_rev[kc][b], entering ? -1.0 : 1.0);
                }
            };
            // one unit of commodity k leaves the substations...
            for (std::size_t i : classes.substations) net_inflow(i);
            model.linear_constraints.push_back(
                row.done("mcf_src[" + kid + "]", Sense::eq, -1.0));
            // ...and is delivered at bus k
            net_inflow(kbus);
            model.linear_constraints.push_back(
                row.done("mcf_snk[" + kid + "]", Sense::eq, 1.0));
            // every other bus passes commodity k through
            for (std::size_t i = 0; i < nb; ++i) {
                if (is_sub[i] || i == kbus) continue;
                net_inflow(i);
                model.linear_constraints.push_back(
                    row.done("mcf_bal[" + kid + "][" + std::to_string(net.bus(i).id) + "]",
                             Sense::eq, 0.0));
            }
            // commodity k may only use switched-on arcs
            for (std::size_t b = 0; b < ne; ++b) {
                row.add(fk_fwd[kc][b], 1.0);
                row.add(arc_fwd[b], -1.0);
                model.linear_constraints.push_back(row.done(
                    "mcf_cap[" + kid + "][" + arc_name(net, b, true) + "]", Sense::le, 0.0));
                row.add(fk_rev[kc][b], 1.0);
                row.add(arc_rev[b], -1.0);
                model.linear_constraints.push_back(row.done(
                    "mcf_cap[" + kid + "][" + arc_name(net, b, false) + "]", Sense::le, 0.0));
            }
        }
    }

    return model;
}

ModelIR build_model(const Network& net, FormulationKind kind) {
    return add_radiality(build_core_model(net), kind, net);
}

ModelStats model_stats(const ModelIR& model) {
    ModelStats stats;
    for (const Variable& v : model.variables)
        (v.kind == VarKind::binary ? stats.n_binary : stats.n_continuous) += 1;
    stats.n_linear_constraints = model.linear_constraints.size();
    stats.n_cone_constraints = model.cone_constraints.size();
    for (const LinearRow& r : model.linear_constraints) stats.nonzeros += r.coeffs.size();
    return stats;
}

std::vector<Configuration> binary_feasible_set(const Network& net,
                                               FormulationKind kind) {
    const std::size_t ne = net.branch_count();
    if (ne > 16)
        throw ModelError("binary_feasible_set scans 2^|branches|; instance too large (" +
                         std::to_string(ne) + " > 16 branches)");
    const std::size_t nb = net.bus_count();
    const BusClasses classes = classify_buses(net);
    std::vector<char> is_sub(nb, 0), is_demand(nb, 0);
    for (std::size_t i : classes.substations) is_sub[i] = 1;
    for (std::size_t i : classes.demand) is_demand[i] = 1;
    const std::size_t forest_edges = nb - net.substation_count();

    std::vector<Configuration> feasible;
    std::vector<std::size_t> parent(nb);
    for (std::uint32_t mask = 0; mask < (1u << ne); ++mask) {
        Configuration cfg{std::vector<std::uint8_t>(ne, 0)};
        bool fixed_ok = true;
        for (std::size_t b = 0; b < ne; ++b) {
            cfg.closed[b] = (mask >> b) & 1u;
            if (!net.branch(b).switchable &&
                cfg.closed[b] != (net.branch(b).initially_closed ? 1 : 0))
                fixed_ok = false;
        }
        if (!fixed_ok) continue;

        // component statistics under the closed branches
        for (std::size_t i = 0; i < nb; ++i) parent[i] = i;
        auto find = [&parent](std::size_t a) {
            while (parent[a] != a) {
                parent[a] = parent[parent[a]];
                a = parent[a];
            }
            return a;
        };
        std::size_t closed_count = 0;
        for (std::size_t b = 0; b < ne; ++b)
            if (cfg.closed[b]) {
                ++closed_count;
                auto [u, v] = net.endpoints(b);
                std::size_t ru = find(u), rv = find(v);
                if (ru != rv) parent[ru] = rv;
            }
        std::vector<std::size_t> comp_buses(nb, 0), comp_edges(nb, 0);
        std::vector<std::size_t> comp_subs(nb, 0), comp_demand(nb, 0);
        for (std::size_t i = 0; i < nb; ++i) {
            std::size_t r = find(i);
            comp_buses[r] += 1;
            comp_subs[r] += is_sub[i];
            comp_demand[r] += is_demand[i];
        }
        for (std::size_t b = 0; b < ne; ++b)
            if (cfg.closed[b]) comp_edges[find(net.endpoints(b).first)] += 1;

        bool ok = true;
        if (has_st_rows(kind)) {
            // parent orientation must exist and demand buses must be fed
            for (std::size_t i = 0; i < nb && ok; ++i) {
                if (find(i) != i) continue;
                if (comp_subs[i] >= 2) ok = false;
                else if (comp_subs[i] == 1) ok = comp_edges[i] == comp_buses[i] - 1;
                else ok = comp_edges[i] <= comp_buses[i] && comp_demand[i] == 0;
            }
        } else {
            ok = closed_count <= forest_edges;
            if (ok && (has_scf(kind) || has_mcf(kind))) {
                // fictitious demands are only routable from a substation
                for (std::size_t i = 0; i < nb && ok; ++i)
                    if (is_demand[i] && comp_subs[find(i)] == 0) ok = false;
            }
        }
        if (ok) feasible.push_back(std::move(cfg));
    }
    return feasible;
}

} // namespace radkit
