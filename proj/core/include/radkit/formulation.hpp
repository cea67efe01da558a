#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "radkit/network.hpp"
#include "radkit/topology.hpp"

namespace radkit {

/// The eight radiality-constraint families. Hybrids that contain the
/// spanning-tree rows replace the cardinality row; the others keep it.
enum class FormulationKind {
    base,    // cardinality only
    pc,      // cardinality + parent-child (one direction per branch)
    st,      // spanning-tree parent rows (replaces cardinality)
    scf,     // cardinality + single-commodity flow
    scf_st,  // spanning-tree + single-commodity flow
    mcf,     // cardinality + multi-commodity flow
    mcf_st,  // spanning-tree + multi-commodity flow
    mcf_scf, // cardinality + both flow families
};

std::string to_string(FormulationKind kind);
/// Accepts "base|pc|st|scf|scf+st|mcf|mcf+st|mcf+scf".
std::optional<FormulationKind> parse_formulation(std::string_view text);
std::vector<FormulationKind> all_formulations();

/// Whether the family introduces the two directed binaries per branch.
bool uses_directed_arcs(FormulationKind kind);
/// Whether the spanning-tree rows stand in for the cardinality row.
bool replaces_cardinality(FormulationKind kind);

enum class VarKind { continuous, binary };

struct Variable {
    std::string name;
    VarKind kind = VarKind::continuous;
    double lb = 0.0;
    double ub = 0.0;
};

enum class Sense { le, eq, ge };

/// Sparse row: sum(coeff * var) sense rhs. Variable references are indices
/// into ModelIR::variables.
struct LinearRow {
    std::string name;
    std::vector<std::pair<std::int32_t, double>> coeffs;
    Sense sense = Sense::le;
    double rhs = 0.0;
};

/// Rotated second-order cone u*v >= p^2 + q^2 (all variable references).
struct ConeRow {
    std::string name;
    std::int32_t u = -1;
    std::int32_t v = -1;
    std::int32_t p = -1;
    std::int32_t q = -1;
};

/// Solver-agnostic model: minimize objective subject to linear rows, cone
/// rows and variable bounds. Construction order is the emission order.
struct ModelIR {
    std::string name;
    std::vector<Variable> variables;
    std::vector<LinearRow> linear_constraints;
    std::vector<ConeRow> cone_constraints;
    std::vector<std::pair<std::int32_t, double>> objective;

    // identity of the network the model was built from
    std::size_t n_buses = 0;
    std::size_t n_branches = 0;
    std::uint64_t net_fingerprint = 0;

    /// Index of a variable by exact name, or -1.
    std::int32_t variable_index(std::string_view name) const;
};

struct ModelStats {
    std::size_t n_binary = 0;
    std::size_t n_continuous = 0;
    std::size_t n_linear_constraints = 0;
    std::size_t n_cone_constraints = 0;
    std::size_t nonzeros = 0; // coefficient entries across linear rows

    bool operator==(const ModelStats&) const = default;
};

struct ModelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// DistFlow core: objective sum(R·Isqr); power balance per bus; voltage-drop
/// rows with slack deactivated by the switch binaries; rotated cones tying
/// Isqr to the receiving-end flows; ampacity gating Isqr <= Iub^2·y.
/// Requires a validated per-unit network; throws ModelError otherwise (in
/// particular for r = x = 0 branches, which make the drop row degenerate).
ModelIR build_core_model(const Network& net);

/// Appends the radiality family on top of a core model built from the same
/// network (fingerprint-checked). Emits directed binaries with one linking
/// row per branch for the families that need them.
ModelIR add_radiality(ModelIR model, FormulationKind kind, const Network& net);

/// Convenience: build_core_model + add_radiality.
ModelIR build_model(const Network& net, FormulationKind kind);

/// Directed-arc catalogue used by a family: for each branch, the two arc
/// variable names in dataset order (forward = from->to). Empty when the
/// family works on the undirected binaries alone.
struct DirectedArc {
    std::size_t branch = 0;
    bool forward = true;
    std::string name;
};
std::vector<DirectedArc> directed_arc_map(const Network& net,
                                          FormulationKind kind);

ModelStats model_stats(const ModelIR& model);

/// Exhaustively scans all 2^|Ω| switch vectors (|Ω| <= 16) and keeps those
/// for which the family's own binary/flow subsystem — taken alone, without
/// the electrical constraints — admits a feasible completion. Feasibility is
/// decided combinatorially (component counts, substation reachability of
/// demand buses, parent-orientation existence), matching the families'
/// stated semantics. Deterministic order (increasing switch mask).
std::vector<Configuration> binary_feasible_set(const Network& net,
                                               FormulationKind kind);

} // namespace radkit
