#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <span>
#include <vector>

#include "radkit/network.hpp"

namespace radkit {

/// Exact spanning-forest counts overflow 64 bits well before 417 buses.
using TreeCount = boost::multiprecision::cpp_int;

/// Switch-state vector over Network.branches (1 = closed).
struct Configuration {
    std::vector<std::uint8_t> closed;

    std::size_t closed_count() const;
    std::vector<std::size_t> closed_indices() const;
    std::vector<std::size_t> open_indices() const;

    bool operator==(const Configuration&) const = default;
    /// Lexicographic order on the closed vector; used for deterministic
    /// tie-breaking between equal-loss optima.
    bool lex_less(const Configuration& other) const;
};

Configuration all_closed_configuration(const Network& net);
Configuration all_open_configuration(const Network& net);
/// Switch state as given by the dataset's `closed` column.
Configuration initial_configuration(const Network& net);
Configuration configuration_from_closed(const Network& net,
                                        std::span<const std::size_t> closed);
Configuration configuration_from_open(const Network& net,
                                      std::span<const std::size_t> open);

/// Union-find labelling of buses under the closed branches. Labels are the
/// smallest bus position in each component, so output is deterministic.
std::vector<std::size_t> connected_components(const Network& net,
                                              const Configuration& cfg);

/// True iff the closed subgraph is a spanning forest with exactly one
/// substation per component: closed count == |N| - |N_s|, no cycles, and no
/// component without a substation. Throws on length mismatch.
bool is_radial(const Network& net, const Configuration& cfg);

/// Per-clause breakdown of the radiality test, for diagnostics and tests.
struct RadialityCheck {
    bool closed_count_ok = false;
    bool acyclic = false;
    bool substations_ok = false; // every component has exactly one
    bool radial() const { return closed_count_ok && acyclic && substations_ok; }
};
RadialityCheck check_radiality(const Network& net, const Configuration& cfg);

/// Fundamental cycles of the all-closed graph against a BFS forest rooted at
/// the substations (substations act as one contracted root, so a tie between
/// two substation trees also induces a loop). Exactly |Ω| - |N| + |N_s|
/// cycles, each a list of branch positions. Throws NetworkError if some bus
/// is unreachable from every substation.
std::vector<std::vector<std::size_t>> fundamental_loops(const Network& net);

/// Kirchhoff matrix-tree count of spanning forests (one tree per substation)
/// that contain every branch in forced_closed and none in excluded. Exact
/// integer arithmetic (fraction-free elimination). A cycle inside
/// forced_closed yields 0.
TreeCount count_spanning_trees(const Network& net,
                               std::span<const std::size_t> forced_closed = {},
                               std::span<const std::size_t> excluded = {});

} // namespace radkit
