#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "radkit/powerflow.hpp"
#include "radkit/topology.hpp"

namespace radkit {

struct SearchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class SearchMode { exact, local_search, multistart };
std::string to_string(SearchMode mode);

struct SearchBudget {
    std::uint64_t max_trees = 10'000'000; // exact-mode enumeration cap
    std::uint64_t max_moves = UINT64_MAX; // local-search improving moves
    bool hard_limits = false;             // reject limit-violating configs
    bool keep_trace = false;              // record improvement log
};

struct SearchReport {
    Configuration best_cfg;
    double best_losses_kw = kInfeasibleLosses;
    std::uint64_t configurations_evaluated = 0;
    std::uint64_t trees_enumerated = 0; // exact mode only
    double wall_seconds = 0.0;
    SearchMode mode = SearchMode::exact;
    std::vector<std::string> trace;
};

/// Visits every spanning forest that contains all non-switchable closed
/// branches exactly once (deletion-contraction with connectivity pruning),
/// evaluating each with the DistFlow sweep. trees_enumerated equals the
/// matrix-tree count; ties between equal-loss optima break toward the
/// lexicographically smallest closed vector, so parallel and serial runs
/// report the same optimum. Throws SearchError when the count exceeds
/// budget.max_trees (the message carries the exact count).
SearchReport enumerate_radial(const Network& net, const SearchBudget& budget = {});

/// Steepest-descent branch exchange: close an open switchable branch,
/// open one branch on the induced cycle (or on the substation-substation
/// path when the closure bridges two trees), take the best strict
/// improvement; moves are ordered by dataset branch position. Requires a
/// radial start.
SearchReport local_search_branch_exchange(const Network& net,
                                          const Configuration& start,
                                          const SearchBudget& budget = {});

/// Branch exchange from n_starts random spanning forests (random integer
/// edge weights + minimum forest, fixed-seed generator: fully reproducible).
SearchReport multistart(const Network& net, int n_starts, std::uint64_t seed,
                        const SearchBudget& budget = {});

} // namespace radkit
