#pragma once

#include <limits>
#include <string>
#include <vector>

#include "radkit/network.hpp"
#include "radkit/topology.hpp"

namespace radkit {

struct PowerFlowError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Violation {
    enum class Kind { undervoltage, overvoltage, overcurrent };
    Kind kind = Kind::undervoltage;
    std::size_t element = 0; // bus position for voltage, branch position for current
    double magnitude = 0.0;  // amount beyond the limit, in the limit's units
};

std::string to_string(Violation::Kind kind);

/// Solution of the DistFlow equations on a fixed radial configuration.
/// v_sqr is per bus (pu^2); p_flow/q_flow/i_sqr are per branch, zero on open
/// branches, with flows measured at the receiving end of the dataset
/// orientation (negative when power runs to->from).
struct PowerFlowResult {
    std::vector<double> v_sqr;
    std::vector<double> p_flow;
    std::vector<double> q_flow;
    std::vector<double> i_sqr;
    double losses_kw = 0.0;
    std::vector<Violation> violations;
    bool converged = false;
    int iterations = 0;
    double max_residual = 0.0;         // power balance / voltage drop, after the fact
    std::vector<double> delta_history; // max |Δ v_sqr| per sweep
};

struct DistFlowOptions {
    double tol = 1e-8; // on max |Δ v_sqr| between sweeps
    int max_iter = 100;
};

/// Backward/forward sweep on the rooted forest of the closed branches.
/// Flat start (v_sqr = 1, i_sqr = 0); backward accumulates receiving-end
/// flows plus R/X·i_sqr losses from the previous iterate, forward updates
/// v_sqr and then i_sqr = (P^2+Q^2)/v_sqr at the receiving bus. Requires a
/// per-unit network and a radial configuration; throws PowerFlowError on
/// non-radial input, non-convergence, or voltage collapse (v_sqr < 1e-4).
PowerFlowResult solve_distflow(const Network& net, const Configuration& cfg,
                               const DistFlowOptions& opts = {});

inline constexpr double kInfeasibleLosses = std::numeric_limits<double>::infinity();

/// Total losses in kW, or +inf when cfg is non-radial / diverges (and, in
/// hard-limit mode, when any voltage or ampacity violation remains).
double evaluate_losses(const Network& net, const Configuration& cfg,
                       bool hard_limits = false,
                       const DistFlowOptions& opts = {});

/// Buses outside [v_min^2, v_max^2] and closed branches above i_max^2.
std::vector<Violation> check_limits(const Network& net,
                                    const PowerFlowResult& result);

} // namespace radkit
