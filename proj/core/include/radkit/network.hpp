#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace radkit {

/// One bus of the distribution network. Demands are kW/kvar in physical
/// networks and per-unit after to_per_unit(); voltage limits are always pu.
struct Bus {
    int id = 0;
    double p_demand = 0.0;
    double q_demand = 0.0;
    double v_min = 0.93;
    double v_max = 1.05;
    bool is_substation = false;
};

/// One switchable (or fixed) series branch. r/x are ohms in physical
/// networks, per-unit afterwards. i_max empty means "no ampacity given";
/// per-unit evaluation then falls back to kDefaultImaxPu.
struct Branch {
    int from_bus = 0;
    int to_bus = 0;
    double r = 0.0;
    double x = 0.0;
    std::optional<double> i_max;
    bool switchable = true;
    bool initially_closed = true;
};

/// Ampacity assumed when a dataset does not provide one (per-unit).
inline constexpr double kDefaultImaxPu = 10.0;

/// Default voltage band applied to load buses when a dataset omits limits.
inline constexpr double kDefaultVminPu = 0.93;
inline constexpr double kDefaultVmaxPu = 1.05;

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, int line, int column)
        : std::runtime_error(msg), line(line), column(column) {}
    int line = 0;
    int column = 0;
};

struct NetworkError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Immutable electrical graph. Bus/branch order is dataset order and is the
/// canonical index space used by every other module. Safe to share across
/// threads once constructed.
class Network {
public:
    Network(std::string name, double base_kv, double base_mva,
            std::vector<Bus> buses, std::vector<Branch> branches,
            bool per_unit = false);

    const std::string& name() const { return name_; }
    double base_kv() const { return base_kv_; }
    double base_mva() const { return base_mva_; }
    bool per_unit() const { return per_unit_; }

    std::span<const Bus> buses() const { return buses_; }
    std::span<const Branch> branches() const { return branches_; }
    std::size_t bus_count() const { return buses_.size(); }
    std::size_t branch_count() const { return branches_.size(); }
    const Bus& bus(std::size_t i) const { return buses_[i]; }
    const Branch& branch(std::size_t b) const { return branches_[b]; }

    /// Dataset position of a bus id; throws NetworkError for unknown ids.
    std::size_t bus_index(int id) const;
    bool has_bus(int id) const { return index_.count(id) != 0; }

    /// Branch endpoints as bus positions (from, to).
    std::pair<std::size_t, std::size_t> endpoints(std::size_t b) const {
        return endpoints_[b];
    }

    std::size_t substation_count() const { return substation_count_; }

    /// Effective per-unit ampacity of a branch (default when absent).
    double imax_pu(std::size_t b) const;

private:
    std::string name_;
    double base_kv_;
    double base_mva_;
    bool per_unit_;
    std::vector<Bus> buses_;
    std::vector<Branch> branches_;
    std::vector<std::pair<std::size_t, std::size_t>> endpoints_;
    std::unordered_map<int, std::size_t> index_;
    std::size_t substation_count_ = 0;
};

struct Diagnostic {
    enum class Severity { error, warning };
    Severity severity = Severity::error;
    std::string location;
    std::string message;
};

/// Parses the canonical sectioned-CSV format. Throws ParseError for syntax
/// problems (with line/column) and NetworkError for semantic ones (duplicate
/// bus ids, unknown endpoints, missing bases, zero substations, or a branch
/// set too small to span the buses).
Network parse_network(std::string_view text, std::string name = "network");

/// Writes the canonical format. parse(serialize(parse(text))) is a fixed
/// point. Physical-unit networks only.
std::string serialize_network(const Network& net);

/// Importer for the legacy whitespace branch-list layout
/// (from to r_ohm x_ohm p_kw_at_to q_kvar_at_to). Buses are inferred from
/// the rows; buses that never appear as a "to" endpoint become substations.
Network import_branch_list(std::string_view text, double base_kv,
                           double base_mva, std::string name = "network");

/// Loads a file, auto-detecting canonical vs branch-list layout. The base
/// values are only consulted for branch-list inputs.
Network load_network_file(const std::filesystem::path& path,
                          std::optional<double> base_kv = std::nullopt,
                          std::optional<double> base_mva = std::nullopt);

/// Converts kW/kvar/ohm/ampere quantities to per-unit on the network bases.
/// Idempotent; throws NetworkError on nonpositive bases.
Network to_per_unit(const Network& net);

/// Structural integrity check; empty result means every invariant holds.
std::vector<Diagnostic> validate(const Network& net);

/// Bus partition {substations, demand, zero-demand} as dataset positions.
struct BusClasses {
    std::vector<std::size_t> substations;
    std::vector<std::size_t> demand;
    std::vector<std::size_t> zero_demand;
};
BusClasses classify_buses(const Network& net);

} // namespace radkit
