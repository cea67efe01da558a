#include "radkit/network.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace radkit {

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_csv(std::string_view line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == ',') {
            out.push_back(trim(line.substr(start, i - start)));
            start = i + 1;
        }
    }
    return out;
}

double parse_number(const std::string& field, int line, int column) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size())
        throw ParseError("expected a number, got '" + field + "'", line, column);
    return value;
}

int parse_int(const std::string& field, int line, int column) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size())
        throw ParseError("expected an integer, got '" + field + "'", line, column);
    return value;
}

bool parse_flag(const std::string& field, int line, int column) {
    if (field == "0" || field == "false") return false;
    if (field == "1" || field == "true") return true;
    throw ParseError("expected 0/1, got '" + field + "'", line, column);
}

void format_number(std::ostringstream& os, double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    os << std::string_view(buf, static_cast<std::size_t>(ptr - buf));
}

} // namespace

Network::Network(std::string name, double base_kv, double base_mva,
                 std::vector<Bus> buses, std::vector<Branch> branches,
                 bool per_unit)
    : name_(std::move(name)),
      base_kv_(base_kv),
      base_mva_(base_mva),
      per_unit_(per_unit),
      buses_(std::move(buses)),
      branches_(std::move(branches)) {
    index_.reserve(buses_.size());
    for (std::size_t i = 0; i < buses_.size(); ++i) {
        if (!index_.emplace(buses_[i].id, i).second)
            throw NetworkError("duplicate bus id " + std::to_string(buses_[i].id));
        if (buses_[i].is_substation) ++substation_count_;
    }
    endpoints_.reserve(branches_.size());
    for (const Branch& b : branches_)
        endpoints_.emplace_back(bus_index(b.from_bus), bus_index(b.to_bus));
}

std::size_t Network::bus_index(int id) const {
    auto it = index_.find(id);
    if (it == index_.end())
        throw NetworkError("unknown bus id " + std::to_string(id));
    return it->second;
}

double Network::imax_pu(std::size_t b) const {
    if (!per_unit_)
        throw NetworkError("imax_pu requires a per-unit network");
    return branches_[b].i_max.value_or(kDefaultImaxPu);
}

Network parse_network(std::string_view text, std::string name) {
    enum class Section { none, system, buses, branches };
    Section section = Section::none;
    std::optional<double> base_kv, base_mva;
    std::vector<Bus> buses;
    std::vector<Branch> branches;
    std::set<int> bus_ids;

    int lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string line = trim(text.substr(pos, eol - pos));
        pos = eol + 1;
        ++lineno;
        if (line.empty() || line[0] == '#') continue;

        if (line.front() == '[') {
            if (line == "[system]") section = Section::system;
            else if (line == "[buses]") section = Section::buses;
            else if (line == "[branches]") section = Section::branches;
            else throw ParseError("unknown section " + line, lineno, 1);
            continue;
        }

        switch (section) {
        case Section::none:
            throw ParseError("data before any section header", lineno, 1);
        case Section::system: {
            auto eq = line.find('=');
            if (eq == std::string::npos)
                throw ParseError("expected key = value", lineno, 1);
            std::string key = trim(std::string_view(line).substr(0, eq));
            std::string value = trim(std::string_view(line).substr(eq + 1));
            if (key == "base_kv") base_kv = parse_number(value, lineno, int(eq) + 2);
            else if (key == "base_mva") base_mva = parse_number(value, lineno, int(eq) + 2);
            else throw ParseError("unknown [system] key '" + key + "'", lineno, 1);
            break;
        }
        case Section::buses: {
            if (line.rfind("id,", 0) == 0) continue; // optional header row
            auto f = split_csv(line);
            if (f.size() != 6)
                throw ParseError("expected 6 bus columns, got " + std::to_string(f.size()),
                                 lineno, 1);
            Bus bus;
            bus.id = parse_int(f[0], lineno, 1);
            bus.p_demand = f[1].empty() ? 0.0 : parse_number(f[1], lineno, 2);
            bus.q_demand = f[2].empty() ? 0.0 : parse_number(f[2], lineno, 3);
            bus.is_substation = f[5].empty() ? false : parse_flag(f[5], lineno, 6);
            bus.v_min = f[3].empty() ? (bus.is_substation ? 1.0 : kDefaultVminPu)
                                     : parse_number(f[3], lineno, 4);
            bus.v_max = f[4].empty() ? (bus.is_substation ? 1.0 : kDefaultVmaxPu)
                                     : parse_number(f[4], lineno, 5);
            if (!bus_ids.insert(bus.id).second)
                throw NetworkError("duplicate bus id " + std::to_string(bus.id) +
                                   " at line " + std::to_string(lineno));
            buses.push_back(bus);
            break;
        }
        case Section::branches: {
            if (line.rfind("from,", 0) == 0) continue;
            auto f = split_csv(line);
            if (f.size() != 7)
                throw ParseError("expected 7 branch columns, got " + std::to_string(f.size()),
                                 lineno, 1);
            Branch br;
            br.from_bus = parse_int(f[0], lineno, 1);
            br.to_bus = parse_int(f[1], lineno, 2);
            br.r = parse_number(f[2], lineno, 3);
            br.x = parse_number(f[3], lineno, 4);
            if (!f[4].empty()) br.i_max = parse_number(f[4], lineno, 5);
            br.switchable = f[5].empty() ? true : parse_flag(f[5], lineno, 6);
            br.initially_closed = f[6].empty() ? true : parse_flag(f[6], lineno, 7);
            if (!bus_ids.count(br.from_bus))
                throw NetworkError("branch references unknown bus " +
                                   std::to_string(br.from_bus) + " at line " +
                                   std::to_string(lineno));
            if (!bus_ids.count(br.to_bus))
                throw NetworkError("branch references unknown bus " +
                                   std::to_string(br.to_bus) + " at line " +
                                   std::to_string(lineno));
            branches.push_back(br);
            break;
        }
        }
    }

    if (!base_kv || !base_mva)
        throw NetworkError("missing base values ([system] base_kv/base_mva)");
    std::size_t n_subs = std::count_if(buses.begin(), buses.end(),
                                       [](const Bus& b) { return b.is_substation; });
    if (n_subs == 0) throw NetworkError("zero substations");
    if (branches.size() + n_subs < buses.size())
        throw NetworkError("no spanning forest possible: " +
                           std::to_string(branches.size()) + " branches < " +
                           std::to_string(buses.size() - n_subs) + " needed");
    return Network(std::move(name), *base_kv, *base_mva, std::move(buses),
                   std::move(branches));
}

std::string serialize_network(const Network& net) {
    if (net.per_unit())
        throw NetworkError("canonical files are physical-unit only");
    std::ostringstream os;
    os << "[system]\n";
    os << "base_kv = ";
    format_number(os, net.base_kv());
    os << "\nbase_mva = ";
    format_number(os, net.base_mva());
    os << "\n\n[buses]\nid,p_kw,q_kvar,vmin_pu,vmax_pu,is_substation\n";
    for (const Bus& b : net.buses()) {
        os << b.id << ',';
        format_number(os, b.p_demand);
        os << ',';
        format_number(os, b.q_demand);
        os << ',';
        format_number(os, b.v_min);
        os << ',';
        format_number(os, b.v_max);
        os << ',' << (b.is_substation ? 1 : 0) << '\n';
    }
    os << "\n[branches]\nfrom,to,r_ohm,x_ohm,imax_a,switchable,closed\n";
    for (const Branch& b : net.branches()) {
        os << b.from_bus << ',' << b.to_bus << ',';
        format_number(os, b.r);
        os << ',';
        format_number(os, b.x);
        os << ',';
        if (b.i_max) format_number(os, *b.i_max);
        os << ',' << (b.switchable ? 1 : 0) << ',' << (b.initially_closed ? 1 : 0)
           << '\n';
    }
    return std::move(os).str();
}

Network import_branch_list(std::string_view text, double base_kv,
                           double base_mva, std::string name) {
    if (base_kv <= 0 || base_mva <= 0)
        throw NetworkError("branch-list import needs positive base values");
    std::vector<Branch> branches;
    std::set<int> all_ids;
    std::set<int> to_ids;
    std::vector<std::pair<int, std::pair<double, double>>> demands;

    int lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string line = trim(text.substr(pos, eol - pos));
        pos = eol + 1;
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream is(line);
        int from, to;
        double r, x, p, q;
        if (!(is >> from >> to >> r >> x >> p >> q))
            throw ParseError("expected 'from to r x p q'", lineno, 1);
        Branch br;
        br.from_bus = from;
        br.to_bus = to;
        br.r = r;
        br.x = x;
        branches.push_back(br);
        all_ids.insert(from);
        all_ids.insert(to);
        to_ids.insert(to);
        demands.emplace_back(to, std::make_pair(p, q));
    }
    if (branches.empty()) throw NetworkError("no spanning forest possible: empty branch list");

    std::vector<Bus> buses;
    for (int id : all_ids) {
        Bus b;
        b.id = id;
        b.is_substation = !to_ids.count(id); // roots never appear as a 'to'
        b.v_min = b.is_substation ? 1.0 : kDefaultVminPu;
        b.v_max = b.is_substation ? 1.0 : kDefaultVmaxPu;
        buses.push_back(b);
    }
    for (auto& [id, pq] : demands) {
        Bus& b = buses[std::distance(all_ids.begin(), all_ids.find(id))];
        b.p_demand += pq.first;
        b.q_demand += pq.second;
    }
    if (std::none_of(buses.begin(), buses.end(),
                     [](const Bus& b) { return b.is_substation; }))
        throw NetworkError("zero substations: every bus appears as a 'to' endpoint");
    return Network(std::move(name), base_kv, base_mva, std::move(buses),
                   std::move(branches));
}

Network load_network_file(const std::filesystem::path& path,
                          std::optional<double> base_kv,
                          std::optional<double> base_mva) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw NetworkError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string text = std::move(buf).str();
    std::string name = path.stem().string();

    // canonical files carry a [system] section; anything else is treated as
    // the legacy branch-list layout
    if (text.find("[system]") != std::string::npos)
        return parse_network(text, std::move(name));
    if (!base_kv || !base_mva)
        throw NetworkError(path.string() +
                           ": branch-list input needs --base-kv and --base-mva");
    return import_branch_list(text, *base_kv, *base_mva, std::move(name));
}

Network to_per_unit(const Network& net) {
    if (net.per_unit()) return net;
    if (net.base_kv() <= 0 || net.base_mva() <= 0)
        throw NetworkError("nonpositive base values");
    const double z_base = net.base_kv() * net.base_kv() / net.base_mva();
    const double s_base_kw = net.base_mva() * 1000.0;
    const double i_base_a = net.base_mva() * 1000.0 / (std::sqrt(3.0) * net.base_kv());

    std::vector<Bus> buses(net.buses().begin(), net.buses().end());
    for (Bus& b : buses) {
        b.p_demand /= s_base_kw;
        b.q_demand /= s_base_kw;
    }
    std::vector<Branch> branches(net.branches().begin(), net.branches().end());
    for (Branch& b : branches) {
        b.r /= z_base;
        b.x /= z_base;
        if (b.i_max) b.i_max = *b.i_max / i_base_a;
    }
    return Network(net.name(), net.base_kv(), net.base_mva(), std::move(buses),
                   std::move(branches), /*per_unit=*/true);
}

std::vector<Diagnostic> validate(const Network& net) {
    std::vector<Diagnostic> diags;
    auto error = [&](std::string where, std::string what) {
        diags.push_back({Diagnostic::Severity::error, std::move(where), std::move(what)});
    };

    for (const Bus& b : net.buses()) {
        std::string where = "bus " + std::to_string(b.id);
        if (b.v_min <= 0) error(where, "v_min must be positive");
        if (b.v_min > b.v_max) error(where, "v_min exceeds v_max");
        if (!b.is_substation && (b.p_demand < 0 || b.q_demand < 0))
            error(where, "negative demand on a load bus");
    }

    std::set<std::pair<int, int>> seen;
    for (std::size_t i = 0; i < net.branch_count(); ++i) {
        const Branch& br = net.branch(i);
        std::string where = "branch " + std::to_string(i + 1) + " (" +
                            std::to_string(br.from_bus) + "-" +
                            std::to_string(br.to_bus) + ")";
        if (br.from_bus == br.to_bus) error(where, "self-loop");
        if (br.r < 0 || br.x < 0) error(where, "negative impedance");
        if (br.r == 0 && br.x == 0) error(where, "r and x both zero");
        if (br.i_max && *br.i_max <= 0) error(where, "nonpositive ampacity");
        auto key = std::minmax(br.from_bus, br.to_bus);
        if (!seen.insert(key).second) error(where, "duplicate branch between the same buses");
    }

    if (net.substation_count() == 0)
        error("network", "no substation");
    if (net.branch_count() + net.substation_count() < net.bus_count())
        error("network", "no spanning forest possible");

    // all-closed connectivity: every bus must reach a substation
    std::vector<std::vector<std::size_t>> adj(net.bus_count());
    for (std::size_t b = 0; b < net.branch_count(); ++b) {
        auto [u, v] = net.endpoints(b);
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    std::vector<char> reached(net.bus_count(), 0);
    std::vector<std::size_t> stack;
    for (std::size_t i = 0; i < net.bus_count(); ++i)
        if (net.bus(i).is_substation) {
            reached[i] = 1;
            stack.push_back(i);
        }
    while (!stack.empty()) {
        std::size_t u = stack.back();
        stack.pop_back();
        for (std::size_t v : adj[u])
            if (!reached[v]) {
                reached[v] = 1;
                stack.push_back(v);
            }
    }
    for (std::size_t i = 0; i < net.bus_count(); ++i)
        if (!reached[i])
            error("bus " + std::to_string(net.bus(i).id),
                  "not connected to any substation in the all-closed graph");

    return diags;
}

BusClasses classify_buses(const Network& net) {
    BusClasses classes;
    for (std::size_t i = 0; i < net.bus_count(); ++i) {
        const Bus& b = net.bus(i);
        if (b.is_substation) classes.substations.push_back(i);
        else if (b.p_demand > 0 || b.q_demand > 0) classes.demand.push_back(i);
        else classes.zero_demand.push_back(i);
    }
    return classes;
}

} // namespace radkit
