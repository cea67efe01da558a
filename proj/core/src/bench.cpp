#include "radkit/bench.hpp"

#include <charconv>
#include <chrono>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "radkit/parallel.hpp"

namespace radkit {

namespace {

using Clock = std::chrono::steady_clock;
using nlohmann::json;

std::string num(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, ptr);
}

std::string num(double v, int precision) {
    char buf[64];
    auto [ptr, ec] =
        std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, precision);
    (void)ec;
    return std::string(buf, ptr);
}

BenchRow make_row(const std::string& system, FormulationKind kind) {
    BenchRow row;
    row.system = system;
    row.formulation = kind;
    return row;
}

void attach_native(std::vector<BenchRow>& rows, std::size_t first,
                   const std::optional<NativeResult>& native,
                   std::optional<double> target) {
    for (std::size_t i = first; i < rows.size(); ++i) {
        rows[i].native = native;
        rows[i].target_kw = target;
        if (native && target && std::isfinite(native->losses_kw))
            rows[i].deviation_pct = 100.0 * std::abs(native->losses_kw - *target) / *target;
    }
}

std::vector<BenchRow> run_entry(const BenchEntry& entry) {
    std::vector<BenchRow> rows;
    const std::string system = entry.system_file.stem().string();
    Network net = [&] {
        Network loaded = load_network_file(entry.system_file);
        return loaded.per_unit() ? loaded : to_per_unit(loaded);
    }();
    {
        auto diags = validate(net);
        for (const auto& d : diags)
            if (d.severity == Diagnostic::Severity::error)
                throw NetworkError(d.location + ": " + d.message);
    }

    ModelIR core = build_core_model(net);
    const std::size_t first = rows.size();
    for (FormulationKind kind : entry.formulations) {
        BenchRow row = make_row(system, kind);
        try {
            ModelIR model = add_radiality(core, kind, net);
            row.stats = model_stats(model);
            const auto t0 = Clock::now();
            std::string lp = write_lp(model);
            std::string mps = write_mps(model, {.format = EmitFormat::mps});
            row.emit_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
            // cheap self-check, mirrors the acceptance round-trip
            if (read_back_stats(lp, EmitFormat::lp) != row.stats ||
                read_back_stats(mps, EmitFormat::mps) != row.stats)
                row.error = "emitter round-trip mismatch";
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }

    std::optional<NativeResult> native;
    if (entry.native_mode) {
        try {
            SearchBudget budget;
            budget.max_trees = entry.max_trees;
            SearchReport report;
            switch (*entry.native_mode) {
            case SearchMode::exact:
                report = enumerate_radial(net, budget);
                break;
            case SearchMode::local_search:
                report = local_search_branch_exchange(net, initial_configuration(net), budget);
                break;
            case SearchMode::multistart:
                report = multistart(net, entry.n_starts, entry.seed, budget);
                break;
            }
            native = NativeResult{report.mode, report.best_losses_kw,
                                  report.wall_seconds, report.trees_enumerated};
        } catch (const std::exception& e) {
            for (std::size_t i = first; i < rows.size(); ++i)
                if (rows[i].error.empty()) rows[i].error = std::string("native: ") + e.what();
        }
    }
    attach_native(rows, first, native, entry.target_losses_kw);
    return rows;
}

} // namespace

std::vector<BenchRow> run_bench(const std::vector<BenchEntry>& manifest) {
    std::vector<std::vector<BenchRow>> partial(manifest.size());
    // entries run concurrently; assembly keeps manifest order
    const std::size_t workers = std::min(thread_limit(), std::max<std::size_t>(1, manifest.size()));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= manifest.size()) return;
            try {
                partial[i] = run_entry(manifest[i]);
            } catch (const std::exception& e) {
                // the whole entry failed: one row per requested formulation
                for (FormulationKind kind : manifest[i].formulations) {
                    BenchRow row = make_row(manifest[i].system_file.stem().string(), kind);
                    row.error = e.what();
                    partial[i].push_back(std::move(row));
                }
                if (manifest[i].formulations.empty()) {
                    BenchRow row = make_row(manifest[i].system_file.stem().string(),
                                            FormulationKind::base);
                    row.error = e.what();
                    partial[i].push_back(std::move(row));
                }
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w + 1 < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();

    std::vector<BenchRow> rows;
    for (auto& p : partial)
        for (auto& r : p) rows.push_back(std::move(r));
    return rows;
}

namespace {

json row_to_json(const BenchRow& row) {
    json j;
    j["system"] = row.system;
    j["formulation"] = to_string(row.formulation);
    j["n_binary"] = row.stats.n_binary;
    j["n_continuous"] = row.stats.n_continuous;
    j["n_linear"] = row.stats.n_linear_constraints;
    j["n_cone"] = row.stats.n_cone_constraints;
    j["nonzeros"] = row.stats.nonzeros;
    j["emit_s"] = row.emit_seconds;
    if (row.native) {
        j["mode"] = to_string(row.native->mode);
        j["losses_kw"] = std::isfinite(row.native->losses_kw)
                             ? json(row.native->losses_kw)
                             : json(nullptr);
        j["solve_s"] = row.native->seconds;
        j["trees"] = row.native->trees;
    }
    if (row.target_kw) j["target_kw"] = *row.target_kw;
    if (row.deviation_pct) j["deviation_pct"] = *row.deviation_pct;
    if (!row.error.empty()) j["error"] = row.error;
    return j;
}

} // namespace

std::string render_report(const std::vector<BenchRow>& rows, ReportFormat format) {
    if (format == ReportFormat::json) {
        json j = json::array();
        for (const BenchRow& row : rows) j.push_back(row_to_json(row));
        return j.dump(2) + "\n";
    }
    if (format == ReportFormat::csv) {
        std::string out =
            "system,formulation,n_binary,n_continuous,n_linear,n_cone,nonzeros,"
            "emit_s,mode,losses_kw,target_kw,deviation_pct,solve_s,trees\n";
        for (const BenchRow& row : rows) {
            out += row.system + ',' + to_string(row.formulation) + ',';
            if (row.error.empty() || row.stats.n_binary + row.stats.n_continuous > 0)
                out += std::to_string(row.stats.n_binary) + ',' +
                       std::to_string(row.stats.n_continuous) + ',' +
                       std::to_string(row.stats.n_linear_constraints) + ',' +
                       std::to_string(row.stats.n_cone_constraints) + ',' +
                       std::to_string(row.stats.nonzeros) + ',' + num(row.emit_seconds, 6);
            else out += ",,,,,";
            out += ',';
            if (row.native) {
                out += to_string(row.native->mode);
                out += ',';
                out += std::isfinite(row.native->losses_kw) ? num(row.native->losses_kw, 12) : "";
                out += ',';
                out += row.target_kw ? num(*row.target_kw) : "";
                out += ',';
                out += row.deviation_pct ? num(*row.deviation_pct, 6) : "";
                out += ',';
                out += num(row.native->seconds, 6);
                out += ',';
                out += std::to_string(row.native->trees);
            } else {
                out += ',';
                out += ',';
                out += row.target_kw ? num(*row.target_kw) : "";
                out += ",,,";
            }
            out += '\n';
        }
        return out;
    }
    // markdown: formulation rows x system columns, native losses in the cells
    std::vector<std::string> systems;
    std::vector<FormulationKind> kinds;
    for (const BenchRow& row : rows) {
        if (std::find(systems.begin(), systems.end(), row.system) == systems.end())
            systems.push_back(row.system);
        if (std::find(kinds.begin(), kinds.end(), row.formulation) == kinds.end())
            kinds.push_back(row.formulation);
    }
    auto cell = [&rows](const std::string& system, FormulationKind kind) -> std::string {
        for (const BenchRow& row : rows) {
            if (row.system != system || row.formulation != kind) continue;
            if (!row.error.empty()) return "error";
            if (row.native && std::isfinite(row.native->losses_kw)) {
                std::string s = num(row.native->losses_kw, 8) + " kW";
                if (row.deviation_pct) s += " (" + num(*row.deviation_pct, 3) + "%)";
                return s;
            }
            return "nnz=" + std::to_string(row.stats.nonzeros);
        }
        return "-";
    };
    std::string out = "| formulation |";
    for (const auto& s : systems) out += " " + s + " |";
    out += "\n|---|";
    for (std::size_t i = 0; i < systems.size(); ++i) out += "---|";
    out += "\n";
    for (FormulationKind kind : kinds) {
        out += "| " + to_string(kind) + " |";
        for (const auto& s : systems) out += " " + cell(s, kind) + " |";
        out += "\n";
    }
    return out;
}

namespace {

std::vector<std::size_t> parse_branch_list(const std::string& text, std::size_t count) {
    std::vector<std::size_t> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        std::string tok = text.substr(pos, comma - pos);
        if (!tok.empty()) {
            std::size_t v = 0;
            auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
            if (ec != std::errc{} || ptr != tok.data() + tok.size() || v < 1 || v > count)
                throw NetworkError("bad branch position '" + tok + "' (1.." +
                                   std::to_string(count) + ")");
            out.push_back(v - 1); // CLI positions are 1-based
        }
        if (comma == text.size()) break;
        pos = comma + 1;
    }
    return out;
}

Configuration configuration_from_cli(const Network& net, const std::string& closed,
                                     const std::string& open) {
    if (!closed.empty() && !open.empty())
        throw NetworkError("--closed and --open are mutually exclusive");
    if (!closed.empty())
        return configuration_from_closed(net, parse_branch_list(closed, net.branch_count()));
    if (!open.empty())
        return configuration_from_open(net, parse_branch_list(open, net.branch_count()));
    return initial_configuration(net);
}

void write_output(const std::string& out_path, const std::string& data) {
    if (out_path.empty()) {
        std::cout << data;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw NetworkError("cannot write " + out_path);
    out << data;
}

json report_to_json(const Network& net, const SearchReport& report) {
    json j;
    j["system"] = net.name();
    j["mode"] = to_string(report.mode);
    j["losses_kw"] = std::isfinite(report.best_losses_kw) ? json(report.best_losses_kw)
                                                          : json(nullptr);
    json open = json::array(), closed = json::array();
    for (std::size_t b : report.best_cfg.open_indices()) open.push_back(b + 1);
    for (std::size_t b : report.best_cfg.closed_indices()) closed.push_back(b + 1);
    j["open_branches"] = open;
    j["closed_branches"] = closed;
    j["configurations_evaluated"] = report.configurations_evaluated;
    if (report.mode == SearchMode::exact) j["trees_enumerated"] = report.trees_enumerated;
    j["wall_seconds"] = report.wall_seconds;
    if (!report.trace.empty()) j["trace"] = report.trace;
    return j;
}

int cli_run(int argc, const char* const* argv) {
    CLI::App app{"radial distribution reconfiguration toolkit"};
    app.require_subcommand(1);

    std::string system_path, out_path;
    double base_kv = 0, base_mva = 0;
    auto add_system = [&](CLI::App* cmd) {
        cmd->add_option("--system", system_path, "network file (canonical or branch list)")
            ->required();
        cmd->add_option("--base-kv", base_kv, "voltage base for branch-list inputs");
        cmd->add_option("--base-mva", base_mva, "power base for branch-list inputs");
        cmd->add_option("--out", out_path, "write data here instead of stdout");
    };
    auto load = [&]() {
        return load_network_file(system_path,
                                 base_kv > 0 ? std::optional(base_kv) : std::nullopt,
                                 base_mva > 0 ? std::optional(base_mva) : std::nullopt);
    };

    auto* c_validate = app.add_subcommand("validate", "check structural integrity");
    add_system(c_validate);

    std::string closed_list, open_list;
    auto* c_radial = app.add_subcommand("check-radial", "test a switch vector for radiality");
    add_system(c_radial);
    c_radial->add_option("--closed", closed_list, "1-based closed branch positions");
    c_radial->add_option("--open", open_list, "1-based open branch positions (rest closed)");

    double tol = 1e-8;
    int max_iter = 100;
    auto* c_pf = app.add_subcommand("powerflow", "evaluate a radial configuration");
    add_system(c_pf);
    c_pf->add_option("--closed", closed_list, "1-based closed branch positions");
    c_pf->add_option("--open", open_list, "1-based open branch positions (rest closed)");
    c_pf->add_option("--tol", tol, "sweep tolerance on max |dV^2|");
    c_pf->add_option("--max-iter", max_iter, "sweep iteration cap");

    std::string mode_text = "exact";
    std::uint64_t seed = 1, max_trees = 10'000'000;
    int starts = 20;
    bool hard_limits = false, trace = false;
    auto* c_solve = app.add_subcommand("solve", "minimize losses over radial configurations");
    add_system(c_solve);
    c_solve->add_option("--mode", mode_text, "exact|local|multistart")->required();
    c_solve->add_option("--seed", seed, "multistart seed");
    c_solve->add_option("--max-trees", max_trees, "enumeration budget");
    c_solve->add_option("--starts", starts, "multistart count");
    c_solve->add_flag("--hard-limits", hard_limits, "reject limit-violating configurations");
    c_solve->add_flag("--trace", trace, "record the improvement log");

    std::string formulation_text, format_text = "lp";
    int precision = 12;
    auto* c_emit = app.add_subcommand("emit", "write the model as LP or MPS text");
    add_system(c_emit);
    c_emit->add_option("--formulation", formulation_text,
                       "base|pc|st|scf|scf+st|mcf|mcf+st|mcf+scf")->required();
    c_emit->add_option("--format", format_text, "lp|mps");
    c_emit->add_option("--precision", precision, "significant digits (6..17)");

    auto* c_stats = app.add_subcommand("stats", "model size counters");
    add_system(c_stats);
    c_stats->add_option("--formulation", formulation_text,
                        "base|pc|st|scf|scf+st|mcf|mcf+st|mcf+scf")->required();

    std::string manifest_path, systems_text, formulations_text = "all", native_text,
                report_format = "csv", targets_text;
    auto* c_bench = app.add_subcommand("bench", "systems x formulations matrix");
    c_bench->add_option("--manifest", manifest_path, "JSON manifest file");
    c_bench->add_option("--systems", systems_text, "comma-separated network files");
    c_bench->add_option("--formulations", formulations_text,
                        "comma-separated kinds or 'all'");
    c_bench->add_option("--native", native_text, "exact|local|multistart");
    c_bench->add_option("--targets", targets_text,
                        "comma-separated reference losses (kW), one per system");
    c_bench->add_option("--starts", starts, "multistart count");
    c_bench->add_option("--seed", seed, "multistart seed");
    c_bench->add_option("--max-trees", max_trees, "enumeration budget");
    c_bench->add_option("--format", report_format, "csv|json|md");
    c_bench->add_option("--out", out_path, "write the report here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n" << app.help();
        return 2;
    }

    auto parse_mode = [](const std::string& text) {
        if (text == "exact") return SearchMode::exact;
        if (text == "local") return SearchMode::local_search;
        if (text == "multistart") return SearchMode::multistart;
        throw NetworkError("unknown mode '" + text + "' (exact|local|multistart)");
    };
    auto parse_kinds = [](const std::string& text) {
        std::vector<FormulationKind> kinds;
        if (text == "all" || text.empty()) return all_formulations();
        std::size_t pos = 0;
        while (pos <= text.size()) {
            std::size_t comma = text.find(',', pos);
            if (comma == std::string::npos) comma = text.size();
            std::string tok = text.substr(pos, comma - pos);
            auto kind = parse_formulation(tok);
            if (!kind) throw NetworkError("unknown formulation '" + tok + "'");
            kinds.push_back(*kind);
            if (comma == text.size()) break;
            pos = comma + 1;
        }
        return kinds;
    };

    if (c_validate->parsed()) {
        Network net = load();
        auto diags = validate(net);
        bool bad = false;
        for (const auto& d : diags) {
            bad |= d.severity == Diagnostic::Severity::error;
            std::cerr << (d.severity == Diagnostic::Severity::error ? "error: " : "warning: ")
                      << d.location << ": " << d.message << "\n";
        }
        if (bad) return 1;
        const BusClasses classes = classify_buses(net);
        std::ostringstream os;
        os << "valid: " << net.bus_count() << " buses (" << classes.substations.size()
           << " substations, " << classes.demand.size() << " demand, "
           << classes.zero_demand.size() << " zero-demand), " << net.branch_count()
           << " branches, base " << net.base_kv() << " kV / " << net.base_mva()
           << " MVA\n";
        write_output(out_path, os.str());
        return 0;
    }
    if (c_radial->parsed()) {
        Network net = load();
        Configuration cfg = configuration_from_cli(net, closed_list, open_list);
        write_output(out_path,
                     std::string("radial: ") + (is_radial(net, cfg) ? "true" : "false") + "\n");
        return 0;
    }
    if (c_pf->parsed()) {
        Network net = to_per_unit(load());
        Configuration cfg = configuration_from_cli(net, closed_list, open_list);
        PowerFlowResult result = solve_distflow(net, cfg, {tol, max_iter});
        const double s_kw = net.base_mva() * 1000.0;
        json j;
        j["system"] = net.name();
        j["losses_kw"] = result.losses_kw;
        j["converged"] = result.converged;
        j["iterations"] = result.iterations;
        j["max_residual"] = result.max_residual;
        json buses = json::array();
        for (std::size_t i = 0; i < net.bus_count(); ++i)
            buses.push_back({{"id", net.bus(i).id},
                             {"v_sqr", result.v_sqr[i]},
                             {"v_pu", std::sqrt(result.v_sqr[i])}});
        j["buses"] = buses;
        json branches = json::array();
        for (std::size_t b = 0; b < net.branch_count(); ++b) {
            const Branch& br = net.branch(b);
            branches.push_back({{"from", br.from_bus},
                                {"to", br.to_bus},
                                {"closed", static_cast<bool>(cfg.closed[b])},
                                {"p_kw", result.p_flow[b] * s_kw},
                                {"q_kvar", result.q_flow[b] * s_kw},
                                {"i_sqr_pu", result.i_sqr[b]}});
        }
        j["branches"] = branches;
        json violations = json::array();
        for (const Violation& v : result.violations)
            violations.push_back({{"kind", to_string(v.kind)},
                                  {"element", v.element + 1},
                                  {"magnitude", v.magnitude}});
        j["violations"] = violations;
        write_output(out_path, j.dump(2) + "\n");
        return 0;
    }
    if (c_solve->parsed()) {
        Network net = load();
        SearchBudget budget;
        budget.max_trees = max_trees;
        budget.hard_limits = hard_limits;
        budget.keep_trace = trace;
        SearchReport report;
        switch (parse_mode(mode_text)) {
        case SearchMode::exact:
            report = enumerate_radial(net, budget);
            break;
        case SearchMode::local_search:
            report = local_search_branch_exchange(net, initial_configuration(net), budget);
            break;
        case SearchMode::multistart:
            report = multistart(net, starts, seed, budget);
            break;
        }
        write_output(out_path, report_to_json(net, report).dump(2) + "\n");
        return 0;
    }
    if (c_emit->parsed() || c_stats->parsed()) {
        Network net = load();
        Network pu = net.per_unit() ? net : to_per_unit(net);
        auto kind = parse_formulation(formulation_text);
        if (!kind) throw NetworkError("unknown formulation '" + formulation_text + "'");
        ModelIR model = build_model(pu, *kind);
        if (c_stats->parsed()) {
            const ModelStats stats = model_stats(model);
            json j;
            j["system"] = net.name();
            j["formulation"] = to_string(*kind);
            j["n_binary"] = stats.n_binary;
            j["n_continuous"] = stats.n_continuous;
            j["n_linear_constraints"] = stats.n_linear_constraints;
            j["n_cone_constraints"] = stats.n_cone_constraints;
            j["nonzeros"] = stats.nonzeros;
            write_output(out_path, j.dump(2) + "\n");
            return 0;
        }
        EmitOptions opts;
        opts.precision = precision;
        if (format_text == "lp") {
            opts.format = EmitFormat::lp;
            write_output(out_path, write_lp(model, opts));
        } else if (format_text == "mps") {
            opts.format = EmitFormat::mps;
            write_output(out_path, write_mps(model, opts));
        } else throw NetworkError("unknown format '" + format_text + "' (lp|mps)");
        return 0;
    }
    if (c_bench->parsed()) {
        std::vector<BenchEntry> manifest;
        if (!manifest_path.empty()) {
            std::ifstream in(manifest_path);
            if (!in) throw NetworkError("cannot open " + manifest_path);
            json j = json::parse(in);
            for (const json& je : j.at("entries")) {
                BenchEntry entry;
                entry.system_file = je.at("system").get<std::string>();
                if (je.contains("formulations")) {
                    for (const json& jk : je["formulations"]) {
                        auto kind = parse_formulation(jk.get<std::string>());
                        if (!kind)
                            throw NetworkError("manifest: unknown formulation " + jk.dump());
                        entry.formulations.push_back(*kind);
                    }
                } else entry.formulations = all_formulations();
                if (je.contains("native") && !je["native"].is_null())
                    entry.native_mode = parse_mode(je["native"].get<std::string>());
                if (je.contains("starts")) entry.n_starts = je["starts"].get<int>();
                if (je.contains("seed")) entry.seed = je["seed"].get<std::uint64_t>();
                if (je.contains("max_trees"))
                    entry.max_trees = je["max_trees"].get<std::uint64_t>();
                if (je.contains("target_kw"))
                    entry.target_losses_kw = je["target_kw"].get<double>();
                manifest.push_back(std::move(entry));
            }
        } else {
            if (systems_text.empty())
                throw NetworkError("bench needs --manifest or --systems");
            std::vector<std::string> files;
            std::size_t pos = 0;
            while (pos <= systems_text.size()) {
                std::size_t comma = systems_text.find(',', pos);
                if (comma == std::string::npos) comma = systems_text.size();
                files.push_back(systems_text.substr(pos, comma - pos));
                if (comma == systems_text.size()) break;
                pos = comma + 1;
            }
            std::vector<double> targets;
            if (!targets_text.empty()) {
                pos = 0;
                while (pos <= targets_text.size()) {
                    std::size_t comma = targets_text.find(',', pos);
                    if (comma == std::string::npos) comma = targets_text.size();
                    targets.push_back(std::stod(targets_text.substr(pos, comma - pos)));
                    if (comma == targets_text.size()) break;
                    pos = comma + 1;
                }
                if (targets.size() != files.size())
                    throw NetworkError("--targets count must match --systems");
            }
            for (std::size_t i = 0; i < files.size(); ++i) {
                BenchEntry entry;
                entry.system_file = files[i];
                entry.formulations = parse_kinds(formulations_text);
                if (!native_text.empty()) entry.native_mode = parse_mode(native_text);
                entry.n_starts = starts;
                entry.seed = seed;
                entry.max_trees = max_trees;
                if (!targets.empty()) entry.target_losses_kw = targets[i];
                manifest.push_back(std::move(entry));
            }
        }
        std::vector<BenchRow> rows = run_bench(manifest);
        ReportFormat fmt = ReportFormat::csv;
        if (report_format == "json") fmt = ReportFormat::json;
        else if (report_format == "md" || report_format == "markdown")
            fmt = ReportFormat::markdown;
        else if (report_format != "csv")
            throw NetworkError("unknown report format '" + report_format + "'");
        write_output(out_path, render_report(rows, fmt));
        return 0;
    }
    return 2;
}

} // namespace

int cli_main(int argc, const char* const* argv) {
    try {
        return cli_run(argc, argv);
    } catch (const ParseError& e) {
        std::cerr << "parse error (line " << e.line << ", column " << e.column
                  << "): " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace radkit
