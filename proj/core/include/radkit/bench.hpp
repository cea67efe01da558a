#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "radkit/emitter.hpp"
#include "radkit/formulation.hpp"
#include "radkit/search.hpp"

namespace radkit {

/// One benchmark request: a system file, the families to build, and an
/// optional native-search mode (run once per system, attached to every row).
struct BenchEntry {
    std::filesystem::path system_file;
    std::vector<FormulationKind> formulations;
    std::optional<SearchMode> native_mode;
    int n_starts = 20;
    std::uint64_t seed = 1;
    std::uint64_t max_trees = 10'000'000;
    std::optional<double> target_losses_kw;
};

struct NativeResult {
    SearchMode mode = SearchMode::exact;
    double losses_kw = 0.0;
    double seconds = 0.0;
    std::uint64_t trees = 0;
};

struct BenchRow {
    std::string system;
    FormulationKind formulation = FormulationKind::base;
    ModelStats stats;
    double emit_seconds = 0.0;
    std::optional<NativeResult> native;
    std::optional<double> target_kw;
    std::optional<double> deviation_pct; // 100*|losses-target|/target
    std::string error;                   // per-row failure, never aborts the matrix
};

std::vector<BenchRow> run_bench(const std::vector<BenchEntry>& manifest);

enum class ReportFormat { csv, json, markdown };

/// CSV header: system,formulation,n_binary,n_continuous,n_linear,n_cone,
/// nonzeros,emit_s,mode,losses_kw,target_kw,deviation_pct,solve_s,trees.
/// Markdown renders formulation rows x system columns. Timing columns are
/// real measurements and are excluded from golden comparisons.
std::string render_report(const std::vector<BenchRow>& rows, ReportFormat format);

/// Front door behind the radkit binary. Subcommands: validate, check-radial,
/// powerflow, solve, emit, stats, bench. Exit codes: 0 ok, 1 domain error,
/// 2 usage error. Diagnostics go to stderr, data to stdout or --out.
int cli_main(int argc, const char* const* argv);

} // namespace radkit
