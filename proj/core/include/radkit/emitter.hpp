#pragma once

#include <string>
#include <string_view>

#include "radkit/formulation.hpp"

namespace radkit {

struct EmitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class EmitFormat { lp, mps };

struct EmitOptions {
    EmitFormat format = EmitFormat::lp;
    int precision = 12; // significant digits, in [6, 17]
    std::string objective_name = "obj";
};

/// CPLEX-dialect LP text. Rotated cones appear as bracketed quadratic rows
/// [ p^2 + q^2 - u*v ] <= 0. Output is byte-identical across runs and
/// platforms for identical input: LF endings, ASCII, locale-free numbers.
/// Names are transliterated to the LP-safe charset ('['->'(', ']'->')',
/// ','->'.', "->"->'_'); anything still illegal raises EmitError.
std::string write_lp(const ModelIR& model, const EmitOptions& opts = {});

/// MPS text (column-aligned, free-format compatible) with one QCMATRIX
/// section per cone row. Same determinism and name rules as write_lp;
/// names longer than 255 characters raise EmitError.
std::string write_mps(const ModelIR& model,
                      const EmitOptions& opts = {.format = EmitFormat::mps});

/// Recounts ModelStats from text this emitter produced (round-trip check,
/// not a general reader). Throws EmitError on foreign or mangled input.
ModelStats read_back_stats(std::string_view text, EmitFormat format);

} // namespace radkit
