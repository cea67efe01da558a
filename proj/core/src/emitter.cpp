#include "radkit/emitter.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace radkit {

namespace {

/// LP/MPS-safe transliteration of ModelIR names: '['->'(', ']'->')',
/// ','->'.', "->"->'_'. Injective over the generator's naming scheme.
std::string sanitize_name(std::string_view name) {
    std::string out;
    out.reserve(name.size());
    for (std::size_t i = 0; i < name.size(); ++i) {
        char c = name[i];
        if (c == '[') out += '(';
        else if (c == ']') out += ')';
        else if (c == ',') out += '.';
        else if (c == '-' && i + 1 < name.size() && name[i + 1] == '>') {
            out += '_';
            ++i;
        } else out += c;
    }
    if (out.empty()) throw EmitError("empty name");
    if (!std::isalpha(static_cast<unsigned char>(out[0])) && out[0] != '_')
        throw EmitError("name '" + out + "' must start with a letter");
    for (char c : out)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '(' &&
            c != ')' && c != '.')
            throw EmitError("name '" + std::string(name) +
                            "' contains an LP-forbidden character");
    return out;
}

std::string fmt(double v, int precision) {
    char buf[64];
    auto [ptr, ec] =
        std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, precision);
    if (ec != std::errc{}) throw EmitError("number formatting failed");
    return std::string(buf, ptr);
}

void check_precision(const EmitOptions& opts) {
    if (opts.precision < 6 || opts.precision > 17)
        throw EmitError("precision must lie in [6, 17]");
}

struct NameTable {
    std::vector<std::string> vars;
    std::vector<std::string> lin;
    std::vector<std::string> cones;
    std::string objective;
};

NameTable sanitize_all(const ModelIR& model, const EmitOptions& opts,
                       std::size_t max_len) {
    NameTable t;
    t.objective = sanitize_name(opts.objective_name);
    t.vars.reserve(model.variables.size());
    for (const Variable& v : model.variables) t.vars.push_back(sanitize_name(v.name));
    t.lin.reserve(model.linear_constraints.size());
    for (const LinearRow& r : model.linear_constraints) t.lin.push_back(sanitize_name(r.name));
    t.cones.reserve(model.cone_constraints.size());
    for (const ConeRow& r : model.cone_constraints) t.cones.push_back(sanitize_name(r.name));
    auto check_len = [max_len](const std::string& n) {
        if (n.size() > max_len)
            throw EmitError("name '" + n + "' exceeds " + std::to_string(max_len) +
                            " characters");
    };
    check_len(t.objective);
    for (const auto& n : t.vars) check_len(n);
    for (const auto& n : t.lin) check_len(n);
    for (const auto& n : t.cones) check_len(n);
    return t;
}

constexpr std::size_t kLpWrap = 240;

class LpLine {
public:
    explicit LpLine(std::string& out) : out_(out) {}
    void token(std::string_view tok) {
        if (width_ > 0 && width_ + tok.size() + 1 > kLpWrap) {
            out_ += "\n   ";
            width_ = 3;
        } else if (width_ > 0) {
            out_ += ' ';
            ++width_;
        }
        out_ += tok;
        width_ += tok.size();
    }
    void finish() { out_ += '\n'; }

private:
    std::string& out_;
    std::size_t width_ = 0;
};

void lp_terms(LpLine& line, const ModelIR& model, const NameTable& names,
              std::span<const std::pair<std::int32_t, double>> coeffs, int precision) {
    for (auto [var, coeff] : coeffs) {
        if (var < 0 || static_cast<std::size_t>(var) >= model.variables.size())
            throw EmitError("constraint references a missing variable");
        line.token(coeff < 0 ? "-" : "+");
        line.token(fmt(std::abs(coeff), precision));
        line.token(names.vars[static_cast<std::size_t>(var)]);
    }
}

const char* lp_sense(Sense s) {
    switch (s) {
    case Sense::le: return "<=";
    case Sense::eq: return "=";
    case Sense::ge: return ">=";
    }
    return "=";
}

bool essentially_free(const Variable& v) {
    return v.lb == -std::numeric_limits<double>::infinity() &&
           v.ub == std::numeric_limits<double>::infinity();
}

} // namespace

std::string write_lp(const ModelIR& model, const EmitOptions& opts) {
    check_precision(opts);
    const NameTable names = sanitize_all(model, opts, 255);
    const int prec = opts.precision;

    std::string out;
    out.reserve(4096 + model.linear_constraints.size() * 64 +
                model.variables.size() * 48);
    out += "\\ ";
    out += model.name.empty() ? "model" : model.name;
    out += "\nMinimize\n";
    {
        LpLine line(out);
        line.token(" " + names.objective + ":");
        if (model.objective.empty()) line.token("0");
        else lp_terms(line, model, names, model.objective, prec);
        line.finish();
    }
    if (!model.linear_constraints.empty() || !model.cone_constraints.empty()) {
        out += "Subject To\n";
        for (std::size_t i = 0; i < model.linear_constraints.size(); ++i) {
            const LinearRow& r = model.linear_constraints[i];
            LpLine line(out);
            line.token(" " + names.lin[i] + ":");
            if (r.coeffs.empty()) line.token("0");
            else lp_terms(line, model, names, r.coeffs, prec);
            line.token(lp_sense(r.sense));
            line.token(fmt(r.rhs, prec));
            line.finish();
        }
        for (std::size_t i = 0; i < model.cone_constraints.size(); ++i) {
            const ConeRow& r = model.cone_constraints[i];
            auto var = [&](std::int32_t v) -> const std::string& {
                if (v < 0 || static_cast<std::size_t>(v) >= model.variables.size())
                    throw EmitError("cone row references a missing variable");
                return names.vars[static_cast<std::size_t>(v)];
            };
            // p^2 + q^2 - u*v <= 0, one row per rotated cone
            out += " " + names.cones[i] + ": [ " + var(r.p) + " ^ 2 + " + var(r.q) +
                   " ^ 2 - " + var(r.u) + " * " + var(r.v) + " ] <= 0\n";
        }
    }
    {
        bool any = false;
        std::string section;
        for (std::size_t i = 0; i < model.variables.size(); ++i) {
            const Variable& v = model.variables[i];
            if (v.kind == VarKind::binary) {
                // fixed binaries still need their pin; [0,1] is implied
                if (v.lb == v.ub)
                    section += " " + names.vars[i] + " = " + fmt(v.lb, prec) + "\n";
                continue;
            }
            any = true;
            if (essentially_free(v)) section += " " + names.vars[i] + " free\n";
            else if (v.lb == v.ub)
                section += " " + names.vars[i] + " = " + fmt(v.lb, prec) + "\n";
            else
                section += " " + fmt(v.lb, prec) + " <= " + names.vars[i] +
                           " <= " + fmt(v.ub, prec) + "\n";
        }
        if (any || !section.empty()) {
            out += "Bounds\n";
            out += section;
        }
    }
    {
        std::string section;
        LpLine line(section);
        bool any = false;
        for (std::size_t i = 0; i < model.variables.size(); ++i)
            if (model.variables[i].kind == VarKind::binary) {
                if (!any) line.token("");
                any = true;
                line.token(names.vars[i]);
            }
        if (any) {
            line.finish();
            out += "Binaries\n";
            out += section;
        }
    }
    out += "End\n";
    return out;
}

std::string write_mps(const ModelIR& model, const EmitOptions& opts) {
    check_precision(opts);
    const NameTable names = sanitize_all(model, opts, 255);
    const int prec = opts.precision;

    std::string out;
    out.reserve(4096 + model.linear_constraints.size() * 80 +
                model.variables.size() * 96);
    out += "* ";
    out += model.name.empty() ? "model" : model.name;
    out += "\nNAME ";
    out += model.name.empty() ? "model" : model.name;
    out += "\nROWS\n N  " + names.objective + "\n";
    for (std::size_t i = 0; i < model.linear_constraints.size(); ++i) {
        switch (model.linear_constraints[i].sense) {
        case Sense::le: out += " L  "; break;
        case Sense::eq: out += " E  "; break;
        case Sense::ge: out += " G  "; break;
        }
        out += names.lin[i];
        out += '\n';
    }
    for (const std::string& n : names.cones) {
        out += " L  ";
        out += n;
        out += '\n';
    }

    // column-major view of the linear rows and the objective
    std::vector<std::vector<std::pair<std::int32_t, double>>> columns(
        model.variables.size());
    for (auto [var, coeff] : model.objective) {
        if (var < 0 || static_cast<std::size_t>(var) >= model.variables.size())
            throw EmitError("objective references a missing variable");
        columns[static_cast<std::size_t>(var)].emplace_back(-1, coeff);
    }
    for (std::size_t r = 0; r < model.linear_constraints.size(); ++r)
        for (auto [var, coeff] : model.linear_constraints[r].coeffs) {
            if (var < 0 || static_cast<std::size_t>(var) >= model.variables.size())
                throw EmitError("constraint references a missing variable");
            columns[static_cast<std::size_t>(var)].emplace_back(
                static_cast<std::int32_t>(r), coeff);
        }

    out += "COLUMNS\n";
    bool integer_mode = false;
    auto set_mode = [&out, &integer_mode](bool want) {
        if (want == integer_mode) return;
        out += want ? "    MARKER  'MARKER'  'INTORG'\n"
                    : "    MARKER  'MARKER'  'INTEND'\n";
        integer_mode = want;
    };
    for (std::size_t v = 0; v < model.variables.size(); ++v) {
        set_mode(model.variables[v].kind == VarKind::binary);
        const std::string& vn = names.vars[v];
        const auto& entries = columns[v];
        if (entries.empty()) {
            // orphan column: keep it alive with an explicit zero objective entry
            out += "    " + vn + "  " + names.objective + "  0\n";
            continue;
        }
        for (std::size_t k = 0; k < entries.size(); k += 2) {
            out += "    " + vn;
            for (std::size_t j = k; j < std::min(k + 2, entries.size()); ++j) {
                auto [r, coeff] = entries[j];
                out += "  " + (r < 0 ? names.objective
                                     : names.lin[static_cast<std::size_t>(r)]) +
                       "  " + fmt(coeff, prec);
            }
            out += '\n';
        }
    }
    set_mode(false);

    out += "RHS\n";
    for (std::size_t r = 0; r < model.linear_constraints.size(); ++r)
        if (model.linear_constraints[r].rhs != 0.0)
            out += "    RHS  " + names.lin[r] + "  " +
                   fmt(model.linear_constraints[r].rhs, prec) + "\n";

    out += "BOUNDS\n";
    for (std::size_t v = 0; v < model.variables.size(); ++v) {
        const Variable& var = model.variables[v];
        const std::string& vn = names.vars[v];
        if (var.kind == VarKind::binary) {
            if (var.lb == var.ub)
                out += " FX BND  " + vn + "  " + fmt(var.lb, prec) + "\n";
            else out += " BV BND  " + vn + "\n";
        } else if (essentially_free(var)) {
            out += " FR BND  " + vn + "\n";
        } else if (var.lb == var.ub) {
            out += " FX BND  " + vn + "  " + fmt(var.lb, prec) + "\n";
        } else {
            out += " LO BND  " + vn + "  " + fmt(var.lb, prec) + "\n";
            out += " UP BND  " + vn + "  " + fmt(var.ub, prec) + "\n";
        }
    }

    for (std::size_t i = 0; i < model.cone_constraints.size(); ++i) {
        const ConeRow& r = model.cone_constraints[i];
        auto var = [&](std::int32_t v) -> const std::string& {
            if (v < 0 || static_cast<std::size_t>(v) >= model.variables.size())
                throw EmitError("cone row references a missing variable");
            return names.vars[static_cast<std::size_t>(v)];
        };
        // full symmetric Q of p^2 + q^2 - u*v, row sense <= 0
        out += "QCMATRIX  " + names.cones[i] + "\n";
        out += "    " + var(r.p) + "  " + var(r.p) + "  1\n";
        out += "    " + var(r.q) + "  " + var(r.q) + "  1\n";
        out += "    " + var(r.u) + "  " + var(r.v) + "  -0.5\n";
        out += "    " + var(r.v) + "  " + var(r.u) + "  -0.5\n";
    }
    out += "ENDATA\n";
    return out;
}

namespace {

std::vector<std::string_view> lines_of(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        lines.push_back(text.substr(pos, eol - pos));
        if (eol == text.size()) break;
        pos = eol + 1;
    }
    return lines;
}

std::vector<std::string_view> tokens_of(std::string_view line) {
    std::vector<std::string_view> toks;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i > start) toks.push_back(line.substr(start, i - start));
    }
    return toks;
}

ModelStats read_back_lp(std::string_view text) {
    ModelStats stats;
    enum class Section { preamble, objective, rows, bounds, binaries, done };
    Section section = Section::preamble;
    std::set<std::string, std::less<>> binaries;
    std::set<std::string, std::less<>> bounded;
    bool saw_minimize = false, saw_end = false;
    bool in_cone_row = false;

    for (std::string_view raw : lines_of(text)) {
        if (!raw.empty() && raw[0] == '\\') continue;
        auto toks = tokens_of(raw);
        if (toks.empty()) continue;
        if (toks.size() == 1 && toks[0] == "Minimize") {
            section = Section::objective;
            saw_minimize = true;
            continue;
        }
        if (toks.size() == 2 && toks[0] == "Subject" && toks[1] == "To") {
            section = Section::rows;
            continue;
        }
        if (toks.size() == 1 && toks[0] == "Bounds") {
            section = Section::bounds;
            continue;
        }
        if (toks.size() == 1 && toks[0] == "Binaries") {
            section = Section::binaries;
            continue;
        }
        if (toks.size() == 1 && toks[0] == "End") {
            section = Section::done;
            saw_end = true;
            continue;
        }
        switch (section) {
        case Section::preamble:
            throw EmitError("unrecognized LP preamble");
        case Section::objective:
            break; // term counts of the objective are not part of ModelStats
        case Section::rows: {
            const bool starts_row = !toks.empty() && toks[0].back() == ':';
            if (starts_row) {
                in_cone_row = raw.find('[') != std::string_view::npos;
                if (in_cone_row) stats.n_cone_constraints += 1;
                else stats.n_linear_constraints += 1;
            }
            if (!in_cone_row) {
                // coefficient terms carry explicit sign tokens; stop at the sense
                for (std::size_t i = starts_row ? 1 : 0; i < toks.size(); ++i) {
                    if (toks[i] == "<=" || toks[i] == ">=" || toks[i] == "=") break;
                    if (toks[i] == "+" || toks[i] == "-") stats.nonzeros += 1;
                }
            }
            break;
        }
        case Section::bounds: {
            if (toks.size() >= 2 && toks[1] == "free") bounded.insert(std::string(toks[0]));
            else if (toks.size() == 3 && toks[1] == "=") bounded.insert(std::string(toks[0]));
            else if (toks.size() == 5 && toks[1] == "<=" && toks[3] == "<=")
                bounded.insert(std::string(toks[2]));
            else throw EmitError("unrecognized LP bounds line");
            break;
        }
        case Section::binaries:
            for (auto t : toks) binaries.insert(std::string(t));
            break;
        case Section::done:
            throw EmitError("content after End");
        }
    }
    if (!saw_minimize || !saw_end) throw EmitError("not an LP file produced by this emitter");
    stats.n_binary = binaries.size();
    for (const auto& n : bounded)
        if (!binaries.count(n)) stats.n_continuous += 1;
    // zero-coefficient rows contribute no sign tokens; nothing to adjust
    return stats;
}

ModelStats read_back_mps(std::string_view text) {
    ModelStats stats;
    enum class Section { preamble, rows, columns, rhs, bounds, qcmatrix, done };
    Section section = Section::preamble;
    std::string obj_name;
    std::unordered_set<std::string> cone_rows;
    std::unordered_set<std::string> columns_seen;
    std::unordered_set<std::string> integer_columns;
    bool integer_mode = false;
    std::size_t lge_rows = 0;
    bool saw_name = false, saw_endata = false;

    for (std::string_view raw : lines_of(text)) {
        if (!raw.empty() && raw[0] == '*') continue;
        auto toks = tokens_of(raw);
        if (toks.empty()) continue;
        if (toks[0] == "NAME") {
            saw_name = true;
            continue;
        }
        if (toks.size() == 1 && toks[0] == "ROWS") { section = Section::rows; continue; }
        if (toks.size() == 1 && toks[0] == "COLUMNS") { section = Section::columns; continue; }
        if (toks.size() == 1 && toks[0] == "RHS") { section = Section::rhs; continue; }
        if (toks.size() == 1 && toks[0] == "BOUNDS") { section = Section::bounds; continue; }
        if (toks[0] == "QCMATRIX") {
            if (toks.size() != 2) throw EmitError("malformed QCMATRIX header");
            cone_rows.insert(std::string(toks[1]));
            section = Section::qcmatrix;
            continue;
        }
        if (toks.size() == 1 && toks[0] == "ENDATA") {
            section = Section::done;
            saw_endata = true;
            continue;
        }
        switch (section) {
        case Section::preamble:
            throw EmitError("unrecognized MPS preamble");
        case Section::rows:
            if (toks.size() != 2) throw EmitError("malformed ROWS line");
            if (toks[0] == "N") obj_name = std::string(toks[1]);
            else lge_rows += 1;
            break;
        case Section::columns: {
            if (toks.size() >= 3 && toks[1] == "'MARKER'") {
                integer_mode = toks[2] == "'INTORG'";
                break;
            }
            if (toks.size() != 3 && toks.size() != 5)
                throw EmitError("malformed COLUMNS line");
            std::string col(toks[0]);
            columns_seen.insert(col);
            if (integer_mode) integer_columns.insert(col);
            for (std::size_t i = 1; i + 1 < toks.size(); i += 2)
                if (toks[i] != obj_name) stats.nonzeros += 1;
            break;
        }
        case Section::rhs:
        case Section::qcmatrix:
            break;
        case Section::bounds:
            if (toks.size() < 3) throw EmitError("malformed BOUNDS line");
            break;
        case Section::done:
            throw EmitError("content after ENDATA");
        }
    }
    if (!saw_name || !saw_endata)
        throw EmitError("not an MPS file produced by this emitter");
    stats.n_cone_constraints = cone_rows.size();
    stats.n_linear_constraints = lge_rows - cone_rows.size();
    stats.n_binary = integer_columns.size();
    stats.n_continuous = columns_seen.size() - integer_columns.size();
    return stats;
}

} // namespace

ModelStats read_back_stats(std::string_view text, EmitFormat format) {
    return format == EmitFormat::lp ? read_back_lp(text) : read_back_mps(text);
}

} // namespace radkit
