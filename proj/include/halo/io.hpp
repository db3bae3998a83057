#pragma once

#include "halo/complex.hpp"
#include "halo/conley.hpp"
#include "halo/morse.hpp"
#include "halo/stratification.hpp"
#include "halo/subdivision.hpp"

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace halo {

class ParseError : public InputError {
  public:
    ParseError(std::size_t line, const std::string& reason)
        : InputError("line " + std::to_string(line) + ": " + reason), line(line), reason(reason)
    {
    }
    std::size_t line;
    std::string reason;
};

// Parsed cwx document. Values are raw per-cell rationals; injectivity is a
// property demanded by the Morse operations, not by the file format (the
// envelope of a subdivision, for instance, repeats values).
struct ParseResult {
    Complex complex;
    std::optional<LevelMap> levels;
    std::optional<ValueMap> values;
    std::optional<MultivectorField> mvf;
};

namespace detail {

inline std::vector<std::string> split_fields(const std::string& line)
{
    std::vector<std::string> fields;
    std::istringstream stream(line);
    std::string field;
    while (stream >> field)
        fields.push_back(field);
    return fields;
}

} // namespace detail

// Line format: `cwx 1` header, then `cell <id> <dim>`, `face <parent>
// <child>`, `value <id> <decimal>`, `level <id> <int>`, `mvf <part> <id>`,
// with `#` comments. Ids must be declared before use; value/level maps, when
// present, must cover every cell.
inline ParseResult parse_cwx(const std::string& text)
{
    std::vector<std::pair<std::string, int>> cells;
    std::vector<std::pair<std::string, std::string>> covering;
    std::map<std::string, std::size_t> declared; // token -> declaration index
    std::map<std::string, Rational> values;
    std::map<std::string, int> levels;
    std::map<std::string, std::string> mvf_part_of;
    std::vector<std::string> mvf_part_order;

    bool header_seen = false;
    std::istringstream stream(text);
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(stream, line)) {
        ++line_number;
        std::vector<std::string> fields = detail::split_fields(line);
        if (fields.empty() || fields.front().front() == '#')
            continue;
        if (!header_seen) {
            if (fields.size() != 2 || fields[0] != "cwx" || fields[1] != "1")
                throw ParseError(line_number, "expected header 'cwx 1'");
            header_seen = true;
            continue;
        }
        const std::string& keyword = fields[0];
        auto require_declared = [&](const std::string& token) {
            if (!declared.count(token))
                throw ParseError(line_number, "undeclared cell '" + token + "'");
        };
        if (keyword == "cell") {
            if (fields.size() != 3)
                throw ParseError(line_number, "expected 'cell <id> <dim>'");
            if (declared.count(fields[1]))
                throw ParseError(line_number, "duplicate cell '" + fields[1] + "'");
            int dim = 0;
            try {
                std::size_t used = 0;
                dim = std::stoi(fields[2], &used);
                if (used != fields[2].size())
                    throw std::invalid_argument("");
            } catch (const std::exception&) {
                throw ParseError(line_number, "malformed dimension '" + fields[2] + "'");
            }
            if (dim < 0)
                throw ParseError(line_number, "negative dimension");
            declared[fields[1]] = cells.size();
            cells.emplace_back(fields[1], dim);
        } else if (keyword == "face") {
            if (fields.size() != 3)
                throw ParseError(line_number, "expected 'face <parent> <child>'");
            require_declared(fields[1]);
            require_declared(fields[2]);
            covering.emplace_back(fields[1], fields[2]);
        } else if (keyword == "value") {
            if (fields.size() != 3)
                throw ParseError(line_number, "expected 'value <id> <decimal>'");
            require_declared(fields[1]);
            if (values.count(fields[1]))
                throw ParseError(line_number, "duplicate value for cell '" + fields[1] + "'");
            try {
                values[fields[1]] = parse_decimal(fields[2]);
            } catch (const InputError& e) {
                throw ParseError(line_number, e.what());
            }
        } else if (keyword == "level") {
            if (fields.size() != 3)
                throw ParseError(line_number, "expected 'level <id> <int>'");
            require_declared(fields[1]);
            if (levels.count(fields[1]))
                throw ParseError(line_number, "duplicate level for cell '" + fields[1] + "'");
            int level = 0;
            try {
                std::size_t used = 0;
                level = std::stoi(fields[2], &used);
                if (used != fields[2].size())
                    throw std::invalid_argument("");
            } catch (const std::exception&) {
                throw ParseError(line_number, "malformed level '" + fields[2] + "'");
            }
            if (level < 0)
                throw ParseError(line_number, "negative level");
            levels[fields[1]] = level;
        } else if (keyword == "mvf") {
            if (fields.size() != 3)
                throw ParseError(line_number, "expected 'mvf <part> <id>'");
            require_declared(fields[2]);
            if (mvf_part_of.count(fields[2]))
                throw ParseError(line_number,
                                 "cell '" + fields[2] + "' already assigned to a part");
            if (!std::count(mvf_part_order.begin(), mvf_part_order.end(), fields[1]))
                mvf_part_order.push_back(fields[1]);
            mvf_part_of[fields[2]] = fields[1];
        } else {
            throw ParseError(line_number, "unknown keyword '" + keyword + "'");
        }
    }
    if (!header_seen && !text.empty() && line_number > 0)
        throw ParseError(line_number, "missing header 'cwx 1'");
    if (!header_seen)
        throw ParseError(1, "missing header 'cwx 1'");

    ParseResult result;
    result.complex = Complex::build(cells, covering);
    const Complex& c = result.complex;
    if (!values.empty()) {
        ValueMap f;
        f.value.resize(c.size());
        for (CellId id = 0; static_cast<std::size_t>(id) < c.size(); ++id) {
            auto it = values.find(c.token(id));
            if (it == values.end())
                throw ParseError(line_number, "value map misses cell '" + c.token(id) + "'");
            f.value[id] = it->second;
        }
        result.values = std::move(f);
    }
    if (!levels.empty()) {
        LevelMap lm;
        lm.level.resize(c.size());
        for (CellId id = 0; static_cast<std::size_t>(id) < c.size(); ++id) {
            auto it = levels.find(c.token(id));
            if (it == levels.end())
                throw ParseError(line_number, "level map misses cell '" + c.token(id) + "'");
            lm.level[id] = it->second;
        }
        result.levels = std::move(lm);
    }
    if (!mvf_part_of.empty()) {
        MultivectorField mvf;
        mvf.cell_to_part.assign(c.size(), -1);
        std::sort(mvf_part_order.begin(), mvf_part_order.end());
        for (const std::string& part_id : mvf_part_order) {
            Multivector part;
            part.id = part_id;
            for (const auto& [token, owner] : mvf_part_of)
                if (owner == part_id)
                    part.cells.push_back(c.require(token));
            part.cells = make_cell_set(part.cells);
            for (CellId id : part.cells)
                mvf.cell_to_part[id] = static_cast<int>(mvf.parts.size());
            mvf.parts.push_back(std::move(part));
        }
        result.mvf = std::move(mvf);
    }
    return result;
}

// Canonical serialization: cells, faces, values, levels, mvf lines, each
// block sorted. parse(serialize(x)) reproduces x exactly.
inline std::string serialize_cwx(const Complex& c, const LevelMap* levels = nullptr,
                                 const ValueMap* values = nullptr,
                                 const MultivectorField* mvf = nullptr)
{
    std::ostringstream out;
    out << "cwx 1\n";
    for (CellId id = 0; static_cast<std::size_t>(id) < c.size(); ++id)
        out << "cell " << c.token(id) << " " << c.dim(id) << "\n";
    std::vector<std::pair<std::string, std::string>> faces;
    for (const auto& [p, ch] : c.covering_pairs())
        faces.emplace_back(c.token(p), c.token(ch));
    std::sort(faces.begin(), faces.end());
    for (const auto& [p, ch] : faces)
        out << "face " << p << " " << ch << "\n";
    if (values != nullptr)
        for (CellId id = 0; static_cast<std::size_t>(id) < c.size(); ++id)
            out << "value " << c.token(id) << " " << format_rational(values->value[id]) << "\n";
    if (levels != nullptr)
        for (CellId id = 0; static_cast<std::size_t>(id) < c.size(); ++id)
            out << "level " << c.token(id) << " " << levels->level[id] << "\n";
    if (mvf != nullptr) {
        std::vector<std::pair<std::string, std::string>> lines;
        for (const Multivector& part : mvf->parts)
            for (CellId id : part.cells)
                lines.emplace_back(part.id, c.token(id));
        std::sort(lines.begin(), lines.end());
        for (const auto& [part, token] : lines)
            out << "mvf " << part << " " << token << "\n";
    }
    return out.str();
}

// The subdivision in the same format, chain tokens as cell ids, with the
// inherited levels and envelope values when available.
inline std::string serialize_subdivision(const SdComplex& sd, const EnvelopeMap* env = nullptr)
{
    LevelMap lm;
    const LevelMap* lm_ptr = nullptr;
    if (sd.stratified) {
        lm.level = sd.inherited_level;
        lm_ptr = &lm;
    }
    ValueMap vm;
    const ValueMap* vm_ptr = nullptr;
    if (env != nullptr) {
        vm.value = env->env;
        vm_ptr = &vm;
    }
    return serialize_cwx(sd.sd, lm_ptr, vm_ptr);
}

} // namespace halo
