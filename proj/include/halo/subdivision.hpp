#pragma once

#include "halo/complex.hpp"
#include "halo/morse.hpp"
#include "halo/stratification.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace halo {

// Barycentric subdivision: one simplex per strictly ascending chain of base
// cells, materialized eagerly. Chains are stored ascending in the base face
// order; the chain token "[a<ab<F]" doubles as the cell token of the
// subdivision complex, so the subdivision is itself a Complex and every
// poset operation applies to it unchanged.
struct SdComplex {
    Complex base;
    Complex sd;
    std::vector<std::vector<CellId>> chains; // by sd cell, base ids ascending in face order
    std::vector<CellId> last;                // by sd cell
    std::map<std::vector<CellId>, CellId> chain_index;

    bool stratified = false;
    std::vector<int> inherited_level;  // by sd cell
    Stratification inherited;          // strata of the subdivision
    std::vector<int> stratum_to_base;  // sd stratum index -> base stratum index

    CellId chain_id(const std::vector<CellId>& chain) const
    {
        auto it = chain_index.find(chain);
        if (it == chain_index.end())
            throw InputError("not a simplex of the subdivision");
        return it->second;
    }

    CellId vertex_id(CellId base_cell) const { return chain_id({base_cell}); }
};

namespace detail {

inline std::string chain_token(const Complex& base, const std::vector<CellId>& chain)
{
    std::string out = "[";
    for (std::size_t i = 0; i < chain.size(); ++i) {
        if (i > 0)
            out += '<';
        out += base.token(chain[i]);
    }
    out += ']';
    return out;
}

} // namespace detail

inline SdComplex barycentric_subdivide(const Complex& c)
{
    SdComplex result;
    result.base = c;

    std::vector<CellId> by_dim = c.all_cells();
    std::sort(by_dim.begin(), by_dim.end(), [&](CellId a, CellId b) {
        if (c.dim(a) != c.dim(b))
            return c.dim(a) < c.dim(b);
        return a < b;
    });

    std::vector<std::vector<std::vector<CellId>>> ending_at(c.size());
    std::vector<std::vector<CellId>> all_chains;
    for (CellId sigma : by_dim) {
        ending_at[sigma].push_back({sigma});
        for (CellId tau : c.face_set(sigma)) {
            if (tau == sigma)
                continue;
            for (const auto& chain : ending_at[tau]) {
                std::vector<CellId> extended = chain;
                extended.push_back(sigma);
                ending_at[sigma].push_back(std::move(extended));
            }
        }
        for (const auto& chain : ending_at[sigma])
            all_chains.push_back(chain);
    }

    std::vector<std::pair<std::string, int>> cells;
    cells.reserve(all_chains.size());
    for (const auto& chain : all_chains)
        cells.emplace_back(detail::chain_token(c, chain), static_cast<int>(chain.size()) - 1);
    std::vector<std::pair<std::string, std::string>> covering;
    for (const auto& chain : all_chains) {
        if (chain.size() < 2)
            continue;
        const std::string parent = detail::chain_token(c, chain);
        for (std::size_t drop = 0; drop < chain.size(); ++drop) {
            std::vector<CellId> face;
            for (std::size_t i = 0; i < chain.size(); ++i)
                if (i != drop)
                    face.push_back(chain[i]);
            covering.emplace_back(parent, detail::chain_token(c, face));
        }
    }
    result.sd = Complex::build(cells, covering);

    result.chains.resize(result.sd.size());
    result.last.resize(result.sd.size());
    for (const auto& chain : all_chains) {
        const CellId id = result.sd.require(detail::chain_token(c, chain));
        result.chains[id] = chain;
        result.last[id] = chain.back();
        result.chain_index[chain] = id;
    }
    return result;
}

// Stratified variant: levels and strata transport along the last-cell map.
// That the last-cell fibers are exactly the strata of the transported level
// map, and that the result is frontier-valid, are structural facts here and
// are asserted.
inline SdComplex barycentric_subdivide(const Complex& c, const Stratification& strat)
{
    if (!strat.covers(c))
        throw InputError("subdivision requires a stratification of the whole complex");
    SdComplex result = barycentric_subdivide(c);
    result.stratified = true;
    result.inherited_level.resize(result.sd.size());
    for (CellId id = 0; static_cast<std::size_t>(id) < result.sd.size(); ++id)
        result.inherited_level[id] = strat.level[result.last[id]];
    LevelMap lm;
    lm.level = result.inherited_level;
    result.inherited = compute_strata(result.sd, lm);

    result.stratum_to_base.assign(result.inherited.strata.size(), -1);
    for (std::size_t si = 0; si < result.inherited.strata.size(); ++si) {
        int base_stratum = -1;
        for (CellId id : result.inherited.strata[si].cells) {
            const int bs = strat.cell_to_stratum[result.last[id]];
            if (base_stratum == -1)
                base_stratum = bs;
            else if (base_stratum != bs)
                throw std::logic_error("subdivided stratum mixes last-cell strata");
        }
        result.stratum_to_base[si] = base_stratum;
    }
    std::vector<int> hits(strat.strata.size(), 0);
    for (int bs : result.stratum_to_base)
        ++hits[bs];
    for (int count : hits)
        if (count != 1)
            throw std::logic_error("inherited strata are not in bijection with base strata");
    if (!check_frontier(result.sd, result.inherited).passes)
        throw std::logic_error("inherited stratification violates the frontier axiom");
    return result;
}

// Max of the base values over a chain. Monotone on the face order of the
// subdivision, so its sublevelsets are subcomplexes without taking closures.
struct EnvelopeMap {
    std::vector<Rational> env;
};

inline EnvelopeMap upper_envelope(const SdComplex& sd, const ValueMap& f)
{
    if (f.value.size() != sd.base.size())
        throw InputError("value map does not cover the base complex");
    EnvelopeMap out;
    out.env.resize(sd.sd.size());
    for (CellId id = 0; static_cast<std::size_t>(id) < sd.sd.size(); ++id) {
        Rational m = f.value[sd.chains[id].front()];
        for (CellId member : sd.chains[id])
            if (f.value[member] > m)
                m = f.value[member];
        out.env[id] = m;
    }
    return out;
}

inline CellSet envelope_sublevel(const SdComplex& sd, const EnvelopeMap& env,
                                 const Rational& threshold, bool strict = false)
{
    CellSet out;
    for (CellId id = 0; static_cast<std::size_t>(id) < sd.sd.size(); ++id)
        if (strict ? env.env[id] < threshold : env.env[id] <= threshold)
            out.push_back(id);
    return out;
}

// Simplices whose chain omits sigma but can be augmented by it: every member
// is comparable with sigma. Insertion lands at the beginning, the end, or in
// the middle of the chain.
inline CellSet link_of_vertex(const SdComplex& sd, CellId base_cell)
{
    if (base_cell < 0 || static_cast<std::size_t>(base_cell) >= sd.base.size())
        throw InputError("cell id out of range");
    CellSet out;
    for (CellId id = 0; static_cast<std::size_t>(id) < sd.sd.size(); ++id) {
        bool augmentable = true;
        for (CellId member : sd.chains[id]) {
            if (member == base_cell || !sd.base.comparable(member, base_cell)) {
                augmentable = false;
                break;
            }
        }
        if (augmentable)
            out.push_back(id);
    }
    return out;
}

namespace detail {

inline ValueMap base_values_of(const SdComplex& sd, const EnvelopeMap& env)
{
    ValueMap f;
    f.value.resize(sd.base.size());
    for (CellId id = 0; static_cast<std::size_t>(id) < sd.base.size(); ++id)
        f.value[id] = env.env[sd.vertex_id(id)];
    return f;
}

} // namespace detail

// Link intersected with the strict envelope sublevel at the cell's own value.
// The base values must be injective; the envelope itself almost never is.
inline CellSet lower_link(const SdComplex& sd, const EnvelopeMap& env, CellId base_cell)
{
    detail::require_injective(sd.base, detail::base_values_of(sd, env));
    const Rational c = env.env[sd.vertex_id(base_cell)];
    CellSet out;
    for (CellId id : link_of_vertex(sd, base_cell))
        if (env.env[id] < c)
            out.push_back(id);
    return out;
}

struct HvSplit {
    CellSet horizontal; // chains ending strictly below sigma
    CellSet vertical;   // chains starting strictly above sigma
};

inline HvSplit hv_split(const SdComplex& sd, const EnvelopeMap& env, CellId base_cell)
{
    HvSplit split;
    for (CellId id : lower_link(sd, env, base_cell)) {
        const CellId first = sd.chains[id].front();
        const CellId last = sd.last[id];
        if (last != base_cell && sd.base.leq(last, base_cell))
            split.horizontal.push_back(id);
        else if (first != base_cell && sd.base.leq(base_cell, first))
            split.vertical.push_back(id);
    }
    return split;
}

// Join of two subcomplexes of a common subdivision: both inputs plus the
// union of every cross pair. Callers must arrange that each union is again a
// strictly ascending chain (automatic inside a link).
inline CellSet join_complexes(const SdComplex& sd, const CellSet& k_part, const CellSet& v_part)
{
    CellSet out = set_union_of(k_part, v_part);
    for (CellId a : k_part)
        for (CellId b : v_part) {
            const auto& left = sd.chains[a];
            const auto& right = sd.chains[b];
            std::vector<CellId> merged;
            merged.reserve(left.size() + right.size());
            merged.insert(merged.end(), left.begin(), left.end());
            merged.insert(merged.end(), right.begin(), right.end());
            std::sort(merged.begin(), merged.end(), [&](CellId x, CellId y) {
                if (x == y)
                    return false;
                if (sd.base.leq(x, y))
                    return true;
                if (sd.base.leq(y, x))
                    return false;
                throw InputError("join of '" + sd.sd.token(a) + "' and '" + sd.sd.token(b) +
                                 "' is not a chain");
            });
            for (std::size_t i = 0; i + 1 < merged.size(); ++i)
                if (merged[i] == merged[i + 1] || !sd.base.leq(merged[i], merged[i + 1]))
                    throw InputError("join of '" + sd.sd.token(a) + "' and '" + sd.sd.token(b) +
                                     "' is not a chain");
            out = set_union_of(out, {sd.chain_id(merged)});
        }
    return out;
}

struct CheckLine {
    std::string name;
    bool pass = true;
    std::string witness;
};

struct TheoremCReport {
    CellId cell = -1;
    bool critical = false;
    Rational epsilon;
    CellSet lower_link_cells;
    CellSet horizontal;
    CellSet vertical;
    std::vector<CheckLine> checks;

    bool pass() const
    {
        for (const CheckLine& line : checks)
            if (!line.pass)
                return false;
        return true;
    }
};

namespace detail {

inline std::string set_witness(const SdComplex& sd, const CellSet& a, const CellSet& b)
{
    CellSet diff = set_difference_of(a, b);
    if (diff.empty())
        diff = set_difference_of(b, a);
    return diff.empty() ? "" : sd.sd.token(diff.front());
}

inline void check_equal(const SdComplex& sd, TheoremCReport& report, const std::string& name,
                        const CellSet& got, const CellSet& expected)
{
    CheckLine line{name, got == expected, ""};
    if (!line.pass)
        line.witness = set_witness(sd, got, expected);
    report.checks.push_back(std::move(line));
}

} // namespace detail

// Pushout identity only: across the isolating interval of a cell, the upper
// sublevel is the lower one glued with the cone over the lower link along the
// lower link. Needs injectivity of the base values, nothing else.
inline TheoremCReport pushout_check(const SdComplex& sd, const EnvelopeMap& env, CellId base_cell)
{
    const ValueMap f = detail::base_values_of(sd, env);
    detail::require_injective(sd.base, f);
    TheoremCReport report;
    report.cell = base_cell;
    const Rational c = f.value[base_cell];
    report.epsilon = choose_epsilon(f, c);
    report.lower_link_cells = lower_link(sd, env, base_cell);

    const CellSet lower = envelope_sublevel(sd, env, c - report.epsilon);
    const CellSet upper = envelope_sublevel(sd, env, c + report.epsilon);
    const CellSet cone =
        join_complexes(sd, {sd.vertex_id(base_cell)}, report.lower_link_cells);
    detail::check_equal(sd, report, "pushout-union", upper, set_union_of(lower, cone));
    detail::check_equal(sd, report, "pushout-intersection", set_intersection_of(lower, cone),
                        report.lower_link_cells);
    return report;
}

// Full tangential/normal decomposition at a critical cell: the lower link
// splits as the join of its horizontal and vertical parts, the pushout
// identities hold with the cone taken over that join, the coned horizontal
// part stays in strata at or below the cell's own, and the vertical part
// lives strictly above it.
inline TheoremCReport theorem_c_check(const SdComplex& sd, const EnvelopeMap& env,
                                      const Stratification& strat, CellId base_cell)
{
    if (!sd.stratified)
        throw InputError("theorem check requires a stratified subdivision");
    const ValueMap f = detail::base_values_of(sd, env);
    detail::require_injective(sd.base, f);

    const int stratum = strat.cell_to_stratum[base_cell];
    const CellSet& own = strat.strata[stratum].cells;
    if (!set_intersection_of(upper_closure(sd.base, f, base_cell), own).empty() ||
        !set_intersection_of(lower_star(sd.base, f, base_cell), own).empty())
        throw InputError("cell '" + sd.base.token(base_cell) +
                         "' is not critical within its stratum");

    TheoremCReport report;
    report.cell = base_cell;
    report.critical = true;
    const Rational c = f.value[base_cell];
    report.epsilon = choose_epsilon(f, c);
    report.lower_link_cells = lower_link(sd, env, base_cell);
    HvSplit split = hv_split(sd, env, base_cell);
    report.horizontal = split.horizontal;
    report.vertical = split.vertical;

    const CellSet hv = join_complexes(sd, split.horizontal, split.vertical);
    detail::check_equal(sd, report, "join-decomposition", hv, report.lower_link_cells);

    const CellSet lower = envelope_sublevel(sd, env, c - report.epsilon);
    const CellSet upper = envelope_sublevel(sd, env, c + report.epsilon);
    const CellSet coned_h =
        join_complexes(sd, {sd.vertex_id(base_cell)}, split.horizontal);
    const CellSet cone_hv = join_complexes(sd, coned_h, split.vertical);
    detail::check_equal(sd, report, "pushout-union", upper, set_union_of(lower, cone_hv));
    detail::check_equal(sd, report, "pushout-intersection", set_intersection_of(lower, cone_hv),
                        hv);

    const StratumOrder order = stratum_order(sd.base, strat);
    CheckLine horizontal_line{"horizontal-strata", true, ""};
    for (CellId id : coned_h) {
        const int t = strat.cell_to_stratum[sd.last[id]];
        if (!order.leq(t, stratum)) {
            horizontal_line.pass = false;
            horizontal_line.witness = sd.sd.token(id);
            break;
        }
    }
    report.checks.push_back(std::move(horizontal_line));

    CheckLine vertical_line{"vertical-strata", true, ""};
    for (CellId id : split.vertical) {
        const int t = strat.cell_to_stratum[sd.last[id]];
        if (t == stratum || !order.leq(stratum, t)) {
            vertical_line.pass = false;
            vertical_line.witness = sd.sd.token(id);
            break;
        }
    }
    report.checks.push_back(std::move(vertical_line));
    return report;
}

} // namespace halo
