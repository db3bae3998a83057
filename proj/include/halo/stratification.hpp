#pragma once

#include "halo/complex.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace halo {

// Integer level per cell. Monotone under the face order, so each sublevel
// X_i = { level <= i } is a subcomplex.
struct LevelMap {
    std::vector<int> level;
};

class StratificationError : public InputError {
  public:
    StratificationError(const std::string& message, CellId parent, CellId child)
        : InputError(message), parent(parent), child(child)
    {
    }
    CellId parent;
    CellId child;
};

struct Stratum {
    std::string id;
    int level = 0;
    CellSet cells;
};

// Strata are the zigzag-connected components of the level differences.
// `domain` is the whole complex unless the stratification was induced on a
// subcomplex. cell_to_stratum is -1 outside the domain.
struct Stratification {
    CellSet domain;
    std::vector<int> level;
    std::vector<Stratum> strata;
    std::vector<int> cell_to_stratum;

    bool covers(const Complex& c) const { return domain.size() == c.size(); }
};

namespace detail {

inline Stratification strata_of(const Complex& c, const CellSet& domain,
                                const std::vector<int>& level)
{
    Stratification s;
    s.domain = domain;
    s.level = level;
    s.cell_to_stratum.assign(c.size(), -1);
    int max_level = -1;
    for (CellId id : domain)
        max_level = std::max(max_level, level[id]);
    for (int lv = 0; lv <= max_level; ++lv) {
        CellSet slice;
        for (CellId id : domain)
            if (level[id] == lv)
                slice.push_back(id);
        for (CellSet& piece : connected_components(c, slice)) {
            const int index = static_cast<int>(s.strata.size());
            for (CellId id : piece)
                s.cell_to_stratum[id] = index;
            s.strata.push_back({"s" + std::to_string(index), lv, std::move(piece)});
        }
    }
    return s;
}

} // namespace detail

inline Stratification compute_strata(const Complex& c, const LevelMap& levels)
{
    if (levels.level.size() != c.size())
        throw InputError("level map does not cover the complex");
    for (CellId id = 0; static_cast<std::size_t>(id) < c.size(); ++id)
        if (levels.level[id] < 0)
            throw InputError("negative level on cell '" + c.token(id) + "'");
    for (const auto& [parent, child] : c.covering_pairs())
        if (levels.level[child] > levels.level[parent])
            throw StratificationError("level map not monotone: level('" + c.token(child) +
                                          "') > level('" + c.token(parent) + "')",
                                      parent, child);
    return detail::strata_of(c, c.all_cells(), levels.level);
}

struct FrontierViolation {
    int stratum_s = -1;      // the stratum whose closure meets T
    int stratum_t = -1;      // the stratum not contained in that closure
    CellId witness = -1;     // least cell of S whose closure meets T
    CellId missing = -1;     // least cell of T outside cl(S)
};

struct FrontierReport {
    bool passes = true;
    std::vector<FrontierViolation> violations;
};

// Frontier axiom at stratum granularity: whenever cl(S) meets a stratum T, T
// is contained in cl(S). Detection reduces to single cells since cl(S) is the
// union of the cl(sigma) over sigma in S; containment of any connected subset
// of T follows from containment of T itself.
inline FrontierReport check_frontier(const Complex& c, const Stratification& s)
{
    FrontierReport report;
    std::vector<CellSet> closures(s.strata.size());
    for (std::size_t i = 0; i < s.strata.size(); ++i)
        closures[i] = closure(c, s.strata[i].cells);
    for (std::size_t si = 0; si < s.strata.size(); ++si) {
        for (std::size_t ti = 0; ti < s.strata.size(); ++ti) {
            if (!sets_intersect(closures[si], s.strata[ti].cells))
                continue;
            if (set_includes(closures[si], s.strata[ti].cells))
                continue;
            FrontierViolation v;
            v.stratum_s = static_cast<int>(si);
            v.stratum_t = static_cast<int>(ti);
            for (CellId sigma : s.strata[si].cells)
                if (sets_intersect(c.face_set(sigma), s.strata[ti].cells)) {
                    v.witness = sigma;
                    break;
                }
            v.missing = set_difference_of(s.strata[ti].cells, closures[si]).front();
            report.passes = false;
            report.violations.push_back(v);
        }
    }
    return report;
}

// Partial order on strata: T <= S iff T meets cl(S).
struct StratumOrder {
    std::vector<std::string> ids;
    std::vector<std::vector<bool>> leq_matrix;

    bool leq(int t, int s) const { return leq_matrix[t][s]; }

    std::vector<std::pair<int, int>> strict_pairs() const
    {
        std::vector<std::pair<int, int>> out;
        for (std::size_t t = 0; t < ids.size(); ++t)
            for (std::size_t s = 0; s < ids.size(); ++s)
                if (t != s && leq_matrix[t][s])
                    out.emplace_back(static_cast<int>(t), static_cast<int>(s));
        return out;
    }
};

inline StratumOrder stratum_order(const Complex& c, const Stratification& s)
{
    if (!check_frontier(c, s).passes)
        throw InputError("stratum order requires a frontier-valid stratification");
    const std::size_t n = s.strata.size();
    StratumOrder order;
    order.ids.reserve(n);
    for (const Stratum& st : s.strata)
        order.ids.push_back(st.id);
    order.leq_matrix.assign(n, std::vector<bool>(n, false));
    std::vector<CellSet> closures(n);
    for (std::size_t i = 0; i < n; ++i)
        closures[i] = closure(c, s.strata[i].cells);
    for (std::size_t t = 0; t < n; ++t)
        for (std::size_t si = 0; si < n; ++si)
            order.leq_matrix[t][si] = sets_intersect(s.strata[t].cells, closures[si]);

    for (std::size_t t = 0; t < n; ++t)
        for (std::size_t si = 0; si < n; ++si) {
            if (t != si && order.leq_matrix[t][si] && order.leq_matrix[si][t])
                throw std::logic_error("stratum order is not antisymmetric");
            if (order.leq_matrix[t][si])
                for (std::size_t r = 0; r < n; ++r)
                    if (order.leq_matrix[si][r] && !order.leq_matrix[t][r])
                        throw std::logic_error("stratum order is not transitive");
        }
    return order;
}

// Convexity of strata is a consequence of the frontier axiom; the check is a
// redundant safety net and a test oracle.
inline ValidationReport check_convexity(const Complex& c, const Stratification& s)
{
    ValidationReport report;
    for (std::size_t si = 0; si < s.strata.size(); ++si) {
        const CellSet& cells = s.strata[si].cells;
        for (CellId low : cells)
            for (CellId high : cells) {
                if (low == high || !c.leq(low, high))
                    continue;
                for (CellId mid : set_intersection_of(c.face_set(high), c.coface_set(low))) {
                    if (!set_contains(s.domain, mid))
                        continue;
                    if (s.cell_to_stratum[mid] != static_cast<int>(si))
                        report.issues.push_back(
                            {"stratum-convexity",
                             "'" + c.token(mid) + "' lies between '" + c.token(low) + "' and '" +
                                 c.token(high) + "' of stratum " + s.strata[si].id});
                }
            }
    }
    return report;
}

// Restriction to a subcomplex. Ambient strata may split into several induced
// ones; the frontier axiom is not re-asserted here, callers that rely on it
// must re-check.
inline Stratification induced_stratification(const Complex& c, const Stratification& s,
                                             const CellSet& sub)
{
    if (!is_subcomplex(c, sub))
        throw InputError("induced stratification requires a subcomplex");
    for (CellId id : sub)
        if (!set_contains(s.domain, id))
            throw InputError("subcomplex leaves the stratification domain");
    return detail::strata_of(c, sub, s.level);
}

inline LevelMap skeletal_levels(const Complex& c)
{
    LevelMap lm;
    lm.level.resize(c.size());
    for (CellId id = 0; static_cast<std::size_t>(id) < c.size(); ++id)
        lm.level[id] = c.dim(id);
    return lm;
}

inline LevelMap trivial_levels(const Complex& c)
{
    LevelMap lm;
    lm.level.assign(c.size(), 0);
    return lm;
}

} // namespace halo
