#pragma once

#include "halo/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace halo {

// Cells are indexed after sorting their tokens, so CellId order coincides
// with token order. All set-valued results are emitted in this order.
using CellId = std::int32_t;

// Sorted, duplicate-free vector of cell ids.
using CellSet = std::vector<CellId>;

inline CellSet make_cell_set(std::vector<CellId> ids)
{
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
}

inline bool set_contains(const CellSet& s, CellId id)
{
    return std::binary_search(s.begin(), s.end(), id);
}

inline CellSet set_union_of(const CellSet& a, const CellSet& b)
{
    CellSet out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline CellSet set_intersection_of(const CellSet& a, const CellSet& b)
{
    CellSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline CellSet set_difference_of(const CellSet& a, const CellSet& b)
{
    CellSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline bool set_includes(const CellSet& big, const CellSet& small)
{
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

inline bool sets_intersect(const CellSet& a, const CellSet& b)
{
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib)
            ++ia;
        else if (*ib < *ia)
            ++ib;
        else
            return true;
    }
    return false;
}

struct ValidationIssue {
    std::string rule;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool ok() const { return issues.empty(); }
};

// Face poset of a finite regular CW complex, stored via the codimension-1
// covering pairs. The full face order is the reflexive-transitive closure of
// the covering relation, memoized at construction. Immutable once built.
class Complex {
  public:
    Complex() = default;

    static Complex build(const std::vector<std::pair<std::string, int>>& cells,
                         const std::vector<std::pair<std::string, std::string>>& covering)
    {
        Complex c;
        c.tokens_.reserve(cells.size());
        for (const auto& [token, dim] : cells) {
            if (token.empty())
                throw InputError("empty cell token");
            if (dim < 0)
                throw InputError("negative dimension for cell '" + token + "'");
        }
        std::vector<std::pair<std::string, int>> sorted = cells;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i + 1 < sorted.size(); ++i)
            if (sorted[i].first == sorted[i + 1].first)
                throw InputError("duplicate cell token '" + sorted[i].first + "'");
        for (const auto& [token, dim] : sorted) {
            c.index_[token] = static_cast<CellId>(c.tokens_.size());
            c.tokens_.push_back(token);
            c.dims_.push_back(dim);
        }
        const std::size_t n = c.tokens_.size();
        c.children_.assign(n, {});
        c.parents_.assign(n, {});
        for (const auto& [parent, child] : covering) {
            const CellId p = c.require(parent);
            const CellId ch = c.require(child);
            c.pairs_.emplace_back(p, ch);
        }
        std::sort(c.pairs_.begin(), c.pairs_.end());
        c.pairs_.erase(std::unique(c.pairs_.begin(), c.pairs_.end()), c.pairs_.end());
        for (const auto& [p, ch] : c.pairs_) {
            c.children_[p].push_back(ch);
            c.parents_[ch].push_back(p);
        }
        for (auto& v : c.children_)
            std::sort(v.begin(), v.end());
        for (auto& v : c.parents_)
            std::sort(v.begin(), v.end());
        c.compute_order();
        return c;
    }

    std::size_t size() const { return tokens_.size(); }
    int dim(CellId id) const { return dims_[check(id)]; }
    const std::string& token(CellId id) const { return tokens_[check(id)]; }

    std::optional<CellId> find(const std::string& token) const
    {
        auto it = index_.find(token);
        if (it == index_.end())
            return std::nullopt;
        return it->second;
    }

    CellId require(const std::string& token) const
    {
        auto it = index_.find(token);
        if (it == index_.end())
            throw InputError("unknown cell '" + token + "'");
        return it->second;
    }

    const CellSet& covering_children(CellId id) const { return children_[check(id)]; }
    const CellSet& covering_parents(CellId id) const { return parents_[check(id)]; }
    const std::vector<std::pair<CellId, CellId>>& covering_pairs() const { return pairs_; }

    // All tau <= sigma / tau >= sigma in the face order, including sigma.
    // Only meaningful when the covering digraph is acyclic.
    const CellSet& face_set(CellId id) const { return faces_[check(id)]; }
    const CellSet& coface_set(CellId id) const { return cofaces_[check(id)]; }

    bool leq(CellId a, CellId b) const { return set_contains(faces_[check(b)], check(a)); }
    bool comparable(CellId a, CellId b) const { return leq(a, b) || leq(b, a); }
    bool order_acyclic() const { return acyclic_; }

    int max_dim() const
    {
        int d = -1;
        for (int v : dims_)
            d = std::max(d, v);
        return d;
    }

    CellSet all_cells() const
    {
        CellSet out(size());
        for (std::size_t i = 0; i < size(); ++i)
            out[i] = static_cast<CellId>(i);
        return out;
    }

    long long euler_characteristic() const
    {
        long long chi = 0;
        for (int d : dims_)
            chi += (d % 2 == 0) ? 1 : -1;
        return chi;
    }

  private:
    CellId check(CellId id) const
    {
        if (id < 0 || static_cast<std::size_t>(id) >= tokens_.size())
            throw InputError("cell id out of range");
        return id;
    }

    void compute_order()
    {
        const std::size_t n = tokens_.size();
        faces_.assign(n, {});
        cofaces_.assign(n, {});
        std::vector<int> color(n, 0); // 0 fresh, 1 on stack, 2 done
        for (std::size_t root = 0; root < n; ++root) {
            if (color[root] == 2)
                continue;
            // iterative DFS; a back edge marks the covering digraph cyclic
            std::vector<std::pair<CellId, std::size_t>> stack;
            stack.emplace_back(static_cast<CellId>(root), 0);
            color[root] = 1;
            while (!stack.empty()) {
                auto& [u, next] = stack.back();
                if (next < children_[u].size()) {
                    CellId ch = children_[u][next++];
                    if (color[ch] == 0) {
                        color[ch] = 1;
                        stack.emplace_back(ch, 0);
                    } else if (color[ch] == 1) {
                        acyclic_ = false;
                    }
                } else {
                    CellSet acc = {u};
                    for (CellId ch : children_[u])
                        if (color[ch] == 2)
                            acc = set_union_of(acc, faces_[ch]);
                    faces_[u] = std::move(acc);
                    color[u] = 2;
                    stack.pop_back();
                }
            }
        }
        for (std::size_t u = 0; u < n; ++u)
            for (CellId t : faces_[u])
                cofaces_[t].push_back(static_cast<CellId>(u));
        for (auto& v : cofaces_)
            std::sort(v.begin(), v.end());
    }

    std::vector<std::string> tokens_;
    std::vector<int> dims_;
    std::map<std::string, CellId> index_;
    std::vector<std::pair<CellId, CellId>> pairs_;
    std::vector<CellSet> children_, parents_;
    std::vector<CellSet> faces_, cofaces_;
    bool acyclic_ = true;
};

namespace detail {

inline void check_ids(const Complex& c, const CellSet& s)
{
    for (CellId id : s)
        if (id < 0 || static_cast<std::size_t>(id) >= c.size())
            throw InputError("cell id out of range");
}

} // namespace detail

// Violations are reported as data; an empty report certifies the covering
// dimensions, antisymmetry of the derived order, and the two regularity
// proxies (two distinct endpoints per 1-cell, diamond intervals).
// Sphericity of cell boundaries is not decidable from the poset and is
// deliberately not checked.
inline ValidationReport validate_complex(const Complex& c)
{
    ValidationReport report;
    for (const auto& [p, ch] : c.covering_pairs()) {
        if (c.dim(p) != c.dim(ch) + 1)
            report.issues.push_back({"covering-dimension",
                                     "'" + c.token(p) + "' (dim " + std::to_string(c.dim(p)) +
                                         ") covers '" + c.token(ch) + "' (dim " +
                                         std::to_string(c.dim(ch)) + ")"});
    }
    if (!c.order_acyclic()) {
        report.issues.push_back({"order-antisymmetry", "covering relation contains a cycle"});
        return report; // face order unreliable past this point
    }
    for (CellId id = 0; static_cast<std::size_t>(id) < c.size(); ++id) {
        if (c.dim(id) != 1)
            continue;
        if (c.covering_children(id).size() != 2)
            report.issues.push_back(
                {"edge-endpoints", "1-cell '" + c.token(id) + "' has " +
                                       std::to_string(c.covering_children(id).size()) +
                                       " distinct 0-faces, expected 2"});
    }
    for (CellId top = 0; static_cast<std::size_t>(top) < c.size(); ++top) {
        for (CellId bottom : c.face_set(top)) {
            if (c.dim(top) - c.dim(bottom) != 2)
                continue;
            std::size_t middle = 0;
            for (CellId mid : c.face_set(top))
                if (mid != top && mid != bottom && c.leq(bottom, mid))
                    ++middle;
            if (middle != 2)
                report.issues.push_back(
                    {"diamond", "open interval ('" + c.token(bottom) + "', '" + c.token(top) +
                                    "') contains " + std::to_string(middle) +
                                    " cells, expected 2"});
        }
    }
    return report;
}

// Smallest subcomplex containing s (down-set of the face order).
inline CellSet closure(const Complex& c, const CellSet& s)
{
    detail::check_ids(c, s);
    CellSet out;
    for (CellId id : s)
        out = set_union_of(out, c.face_set(id));
    return out;
}

// Up-set of the face order spanned by s.
inline CellSet star(const Complex& c, const CellSet& s)
{
    detail::check_ids(c, s);
    CellSet out;
    for (CellId id : s)
        out = set_union_of(out, c.coface_set(id));
    return out;
}

inline bool is_subcomplex(const Complex& c, const CellSet& s)
{
    detail::check_ids(c, s);
    for (CellId id : s)
        if (!set_includes(s, c.face_set(id)))
            return false;
    return true;
}

// Maximal zigzag-connected pieces of s: two cells are adjacent when they are
// comparable, and every intermediate cell of a zigzag must itself lie in s.
// Components are listed by their least member.
inline std::vector<CellSet> connected_components(const Complex& c, const CellSet& s)
{
    detail::check_ids(c, s);
    std::vector<CellSet> components;
    std::vector<bool> seen(s.size(), false);
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (seen[i])
            continue;
        CellSet piece;
        std::vector<std::size_t> queue = {i};
        seen[i] = true;
        while (!queue.empty()) {
            std::size_t u = queue.back();
            queue.pop_back();
            piece.push_back(s[u]);
            for (std::size_t v = 0; v < s.size(); ++v)
                if (!seen[v] && c.comparable(s[u], s[v])) {
                    seen[v] = true;
                    queue.push_back(v);
                }
        }
        std::sort(piece.begin(), piece.end());
        components.push_back(std::move(piece));
    }
    std::sort(components.begin(), components.end(),
              [](const CellSet& a, const CellSet& b) { return a.front() < b.front(); });
    return components;
}

} // namespace halo
