#pragma once

// Brute-force oracles, independent of the library's computation paths. They
// re-derive results by exhaustive enumeration and are only run at desk scale.

#include "halo/complex.hpp"
#include "halo/homology.hpp"
#include "halo/morse.hpp"
#include "halo/stratification.hpp"
#include "halo/subdivision.hpp"

#include <set>
#include <vector>

namespace testsupport {

// Reflexive-transitive closure of the covering relation by fixpoint
// iteration over explicit pair sets.
inline std::set<std::pair<halo::CellId, halo::CellId>> face_order_oracle(const halo::Complex& c)
{
    std::set<std::pair<halo::CellId, halo::CellId>> leq;
    for (halo::CellId id = 0; static_cast<std::size_t>(id) < c.size(); ++id)
        leq.emplace(id, id);
    for (const auto& [p, ch] : c.covering_pairs())
        leq.emplace(ch, p);
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& [a, b] : std::set(leq))
            for (const auto& [b2, c2] : std::set(leq))
                if (b == b2 && !leq.count({a, c2})) {
                    leq.emplace(a, c2);
                    changed = true;
                }
    }
    return leq;
}

inline halo::CellSet closure_oracle(const halo::Complex& c, const halo::CellSet& s)
{
    const auto leq = face_order_oracle(c);
    halo::CellSet out;
    for (halo::CellId tau = 0; static_cast<std::size_t>(tau) < c.size(); ++tau)
        for (halo::CellId sigma : s)
            if (leq.count({tau, sigma})) {
                out.push_back(tau);
                break;
            }
    return out;
}

inline halo::CellSet star_oracle(const halo::Complex& c, const halo::CellSet& s)
{
    const auto leq = face_order_oracle(c);
    halo::CellSet out;
    for (halo::CellId tau = 0; static_cast<std::size_t>(tau) < c.size(); ++tau)
        for (halo::CellId sigma : s)
            if (leq.count({sigma, tau})) {
                out.push_back(tau);
                break;
            }
    return out;
}

// Zigzag connectivity of a subset, by reachability over the comparability
// graph restricted to the subset.
inline bool connected_subset_oracle(const halo::Complex& c, const halo::CellSet& s)
{
    if (s.empty())
        return false;
    std::vector<bool> reached(s.size(), false);
    std::vector<std::size_t> queue = {0};
    reached[0] = true;
    while (!queue.empty()) {
        std::size_t u = queue.back();
        queue.pop_back();
        for (std::size_t v = 0; v < s.size(); ++v)
            if (!reached[v] && c.comparable(s[u], s[v])) {
                reached[v] = true;
                queue.push_back(v);
            }
    }
    for (bool r : reached)
        if (!r)
            return false;
    return true;
}

// The frontier axiom quantified over every connected subset of every level
// difference; containment is demanded of the closure of the stratum spanned
// by the probe, which is the exact connected-subset generalization of the
// stratum-level axiom. Exponential: usable up to a dozen cells.
inline bool frontier_bruteforce_oracle(const halo::Complex& c, const halo::Stratification& strat)
{
    std::vector<halo::CellSet> slices;
    {
        int max_level = 0;
        for (halo::CellId id : strat.domain)
            max_level = std::max(max_level, strat.level[id]);
        slices.resize(max_level + 1);
        for (halo::CellId id : strat.domain)
            slices[strat.level[id]].push_back(id);
    }
    std::vector<halo::CellSet> connected_subsets;
    for (const halo::CellSet& slice : slices) {
        const std::size_t n = slice.size();
        for (std::size_t mask = 1; mask < (std::size_t(1) << n); ++mask) {
            halo::CellSet subset;
            for (std::size_t i = 0; i < n; ++i)
                if (mask & (std::size_t(1) << i))
                    subset.push_back(slice[i]);
            if (connected_subset_oracle(c, subset))
                connected_subsets.push_back(subset);
        }
    }
    std::vector<halo::CellSet> stratum_closures;
    for (const halo::Stratum& s : strat.strata)
        stratum_closures.push_back(closure_oracle(c, s.cells));
    for (const halo::CellSet& s : connected_subsets) {
        const int stratum_of_s = strat.cell_to_stratum[s.front()];
        const halo::CellSet cl_s = closure_oracle(c, s);
        for (const halo::CellSet& t : connected_subsets) {
            if (!halo::sets_intersect(cl_s, t))
                continue;
            if (!halo::set_includes(stratum_closures[stratum_of_s], t))
                return false;
        }
    }
    return true;
}

// Per-definition halo: tau joins when sigma is the unique minimizer over the
// lower star of tau, enumerated over every pair of cells.
inline halo::CellSet halo_oracle(const halo::Complex& c, const halo::ValueMap& f,
                                 halo::CellId sigma)
{
    halo::CellSet out;
    for (halo::CellId tau = 0; static_cast<std::size_t>(tau) < c.size(); ++tau) {
        halo::CellSet st;
        for (halo::CellId rho = 0; static_cast<std::size_t>(rho) < c.size(); ++rho)
            if (rho != tau && c.leq(tau, rho) && f.value[rho] <= f.value[tau])
                st.push_back(rho);
        if (st.empty())
            continue;
        halo::CellId argmin = st.front();
        for (halo::CellId rho : st)
            if (f.value[rho] < f.value[argmin])
                argmin = rho;
        if (argmin == sigma)
            out.push_back(tau);
    }
    return out;
}

// Number of strictly ascending chains, by brute force over all subsets.
inline std::size_t chain_count_oracle(const halo::Complex& c)
{
    const std::size_t n = c.size();
    std::size_t count = 0;
    for (std::size_t mask = 1; mask < (std::size_t(1) << n); ++mask) {
        std::vector<halo::CellId> members;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (std::size_t(1) << i))
                members.push_back(static_cast<halo::CellId>(i));
        bool chain = true;
        for (std::size_t i = 0; i < members.size() && chain; ++i)
            for (std::size_t j = i + 1; j < members.size() && chain; ++j)
                if (!c.comparable(members[i], members[j]))
                    chain = false;
        if (chain)
            ++count;
    }
    return count;
}

// Betti numbers over Z/2 by Gaussian elimination on the same generators.
inline std::vector<int> z2_betti_oracle(const halo::SdComplex& sd, const halo::CellSet& big,
                                        const halo::CellSet& small)
{
    const halo::ChainComplexOfPair complex = halo::chain_complex_of_pair(sd, big, small);
    if (complex.top_degree < 0)
        return {};
    auto rank2 = [](const halo::IntegerMatrix& m) {
        std::vector<std::vector<char>> a(m.rows, std::vector<char>(m.cols, 0));
        for (std::size_t i = 0; i < m.rows; ++i)
            for (std::size_t j = 0; j < m.cols; ++j)
                a[i][j] = static_cast<char>(m.at(i, j) % 2 != 0);
        int rank = 0;
        std::size_t row = 0;
        for (std::size_t col = 0; col < m.cols && row < m.rows; ++col) {
            std::size_t pivot = row;
            while (pivot < m.rows && !a[pivot][col])
                ++pivot;
            if (pivot == m.rows)
                continue;
            std::swap(a[row], a[pivot]);
            for (std::size_t i = 0; i < m.rows; ++i)
                if (i != row && a[i][col])
                    for (std::size_t j = col; j < m.cols; ++j)
                        a[i][j] ^= a[row][j];
            ++row;
            ++rank;
        }
        return rank;
    };
    std::vector<int> betti(complex.top_degree + 1, 0);
    std::vector<int> ranks(complex.top_degree + 2, 0);
    for (int k = 1; k <= complex.top_degree; ++k)
        ranks[k] = rank2(complex.boundary[k]);
    for (int k = 0; k <= complex.top_degree; ++k)
        betti[k] = static_cast<int>(complex.generators[k].size()) - ranks[k] - ranks[k + 1];
    return betti;
}

} // namespace testsupport
