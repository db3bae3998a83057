#pragma once

#include "halo/complex.hpp"
#include "halo/stratification.hpp"

#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

namespace halo {

// (sigma, tau) with tau a codimension-1 face of sigma whose only cofaces in
// the current subcomplex are sigma and tau itself.
struct FreeFacePair {
    CellId sigma = -1;
    CellId tau = -1;

    bool operator==(const FreeFacePair&) const = default;
};

// Replayable witness for a collapse K to L. When filtered, every pair lies in
// a single stratum and pair_stratum records which one.
struct CollapseCertificate {
    std::vector<FreeFacePair> pairs;
    bool filtered = false;
    std::vector<int> pair_stratum;
};

class ReplayError : public InputError {
  public:
    ReplayError(std::size_t index, const std::string& reason)
        : InputError("invalid pair at index " + std::to_string(index) + ": " + reason),
          index(index), reason(reason)
    {
    }
    std::size_t index;
    std::string reason;
};

namespace detail {

// Free pairs within `current`, ordered by (dim sigma descending, sigma, tau).
// This is the search order of find_collapse; ties break by token order since
// CellId order is token order.
inline std::vector<FreeFacePair> free_pairs_in(const Complex& c, const CellSet& current)
{
    std::vector<FreeFacePair> pairs;
    for (CellId tau : current) {
        CellSet st = set_intersection_of(c.coface_set(tau), current);
        if (st.size() != 2)
            continue;
        const CellId sigma = st[0] == tau ? st[1] : st[0];
        if (c.dim(sigma) != c.dim(tau) + 1)
            continue;
        pairs.push_back({sigma, tau});
    }
    std::sort(pairs.begin(), pairs.end(), [&](const FreeFacePair& a, const FreeFacePair& b) {
        if (c.dim(a.sigma) != c.dim(b.sigma))
            return c.dim(a.sigma) > c.dim(b.sigma);
        if (a.sigma != b.sigma)
            return a.sigma < b.sigma;
        return a.tau < b.tau;
    });
    return pairs;
}

} // namespace detail

inline std::vector<FreeFacePair> free_face_pairs(const Complex& c, const CellSet& k)
{
    if (!is_subcomplex(c, k))
        throw InputError("free_face_pairs requires a subcomplex");
    return detail::free_pairs_in(c, k);
}

// Applies the certificate to k, failing loudly at the first pair that is not
// free (or, when filtered, not contained in a single stratum).
inline CellSet replay(const Complex& c, const CellSet& k, const CollapseCertificate& cert,
                      const Stratification* strat = nullptr)
{
    if (!is_subcomplex(c, k))
        throw InputError("replay requires a subcomplex");
    if (cert.filtered && strat == nullptr)
        throw InputError("filtered certificate requires a stratification");
    CellSet current = k;
    for (std::size_t i = 0; i < cert.pairs.size(); ++i) {
        const auto& [sigma, tau] = cert.pairs[i];
        if (!set_contains(current, sigma))
            throw ReplayError(i, "cell '" + c.token(sigma) + "' is not present");
        if (!set_contains(current, tau))
            throw ReplayError(i, "cell '" + c.token(tau) + "' is not present");
        if (c.dim(sigma) != c.dim(tau) + 1)
            throw ReplayError(i, "pair is not of codimension 1");
        CellSet st = set_intersection_of(c.coface_set(tau), current);
        if (st != make_cell_set({sigma, tau}))
            throw ReplayError(i, "'" + c.token(tau) + "' is not a free face of '" +
                                     c.token(sigma) + "'");
        if (cert.filtered) {
            const int ss = strat->cell_to_stratum[sigma];
            const int st_tau = strat->cell_to_stratum[tau];
            if (ss < 0 || st_tau < 0 || ss != st_tau)
                throw ReplayError(i, "pair crosses strata");
        }
        current = set_difference_of(current, make_cell_set({sigma, tau}));
    }
    return current;
}

enum class SearchOutcome { Found, NoCollapse, BudgetExhausted };

struct CollapseSearch {
    SearchOutcome outcome = SearchOutcome::NoCollapse;
    CollapseCertificate certificate;
    std::uint64_t nodes = 0;
};

namespace detail {

struct CollapseDfs {
    const Complex& c;
    const CellSet& target;
    const Stratification* strat;
    std::uint64_t budget;
    std::uint64_t nodes = 0;
    std::unordered_set<std::string> failed;
    std::vector<FreeFacePair> trail;

    enum class Step { Found, Failed, Exhausted };

    // Keyed on the current cell set; only cells of k - l ever disappear.
    static std::string key_of(const CellSet& current)
    {
        std::string key;
        key.reserve(current.size() * sizeof(CellId));
        for (CellId id : current)
            key.append(reinterpret_cast<const char*>(&id), sizeof(CellId));
        return key;
    }

    Step run(const CellSet& current)
    {
        if (++nodes > budget)
            return Step::Exhausted;
        if (current == target)
            return Step::Found;
        const std::string key = key_of(current);
        if (failed.count(key))
            return Step::Failed;
        for (const FreeFacePair& pair : free_pairs_in(c, current)) {
            if (set_contains(target, pair.sigma) || set_contains(target, pair.tau))
                continue; // a pair touching the target can never be removed
            if (strat != nullptr) {
                const int ss = strat->cell_to_stratum[pair.sigma];
                const int st = strat->cell_to_stratum[pair.tau];
                if (ss < 0 || st < 0 || ss != st)
                    continue;
            }
            CellSet next = set_difference_of(current, make_cell_set({pair.sigma, pair.tau}));
            trail.push_back(pair);
            const Step step = run(next);
            if (step == Step::Found)
                return Step::Found;
            trail.pop_back();
            if (step == Step::Exhausted)
                return Step::Exhausted;
        }
        failed.insert(key);
        return Step::Failed;
    }
};

} // namespace detail

// Depth-first search with full backtracking for a collapse k to l, restricted
// to same-stratum pairs when a stratification is supplied. The node budget
// separates a definite NoCollapse (search space exhausted) from an
// inconclusive BudgetExhausted.
inline CollapseSearch find_collapse(const Complex& c, const CellSet& k, const CellSet& l,
                                    const Stratification* strat = nullptr,
                                    std::uint64_t budget = 1'000'000)
{
    if (!set_includes(k, l))
        throw InputError("find_collapse requires l to be contained in k");
    if (!is_subcomplex(c, k) || !is_subcomplex(c, l))
        throw InputError("find_collapse requires subcomplexes");

    CollapseSearch result;
    if ((k.size() - l.size()) % 2 != 0) {
        result.outcome = SearchOutcome::NoCollapse;
        return result;
    }
    detail::CollapseDfs dfs{c, l, strat, budget, 0, {}, {}};
    const auto step = dfs.run(k);
    result.nodes = dfs.nodes;
    switch (step) {
    case detail::CollapseDfs::Step::Found: {
        result.outcome = SearchOutcome::Found;
        result.certificate.pairs = dfs.trail;
        if (strat != nullptr) {
            result.certificate.filtered = true;
            for (const FreeFacePair& pair : dfs.trail)
                result.certificate.pair_stratum.push_back(strat->cell_to_stratum[pair.sigma]);
        }
        break;
    }
    case detail::CollapseDfs::Step::Failed:
        result.outcome = SearchOutcome::NoCollapse;
        break;
    case detail::CollapseDfs::Step::Exhausted:
        result.outcome = SearchOutcome::BudgetExhausted;
        break;
    }
    return result;
}

} // namespace halo
