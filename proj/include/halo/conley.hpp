#pragma once

#include "halo/complex.hpp"
#include "halo/homology.hpp"
#include "halo/stratification.hpp"
#include "halo/subdivision.hpp"

#include <string>
#include <vector>

namespace halo {

struct Multivector {
    std::string id;
    CellSet cells;
};

// Partition of the cells into nonempty, convex, zigzag-connected pieces.
struct MultivectorField {
    std::vector<Multivector> parts;
    std::vector<int> cell_to_part; // -1 when uncovered
};

inline MultivectorField singleton_mvf(const Complex& c)
{
    MultivectorField mvf;
    mvf.cell_to_part.resize(c.size());
    for (CellId id = 0; static_cast<std::size_t>(id) < c.size(); ++id) {
        mvf.cell_to_part[id] = static_cast<int>(mvf.parts.size());
        mvf.parts.push_back({c.token(id), {id}});
    }
    return mvf;
}

// The strata of a frontier-valid stratification always form a multivector
// field: connectivity by definition, convexity by the frontier axiom.
inline MultivectorField strata_mvf(const Complex& c, const Stratification& strat)
{
    if (!strat.covers(c))
        throw InputError("strata multivector field needs a stratification of the whole complex");
    MultivectorField mvf;
    mvf.cell_to_part = strat.cell_to_stratum;
    for (const Stratum& s : strat.strata)
        mvf.parts.push_back({s.id, s.cells});
    return mvf;
}

inline ValidationReport validate_mvf(const Complex& c, const MultivectorField& mvf)
{
    ValidationReport report;
    std::vector<int> owner(c.size(), -1);
    for (std::size_t p = 0; p < mvf.parts.size(); ++p) {
        const Multivector& part = mvf.parts[p];
        if (part.cells.empty()) {
            report.issues.push_back({"mvf-empty", "part '" + part.id + "' is empty"});
            continue;
        }
        for (CellId id : part.cells) {
            if (owner[id] >= 0)
                report.issues.push_back({"mvf-overlap", "cell '" + c.token(id) +
                                                            "' lies in parts '" +
                                                            mvf.parts[owner[id]].id + "' and '" +
                                                            part.id + "'"});
            owner[id] = static_cast<int>(p);
        }
        if (connected_components(c, part.cells).size() != 1)
            report.issues.push_back({"mvf-connected", "part '" + part.id + "' is disconnected"});
        for (CellId mid = 0; static_cast<std::size_t>(mid) < c.size(); ++mid) {
            if (set_contains(part.cells, mid))
                continue;
            if (sets_intersect(c.face_set(mid), part.cells) &&
                sets_intersect(c.coface_set(mid), part.cells))
                report.issues.push_back({"mvf-convex", "part '" + part.id + "' omits '" +
                                                           c.token(mid) +
                                                           "' lying between two of its cells"});
        }
    }
    for (CellId id = 0; static_cast<std::size_t>(id) < c.size(); ++id)
        if (owner[id] < 0)
            report.issues.push_back({"mvf-partition", "cell '" + c.token(id) + "' is uncovered"});
    return report;
}

// cl(M) - M. Convexity of M makes M an up-set of its closure, so the exit
// set is always a subcomplex.
inline CellSet exit_set(const Complex& c, const CellSet& m)
{
    detail::check_ids(c, m);
    for (CellId mid = 0; static_cast<std::size_t>(mid) < c.size(); ++mid) {
        if (set_contains(m, mid))
            continue;
        if (sets_intersect(c.face_set(mid), m) && sets_intersect(c.coface_set(mid), m))
            throw InputError("exit set requires a convex cell set");
    }
    CellSet out = set_difference_of(closure(c, m), m);
    if (!is_subcomplex(c, out))
        throw std::logic_error("exit set is not a subcomplex");
    return out;
}

// Graded integer homology of (cl(M), ex(M)), computed on the subdivision.
inline GradedHomology conley_index(const Complex& c, const SdComplex& sd, const CellSet& m)
{
    if (connected_components(c, m).size() > 1)
        throw InputError("Conley index requires a connected multivector");
    return cw_pair_homology(sd, closure(c, m), exit_set(c, m));
}

inline GradedHomology conley_index(const Complex& c, const CellSet& m)
{
    return conley_index(c, barycentric_subdivide(c), m);
}

// Reachability order on a multivector field, with a deterministic linear
// extension when acyclic and a witnessing cycle otherwise.
struct MvfOrder {
    bool acyclic = true;
    std::vector<std::string> part_ids;
    std::vector<std::vector<bool>> leq_matrix; // transitive closure, reflexive
    std::vector<int> extension;                // emitted lowest first when acyclic
    std::vector<int> cycle;                    // parts of one strongly connected cycle

    bool leq(int low, int high) const { return leq_matrix[low][high]; }
};

inline MvfOrder mvf_order(const Complex& c, const MultivectorField& mvf)
{
    if (!validate_mvf(c, mvf).ok())
        throw InputError("order requires a valid multivector field");
    const std::size_t n = mvf.parts.size();
    MvfOrder order;
    for (const Multivector& part : mvf.parts)
        order.part_ids.push_back(part.id);

    // direct relation: part j is reachable from part i when some cell of i
    // has a face in j
    std::vector<std::vector<bool>> above(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) {
        const CellSet down = closure(c, mvf.parts[i].cells);
        for (std::size_t j = 0; j < n; ++j)
            above[i][j] = sets_intersect(down, mvf.parts[j].cells);
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            if (above[i][k])
                for (std::size_t j = 0; j < n; ++j)
                    if (above[k][j])
                        above[i][j] = true;

    order.leq_matrix.assign(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            order.leq_matrix[j][i] = above[i][j];

    for (std::size_t i = 0; i < n && order.acyclic; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (above[i][j] && above[j][i]) {
                order.acyclic = false;
                // walk one cycle through parts mutually reachable with i
                order.cycle.push_back(static_cast<int>(i));
                for (std::size_t k = 0; k < n; ++k)
                    if (k != i && above[i][k] && above[k][i])
                        order.cycle.push_back(static_cast<int>(k));
                break;
            }
    if (!order.acyclic)
        return order;

    // Kahn's algorithm, lowest parts first; ties resolved by the least cell
    // of each part, which is the least token.
    std::vector<bool> emitted(n, false);
    for (std::size_t step = 0; step < n; ++step) {
        int pick = -1;
        for (std::size_t i = 0; i < n; ++i) {
            if (emitted[i])
                continue;
            bool ready = true;
            for (std::size_t j = 0; j < n; ++j)
                if (j != i && above[i][j] && !emitted[j])
                    ready = false;
            if (!ready)
                continue;
            if (pick < 0 ||
                mvf.parts[i].cells.front() < mvf.parts[pick].cells.front())
                pick = static_cast<int>(i);
        }
        if (pick < 0)
            throw std::logic_error("linear extension stalled on an acyclic order");
        emitted[pick] = true;
        order.extension.push_back(pick);
    }
    return order;
}

struct E1Entry {
    int q = 0;                     // 1-based position in the filtration
    int part = -1;                 // part index in the field
    GradedHomology from_filtration; // H(F_q, F_{q-1})
    GradedHomology from_index;      // Conley index of the part
    bool match = false;             // excision equality
};

// First page of the spectral sequence of the filtration induced by the
// chosen linear extension. Every entry is computed twice — from the
// filtration pair and as a Conley index — and compared.
struct E1Page {
    std::vector<int> extension;
    std::vector<E1Entry> entries;

    bool consistent() const
    {
        for (const E1Entry& e : entries)
            if (!e.match)
                return false;
        return true;
    }

    // rank of the total degree-k column of the page
    int total_rank(std::size_t k) const
    {
        int total = 0;
        for (const E1Entry& e : entries)
            total += e.from_filtration.betti(k);
        return total;
    }

    long long euler() const
    {
        long long chi = 0;
        for (const E1Entry& e : entries)
            chi += e.from_filtration.euler();
        return chi;
    }
};

inline E1Page e1_page(const Complex& c, const MultivectorField& mvf, const SdComplex& sd)
{
    MvfOrder order = mvf_order(c, mvf);
    if (!order.acyclic)
        throw InputError("E1 page requires an acyclic multivector field");
    E1Page page;
    page.extension = order.extension;
    CellSet filtration;
    for (std::size_t q = 0; q < order.extension.size(); ++q) {
        const int part = order.extension[q];
        const CellSet previous = filtration;
        filtration = set_union_of(filtration, mvf.parts[part].cells);
        E1Entry entry;
        entry.q = static_cast<int>(q) + 1;
        entry.part = part;
        entry.from_filtration = cw_pair_homology(sd, filtration, previous);
        entry.from_index = conley_index(c, sd, mvf.parts[part].cells);
        entry.match = same_homology(entry.from_filtration, entry.from_index);
        page.entries.push_back(std::move(entry));
    }
    return page;
}

inline E1Page e1_page(const Complex& c, const MultivectorField& mvf)
{
    return e1_page(c, mvf, barycentric_subdivide(c));
}

} // namespace halo
