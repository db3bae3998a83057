#pragma once

#include "halo/rational.hpp"
#include "halo/subdivision.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace halo {

// Dense matrix over arbitrary-precision integers. Entry blowup during
// elimination is real even on small complexes, so fixed-width integers are
// off the table.
struct IntegerMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::vector<BigInt>> entries;

    IntegerMatrix() = default;
    IntegerMatrix(std::size_t r, std::size_t c)
        : rows(r), cols(c), entries(r, std::vector<BigInt>(c, 0))
    {
    }

    BigInt& at(std::size_t r, std::size_t c) { return entries[r][c]; }
    const BigInt& at(std::size_t r, std::size_t c) const { return entries[r][c]; }
};

// Invariant factors of the Smith normal form, in divisibility order; their
// count is the rank.
inline std::vector<BigInt> smith_normal_form(const IntegerMatrix& input)
{
    IntegerMatrix m = input;
    const std::size_t bound = std::min(m.rows, m.cols);
    std::vector<BigInt> invariants;

    auto abs_of = [](const BigInt& v) { return v < 0 ? BigInt(-v) : v; };

    for (std::size_t t = 0; t < bound; ++t) {
        // pivot: minimal nonzero magnitude in the trailing submatrix
        std::size_t pr = t, pc = t;
        BigInt best = 0;
        for (std::size_t i = t; i < m.rows; ++i)
            for (std::size_t j = t; j < m.cols; ++j) {
                if (m.at(i, j) == 0)
                    continue;
                BigInt mag = abs_of(m.at(i, j));
                if (best == 0 || mag < best) {
                    best = mag;
                    pr = i;
                    pc = j;
                }
            }
        if (best == 0)
            break;
        std::swap(m.entries[t], m.entries[pr]);
        for (std::size_t i = 0; i < m.rows; ++i)
            std::swap(m.at(i, t), m.at(i, pc));

        bool settled = false;
        while (!settled) {
            settled = true;
            for (std::size_t i = t + 1; i < m.rows; ++i) {
                if (m.at(i, t) == 0)
                    continue;
                const BigInt q = m.at(i, t) / m.at(t, t);
                for (std::size_t j = t; j < m.cols; ++j)
                    m.at(i, j) -= q * m.at(t, j);
                if (m.at(i, t) != 0) {
                    // nonzero remainder is strictly smaller; promote it
                    std::swap(m.entries[t], m.entries[i]);
                    settled = false;
                }
            }
            for (std::size_t j = t + 1; j < m.cols; ++j) {
                if (m.at(t, j) == 0)
                    continue;
                const BigInt q = m.at(t, j) / m.at(t, t);
                for (std::size_t i = t; i < m.rows; ++i)
                    m.at(i, j) -= q * m.at(i, t);
                if (m.at(t, j) != 0) {
                    for (std::size_t i = 0; i < m.rows; ++i)
                        std::swap(m.at(i, t), m.at(i, j));
                    settled = false;
                }
            }
            if (!settled)
                continue;
            // pivot must divide the rest of the submatrix
            for (std::size_t i = t + 1; i < m.rows && settled; ++i)
                for (std::size_t j = t + 1; j < m.cols && settled; ++j)
                    if (m.at(i, j) % m.at(t, t) != 0) {
                        for (std::size_t jj = t; jj < m.cols; ++jj)
                            m.at(t, jj) += m.at(i, jj);
                        settled = false;
                    }
        }
        invariants.push_back(abs_of(m.at(t, t)));
    }

    for (std::size_t i = 0; i + 1 < invariants.size(); ++i)
        if (invariants[i + 1] % invariants[i] != 0)
            throw std::logic_error("invariant factors out of divisibility order");
    return invariants;
}

struct DegreeHomology {
    int betti = 0;
    std::vector<BigInt> torsion; // coefficients > 1, each dividing the next

    bool operator==(const DegreeHomology&) const = default;
    bool trivial() const { return betti == 0 && torsion.empty(); }
};

struct GradedHomology {
    std::vector<DegreeHomology> degrees;

    int betti(std::size_t k) const
    {
        return k < degrees.size() ? degrees[k].betti : 0;
    }

    bool trivial() const
    {
        for (const DegreeHomology& d : degrees)
            if (!d.trivial())
                return false;
        return true;
    }

    long long euler() const
    {
        long long chi = 0;
        for (std::size_t k = 0; k < degrees.size(); ++k)
            chi += (k % 2 == 0) ? degrees[k].betti : -degrees[k].betti;
        return chi;
    }
};

// Equality up to trailing trivial degrees.
inline bool same_homology(const GradedHomology& a, const GradedHomology& b)
{
    const std::size_t n = std::max(a.degrees.size(), b.degrees.size());
    for (std::size_t k = 0; k < n; ++k) {
        const DegreeHomology da = k < a.degrees.size() ? a.degrees[k] : DegreeHomology{};
        const DegreeHomology db = k < b.degrees.size() ? b.degrees[k] : DegreeHomology{};
        if (!(da == db))
            return false;
    }
    return true;
}

struct ChainComplexOfPair {
    int top_degree = -1;
    std::vector<std::vector<CellId>> generators; // per degree, sd cells of big - small
    std::vector<IntegerMatrix> boundary;         // boundary[k] maps degree k to k-1, k >= 1
};

// Relative simplicial chain complex of a pair of subcomplexes of a
// subdivision. Boundary signs come from ordering each simplex's base cells by
// token; faces landing in `small` are dropped. By construction ∂∘∂ = 0, and
// this is checked.
inline ChainComplexOfPair chain_complex_of_pair(const SdComplex& sd, const CellSet& big,
                                                const CellSet& small)
{
    if (!set_includes(big, small))
        throw InputError("chain complex requires small to be contained in big");
    if (!is_subcomplex(sd.sd, big) || !is_subcomplex(sd.sd, small))
        throw InputError("chain complex requires subcomplexes of the subdivision");

    ChainComplexOfPair complex;
    const CellSet quotient = set_difference_of(big, small);
    for (CellId id : quotient)
        complex.top_degree = std::max(complex.top_degree, sd.sd.dim(id));
    complex.generators.resize(complex.top_degree + 1);
    std::vector<int> position(sd.sd.size(), -1);
    for (CellId id : quotient) {
        auto& bucket = complex.generators[sd.sd.dim(id)];
        position[id] = static_cast<int>(bucket.size());
        bucket.push_back(id);
    }

    complex.boundary.resize(std::max(0, complex.top_degree) + 1);
    for (int k = 1; k <= complex.top_degree; ++k) {
        const auto& gens = complex.generators[k];
        const auto& faces = complex.generators[k - 1];
        IntegerMatrix matrix(faces.size(), gens.size());
        for (std::size_t col = 0; col < gens.size(); ++col) {
            // vertex order for signs: base cells sorted by token
            std::vector<CellId> by_token = sd.chains[gens[col]];
            std::sort(by_token.begin(), by_token.end());
            for (std::size_t drop = 0; drop < by_token.size(); ++drop) {
                std::vector<CellId> face_chain;
                for (CellId member : sd.chains[gens[col]])
                    if (member != by_token[drop])
                        face_chain.push_back(member);
                const CellId face_id = sd.chain_id(face_chain);
                if (position[face_id] < 0)
                    continue; // face lies in the small subcomplex
                const int sign = drop % 2 == 0 ? 1 : -1;
                matrix.at(position[face_id], col) += sign;
            }
        }
        complex.boundary[k] = std::move(matrix);
    }

    for (int k = 2; k <= complex.top_degree; ++k) {
        const IntegerMatrix& a = complex.boundary[k - 1];
        const IntegerMatrix& b = complex.boundary[k];
        for (std::size_t i = 0; i < a.rows; ++i)
            for (std::size_t j = 0; j < b.cols; ++j) {
                BigInt sum = 0;
                for (std::size_t t = 0; t < a.cols; ++t)
                    sum += a.at(i, t) * b.at(t, j);
                if (sum != 0)
                    throw std::logic_error("boundary of boundary is nonzero");
            }
    }
    return complex;
}

// Integer homology of the pair: betti numbers and torsion per degree, from
// the Smith normal forms of consecutive boundaries.
inline GradedHomology relative_homology(const SdComplex& sd, const CellSet& big,
                                        const CellSet& small)
{
    const ChainComplexOfPair complex = chain_complex_of_pair(sd, big, small);
    GradedHomology out;
    if (complex.top_degree < 0)
        return out;
    std::vector<std::vector<BigInt>> invariants(complex.top_degree + 2);
    for (int k = 1; k <= complex.top_degree; ++k)
        invariants[k] = smith_normal_form(complex.boundary[k]);

    out.degrees.resize(complex.top_degree + 1);
    for (int k = 0; k <= complex.top_degree; ++k) {
        const int n_k = static_cast<int>(complex.generators[k].size());
        const int rank_in = static_cast<int>(invariants[k].size());      // rank of ∂_k
        const int rank_out = static_cast<int>(invariants[k + 1].size()); // rank of ∂_{k+1}
        out.degrees[k].betti = n_k - rank_in - rank_out;
        for (const BigInt& d : invariants[k + 1])
            if (d > 1)
                out.degrees[k].torsion.push_back(d);
    }
    return out;
}

// Subdivided cells of a base subcomplex: exactly the chains whose last cell
// lies in it, since subcomplexes are down-sets.
inline CellSet subdivided(const SdComplex& sd, const CellSet& base_subcomplex)
{
    CellSet out;
    for (CellId id = 0; static_cast<std::size_t>(id) < sd.sd.size(); ++id)
        if (set_contains(base_subcomplex, sd.last[id]))
            out.push_back(id);
    return out;
}

// Homology of a base pair computed through the barycentric subdivision.
// Incidence signs on a regular CW complex would need a coherent orientation
// choice; the subdivision sidesteps that canonically.
inline GradedHomology cw_pair_homology(const SdComplex& sd, const CellSet& big_base,
                                       const CellSet& small_base)
{
    return relative_homology(sd, subdivided(sd, big_base), subdivided(sd, small_base));
}

} // namespace halo
