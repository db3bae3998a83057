#pragma once

// Seeded random simplicial complexes (dimension <= 2) with random injective
// rational values and random monotone level maps. Simplicial means the
// regularity proxies hold by construction.

#include "halo/complex.hpp"
#include "halo/morse.hpp"
#include "halo/stratification.hpp"

#include <random>
#include <string>
#include <vector>

namespace testsupport {

inline halo::Complex random_complex(std::mt19937& rng, int max_vertices = 8,
                                    std::size_t max_cells = 30)
{
    std::uniform_int_distribution<int> vertex_count(1, max_vertices);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    const int n = vertex_count(rng);

    auto vname = [](int i) { return "v" + std::to_string(i); };
    auto ename = [](int i, int j) { return "e" + std::to_string(i) + "_" + std::to_string(j); };
    auto tname = [](int i, int j, int k) {
        return "t" + std::to_string(i) + "_" + std::to_string(j) + "_" + std::to_string(k);
    };

    std::vector<std::pair<std::string, int>> cells;
    std::vector<std::pair<std::string, std::string>> covering;
    for (int i = 0; i < n; ++i)
        cells.emplace_back(vname(i), 0);

    std::vector<std::vector<bool>> has_edge(n, std::vector<bool>(n, false));
    for (int i = 0; i < n && cells.size() + 1 < max_cells; ++i)
        for (int j = i + 1; j < n && cells.size() + 1 < max_cells; ++j)
            if (coin(rng) < 0.45) {
                has_edge[i][j] = true;
                cells.emplace_back(ename(i, j), 1);
                covering.emplace_back(ename(i, j), vname(i));
                covering.emplace_back(ename(i, j), vname(j));
            }
    for (int i = 0; i < n && cells.size() + 1 < max_cells; ++i)
        for (int j = i + 1; j < n && cells.size() + 1 < max_cells; ++j)
            for (int k = j + 1; k < n && cells.size() + 1 < max_cells; ++k)
                if (has_edge[i][j] && has_edge[i][k] && has_edge[j][k] && coin(rng) < 0.5) {
                    cells.emplace_back(tname(i, j, k), 2);
                    covering.emplace_back(tname(i, j, k), ename(i, j));
                    covering.emplace_back(tname(i, j, k), ename(i, k));
                    covering.emplace_back(tname(i, j, k), ename(j, k));
                }
    return halo::Complex::build(cells, covering);
}

inline halo::ValueMap random_values(std::mt19937& rng, const halo::Complex& c)
{
    std::vector<long> numerators(c.size());
    for (std::size_t i = 0; i < numerators.size(); ++i)
        numerators[i] = static_cast<long>(i) + 1;
    std::shuffle(numerators.begin(), numerators.end(), rng);
    // denominators dividing a power of ten keep the values serializable
    const int denominators[] = {1, 2, 4, 5, 8, 10, 100};
    std::uniform_int_distribution<int> pick(0, 6);
    halo::ValueMap f;
    f.value.resize(c.size());
    const int den = denominators[pick(rng)];
    for (std::size_t i = 0; i < c.size(); ++i)
        f.value[i] = halo::Rational(numerators[i], den);
    return f;
}

// Monotone by construction: each cell sits at or above the maximum level of
// its proper faces.
inline halo::LevelMap random_levels(std::mt19937& rng, const halo::Complex& c, int max_bump = 1)
{
    std::uniform_int_distribution<int> bump(0, max_bump);
    halo::LevelMap lm;
    lm.level.assign(c.size(), 0);
    std::vector<halo::CellId> order = c.all_cells();
    std::sort(order.begin(), order.end(), [&](halo::CellId a, halo::CellId b) {
        if (c.dim(a) != c.dim(b))
            return c.dim(a) < c.dim(b);
        return a < b;
    });
    for (halo::CellId id : order) {
        int floor = 0;
        for (halo::CellId tau : c.face_set(id))
            if (tau != id)
                floor = std::max(floor, lm.level[tau]);
        lm.level[id] = floor + bump(rng);
    }
    return lm;
}

} // namespace testsupport
