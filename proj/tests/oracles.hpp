#pragma once

// Test-only oracles, kept independent of the library's counting paths.

#include <cstdint>

#include "holescope/geom.hpp"

namespace holescope::test_oracles {

// Empty-simplex count with reversed enumeration order and the generic hull
// classifier instead of the specialized face-sign loop.
inline std::uint64_t count_empty_simplices_reference(const PointSet& ps) {
    const std::size_t n = ps.size();
    const std::size_t d = static_cast<std::size_t>(ps.dim);
    std::uint64_t total = 0;
    std::vector<std::size_t> idx(d + 1);

    // descending outermost index, ascending inner ones
    for (std::size_t i0 = n; i0-- > 0;) {
        idx[0] = i0;
        std::vector<std::size_t> rest;
        for (std::size_t j = 0; j < i0; ++j) rest.push_back(j);
        // choose the remaining d indices below i0
        std::vector<std::size_t> comb(d);
        if (rest.size() < d) continue;
        for (std::size_t i = 0; i < d; ++i) comb[i] = i;
        for (;;) {
            std::vector<Point> simplex{ps.point(i0)};
            for (std::size_t i = 0; i < d; ++i) simplex.push_back(ps.point(rest[comb[i]]));
            if (geom::simplex_volume(simplex) > 0) {
                bool empty = true;
                for (std::size_t s = 0; s < n && empty; ++s) {
                    if (s == i0) continue;
                    bool used = false;
                    for (std::size_t i = 0; i < d; ++i) used = used || rest[comb[i]] == s;
                    if (used) continue;
                    if (geom::point_in_hull(ps.point(s), simplex) == geom::Containment::inside) empty = false;
                }
                if (empty) ++total;
            }
            // next combination
            std::size_t i = d;
            bool done = true;
            while (i > 0) {
                --i;
                if (comb[i] != i + rest.size() - d) {
                    ++comb[i];
                    for (std::size_t j = i + 1; j < d; ++j) comb[j] = comb[j - 1] + 1;
                    done = false;
                    break;
                }
            }
            if (done) break;
        }
    }
    return total;
}

}  // namespace holescope::test_oracles
