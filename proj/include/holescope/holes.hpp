#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "holescope/geom.hpp"

namespace holescope::holes {

// Hard cap on k for the fast planar counter; the chain DP state stays small.
inline constexpr int kMaxSupportedK = 8;

struct HoleCountReport {
    int n = 0;
    int dim = 0;
    std::map<int, std::uint64_t> counts;  // k -> number of k-holes
    double elapsed_seconds = 0.0;
};

// Exact number of k-subsets in convex position whose hull interior is empty.
// Any dimension; O(C(n,k) * n). Throws degenerate_input when a boundary
// incidence (general-position violation) is encountered.
std::uint64_t count_k_holes_bruteforce(const PointSet& ps, int k);

// Planar counters. Both require dim == 2 and general position.
std::uint64_t count_empty_triangles_fast(const PointSet& ps, int threads = 1);
HoleCountReport count_k_holes_fast(const PointSet& ps, int k_max, int threads = 1);

// d >= 3: exact count of empty (d+1)-point simplices, O(C(n,d+1) * n).
std::uint64_t count_empty_simplices_dD(const PointSet& ps);

// d >= 3, general k: convex-position + emptiness subset scan.
std::uint64_t count_k_holes_dD_bruteforce(const PointSet& ps, int k);

// Debugging aid: materializes the holes themselves. Refuses n > 64.
std::vector<std::vector<std::size_t>> enumerate_k_holes(const PointSet& ps, int k);

}  // namespace holescope::holes
