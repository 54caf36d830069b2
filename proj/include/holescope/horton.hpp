#pragma once

#include "holescope/geom.hpp"

namespace holescope::horton {

struct HortonSpec {
    int size_exponent = 0;            // set size is 2^m, m <= 10
    double vertical_gap_factor = 1.0; // scales every recursion level's lift
};

// Classical recursive Horton set: x-coordinates 0..2^m-1; the odd-rank half
// is a recursively built copy lifted high enough that every line through
// two points of either half clears the other half entirely. The integer
// construction is scaled into the unit square by powers of two, so
// predicate decisions are unchanged. The set has no 7-holes.
PointSet horton_set(const HortonSpec& spec);

}  // namespace holescope::horton
