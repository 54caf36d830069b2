#include "holescope/horton.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace holescope::horton {

PointSet horton_set(const HortonSpec& spec) {
    const int m = spec.size_exponent;
    if (m < 0 || m > 10) throw std::invalid_argument("horton_set: size_exponent must be in [0, 10]");
    if (!(spec.vertical_gap_factor > 0)) throw std::invalid_argument("horton_set: gap factor must be positive");

    const std::size_t n = std::size_t{1} << m;

    // Gap schedule. At subset size 2^s the odd-rank copy must clear every
    // line through two points of the even-rank copy (and vice versa) across
    // the whole x-range; with height H_{s-1} and minimum x-spacing 2 that
    // forces gap(s) > H_{s-1} * (2^{s-1} + 1). Using the smallest integer
    // schedule keeps all values exactly representable up to m = 10
    // (H_10 ~ 2.2e14 < 2^53); deeper recursion would overflow the double
    // mantissa and silently destroy the structure, hence the cap above.
    std::vector<double> gap(m + 1, 0.0);
    double height = 0.0;
    for (int s = 1; s <= m; ++s) {
        gap[s] = height * (std::ldexp(1.0, s - 1) + 1.0) + 1.0;
        height += gap[s];
    }

    // Bit i of x selects the lifted copy at recursion level m - i.
    std::vector<double> y(n, 0.0);
    for (std::size_t x = 0; x < n; ++x) {
        double v = 0.0;
        for (int i = 0; i < m; ++i)
            if (x & (std::size_t{1} << i)) v += gap[m - i];
        y[x] = v * spec.vertical_gap_factor;
    }

    // Scale into the unit square with powers of two: sign decisions on the
    // scaled doubles agree with the integer construction.
    int hexp = 0;
    std::frexp(std::max(1.0, height * spec.vertical_gap_factor), &hexp);
    const double sx = std::ldexp(1.0, -m);
    const double sy = std::ldexp(1.0, -hexp);

    PointSet ps;
    ps.dim = 2;
    ps.coords.reserve(2 * n);
    for (std::size_t x = 0; x < n; ++x) {
        ps.coords.push_back(static_cast<double>(x) * sx);
        ps.coords.push_back(y[x] * sy);
    }

    if (n >= 3 && !geom::check_general_position(ps))
        throw degenerate_input("horton_set: construction violated general position");
    return ps;
}

}  // namespace holescope::horton
