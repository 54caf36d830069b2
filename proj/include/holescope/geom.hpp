#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace holescope {

// A point is an ordered list of d finite coordinates.
using Point = std::vector<double>;

// Thrown when an input violates the general-position contract (exact
// collinearity / affine dependence, duplicate points, boundary incidences).
struct degenerate_input : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Dense, row-major point set. All points share the same dimension.
struct PointSet {
    int dim = 0;
    std::vector<double> coords;  // size() * dim doubles

    PointSet() = default;
    PointSet(int d, std::vector<double> flat) : dim(d), coords(std::move(flat)) {
        if (dim < 1 || coords.size() % static_cast<std::size_t>(dim) != 0)
            throw std::invalid_argument("PointSet: coordinate count not a multiple of dim");
    }

    std::size_t size() const { return dim > 0 ? coords.size() / dim : 0; }
    bool empty() const { return coords.empty(); }

    std::span<const double> operator[](std::size_t i) const {
        return {coords.data() + i * static_cast<std::size_t>(dim), static_cast<std::size_t>(dim)};
    }

    Point point(std::size_t i) const {
        auto p = (*this)[i];
        return Point(p.begin(), p.end());
    }

    void push_back(std::span<const double> p) {
        if (static_cast<int>(p.size()) != dim)
            throw std::invalid_argument("PointSet: dimension mismatch on insert");
        coords.insert(coords.end(), p.begin(), p.end());
    }
};

namespace geom {

enum class Containment { inside, boundary, outside };

namespace detail {

// 2^-53, the unit roundoff for double.
inline constexpr double kEps = 1.1102230246251565e-16;
// Static filter constants (Shewchuk-style "A" bounds).
inline constexpr double kCcwErrBound = (3.0 + 16.0 * kEps) * kEps;
inline constexpr double kO3dErrBound = (7.0 + 56.0 * kEps) * kEps;

// Exact fallbacks, evaluated in arbitrary-precision rational arithmetic.
int orient2d_exact(double ax, double ay, double bx, double by, double cx, double cy);
int orient3d_exact(const double* a, const double* b, const double* c, const double* d);
// Sign of det(rows), rows of size n, n <= 16. Exact.
int det_sign_exact(const std::vector<std::vector<double>>& rows);

}  // namespace detail

// Sign of the signed area of triangle (a, b, c): +1 counterclockwise,
// -1 clockwise, 0 collinear. Never wrong: a floating-point fast path is
// guarded by a static error bound, with an exact fallback.
inline int orient2d(double ax, double ay, double bx, double by, double cx, double cy) {
    const double detleft = (ax - cx) * (by - cy);
    const double detright = (ay - cy) * (bx - cx);
    const double det = detleft - detright;

    double detsum;
    if (detleft > 0.0) {
        if (detright <= 0.0) return 1;
        detsum = detleft + detright;
    } else if (detleft < 0.0) {
        if (detright >= 0.0) return -1;
        detsum = -detleft - detright;
    } else {
        return (detright > 0.0) ? -1 : (detright < 0.0 ? 1 : 0);
    }

    const double errbound = detail::kCcwErrBound * detsum;
    if (det > errbound) return 1;
    if (-det > errbound) return -1;
    return detail::orient2d_exact(ax, ay, bx, by, cx, cy);
}

// Sign of 6 * the signed volume of tetrahedron (a, b, c, d); exact.
inline int orient3d(const double* a, const double* b, const double* c, const double* d) {
    const double adx = a[0] - d[0], ady = a[1] - d[1], adz = a[2] - d[2];
    const double bdx = b[0] - d[0], bdy = b[1] - d[1], bdz = b[2] - d[2];
    const double cdx = c[0] - d[0], cdy = c[1] - d[1], cdz = c[2] - d[2];

    const double bdxcdy = bdx * cdy, cdxbdy = cdx * bdy;
    const double cdxady = cdx * ady, adxcdy = adx * cdy;
    const double adxbdy = adx * bdy, bdxady = bdx * ady;

    const double det = adz * (bdxcdy - cdxbdy) + bdz * (cdxady - adxcdy) + cdz * (adxbdy - bdxady);

    const double permanent = (std::abs(bdxcdy) + std::abs(cdxbdy)) * std::abs(adz) +
                             (std::abs(cdxady) + std::abs(adxcdy)) * std::abs(bdz) +
                             (std::abs(adxbdy) + std::abs(bdxady)) * std::abs(cdz);
    const double errbound = detail::kO3dErrBound * permanent;
    if (det > errbound) return 1;
    if (-det > errbound) return -1;
    if (permanent == 0.0) return 0;
    return detail::orient3d_exact(a, b, c, d);
}

// orientation() per the library surface: 2-dimensional points only.
int orientation(std::span<const double> a, std::span<const double> b, std::span<const double> c);

// Sign of det(p1 - p0, ..., pd - p0) for d+1 points in R^d. Zero iff the
// points are affinely dependent. Exact in every dimension.
int affine_orientation(const std::vector<Point>& pts);

// q-dimensional volume of the convex hull of q+1 points in R^d, q <= d.
// Returns 0 for affinely dependent inputs.
double simplex_volume(const std::vector<Point>& vertices);

// Indices of hull vertices of a planar set, counterclockwise, starting at
// the lexicographically smallest vertex. Collinear boundary points and
// interior points are excluded.
std::vector<std::size_t> convex_hull_2d(const PointSet& ps);

// True iff every point is a vertex of the convex hull (any dimension).
bool in_convex_position(const std::vector<Point>& points);

// Exact classification of p against conv(vertices).
Containment point_in_hull(const Point& p, const std::vector<Point>& vertices);

// True iff no d+1 points are affinely dependent (and all points distinct).
// Planar sets use an O(n^2 log n) radial scan; higher dimensions enumerate
// (d+1)-subsets, which is intended for the small n used there.
bool check_general_position(const PointSet& ps, int threads = 1);

}  // namespace geom
}  // namespace holescope
