#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "holescope/geom.hpp"

namespace holescope::analytic {

// Volume of the d-dimensional unit ball and surface area of its boundary
// sphere; computed by the exact half-integer recurrence.
double kappa(int d);
double omega(int d);

// A spherical cap of B^d: height h cut off in the direction of a unit
// vector. Volume and area depend only on (dim, height); the center matters
// for membership tests.
struct CapSpec {
    int dim = 3;
    double height = 0.0;
    Point center;  // unit vector on S^{d-1}

    void validate() const;                  // throws std::invalid_argument
    bool contains(const Point& x) const;    // closed cap membership
};

// Spherical cap C(h) = {x in B^d : x_1 >= 1 - h}.
double cap_volume_exact(int d, double h);       // quadrature, ~1e-12 relative
double cap_volume_lower_bound(int d, double h); // (sqrt(2h-h^2))^{d-1} * h/(2d) * kappa_d
double cap_area_exact(int d, double h);         // lambda_{d-1}(C(h) cap S^{d-1})
double cap_area_upper_bound(int d, double h);   // (4 sqrt(h))^{d-1} * omega_d, h <= 1/4

inline double cap_volume_exact(const CapSpec& c) { return cap_volume_exact(c.dim, c.height); }
inline double cap_area_exact(const CapSpec& c) { return cap_area_exact(c.dim, c.height); }

// Greedy placement of k-d pairwise disjoint caps of height h on S^{d-1}
// avoiding d given seed directions. Requires h <= 1/(64 k^{2/(d-1)}).
std::vector<Point> greedy_cap_placement(int d, int k, double h, const std::vector<Point>& seeds,
                                        std::uint64_t seed = 0x5EEDCAFEull);

// Closed-form limits of n^{-2} E[#k-holes]: 2 for k=3, 10 - 2*pi^2/3 for
// k=4; no closed form is known for k >= 5.
std::optional<double> planar_constant(int k);

struct BoundReport {
    double value = std::numeric_limits<double>::quiet_NaN();
    std::optional<double> lower, upper;
    bool satisfied = false;

    BoundReport evaluated_at(double v) const {
        BoundReport r = *this;
        r.value = v;
        r.satisfied = (!lower || v >= *lower) && (!upper || v <= *upper);
        return r;
    }
};

// Bounds on lim n^{-d} E[#empty simplices] for unit-volume bodies in R^d.
// p_prev is the driving Sylvester probability in dimension d-1 (1 for d=2,
// 1/3 for d=3).
BoundReport empty_simplex_bounds(int d, double p_prev);

// Finite-n upper bound on E[#k-holes] (the full product-form expression).
double holes_upper_bound(int d, int k, long long n);

// (35 / (12 pi^2), 1/3): the planar Sylvester probability window; the lower
// end is attained by ellipses, the upper by triangles.
std::pair<double, double> blaschke_bounds();

// (d+2) D^d / (d! vol): Sylvester bound for bodies of diameter D.
double sylvester_diameter_bound(int d, double diameter, double vol);

// Limit integrals behind the 4-hole constant. Both are scale-invariant in
// ell; the defaults match the derivation's normalization.
double verify_type1_integral(double ell = 1.0);  // == 4
double verify_type2_integral();                  // == 4 - pi^2/3
double four_hole_constant_assembly();            // == 10 - 2 pi^2/3

// Series used by the verification: direct descending summation plus an
// Euler-Maclaurin tail for the absolutely convergent case.
double sum_inverse_squares(long long terms = 10'000'000);             // -> pi^2/6
double sum_alternating_inverse_squares(long long terms = 1'000'000);  // -> pi^2/12

namespace detail {

// Adaptive Gauss-Kronrod (G7, K15) on [a, b].
double integrate(const std::function<double(double)>& f, double a, double b, double abs_tol = 1e-12,
                 int max_depth = 48);

double exp_integral_e1(double x);  // E1(x), x > 0
double ein(double z);              // entire modified exponential integral

double inverse_normal_cdf(double p);  // quantile of N(0,1)

}  // namespace detail
}  // namespace holescope::analytic
