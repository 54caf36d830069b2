#include "holescope/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "holescope/bodies.hpp"

namespace holescope::analytic {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEulerGamma = 0.57721566490153286061;

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    k = std::min(k, n - k);
    double b = 1.0;
    for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
    return b;
}

}  // namespace

double kappa(int d) {
    if (d < 1) throw std::invalid_argument("kappa: d must be >= 1");
    // kappa_0 = 1, kappa_1 = 2, kappa_d = kappa_{d-2} * 2 pi / d.
    double even = 1.0, odd = 2.0;
    if (d % 2 == 0) {
        for (int i = 2; i <= d; i += 2) even *= 2.0 * kPi / i;
        return even;
    }
    for (int i = 3; i <= d; i += 2) odd *= 2.0 * kPi / i;
    return odd;
}

double omega(int d) {
    if (d < 1) throw std::invalid_argument("omega: d must be >= 1");
    return d * kappa(d);
}

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

namespace detail {

namespace {

// Gauss 7 / Kronrod 15 nodes and weights on [-1, 1].
constexpr double kXgk[8] = {0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
                            0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
constexpr double kWgk[8] = {0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
                            0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct GkResult {
    double kronrod;
    double err;
};

GkResult gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double hw = 0.5 * (b - a);
    const double fc = f(c);
    double resk = kWgk[7] * fc;
    double resg = kWg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double x = hw * kXgk[i];
        const double fsum = f(c - x) + f(c + x);
        resk += kWgk[i] * fsum;
        if (i % 2 == 1) resg += kWg[i / 2] * fsum;
    }
    return {resk * hw, std::abs(resk - resg) * hw};
}

double integrate_rec(const std::function<double(double)>& f, double a, double b, double tol, int depth,
                     int max_depth) {
    const GkResult r = gk15(f, a, b);
    if (r.err <= tol || depth >= max_depth) return r.kronrod;
    const double c = 0.5 * (a + b);
    return integrate_rec(f, a, c, 0.5 * tol, depth + 1, max_depth) +
           integrate_rec(f, c, b, 0.5 * tol, depth + 1, max_depth);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double abs_tol, int max_depth) {
    if (a == b) return 0.0;
    return integrate_rec(f, a, b, abs_tol, 0, max_depth);
}

double exp_integral_e1(double x) {
    if (x <= 0) throw std::invalid_argument("exp_integral_e1: x must be positive");
    if (x <= 1.5) {
        // E1(x) = -gamma - ln x + Ein(x), with Ein by its (rapidly
        // convergent) alternating series.
        double term = x, sum = x;  // k = 1
        for (int k = 2; k <= 60; ++k) {
            term *= -x * (k - 1) / (static_cast<double>(k) * k);
            sum += term;
            if (std::abs(term) < 1e-18 * std::abs(sum)) break;
        }
        return -kEulerGamma - std::log(x) + sum;
    }
    // Modified Lentz continued fraction: E1(x) = e^-x / (x+1- 1/(x+3- 4/...)).
    constexpr double tiny = 1e-300;
    double b = x + 1.0;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 200; ++i) {
        const double an = -static_cast<double>(i) * i;
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return h * std::exp(-x);
}

double ein(double z) {
    if (z < 0) throw std::invalid_argument("ein: z must be >= 0");
    if (z == 0.0) return 0.0;
    if (z <= 8.0) {
        double term = z, sum = z;
        for (int k = 2; k <= 120; ++k) {
            term *= -z * (k - 1) / (static_cast<double>(k) * k);
            sum += term;
            if (std::abs(term) < 1e-18 * std::abs(sum)) break;
        }
        return sum;
    }
    return kEulerGamma + std::log(z) + exp_integral_e1(z);
}

double inverse_normal_cdf(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("inverse_normal_cdf: p in (0,1) required");
    // Rational initial guess (Abramowitz-Stegun 26.2.23), then Newton with
    // the erfc-based CDF, which is accurate far into the tails.
    const bool upper = p > 0.5;
    const double pp = upper ? 1.0 - p : p;
    const double t = std::sqrt(-2.0 * std::log(pp));
    double x = t - (2.515517 + 0.802853 * t + 0.010328 * t * t) /
                       (1.0 + 1.432788 * t + 0.189269 * t * t + 0.001308 * t * t * t);
    if (!upper) x = -x;
    for (int i = 0; i < 4; ++i) {
        const double cdf = 0.5 * std::erfc(-x / std::numbers::sqrt2);
        const double pdf = std::exp(-0.5 * x * x) / std::sqrt(2.0 * kPi);
        x -= (cdf - p) / pdf;
    }
    return x;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Caps
// ---------------------------------------------------------------------------

void CapSpec::validate() const {
    if (dim < 2) throw std::invalid_argument("CapSpec: dim must be >= 2");
    if (!(height > 0.0 && height <= 1.0)) throw std::invalid_argument("CapSpec: height must be in (0, 1]");
    if (static_cast<int>(center.size()) != dim) throw std::invalid_argument("CapSpec: center dimension mismatch");
    double s = 0;
    for (const double c : center) s += c * c;
    if (std::abs(s - 1.0) > 1e-12) throw std::invalid_argument("CapSpec: center must be a unit vector");
}

bool CapSpec::contains(const Point& x) const {
    validate();
    if (x.size() != center.size()) throw std::invalid_argument("CapSpec: point dimension mismatch");
    double dot = 0, norm2 = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        dot += x[i] * center[i];
        norm2 += x[i] * x[i];
    }
    return norm2 <= 1.0 && dot >= 1.0 - height;
}

double cap_volume_exact(int d, double h) {
    if (d < 2) throw std::invalid_argument("cap_volume_exact: d must be >= 2");
    if (!(h > 0.0 && h <= 1.0)) throw std::invalid_argument("cap_volume_exact: h must be in (0, 1]");
    // lambda_d(C(h)) = kappa_{d-1} * integral of sin^d(theta) over
    // [0, arccos(1-h)] (substituting x_1 = cos theta keeps the integrand
    // analytic, so the quadrature converges fast).
    const double theta = std::acos(1.0 - h);
    const double kd1 = kappa(d - 1);
    return kd1 * detail::integrate([d](double t) { return std::pow(std::sin(t), d); }, 0.0, theta, 1e-14);
}

double cap_volume_lower_bound(int d, double h) {
    if (d < 2) throw std::invalid_argument("cap_volume_lower_bound: d must be >= 2");
    if (!(h > 0.0 && h <= 1.0)) throw std::invalid_argument("cap_volume_lower_bound: h must be in (0, 1]");
    return std::pow(std::sqrt(2.0 * h - h * h), d - 1) * h / (2.0 * d) * kappa(d);
}

double cap_area_exact(int d, double h) {
    if (d < 2) throw std::invalid_argument("cap_area_exact: d must be >= 2");
    if (!(h > 0.0 && h <= 1.0)) throw std::invalid_argument("cap_area_exact: h must be in (0, 1]");
    const double theta = std::acos(1.0 - h);
    if (d == 2) return 2.0 * theta;  // arc length
    const double wd1 = omega(d - 1);
    return wd1 * detail::integrate([d](double t) { return std::pow(std::sin(t), d - 2); }, 0.0, theta, 1e-14);
}

double cap_area_upper_bound(int d, double h) {
    if (d < 2) throw std::invalid_argument("cap_area_upper_bound: d must be >= 2");
    if (!(h > 0.0 && h <= 0.25)) throw std::invalid_argument("cap_area_upper_bound: requires h in (0, 1/4]");
    return std::pow(4.0 * std::sqrt(h), d - 1) * omega(d);
}

// ---------------------------------------------------------------------------
// Greedy cap placement
// ---------------------------------------------------------------------------

namespace {

double vec_dot(const Point& a, const Point& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

bool far_from_all(const Point& x, const std::vector<Point>& dirs, double max_dot) {
    for (const auto& y : dirs)
        if (vec_dot(x, y) >= max_dot) return false;
    return true;
}

std::optional<Point> random_unit_vector(int d, bodies::Rng& rng) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        Point p(d);
        double s = 0;
        for (int i = 0; i < d; ++i) {
            p[i] = rng.uniform(-1.0, 1.0);
            s += p[i] * p[i];
        }
        if (s > 1e-8 && s <= 1.0) {
            const double inv = 1.0 / std::sqrt(s);
            for (auto& c : p) c *= inv;
            return p;
        }
    }
    return std::nullopt;
}

// Deterministic fallback sweep: product grid in hyperspherical angles.
std::optional<Point> grid_search(int d, const std::vector<Point>& dirs, double max_dot, double h) {
    const int per_axis = std::clamp(static_cast<int>(std::ceil(16.0 / std::sqrt(h))), 16, 4096);
    if (d > 4) return std::nullopt;  // random stage is the primary mechanism

    std::vector<int> idx(d - 1, 0);
    Point x(d);
    for (;;) {
        // angles: first d-2 in (0, pi), last in [0, 2 pi)
        double sinprod = 1.0;
        for (int i = 0; i < d - 1; ++i) {
            const double span = (i + 1 < d - 1) ? kPi : 2.0 * kPi;
            const double ang = span * (idx[i] + 0.5) / per_axis;
            x[i] = sinprod * std::cos(ang);
            sinprod *= std::sin(ang);
        }
        x[d - 1] = sinprod;
        double norm = std::sqrt(vec_dot(x, x));
        for (auto& c : x) c /= norm;
        if (far_from_all(x, dirs, max_dot)) return x;

        int i = 0;
        while (i < d - 1 && ++idx[i] == per_axis) idx[i++] = 0;
        if (i == d - 1) return std::nullopt;
    }
}

}  // namespace

std::vector<Point> greedy_cap_placement(int d, int k, double h, const std::vector<Point>& seeds,
                                        std::uint64_t seed) {
    if (d < 2) throw std::invalid_argument("greedy_cap_placement: d must be >= 2");
    if (k < d) throw std::invalid_argument("greedy_cap_placement: k must be >= d");
    const double h_max = 1.0 / (64.0 * std::pow(static_cast<double>(k), 2.0 / (d - 1)));
    if (!(h > 0.0) || h > h_max * (1.0 + 1e-12))
        throw std::invalid_argument("greedy_cap_placement: h must be in (0, 1/(64 k^{2/(d-1)})]");
    if (static_cast<int>(seeds.size()) != d)
        throw std::invalid_argument("greedy_cap_placement: expected d seed directions");
    for (const auto& s : seeds) {
        if (static_cast<int>(s.size()) != d) throw std::invalid_argument("greedy_cap_placement: seed dimension");
        if (std::abs(vec_dot(s, s) - 1.0) > 1e-10)
            throw std::invalid_argument("greedy_cap_placement: seeds must be unit vectors");
    }

    std::vector<Point> placed;
    if (k == d) return placed;

    std::vector<Point> all(seeds);
    bodies::Rng rng(seed, 0x9CA90000ull);
    const double max_dot = 1.0 - 4.0 * h;  // outside every 4h-cap

    for (int j = d + 1; j <= k; ++j) {
        bool found = false;
        for (int attempt = 0; attempt < 20000 && !found; ++attempt) {
            auto x = random_unit_vector(d, rng);
            if (x && far_from_all(*x, all, max_dot)) {
                placed.push_back(*x);
                all.push_back(*x);
                found = true;
            }
        }
        if (!found) {
            auto x = grid_search(d, all, max_dot, h);
            if (!x) throw std::runtime_error("greedy_cap_placement: no admissible direction found");
            placed.push_back(*x);
            all.push_back(*x);
        }
    }
    return placed;
}

// ---------------------------------------------------------------------------
// Constants and bounds
// ---------------------------------------------------------------------------

std::optional<double> planar_constant(int k) {
    if (k < 3) throw std::invalid_argument("planar_constant: k must be >= 3");
    if (k == 3) return 2.0;
    if (k == 4) return 10.0 - 2.0 * kPi * kPi / 3.0;
    return std::nullopt;  // exists (body-independent) but has no closed form
}

BoundReport empty_simplex_bounds(int d, double p_prev) {
    if (d < 2) throw std::invalid_argument("empty_simplex_bounds: d must be >= 2");
    if (!(p_prev > 0.0 && p_prev <= 1.0))
        throw std::invalid_argument("empty_simplex_bounds: p_prev must be in (0, 1]");
    BoundReport r;
    r.lower = 2.0 / (factorial(d - 1) * p_prev);
    r.upper = (static_cast<double>(d) / (d + 1)) * std::pow(kappa(d - 1), d + 1) * kappa(d * d) /
              (std::pow(kappa(d), d - 1) * kappa((d - 1) * (d + 1)));
    return r;
}

double holes_upper_bound(int d, int k, long long n) {
    if (d < 2) throw std::invalid_argument("holes_upper_bound: d must be >= 2");
    if (k < d + 1) throw std::invalid_argument("holes_upper_bound: k must be >= d+1");
    if (n < k) throw std::invalid_argument("holes_upper_bound: n must be >= k");
    const int e = k - d - 1;
    double falling = 1.0;
    for (int i = 0; i <= k - 2; ++i) falling *= static_cast<double>(n - i);
    const double front = std::pow(2.0, d - 1) *
                         std::pow(2.0 * std::pow(static_cast<double>(d), 2 * d - 1) * binomial(k, d / 2), e);
    return front * falling / (factorial(e) * std::pow(static_cast<double>(n - k + 1), e));
}

std::pair<double, double> blaschke_bounds() { return {35.0 / (12.0 * kPi * kPi), 1.0 / 3.0}; }

double sylvester_diameter_bound(int d, double diameter, double vol) {
    if (diameter <= 0 || vol <= 0) throw std::invalid_argument("sylvester_diameter_bound: D and vol must be positive");
    return (d + 2) * std::pow(diameter, d) / (factorial(d) * vol);
}

// ---------------------------------------------------------------------------
// The two limit integrals behind the 4-hole constant
// ---------------------------------------------------------------------------

double verify_type1_integral(double ell) {
    if (!(ell > 0)) throw std::invalid_argument("verify_type1_integral: ell must be positive");
    // Truncate where the exponential tail is below 1e-16 of the mass.
    const double T = 84.0 / ell;
    auto inner = [&](double y) {
        return detail::integrate([&](double z) { return ell * ell * std::exp(-ell * (y + z) / 2.0); }, 0.0, T,
                                 1e-12);
    };
    return detail::integrate(inner, 0.0, T, 1e-10);
}

double verify_type2_integral() {
    // 4 * integral_0^inf e^-z / z * (z - Ein(z)) dz. The bracket over z is
    // evaluated by the series for small z (no cancellation) and via Ein
    // otherwise.
    auto one_minus_ein_over_z = [](double z) {
        if (z <= 1.0) {
            // sum_{k>=2} (-1)^k z^{k-1} / (k * k!)
            double term = z / 4.0, sum = term;  // k = 2
            for (int k = 3; k <= 40; ++k) {
                term *= -z * (k - 1) / (static_cast<double>(k) * k);
                sum += term;
                if (std::abs(term) < 1e-18 * std::abs(sum)) break;
            }
            return sum;
        }
        return 1.0 - detail::ein(z) / z;
    };
    auto f = [&](double z) { return z == 0.0 ? 0.0 : std::exp(-z) * one_minus_ein_over_z(z); };
    return 4.0 * detail::integrate(f, 0.0, 64.0, 1e-12);
}

double four_hole_constant_assembly() {
    // Per-pair event integrals scaled by the pair density C(n,2)/n^2 = 1/2:
    // one straddling event of weight 4, and four one-sided events of weight
    // 4 - pi^2/3.
    const double type1_total = 0.5 * verify_type1_integral(1.0);
    const double type2_total = 0.5 * 4.0 * verify_type2_integral();
    return type1_total + type2_total;
}

// ---------------------------------------------------------------------------
// Series
// ---------------------------------------------------------------------------

double sum_inverse_squares(long long terms) {
    if (terms < 10) throw std::invalid_argument("sum_inverse_squares: too few terms");
    double s = 0.0;
    for (long long k = terms; k >= 1; --k) s += 1.0 / (static_cast<double>(k) * k);
    // Euler-Maclaurin tail: sum_{k>N} 1/k^2 with z = N+1.
    const double z = static_cast<double>(terms) + 1.0;
    s += 1.0 / z + 1.0 / (2.0 * z * z) + 1.0 / (6.0 * z * z * z) - 1.0 / (30.0 * std::pow(z, 5));
    return s;
}

double sum_alternating_inverse_squares(long long terms) {
    if (terms < 10) throw std::invalid_argument("sum_alternating_inverse_squares: too few terms");
    double s = 0.0;
    for (long long k = terms; k >= 1; --k) {
        const double t = 1.0 / (static_cast<double>(k) * k);
        s += (k % 2 == 1) ? t : -t;
    }
    return s;
}

}  // namespace holescope::analytic
