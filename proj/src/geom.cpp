#include "holescope/geom.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <numeric>
#include <optional>
#include <thread>

#include <boost/multiprecision/cpp_int.hpp>

namespace holescope::geom {

namespace detail {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

// Exact double -> rational. Finite doubles are dyadic rationals m * 2^e.
static cpp_rational to_rational(double x) {
    if (x == 0.0) return cpp_rational(0);
    if (!std::isfinite(x)) throw std::invalid_argument("non-finite coordinate");
    int exp = 0;
    const double frac = std::frexp(x, &exp);                         // x = frac * 2^exp
    const auto mant = static_cast<long long>(std::ldexp(frac, 53));  // |mant| < 2^53
    const int e2 = exp - 53;
    cpp_rational r(mant);
    if (e2 >= 0)
        r *= cpp_rational(cpp_int(1) << e2);
    else
        r /= cpp_rational(cpp_int(1) << -e2);
    return r;
}

static int sign_of(const cpp_rational& r) {
    if (r > 0) return 1;
    if (r < 0) return -1;
    return 0;
}

int orient2d_exact(double ax, double ay, double bx, double by, double cx, double cy) {
    const cpp_rational det = (to_rational(ax) - to_rational(cx)) * (to_rational(by) - to_rational(cy)) -
                             (to_rational(ay) - to_rational(cy)) * (to_rational(bx) - to_rational(cx));
    return sign_of(det);
}

int orient3d_exact(const double* a, const double* b, const double* c, const double* d) {
    cpp_rational m[3][3];
    const double* rows[3] = {a, b, c};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m[i][j] = to_rational(rows[i][j]) - to_rational(d[j]);
    const cpp_rational det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                             m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                             m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    return sign_of(det);
}

int det_sign_exact(const std::vector<std::vector<double>>& rows) {
    const std::size_t n = rows.size();
    std::vector<std::vector<cpp_rational>> m(n, std::vector<cpp_rational>(n));
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != n) throw std::invalid_argument("det_sign_exact: non-square matrix");
        for (std::size_t j = 0; j < n; ++j) m[i][j] = to_rational(rows[i][j]);
    }
    int sign = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && m[pivot][col] == 0) ++pivot;
        if (pivot == n) return 0;
        if (pivot != col) {
            std::swap(m[pivot], m[col]);
            sign = -sign;
        }
        for (std::size_t row = col + 1; row < n; ++row) {
            if (m[row][col] == 0) continue;
            const cpp_rational f = m[row][col] / m[col][col];
            for (std::size_t j = col; j < n; ++j) m[row][j] -= f * m[col][j];
        }
        if (m[col][col] < 0) sign = -sign;
    }
    return sign;
}

}  // namespace detail

namespace {

// Advance a lexicographic k-combination over {0, ..., m-1}; false when done.
bool next_combination(std::vector<std::size_t>& comb, std::size_t m) {
    const std::size_t k = comb.size();
    std::size_t i = k;
    while (i > 0) {
        --i;
        if (comb[i] != i + m - k) {
            ++comb[i];
            for (std::size_t j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
            return true;
        }
    }
    return false;
}

}  // namespace

int orientation(std::span<const double> a, std::span<const double> b, std::span<const double> c) {
    if (a.size() != 2 || b.size() != 2 || c.size() != 2)
        throw std::invalid_argument("orientation: expects 2-dimensional points");
    return orient2d(a[0], a[1], b[0], b[1], c[0], c[1]);
}

int affine_orientation(const std::vector<Point>& pts) {
    if (pts.empty()) throw std::invalid_argument("affine_orientation: empty input");
    const std::size_t d = pts[0].size();
    if (pts.size() != d + 1) throw std::invalid_argument("affine_orientation: needs d+1 points in R^d");
    for (const auto& p : pts)
        if (p.size() != d) throw std::invalid_argument("affine_orientation: dimension mismatch");

    if (d == 2) return orient2d(pts[0][0], pts[0][1], pts[1][0], pts[1][1], pts[2][0], pts[2][1]);
    if (d == 3) return orient3d(pts[0].data(), pts[1].data(), pts[2].data(), pts[3].data());

    // General dimension is never hot; skip the filter and decide exactly on
    // the homogeneous matrix [p_i | 1], whose determinant equals
    // (-1)^d * det(p_1 - p_0, ..., p_d - p_0).
    std::vector<std::vector<double>> homo(d + 1, std::vector<double>(d + 1));
    for (std::size_t i = 0; i <= d; ++i) {
        for (std::size_t j = 0; j < d; ++j) homo[i][j] = pts[i][j];
        homo[i][d] = 1.0;
    }
    const int s = detail::det_sign_exact(homo);
    return (d % 2 == 0) ? s : -s;
}

double simplex_volume(const std::vector<Point>& vertices) {
    if (vertices.empty()) throw std::invalid_argument("simplex_volume: empty input");
    const std::size_t d = vertices[0].size();
    const std::size_t q = vertices.size() - 1;
    if (q > d) throw std::invalid_argument("simplex_volume: more than d+1 points in R^d");
    for (const auto& v : vertices)
        if (v.size() != d) throw std::invalid_argument("simplex_volume: dimension mismatch");
    if (q == 0) return 0.0;

    // Gram determinant of edge vectors: vol = sqrt(det(A A^T)) / q!.
    std::vector<std::vector<double>> edges(q, std::vector<double>(d));
    for (std::size_t i = 0; i < q; ++i)
        for (std::size_t j = 0; j < d; ++j) edges[i][j] = vertices[i + 1][j] - vertices[0][j];

    std::vector<std::vector<double>> gram(q, std::vector<double>(q));
    for (std::size_t i = 0; i < q; ++i)
        for (std::size_t j = i; j < q; ++j) {
            double s = 0.0;
            for (std::size_t t = 0; t < d; ++t) s += edges[i][t] * edges[j][t];
            gram[i][j] = gram[j][i] = s;
        }

    // The Gram matrix is PSD; a nonpositive pivot means affine dependence
    // (within roundoff), i.e. volume 0.
    double det = 1.0;
    for (std::size_t col = 0; col < q; ++col) {
        const double pivot = gram[col][col];
        if (pivot <= 0.0) return 0.0;
        det *= pivot;
        for (std::size_t row = col + 1; row < q; ++row) {
            const double f = gram[row][col] / pivot;
            for (std::size_t j = col; j < q; ++j) gram[row][j] -= f * gram[col][j];
        }
    }
    double fact = 1.0;
    for (std::size_t i = 2; i <= q; ++i) fact *= static_cast<double>(i);
    return std::sqrt(det) / fact;
}

std::vector<std::size_t> convex_hull_2d(const PointSet& ps) {
    if (ps.dim != 2) throw std::invalid_argument("convex_hull_2d: expects dim 2");
    const std::size_t n = ps.size();
    if (n < 3) throw std::invalid_argument("convex_hull_2d: needs at least 3 points");

    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        if (ps[a][0] != ps[b][0]) return ps[a][0] < ps[b][0];
        return ps[a][1] < ps[b][1];
    });

    auto turn = [&](std::size_t a, std::size_t b, std::size_t c) {
        return orient2d(ps[a][0], ps[a][1], ps[b][0], ps[b][1], ps[c][0], ps[c][1]);
    };

    // Monotone chain with strict turns: collinear boundary points dropped.
    std::vector<std::size_t> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (k >= 2 && turn(hull[k - 2], hull[k - 1], idx[i]) <= 0) --k;
        hull[k++] = idx[i];
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = n - 1; i-- > 0;) {
        while (k >= lower && turn(hull[k - 2], hull[k - 1], idx[i]) <= 0) --k;
        hull[k++] = idx[i];
    }
    hull.resize(k - 1);  // last point repeats the first
    return hull;
}

namespace {

// Facet-enumeration classification against a full-dimensional hull.
// Returns nullopt when conv(vertices) spans no full-dimensional facet.
std::optional<Containment> classify_full_dim(const Point& p, const std::vector<Point>& vertices) {
    const std::size_t d = p.size();
    const std::size_t m = vertices.size();
    if (m < d + 1) return std::nullopt;

    std::vector<std::size_t> comb(d);
    std::iota(comb.begin(), comb.end(), 0);
    bool found_facet = false;
    bool on_some_facet = false;
    std::vector<Point> frame(d + 1);

    do {
        // d vertices form a facet iff all remaining vertices lie strictly on
        // one side (general position keeps this unambiguous).
        for (std::size_t i = 0; i < d; ++i) frame[i] = vertices[comb[i]];
        int side = 0;
        bool facet = true;
        for (std::size_t v = 0; v < m && facet; ++v) {
            if (std::find(comb.begin(), comb.end(), v) != comb.end()) continue;
            frame[d] = vertices[v];
            const int s = affine_orientation(frame);
            if (s == 0)
                facet = false;
            else if (side == 0)
                side = s;
            else if (s != side)
                facet = false;
        }
        if (facet && side != 0) {
            found_facet = true;
            frame[d] = p;
            const int sp = affine_orientation(frame);
            if (sp == -side) return Containment::outside;
            if (sp == 0) on_some_facet = true;
        }
    } while (next_combination(comb, m));

    if (!found_facet) return std::nullopt;
    return on_some_facet ? Containment::boundary : Containment::inside;
}

// Lower-dimensional fallback: the hull has empty interior, so membership
// means boundary. Exact via rational elimination over Caratheodory subsets.
Containment classify_low_dim(const Point& p, const std::vector<Point>& vertices) {
    using detail::cpp_rational;
    const std::size_t d = p.size();
    const std::size_t m = vertices.size();

    std::vector<const Point*> sub;
    std::function<bool(std::size_t, std::size_t)> search = [&](std::size_t start, std::size_t need) -> bool {
        if (need == 0) {
            // Is p a convex combination of sub? Solve the homogeneous system
            // [v_j | 1] lambda = [p | 1] exactly and check lambda >= 0.
            const std::size_t k = sub.size();
            std::vector<std::vector<cpp_rational>> a(d + 1, std::vector<cpp_rational>(k + 1));
            for (std::size_t j = 0; j < k; ++j) {
                for (std::size_t i = 0; i < d; ++i) a[i][j] = detail::to_rational((*sub[j])[i]);
                a[d][j] = 1;
            }
            for (std::size_t i = 0; i < d; ++i) a[i][k] = detail::to_rational(p[i]);
            a[d][k] = 1;

            std::size_t row = 0;
            std::vector<std::size_t> pivot_col;
            std::vector<std::size_t> pivot_row;
            for (std::size_t col = 0; col < k && row < d + 1; ++col) {
                std::size_t pr = row;
                while (pr < d + 1 && a[pr][col] == 0) ++pr;
                if (pr == d + 1) continue;
                std::swap(a[pr], a[row]);
                for (std::size_t r2 = 0; r2 < d + 1; ++r2) {
                    if (r2 == row || a[r2][col] == 0) continue;
                    const cpp_rational f = a[r2][col] / a[row][col];
                    for (std::size_t c2 = col; c2 <= k; ++c2) a[r2][c2] -= f * a[row][c2];
                }
                pivot_col.push_back(col);
                pivot_row.push_back(row);
                ++row;
            }
            for (std::size_t r2 = row; r2 < d + 1; ++r2)
                if (a[r2][k] != 0) return false;       // p outside the affine hull of sub
            if (pivot_col.size() != k) return false;   // affinely dependent subset; skip
            for (std::size_t t = 0; t < k; ++t) {
                const cpp_rational lambda = a[pivot_row[t]][k] / a[pivot_row[t]][pivot_col[t]];
                if (lambda < 0) return false;
            }
            return true;
        }
        for (std::size_t i = start; i + need <= m; ++i) {
            sub.push_back(&vertices[i]);
            if (search(i + 1, need - 1)) return true;
            sub.pop_back();
        }
        return false;
    };

    for (std::size_t k = 1; k <= std::min(m, d + 1); ++k) {
        sub.clear();
        if (search(0, k)) return Containment::boundary;
    }
    return Containment::outside;
}

}  // namespace

Containment point_in_hull(const Point& p, const std::vector<Point>& vertices) {
    if (vertices.empty()) throw std::invalid_argument("point_in_hull: no vertices");
    const std::size_t d = p.size();
    for (const auto& v : vertices)
        if (v.size() != d) throw std::invalid_argument("point_in_hull: dimension mismatch");
    if (auto c = classify_full_dim(p, vertices)) return *c;
    return classify_low_dim(p, vertices);
}

bool in_convex_position(const std::vector<Point>& points) {
    if (points.size() < 2) return true;
    const std::size_t d = points[0].size();
    for (const auto& q : points)
        if (q.size() != d) throw std::invalid_argument("in_convex_position: dimension mismatch");

    std::vector<Point> others;
    others.reserve(points.size() - 1);
    for (std::size_t i = 0; i < points.size(); ++i) {
        others.clear();
        for (std::size_t j = 0; j < points.size(); ++j)
            if (j != i) others.push_back(points[j]);
        if (point_in_hull(points[i], others) != Containment::outside) return false;
    }
    return true;
}

namespace {

bool general_position_2d(const PointSet& ps, int threads) {
    const std::size_t n = ps.size();
    if (n < 2) return true;

    std::atomic<bool> ok{true};
    const int nthreads = std::max(1, threads);

    auto work = [&](std::size_t begin, std::size_t end) {
        struct Dir {
            std::size_t idx;
            bool flipped;  // direction reflected into the upper half-plane
        };
        std::vector<Dir> dirs;
        dirs.reserve(n - 1);
        for (std::size_t b = begin; b < end && ok.load(std::memory_order_relaxed); ++b) {
            const double bx = ps[b][0], by = ps[b][1];
            dirs.clear();
            for (std::size_t i = 0; i < n; ++i) {
                if (i == b) continue;
                const double dx = ps[i][0] - bx, dy = ps[i][1] - by;
                if (dx == 0.0 && dy == 0.0) {  // duplicate point
                    ok.store(false, std::memory_order_relaxed);
                    return;
                }
                dirs.push_back({i, dy < 0.0 || (dy == 0.0 && dx < 0.0)});
            }
            // Exact angular order of canonical directions; any two points
            // collinear with the base compare equal and end up adjacent.
            std::sort(dirs.begin(), dirs.end(), [&](const Dir& u, const Dir& v) {
                int s = orient2d(bx, by, ps[u.idx][0], ps[u.idx][1], ps[v.idx][0], ps[v.idx][1]);
                if (u.flipped != v.flipped) s = -s;
                if (s != 0) return s > 0;
                return u.idx < v.idx;
            });
            for (std::size_t i = 0; i + 1 < dirs.size(); ++i) {
                const std::size_t u = dirs[i].idx, v = dirs[i + 1].idx;
                if (orient2d(bx, by, ps[u][0], ps[u][1], ps[v][0], ps[v][1]) == 0) {
                    ok.store(false, std::memory_order_relaxed);
                    return;
                }
            }
        }
    };

    if (nthreads == 1 || n < 256) {
        work(0, n);
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (n + nthreads - 1) / nthreads;
        for (int t = 0; t < nthreads; ++t) {
            const std::size_t lo = std::min(n, static_cast<std::size_t>(t) * chunk);
            const std::size_t hi = std::min(n, lo + chunk);
            if (lo < hi) pool.emplace_back(work, lo, hi);
        }
        for (auto& th : pool) th.join();
    }
    return ok.load();
}

bool all_points_distinct(const PointSet& ps) {
    const std::size_t n = ps.size();
    const std::size_t d = static_cast<std::size_t>(ps.dim);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            bool same = true;
            for (std::size_t t = 0; t < d && same; ++t) same = (ps[i][t] == ps[j][t]);
            if (same) return false;
        }
    return true;
}

bool general_position_3d(const PointSet& ps) {
    const std::size_t n = ps.size();
    const double* c = ps.coords.data();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k)
                for (std::size_t l = k + 1; l < n; ++l)
                    if (orient3d(c + 3 * i, c + 3 * j, c + 3 * k, c + 3 * l) == 0) return false;
    return true;
}

bool general_position_dd(const PointSet& ps) {
    const std::size_t n = ps.size();
    const std::size_t d = static_cast<std::size_t>(ps.dim);
    if (n < d + 1) return true;

    std::vector<std::size_t> comb(d + 1);
    std::iota(comb.begin(), comb.end(), 0);
    std::vector<Point> frame(d + 1);
    do {
        for (std::size_t i = 0; i <= d; ++i) frame[i] = ps.point(comb[i]);
        if (affine_orientation(frame) == 0) return false;
    } while (next_combination(comb, n));
    return true;
}

}  // namespace

bool check_general_position(const PointSet& ps, int threads) {
    if (ps.dim < 2) throw std::invalid_argument("check_general_position: dim must be >= 2");
    if (ps.dim == 2) return general_position_2d(ps, threads);
    if (!all_points_distinct(ps)) return false;
    if (ps.size() < static_cast<std::size_t>(ps.dim) + 1) return true;
    if (ps.dim == 3) return general_position_3d(ps);
    return general_position_dd(ps);
}

}  // namespace holescope::geom
