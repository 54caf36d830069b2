#include "holescope/holes.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numeric>
#include <thread>

namespace holescope::holes {

using geom::orient2d;
using geom::orient3d;

namespace {

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

// ---------------------------------------------------------------------------
// Fast planar counter.
//
// Every hole is charged to its lexicographically smallest vertex p. The
// points after p are sorted by angle; a pair (i, j) of them is an "edge" iff
// the triangle (p, q_i, q_j) is empty. A k-hole anchored at p is then a
// chain of k-1 points joined by k-2 edges that turns left at every interior
// vertex, so counting holes is a layered DP over the edge set. The edge set
// itself is built output-sensitively: the successors of i are discovered by
// walking successor lists of previously processed vertices instead of
// rescanning the whole range.
// ---------------------------------------------------------------------------

struct AnchorWorkspace {
    std::vector<std::uint32_t> order;           // candidate ids sorted by angle
    std::vector<double> qx, qy;                 // candidate coordinates, angular order
    std::vector<std::vector<std::uint32_t>> succ;

    // flattened edge structure for the chain DP
    std::vector<std::uint32_t> edge_src, edge_dst;
    std::vector<std::uint32_t> out_off;         // per vertex, edges with src == v
    std::vector<std::uint32_t> in_off, in_edge; // per vertex, edges with dst == v
    std::vector<std::uint64_t> cur, nxt;
};

void count_anchor(const std::vector<double>& px, const std::vector<double>& py, std::size_t anchor, int k_max,
                  AnchorWorkspace& ws, std::uint64_t* counts) {
    const std::size_t n = px.size();
    const std::size_t m = n - anchor - 1;
    if (m < 2) {
        return;  // no triangle can be anchored here
    }
    const double ax = px[anchor], ay = py[anchor];

    ws.order.resize(m);
    for (std::size_t i = 0; i < m; ++i) ws.order[i] = static_cast<std::uint32_t>(anchor + 1 + i);
    // All candidates are lexicographically after the anchor, so their
    // directions span less than a half turn and one orientation test is a
    // valid angular comparator.
    std::sort(ws.order.begin(), ws.order.end(), [&](std::uint32_t u, std::uint32_t v) {
        const int s = orient2d(ax, ay, px[u], py[u], px[v], py[v]);
        if (s == 0) throw degenerate_input("collinear triple while sorting around anchor");
        return s > 0;
    });

    ws.qx.resize(m);
    ws.qy.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        ws.qx[i] = px[ws.order[i]];
        ws.qy[i] = py[ws.order[i]];
    }

    if (ws.succ.size() < m) ws.succ.resize(m);
    for (std::size_t i = 0; i < m; ++i) ws.succ[i].clear();

    const double* qx = ws.qx.data();
    const double* qy = ws.qy.data();

    // Successor walk, from the last vertex backwards. succ[i] lists all j > i
    // with triangle (p, q_i, q_j) empty, in increasing angular order.
    std::uint64_t edge_count = 0;
    for (std::size_t ii = m - 1; ii-- > 0;) {
        const std::uint32_t i = static_cast<std::uint32_t>(ii);
        std::uint32_t l = i + 1;
        for (;;) {
            ws.succ[i].push_back(l);
            ++edge_count;
            // Next empty edge from i: the first successor of l that lies
            // strictly left of the directed line q_i -> q_l. Everything
            // right of it is hidden behind q_l.
            std::uint32_t next = std::numeric_limits<std::uint32_t>::max();
            for (const std::uint32_t cand : ws.succ[l]) {
                const int s = orient2d(qx[i], qy[i], qx[l], qy[l], qx[cand], qy[cand]);
                if (s == 0) throw degenerate_input("collinear triple in empty-edge walk");
                if (s > 0) {
                    next = cand;
                    break;
                }
            }
            if (next == std::numeric_limits<std::uint32_t>::max()) break;
            l = next;
        }
    }

    counts[3] += edge_count;
    if (k_max < 4 || edge_count == 0) return;

    // Flatten edges grouped by source (walk order is already angular).
    ws.edge_src.resize(edge_count);
    ws.edge_dst.resize(edge_count);
    ws.out_off.assign(m + 1, 0);
    ws.in_off.assign(m + 1, 0);
    {
        std::size_t e = 0;
        for (std::size_t i = 0; i < m; ++i) {
            ws.out_off[i] = static_cast<std::uint32_t>(e);
            for (const std::uint32_t j : ws.succ[i]) {
                ws.edge_src[e] = static_cast<std::uint32_t>(i);
                ws.edge_dst[e] = j;
                ++ws.in_off[j + 1];
                ++e;
            }
        }
        ws.out_off[m] = static_cast<std::uint32_t>(e);
    }
    for (std::size_t j = 0; j < m; ++j) ws.in_off[j + 1] += ws.in_off[j];
    ws.in_edge.resize(edge_count);
    {
        std::vector<std::uint32_t> fill(ws.in_off.begin(), ws.in_off.end() - 1);
        for (std::size_t e = 0; e < edge_count; ++e) ws.in_edge[fill[ws.edge_dst[e]]++] = static_cast<std::uint32_t>(e);
    }

    // Chain DP: cur[e] = number of partial convex chains ending in edge e.
    ws.cur.assign(edge_count, 1);
    ws.nxt.resize(edge_count);
    for (int k = 4; k <= k_max; ++k) {
        std::fill(ws.nxt.begin(), ws.nxt.end(), 0);
        std::uint64_t layer_total = 0;
        for (std::size_t j = 0; j < m; ++j) {
            const std::uint32_t ob = ws.out_off[j], oe = ws.out_off[j + 1];
            const std::uint32_t ib = ws.in_off[j], ie = ws.in_off[j + 1];
            if (ob == oe || ib == ie) continue;
            for (std::uint32_t o = ob; o < oe; ++o) {
                const std::uint32_t l = ws.edge_dst[o];
                std::uint64_t sum = 0;
                for (std::uint32_t t = ib; t < ie; ++t) {
                    const std::uint32_t e_in = ws.in_edge[t];
                    if (ws.cur[e_in] == 0) continue;
                    const std::uint32_t i = ws.edge_src[e_in];
                    // Left turn at j keeps the chain convex.
                    if (orient2d(qx[i], qy[i], qx[j], qy[j], qx[l], qy[l]) > 0) sum += ws.cur[e_in];
                }
                ws.nxt[o] = sum;
                layer_total += sum;
            }
        }
        counts[k] += layer_total;
        if (layer_total == 0) break;
        ws.cur.swap(ws.nxt);
    }
}

HoleCountReport count_fast_impl(const PointSet& ps, int k_max, int threads) {
    if (ps.dim != 2) throw std::invalid_argument("fast counter: dim must be 2");
    if (k_max < 3 || k_max > kMaxSupportedK)
        throw std::invalid_argument("fast counter: k_max must be in [3, 8]");
    const std::size_t n = ps.size();
    if (static_cast<int>(n) < 3) throw std::invalid_argument("fast counter: needs at least 3 points");

    const auto t0 = std::chrono::steady_clock::now();

    // Lexicographic order once; every anchor sees only later points.
    std::vector<std::size_t> lex(n);
    std::iota(lex.begin(), lex.end(), 0);
    std::sort(lex.begin(), lex.end(), [&](std::size_t a, std::size_t b) {
        if (ps[a][0] != ps[b][0]) return ps[a][0] < ps[b][0];
        return ps[a][1] < ps[b][1];
    });
    std::vector<double> px(n), py(n);
    for (std::size_t i = 0; i < n; ++i) {
        px[i] = ps[lex[i]][0];
        py[i] = ps[lex[i]][1];
        if (i > 0 && px[i] == px[i - 1] && py[i] == py[i - 1])
            throw degenerate_input("duplicate point");
    }

    int nthreads = threads;
    if (nthreads <= 0) nthreads = static_cast<int>(std::thread::hardware_concurrency());
    nthreads = std::max(1, std::min<int>(nthreads, 64));

    std::vector<std::array<std::uint64_t, kMaxSupportedK + 1>> partial(nthreads);
    for (auto& arr : partial) arr.fill(0);

    std::atomic<std::size_t> next_anchor{0};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto worker = [&](int tid) {
        AnchorWorkspace ws;
        try {
            for (;;) {
                const std::size_t a = next_anchor.fetch_add(1, std::memory_order_relaxed);
                if (a >= n) break;
                count_anchor(px, py, a, k_max, ws, partial[tid].data());
            }
        } catch (...) {
            std::scoped_lock lock(error_mutex);
            if (!error) error = std::current_exception();
            next_anchor.store(n, std::memory_order_relaxed);
        }
    };

    if (nthreads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }
    if (error) std::rethrow_exception(error);

    HoleCountReport report;
    report.n = static_cast<int>(n);
    report.dim = 2;
    for (int k = 3; k <= k_max; ++k) {
        std::uint64_t total = 0;
        for (const auto& arr : partial) total += arr[k];
        report.counts[k] = total;
    }
    report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

// ---------------------------------------------------------------------------
// Brute-force planar counter (oracle-grade, O(C(n,k) * n)).
// ---------------------------------------------------------------------------

std::uint64_t count_bruteforce_2d(const PointSet& ps, int k) {
    const std::size_t n = ps.size();
    std::vector<std::size_t> comb(k);
    std::iota(comb.begin(), comb.end(), 0);
    std::uint64_t total = 0;

    std::vector<std::size_t> hull;
    hull.reserve(k);
    std::vector<std::size_t> sorted(k);

    do {
        // Convex position: the hull of the subset must use all k points.
        for (int i = 0; i < k; ++i) sorted[i] = comb[i];
        std::sort(sorted.begin(), sorted.end(), [&](std::size_t a, std::size_t b) {
            if (ps[a][0] != ps[b][0]) return ps[a][0] < ps[b][0];
            return ps[a][1] < ps[b][1];
        });
        hull.assign(2 * k, 0);
        std::size_t h = 0;
        auto turn = [&](std::size_t a, std::size_t b, std::size_t c) {
            return orient2d(ps[a][0], ps[a][1], ps[b][0], ps[b][1], ps[c][0], ps[c][1]);
        };
        for (int i = 0; i < k; ++i) {
            while (h >= 2 && turn(hull[h - 2], hull[h - 1], sorted[i]) <= 0) --h;
            hull[h++] = sorted[i];
        }
        const std::size_t lower = h + 1;
        for (int i = k - 1; i-- > 0;) {
            while (h >= lower && turn(hull[h - 2], hull[h - 1], sorted[i]) <= 0) --h;
            hull[h++] = sorted[i];
        }
        h -= 1;
        if (h == static_cast<std::size_t>(k)) {
            hull.resize(h);
            bool empty = true;
            for (std::size_t s = 0; s < n && empty; ++s) {
                if (std::find(comb.begin(), comb.end(), s) != comb.end()) continue;
                // strictly inside the CCW hull polygon?
                bool inside = true;
                for (std::size_t e = 0; e < h && inside; ++e) {
                    const int o = turn(hull[e], hull[(e + 1) % h], s);
                    if (o == 0) throw degenerate_input("point on hole boundary");
                    if (o < 0) inside = false;
                }
                if (inside) empty = false;
            }
            if (empty) ++total;
        }
    } while (next_combination(comb, n));
    return total;
}

// ---------------------------------------------------------------------------
// d >= 3 counters.
// ---------------------------------------------------------------------------

std::uint64_t count_empty_simplices_3d(const PointSet& ps) {
    const std::size_t n = ps.size();
    const double* c = ps.coords.data();
    std::uint64_t total = 0;

    auto face_side = [&](std::size_t a, std::size_t b, std::size_t d, std::size_t x) {
        const int s = orient3d(c + 3 * a, c + 3 * b, c + 3 * d, c + 3 * x);
        if (s == 0) throw degenerate_input("coplanar quadruple");
        return s;
    };

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k)
                for (std::size_t l = k + 1; l < n; ++l) {
                    const int s0 = face_side(j, k, l, i);
                    const int s1 = face_side(i, k, l, j);
                    const int s2 = face_side(i, j, l, k);
                    const int s3 = face_side(i, j, k, l);
                    bool empty = true;
                    for (std::size_t x = 0; x < n && empty; ++x) {
                        if (x == i || x == j || x == k || x == l) continue;
                        if (face_side(j, k, l, x) != s0) continue;
                        if (face_side(i, k, l, x) != s1) continue;
                        if (face_side(i, j, l, x) != s2) continue;
                        if (face_side(i, j, k, x) != s3) continue;
                        empty = false;  // x strictly inside the simplex
                    }
                    if (empty) ++total;
                }
    return total;
}

std::uint64_t count_k_holes_dd(const PointSet& ps, int k) {
    const std::size_t n = ps.size();
    std::vector<std::size_t> comb(k);
    std::iota(comb.begin(), comb.end(), 0);
    std::uint64_t total = 0;

    std::vector<Point> subset(k);
    do {
        for (int i = 0; i < k; ++i) subset[i] = ps.point(comb[i]);
        if (geom::in_convex_position(subset)) {
            bool empty = true;
            for (std::size_t s = 0; s < n && empty; ++s) {
                if (std::find(comb.begin(), comb.end(), s) != comb.end()) continue;
                const auto where = geom::point_in_hull(ps.point(s), subset);
                if (where == geom::Containment::boundary)
                    throw degenerate_input("point on hole boundary");
                if (where == geom::Containment::inside) empty = false;
            }
            if (empty) ++total;
        }
    } while (next_combination(comb, n));
    return total;
}

}  // namespace

std::uint64_t count_k_holes_bruteforce(const PointSet& ps, int k) {
    const int n = static_cast<int>(ps.size());
    if (k < ps.dim + 1 || k > n) throw std::invalid_argument("count_k_holes_bruteforce: k out of range");
    if (ps.dim == 2) return count_bruteforce_2d(ps, k);
    return count_k_holes_dd(ps, k);
}

std::uint64_t count_empty_triangles_fast(const PointSet& ps, int threads) {
    return count_fast_impl(ps, 3, threads).counts.at(3);
}

HoleCountReport count_k_holes_fast(const PointSet& ps, int k_max, int threads) {
    return count_fast_impl(ps, k_max, threads);
}

std::uint64_t count_empty_simplices_dD(const PointSet& ps) {
    if (ps.dim < 3) throw std::invalid_argument("count_empty_simplices_dD: dim must be >= 3");
    if (ps.size() < static_cast<std::size_t>(ps.dim) + 1) return 0;
    if (ps.dim == 3) return count_empty_simplices_3d(ps);
    return count_k_holes_dd(ps, ps.dim + 1);
}

std::uint64_t count_k_holes_dD_bruteforce(const PointSet& ps, int k) {
    if (ps.dim < 3) throw std::invalid_argument("count_k_holes_dD_bruteforce: dim must be >= 3");
    const int n = static_cast<int>(ps.size());
    if (k < ps.dim + 1 || k > n) throw std::invalid_argument("count_k_holes_dD_bruteforce: k out of range");
    return count_k_holes_dd(ps, k);
}

std::vector<std::vector<std::size_t>> enumerate_k_holes(const PointSet& ps, int k) {
    const std::size_t n = ps.size();
    if (n > 64) throw std::invalid_argument("enumerate_k_holes: refuses n > 64");
    if (k < ps.dim + 1 || static_cast<std::size_t>(k) > n)
        throw std::invalid_argument("enumerate_k_holes: k out of range");

    std::vector<std::vector<std::size_t>> holes;
    std::vector<std::size_t> comb(k);
    std::iota(comb.begin(), comb.end(), 0);
    std::vector<Point> subset(k);
    do {
        for (int i = 0; i < k; ++i) subset[i] = ps.point(comb[i]);
        if (!geom::in_convex_position(subset)) continue;
        bool empty = true;
        for (std::size_t s = 0; s < n && empty; ++s) {
            if (std::find(comb.begin(), comb.end(), s) != comb.end()) continue;
            const auto where = geom::point_in_hull(ps.point(s), subset);
            if (where == geom::Containment::boundary) throw degenerate_input("point on hole boundary");
            if (where == geom::Containment::inside) empty = false;
        }
        if (empty) holes.push_back(comb);
    } while (next_combination(comb, n));
    return holes;
}

}  // namespace holescope::holes
