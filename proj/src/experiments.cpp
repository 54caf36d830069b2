#include "holescope/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "holescope/analytic.hpp"

namespace holescope::experiments {

double z_value(double level) {
    if (!(level > 0.0 && level < 1.0)) throw std::invalid_argument("z_value: level must be in (0, 1)");
    return analytic::detail::inverse_normal_cdf(1.0 - (1.0 - level) / 2.0);
}

Estimate confidence_interval(const std::vector<double>& values, double level) {
    if (values.size() < 2) throw std::invalid_argument("confidence_interval: needs at least 2 values");
    const auto n = static_cast<long long>(values.size());
    double mean = 0.0;
    for (const double v : values) mean += v;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (const double v : values) ss += (v - mean) * (v - mean);
    const double se = std::sqrt(ss / (static_cast<double>(n - 1) * static_cast<double>(n)));
    const double z = z_value(level);
    return Estimate{mean, se, mean - z * se, mean + z * se, level, n};
}

namespace {

// Mean / stderr accumulation for streaming estimators.
struct Welford {
    long long n = 0;
    double mean = 0.0, m2 = 0.0;
    void add(double x) {
        ++n;
        const double d = x - mean;
        mean += d / static_cast<double>(n);
        m2 += d * (x - mean);
    }
    double std_error() const { return std::sqrt(m2 / (static_cast<double>(n - 1) * static_cast<double>(n))); }
};

Estimate from_welford(const Welford& w, double level) {
    const double z = z_value(level);
    const double se = w.std_error();
    return Estimate{w.mean, se, w.mean - z * se, w.mean + z * se, level, w.n};
}

// Convex position of four planar points: no point inside the triangle of
// the other three. Exact; throws on collinear triples.
bool quad_in_convex_position(const double* p) {
    const int o[4] = {
        geom::orient2d(p[2], p[3], p[4], p[5], p[6], p[7]),  // (b, c, d)
        geom::orient2d(p[0], p[1], p[4], p[5], p[6], p[7]),  // (a, c, d)
        geom::orient2d(p[0], p[1], p[2], p[3], p[6], p[7]),  // (a, b, d)
        geom::orient2d(p[0], p[1], p[2], p[3], p[4], p[5]),  // (a, b, c)
    };
    for (const int s : o)
        if (s == 0) throw degenerate_input("collinear triple in Sylvester draw");
    // Barycentric sign argument: one point lies inside the triangle of the
    // other three exactly when the four orientation signs split 3 against 1.
    const int plus = (o[0] > 0) + (o[1] > 0) + (o[2] > 0) + (o[3] > 0);
    return plus != 1 && plus != 3;
}

}  // namespace

HoleConstantResult estimate_hole_constants(const ExperimentConfig& cfg) {
    const int d = cfg.body.dim();
    if (cfg.trials < 2) throw std::invalid_argument("estimate_hole_constants: trials must be >= 2");
    if (cfg.k_min < d + 1 || cfg.k_min > cfg.k_max)
        throw std::invalid_argument("estimate_hole_constants: invalid k range");
    if (cfg.n < cfg.k_max) throw std::invalid_argument("estimate_hole_constants: n must be >= k_max");
    if (!(cfg.ci_level > 0.0 && cfg.ci_level < 1.0))
        throw std::invalid_argument("estimate_hole_constants: ci_level must be in (0, 1)");
    if (d == 2 && cfg.k_max > holes::kMaxSupportedK)
        throw std::invalid_argument("estimate_hole_constants: k_max exceeds fast-counter cap");
    if (d >= 3 && cfg.n > 400)
        throw std::invalid_argument("estimate_hole_constants: n too large for d >= 3 counting");

    const bodies::ConvexBody body = cfg.body.normalized_to_unit_volume();

    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw <= 0) hw = 1;
    const int want = cfg.threads > 0 ? cfg.threads : hw;
    const int outer = std::max(1, std::min(want, cfg.trials));
    const int inner = std::max(1, want / outer);

    std::vector<TrialRecord> records(cfg.trials);
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto run_trial = [&](int t) {
        bodies::Rng stream(cfg.master_seed, static_cast<std::uint64_t>(t));
        const PointSet ps = bodies::sample_uniform(body, cfg.n, stream, inner);
        TrialRecord rec;
        rec.trial = t;
        rec.stream_id = static_cast<std::uint64_t>(t);
        if (d == 2) {
            auto report = holes::count_k_holes_fast(ps, cfg.k_max, inner);
            rec.counts = std::move(report.counts);
            rec.elapsed_seconds = report.elapsed_seconds;
        } else if (d == 3 && cfg.k_min == 4 && cfg.k_max == 4) {
            const auto t0 = std::chrono::steady_clock::now();
            rec.counts[4] = holes::count_empty_simplices_dD(ps);
            rec.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        } else {
            const auto t0 = std::chrono::steady_clock::now();
            for (int k = cfg.k_min; k <= cfg.k_max; ++k)
                rec.counts[k] = holes::count_k_holes_dD_bruteforce(ps, k);
            rec.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        }
        records[t] = std::move(rec);
    };

    auto worker = [&]() {
        try {
            for (;;) {
                const int t = next.fetch_add(1);
                if (t >= cfg.trials) break;
                run_trial(t);
            }
        } catch (...) {
            std::scoped_lock lock(error_mutex);
            if (!error) error = std::current_exception();
            next.store(cfg.trials);
        }
    };

    if (outer == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < outer; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (error) std::rethrow_exception(error);

    HoleConstantResult result;
    const double nd = std::pow(static_cast<double>(cfg.n), d);
    for (int k = cfg.k_min; k <= cfg.k_max; ++k) {
        const double bound = analytic::holes_upper_bound(d, k, cfg.n);
        std::vector<double> densities;
        densities.reserve(cfg.trials);
        for (const auto& rec : records) {
            const auto it = rec.counts.find(k);
            const double count = it == rec.counts.end() ? 0.0 : static_cast<double>(it->second);
            if (!(count < bound)) result.eq3_envelope_ok = false;
            densities.push_back(count / nd);
        }
        result.estimates[k] = confidence_interval(densities, cfg.ci_level);
    }
    result.trials = std::move(records);
    return result;
}

Estimate estimate_sylvester_p(const bodies::ConvexBody& body_in, long long samples, bodies::Rng rng,
                              double level) {
    if (samples < 10'000) throw std::invalid_argument("estimate_sylvester_p: needs >= 1e4 samples");
    const bodies::ConvexBody body = body_in.normalized_to_unit_volume();
    const int d = body.dim();

    long long hits = 0;
    if (d == 2) {
        double buf[8];
        for (long long s = 0; s < samples; ++s) {
            for (;;) {
                for (int i = 0; i < 4; ++i) {
                    const Point p = body.sample_point(rng);
                    buf[2 * i] = p[0];
                    buf[2 * i + 1] = p[1];
                }
                try {
                    if (!quad_in_convex_position(buf)) ++hits;
                    break;
                } catch (const degenerate_input&) {
                    // measure-zero event in the model; redraw the quadruple
                }
            }
        }
    } else {
        std::vector<Point> pts(d + 2);
        for (long long s = 0; s < samples; ++s) {
            for (;;) {
                for (int i = 0; i < d + 2; ++i) pts[i] = body.sample_point(rng);
                try {
                    if (!geom::in_convex_position(pts)) ++hits;
                    break;
                } catch (const degenerate_input&) {
                }
            }
        }
    }

    const double p = static_cast<double>(hits) / static_cast<double>(samples);
    const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
    const double z = z_value(level);
    return Estimate{p, se, p - z * se, p + z * se, level, samples};
}

Estimate estimate_expected_simplex_volume(const bodies::ConvexBody& body_in, long long samples, bodies::Rng rng,
                                          double level) {
    if (samples < 2) throw std::invalid_argument("estimate_expected_simplex_volume: needs >= 2 samples");
    const bodies::ConvexBody body = body_in.normalized_to_unit_volume();
    const int d = body.dim();
    Welford acc;
    std::vector<Point> pts(d + 1);
    for (long long s = 0; s < samples; ++s) {
        for (int i = 0; i <= d; ++i) pts[i] = body.sample_point(rng);
        acc.add(geom::simplex_volume(pts));
    }
    return from_welford(acc, level);
}

std::vector<BodyDensity> compare_bodies_3d(const std::vector<bodies::ConvexBody>& bodies_in, int n, int trials,
                                           std::uint64_t master_seed, double level, int threads) {
    if (trials < 2) throw std::invalid_argument("compare_bodies_3d: trials must be >= 2");
    if (n < 4 || n > 400) throw std::invalid_argument("compare_bodies_3d: n must be in [4, 400]");

    std::vector<BodyDensity> out;
    for (std::size_t b = 0; b < bodies_in.size(); ++b) {
        if (bodies_in[b].dim() != 3) throw std::invalid_argument("compare_bodies_3d: bodies must be 3-dimensional");
        ExperimentConfig cfg;
        cfg.body = bodies_in[b];
        cfg.n = n;
        cfg.trials = trials;
        cfg.k_min = cfg.k_max = 4;
        // Per-body seed partition keeps each body's trial streams disjoint.
        cfg.master_seed = master_seed + (static_cast<std::uint64_t>(b) << 40);
        cfg.ci_level = level;
        cfg.threads = threads;
        const auto result = estimate_hole_constants(cfg);
        out.push_back(BodyDensity{bodies_in[b].name(), result.estimates.at(4)});
    }
    return out;
}

}  // namespace holescope::experiments
