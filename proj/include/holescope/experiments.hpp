#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "holescope/bodies.hpp"
#include "holescope/holes.hpp"

namespace holescope::experiments {

// Fixed, documented default so every tool run is reproducible by default.
inline constexpr std::uint64_t kDefaultSeed = 1729;

struct Estimate {
    double mean = 0.0;
    double std_error = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    double level = 0.0;
    long long samples = 0;
};

struct ExperimentConfig {
    bodies::ConvexBody body;
    int n = 0;
    int trials = 0;
    int k_min = 3;
    int k_max = 4;
    std::uint64_t master_seed = kDefaultSeed;
    double ci_level = 0.9999;
    int threads = 0;  // 0 = hardware concurrency
};

// Two-sided normal quantile for a confidence level, z(0.9999) ~ 3.8906.
double z_value(double level);

// Plain CLT interval: mean +- z * stderr. Needs at least two values.
Estimate confidence_interval(const std::vector<double>& values, double level);

struct TrialRecord {
    int trial = 0;
    std::uint64_t stream_id = 0;
    std::map<int, std::uint64_t> counts;
    double elapsed_seconds = 0.0;
};

struct HoleConstantResult {
    std::map<int, Estimate> estimates;  // k -> estimate of counts[k] / n^d
    std::vector<TrialRecord> trials;    // ordered by trial index
    bool eq3_envelope_ok = true;        // every per-trial count under the finite-n bound
};

// Monte Carlo estimate of the k-hole density constants. Deterministic for a
// fixed config (per-trial streams are keyed by trial index; aggregation is
// by index regardless of thread schedule).
HoleConstantResult estimate_hole_constants(const ExperimentConfig& cfg);

// Sylvester probability: fraction of (d+2)-point draws where one point lands
// inside the hull of the others.
Estimate estimate_sylvester_p(const bodies::ConvexBody& body, long long samples, bodies::Rng rng,
                              double level = 0.9999);

// Mean d-volume of the hull of d+1 uniform points.
Estimate estimate_expected_simplex_volume(const bodies::ConvexBody& body, long long samples, bodies::Rng rng,
                                          double level = 0.9999);

struct BodyDensity {
    std::string body;
    Estimate estimate;  // counts[d+1] / n^d at the given finite n
};

// Empty-simplex densities for several 3-dimensional bodies at one n.
std::vector<BodyDensity> compare_bodies_3d(const std::vector<bodies::ConvexBody>& bodies_in, int n, int trials,
                                           std::uint64_t master_seed, double level = 0.9999, int threads = 0);

}  // namespace holescope::experiments
