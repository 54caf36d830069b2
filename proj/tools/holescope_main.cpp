// holescope: exact k-hole counting and Monte Carlo hole-constant estimation
// for random point sets in convex bodies.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "holescope/analytic.hpp"
#include "holescope/bodies.hpp"
#include "holescope/experiments.hpp"
#include "holescope/holes.hpp"
#include "holescope/horton.hpp"
#include "holescope/io.hpp"

namespace hs = holescope;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "1.0.0";

std::string timestamp_utc() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

struct KRange {
    int lo = 3, hi = 4;
};

KRange parse_k_range(const std::string& s) {
    KRange r;
    const auto pos = s.find("..");
    try {
        if (pos == std::string::npos) {
            r.lo = r.hi = std::stoi(s);
        } else {
            r.lo = std::stoi(s.substr(0, pos));
            r.hi = std::stoi(s.substr(pos + 2));
        }
    } catch (const std::exception&) {
        throw CLI::ValidationError("--k", "expected K or KMIN..KMAX, got '" + s + "'");
    }
    return r;
}

// Flat key=value config: '#' comments, blank lines ignored.
std::map<std::string, std::string> read_flat_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        while (!line.empty() && (line.back() == ' ' || line.back() == '\r' || line.back() == '\t')) line.pop_back();
        std::size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected key=value");
        kv[line.substr(start, eq - start)] = line.substr(eq + 1);
    }
    return kv;
}

hs::bodies::ConvexBody resolve_body(const std::string& name, int dim_flag) {
    std::optional<int> dim;
    if (dim_flag > 0) dim = dim_flag;
    return hs::bodies::ConvexBody::from_name(name, dim);
}

std::string estimate_csv_header() { return "k,mean,stderr,ci_low,ci_high,trials,n,body"; }

std::string estimate_csv_row(int k, const hs::experiments::Estimate& e, int n, const std::string& body) {
    std::ostringstream os;
    os << k << ',' << hs::io::format_double(e.mean) << ',' << hs::io::format_double(e.std_error) << ','
       << hs::io::format_double(e.ci_low) << ',' << hs::io::format_double(e.ci_high) << ',' << e.samples << ',' << n
       << ',' << body;
    return os.str();
}

int cmd_sample(const std::string& body_name, int dim, int n, std::uint64_t seed, const std::string& out) {
    const auto body = resolve_body(body_name, dim).normalized_to_unit_volume();
    const auto ps = hs::bodies::sample_uniform(body, n, hs::bodies::Rng(seed, 0));
    if (out.empty()) {
        for (int j = 0; j < ps.dim; ++j) std::cout << (j ? "," : "") << 'x' << (j + 1);
        std::cout << '\n';
        for (std::size_t i = 0; i < ps.size(); ++i) {
            for (int j = 0; j < ps.dim; ++j) std::cout << (j ? "," : "") << hs::io::format_double(ps[i][j]);
            std::cout << '\n';
        }
    } else {
        hs::io::write_points_csv(out, ps);
    }
    return 0;
}

int cmd_count(const std::string& in, int k_min, int k_max, const std::string& engine, int threads) {
    const auto ps = hs::io::read_points_csv(in);
    if (!hs::geom::check_general_position(ps, threads > 0 ? threads : 2)) {
        std::cerr << "error: input is degenerate (general-position check failed): " << in << "\n";
        return 2;
    }

    hs::holes::HoleCountReport report;
    report.n = static_cast<int>(ps.size());
    report.dim = ps.dim;
    const auto t0 = std::chrono::steady_clock::now();
    if (engine == "fast") {
        if (ps.dim != 2) {
            std::cerr << "error: --engine fast requires 2-dimensional input\n";
            return 1;
        }
        report = hs::holes::count_k_holes_fast(ps, k_max, threads);
    } else {
        for (int k = std::max(k_min, ps.dim + 1); k <= k_max; ++k)
            if (static_cast<std::size_t>(k) <= ps.size()) report.counts[k] = hs::holes::count_k_holes_bruteforce(ps, k);
    }
    report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    json j;
    j["n"] = report.n;
    j["dim"] = report.dim;
    j["counts"] = json::object();
    for (const auto& [k, c] : report.counts)
        if (k >= k_min && k <= k_max) j["counts"][std::to_string(k)] = c;
    j["elapsed_seconds"] = report.elapsed_seconds;
    std::cout << j.dump(2) << '\n';
    return 0;
}

int cmd_estimate(const hs::experiments::ExperimentConfig& cfg, const std::string& body_name,
                 const std::string& out, const std::string& manifest_path, const std::string& cmdline) {
    const std::string started = timestamp_utc();
    const auto result = hs::experiments::estimate_hole_constants(cfg);
    const std::string finished = timestamp_utc();

    std::ostringstream data;
    data << estimate_csv_header() << '\n';
    for (const auto& [k, est] : result.estimates) data << estimate_csv_row(k, est, cfg.n, body_name) << '\n';
    if (!result.eq3_envelope_ok)
        std::cerr << "warning: a per-trial count exceeded the finite-n upper-bound envelope\n";

    if (out.empty()) {
        std::cout << data.str();
    } else {
        std::ofstream f(out, std::ios::binary);
        if (!f) {
            std::cerr << "error: cannot write " << out << '\n';
            return 1;
        }
        f << data.str();
    }

    std::ofstream mf(manifest_path, std::ios::binary);
    if (!mf) {
        std::cerr << "error: cannot write manifest " << manifest_path << '\n';
        return 1;
    }
    mf << "tool=holescope " << kVersion << '\n';
    mf << "command=" << cmdline << '\n';
    mf << "started=" << started << '\n';
    mf << "finished=" << finished << '\n';
    mf << "body=" << body_name << '\n';
    mf << "dim=" << cfg.body.dim() << '\n';
    mf << "n=" << cfg.n << '\n';
    mf << "trials=" << cfg.trials << '\n';
    mf << "k_min=" << cfg.k_min << '\n';
    mf << "k_max=" << cfg.k_max << '\n';
    mf << "master_seed=" << cfg.master_seed << '\n';
    mf << "ci_level=" << hs::io::format_double(cfg.ci_level) << '\n';
    for (const auto& rec : result.trials)
        mf << "trial_stream." << rec.trial << '=' << rec.stream_id << '\n';
    return 0;
}

int cmd_constants(int d, int k, const std::string& format) {
    struct Row {
        std::string quantity;
        double value;
    };
    std::vector<Row> rows;

    rows.push_back({"kappa_" + std::to_string(d), hs::analytic::kappa(d)});
    rows.push_back({"omega_" + std::to_string(d), hs::analytic::omega(d)});

    std::optional<double> p_prev;
    if (d == 2) p_prev = 1.0;
    if (d == 3) p_prev = 1.0 / 3.0;
    if (p_prev) {
        const auto b = hs::analytic::empty_simplex_bounds(d, *p_prev);
        rows.push_back({"empty_simplex_limit_lower_d" + std::to_string(d), *b.lower});
        rows.push_back({"empty_simplex_limit_upper_d" + std::to_string(d), *b.upper});
    } else {
        const auto b = hs::analytic::empty_simplex_bounds(d, 1.0);
        rows.push_back({"empty_simplex_limit_upper_d" + std::to_string(d), *b.upper});
    }

    if (d == 2) {
        const auto [blo, bhi] = hs::analytic::blaschke_bounds();
        rows.push_back({"sylvester_p2_lower", blo});
        rows.push_back({"sylvester_p2_upper", bhi});
        for (int kk : (k > 0 ? std::vector<int>{k} : std::vector<int>{3, 4})) {
            if (kk >= 3) {
                const auto c = hs::analytic::planar_constant(kk);
                if (c) rows.push_back({"planar_hole_constant_k" + std::to_string(kk), *c});
            }
        }
    }

    if (format == "json") {
        json j = json::object();
        for (const auto& r : rows) j[r.quantity] = r.value;
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << "quantity,value\n";
        for (const auto& r : rows) std::cout << r.quantity << ',' << hs::io::format_double(r.value) << '\n';
    }
    return 0;
}

int cmd_verify() {
    const double pi = 3.14159265358979323846;
    const double t1 = hs::analytic::verify_type1_integral(1.0);
    const double t1b = hs::analytic::verify_type1_integral(0.5);
    const double t2 = hs::analytic::verify_type2_integral();
    const double s_abs = 4.0 * hs::analytic::sum_inverse_squares();
    const double s_alt = 4.0 * hs::analytic::sum_alternating_inverse_squares();
    const double assembled = hs::analytic::four_hole_constant_assembly();

    struct Line {
        const char* name;
        double got, want;
        double tol;
    } lines[] = {
        {"type1_integral(l=1)", t1, 4.0, 1e-8},
        {"type1_integral(l=1/2)", t1b, 4.0, 1e-8},
        {"type2_integral", t2, 4.0 - pi * pi / 3.0, 1e-8},
        {"abs_series 4*sum 1/k^2", s_abs, 2.0 * pi * pi / 3.0, 1e-8},
        {"alt_series 4*sum (-1)^(k+1)/k^2", s_alt, pi * pi / 3.0, 1e-8},
        {"four_hole_constant", assembled, 10.0 - 2.0 * pi * pi / 3.0, 1e-8},
    };

    bool ok = true;
    std::cout << "check,value,expected,residual,status\n";
    for (const auto& l : lines) {
        const double res = std::abs(l.got - l.want);
        const bool pass = res <= l.tol;
        ok = ok && pass;
        std::cout << l.name << ',' << hs::io::format_double(l.got) << ',' << hs::io::format_double(l.want) << ','
                  << hs::io::format_double(res) << ',' << (pass ? "ok" : "FAIL") << '\n';
    }
    return ok ? 0 : 1;
}

int cmd_compare3d(const std::string& bodies_csv, int n, int trials, std::uint64_t seed, int threads) {
    std::vector<hs::bodies::ConvexBody> bodies;
    std::stringstream ss(bodies_csv);
    std::string name;
    while (std::getline(ss, name, ',')) {
        if (name.empty()) continue;
        bodies.push_back(hs::bodies::ConvexBody::from_name(name, 3));
    }
    if (bodies.empty()) {
        std::cerr << "error: no bodies given\n";
        return 1;
    }
    const auto out = hs::experiments::compare_bodies_3d(bodies, n, trials, seed, 0.9999, threads);
    std::cout << "body,n,trials,mean,stderr,ci_low,ci_high\n";
    for (const auto& row : out) {
        const auto& e = row.estimate;
        std::cout << row.body << ',' << n << ',' << trials << ',' << hs::io::format_double(e.mean) << ','
                  << hs::io::format_double(e.std_error) << ',' << hs::io::format_double(e.ci_low) << ','
                  << hs::io::format_double(e.ci_high) << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"holescope: k-holes in random point sets from convex bodies"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    std::string cmdline;
    for (int i = 0; i < argc; ++i) cmdline += std::string(i ? " " : "") + argv[i];

    // sample
    auto* sample = app.add_subcommand("sample", "draw uniform points and write a CSV point file");
    std::string s_body = "square", s_out;
    int s_dim = 0, s_n = 0;
    std::uint64_t s_seed = hs::experiments::kDefaultSeed;
    sample->add_option("--body", s_body, "body name")->required();
    sample->add_option("--dim", s_dim, "dimension (where ambiguous)");
    sample->add_option("--n", s_n, "number of points")->required()->check(CLI::PositiveNumber);
    sample->add_option("--seed", s_seed, "master seed (default 1729)");
    sample->add_option("--out", s_out, "output CSV path (default stdout)");

    // count
    auto* count = app.add_subcommand("count", "count k-holes in a point file, JSON report on stdout");
    std::string c_in, c_engine = "fast";
    int c_kmin = 3, c_kmax = 6, c_threads = 0;
    count->add_option("--in", c_in, "input CSV point file")->required();
    count->add_option("--kmin", c_kmin, "smallest k (default 3)");
    count->add_option("--kmax", c_kmax, "largest k (default 6)");
    count->add_option("--engine", c_engine, "fast|brute (default fast)")
        ->check(CLI::IsMember({"fast", "brute"}));
    count->add_option("--threads", c_threads, "worker threads (0 = auto)");

    // estimate
    auto* estimate = app.add_subcommand("estimate", "Monte Carlo estimate of hole-density constants");
    std::string e_config, e_body, e_k = "3..4", e_out, e_manifest = "estimate.manifest";
    int e_dim = 0, e_n = 0, e_trials = 0, e_threads = 0;
    std::uint64_t e_seed = hs::experiments::kDefaultSeed;
    double e_ci = 0.9999;
    estimate->add_option("--config", e_config, "flat key=value config file; flags override");
    estimate->add_option("--body", e_body, "body name");
    estimate->add_option("--dim", e_dim, "dimension (where ambiguous)");
    estimate->add_option("--n", e_n, "points per trial");
    estimate->add_option("--trials", e_trials, "number of trials (>= 2)");
    estimate->add_option("--k", e_k, "k or kmin..kmax (default 3..4)");
    estimate->add_option("--seed", e_seed, "master seed (default 1729)");
    estimate->add_option("--ci", e_ci, "confidence level (default 0.9999)");
    estimate->add_option("--threads", e_threads, "worker threads (0 = auto)");
    estimate->add_option("--out", e_out, "write result CSV here instead of stdout");
    estimate->add_option("--manifest", e_manifest, "manifest path (default estimate.manifest)");

    // horton
    auto* horton = app.add_subcommand("horton", "generate a classical Horton set");
    int h_m = 6;
    double h_gap = 1.0;
    std::string h_out;
    horton->add_option("--m", h_m, "size exponent, set has 2^m points (m <= 10)")->required();
    horton->add_option("--gap-factor", h_gap, "vertical gap factor (default 1)");
    horton->add_option("--out", h_out, "output CSV path (default stdout)");

    // constants
    auto* constants = app.add_subcommand("constants", "print closed-form constants and bounds");
    int k_d = 2, k_k = 0;
    std::string k_format = "csv";
    constants->add_option("--d", k_d, "dimension (default 2)");
    constants->add_option("--k", k_k, "hole size for planar constants");
    constants->add_option("--format", k_format, "csv|json")->check(CLI::IsMember({"csv", "json"}));

    // verify
    auto* verify = app.add_subcommand("verify", "numerically verify the limit integrals and series");

    // compare3d
    auto* compare = app.add_subcommand("compare3d", "empty-simplex densities for 3D bodies");
    std::string x_bodies = "tetrahedron,ball";
    int x_n = 60, x_trials = 400, x_threads = 0;
    std::uint64_t x_seed = hs::experiments::kDefaultSeed;
    compare->add_option("--bodies", x_bodies, "comma-separated body names");
    compare->add_option("--n", x_n, "points per trial (default 60)");
    compare->add_option("--trials", x_trials, "trials per body (default 400)");
    compare->add_option("--seed", x_seed, "master seed");
    compare->add_option("--threads", x_threads, "worker threads (0 = auto)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sample) return cmd_sample(s_body, s_dim, s_n, s_seed, s_out);
        if (*count) return cmd_count(c_in, c_kmin, c_kmax, c_engine, c_threads);
        if (*estimate) {
            std::vector<std::string> problems;
            if (!e_config.empty()) {
                // flags passed explicitly keep priority over config values
                const auto kv = read_flat_config(e_config);
                auto take = [&](const char* flag, const char* key, auto& slot) {
                    const auto it = kv.find(key);
                    if (it == kv.end() || estimate->count(flag) > 0) return;
                    std::stringstream ss(it->second);
                    ss >> slot;
                    if (ss.fail()) problems.push_back(std::string("config: bad value for ") + key);
                };
                take("--body", "body", e_body);
                take("--dim", "dim", e_dim);
                take("--n", "n", e_n);
                take("--trials", "trials", e_trials);
                take("--k", "k", e_k);
                take("--seed", "seed", e_seed);
                take("--ci", "ci", e_ci);
                take("--threads", "threads", e_threads);
                take("--out", "out", e_out);
                take("--manifest", "manifest", e_manifest);
            }
            const KRange kr = parse_k_range(e_k);
            if (e_body.empty()) problems.push_back("--body is required (flag or config)");
            if (e_n < 1) problems.push_back("--n must be a positive point count");
            if (e_trials < 2) problems.push_back("--trials must be >= 2 (a confidence interval is undefined otherwise)");
            if (!(e_ci > 0.0 && e_ci < 1.0)) problems.push_back("--ci must be in (0, 1)");
            if (kr.lo > kr.hi) problems.push_back("--k range is empty");
            hs::experiments::ExperimentConfig cfg;
            if (!e_body.empty()) {
                try {
                    cfg.body = resolve_body(e_body, e_dim);
                } catch (const std::exception& ex) {
                    problems.push_back(ex.what());
                }
            }
            if (!problems.empty()) {
                for (const auto& p : problems) std::cerr << "error: " << p << '\n';
                return 1;
            }
            cfg.n = e_n;
            cfg.trials = e_trials;
            cfg.k_min = kr.lo;
            cfg.k_max = kr.hi;
            cfg.master_seed = e_seed;
            cfg.ci_level = e_ci;
            cfg.threads = e_threads;
            return cmd_estimate(cfg, cfg.body.name(), e_out, e_manifest, cmdline);
        }
        if (*horton) {
            const auto ps = hs::horton::horton_set({h_m, h_gap});
            if (h_out.empty()) {
                std::cout << "x1,x2\n";
                for (std::size_t i = 0; i < ps.size(); ++i)
                    std::cout << hs::io::format_double(ps[i][0]) << ',' << hs::io::format_double(ps[i][1]) << '\n';
            } else {
                hs::io::write_points_csv(h_out, ps);
            }
            return 0;
        }
        if (*constants) return cmd_constants(k_d, k_k, k_format);
        if (*verify) return cmd_verify();
        if (*compare) return cmd_compare3d(x_bodies, x_n, x_trials, x_seed, x_threads);
    } catch (const hs::degenerate_input& ex) {
        std::cerr << "error: degenerate input: " << ex.what() << '\n';
        return 2;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << '\n';
        return 1;
    }
    return 0;
}
