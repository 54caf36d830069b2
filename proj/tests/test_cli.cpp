#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#ifndef HOLESCOPE_CLI_PATH
#define HOLESCOPE_CLI_PATH "./holescope"
#endif

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    const std::string cmd = std::string(HOLESCOPE_CLI_PATH) + " " + args + " 2>/tmp/holescope_test_stderr";
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

int count_lines(const std::string& s) {
    int n = 0;
    for (const char c : s)
        if (c == '\n') ++n;
    return n;
}

}  // namespace

TEST_CASE("cli: sample is deterministic and validates the body name") {
    const auto a = run("sample --body square --n 100 --seed 7 --out /tmp/hs_a.csv");
    const auto b = run("sample --body square --n 100 --seed 7 --out /tmp/hs_b.csv");
    CHECK(a.exit_code == 0);
    CHECK(b.exit_code == 0);
    const auto fa = slurp("/tmp/hs_a.csv");
    CHECK(fa == slurp("/tmp/hs_b.csv"));  // byte-identical
    CHECK(count_lines(fa) == 101);        // header + 100 rows
    CHECK(fa.substr(0, 6) == "x1,x2\n");

    const auto ball = run("sample --body ball --dim 3 --n 10 --out /tmp/hs_ball.csv");
    CHECK(ball.exit_code == 0);
    CHECK(slurp("/tmp/hs_ball.csv").substr(0, 9) == "x1,x2,x3\n");

    const auto bad = run("sample --body pentagonzzz --n 5");
    CHECK(bad.exit_code != 0);
    CHECK(slurp("/tmp/holescope_test_stderr").find("error") != std::string::npos);
}

TEST_CASE("cli: count on a hexagon, both engines") {
    {
        std::ofstream f("/tmp/hs_hex.csv");
        f << "x1,x2\n";
        for (int i = 0; i < 6; ++i) {
            const double t = 2.0 * 3.14159265358979323846 * i / 6 + 0.1;
            f << std::cos(t) << "," << std::sin(t) << "\n";
        }
    }
    const auto fast = run("count --in /tmp/hs_hex.csv --kmin 3 --kmax 6 --engine fast");
    CHECK(fast.exit_code == 0);
    CHECK(fast.out.find("\"3\": 20") != std::string::npos);
    CHECK(fast.out.find("\"4\": 15") != std::string::npos);
    CHECK(fast.out.find("\"5\": 6") != std::string::npos);
    CHECK(fast.out.find("\"6\": 1") != std::string::npos);

    const auto brute = run("count --in /tmp/hs_hex.csv --kmin 3 --kmax 6 --engine brute");
    CHECK(brute.exit_code == 0);
    // identical counts from both engines
    auto strip_elapsed = [](std::string s) {
        const auto pos = s.find("\"elapsed_seconds\"");
        if (pos != std::string::npos) s.erase(pos, s.find('\n', pos) - pos);
        return s;
    };
    CHECK(strip_elapsed(fast.out) == strip_elapsed(brute.out));
}

TEST_CASE("cli: count rejects degenerate input with exit code 2") {
    {
        std::ofstream f("/tmp/hs_degen.csv");
        f << "x1,x2\n0,0\n1,1\n2,2\n0,1\n";
    }
    const auto r = run("count --in /tmp/hs_degen.csv");
    CHECK(r.exit_code == 2);
    CHECK(slurp("/tmp/holescope_test_stderr").find("degenerate") != std::string::npos);
}

TEST_CASE("cli: estimate rejects trials=1 and writes a manifest") {
    const auto bad = run("estimate --body square --n 50 --trials 1");
    CHECK(bad.exit_code != 0);

    const auto r = run(
        "estimate --body square --n 50 --trials 3 --k 3..4 --seed 11 "
        "--manifest /tmp/hs_est.manifest");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("k,mean,stderr,ci_low,ci_high,trials,n,body") == 0);
    CHECK(count_lines(r.out) == 3);  // header + k=3 + k=4
    const auto manifest = slurp("/tmp/hs_est.manifest");
    CHECK(manifest.find("master_seed=11") != std::string::npos);
    CHECK(manifest.find("trial_stream.2=") != std::string::npos);

    // reruns of the same config produce identical data rows
    const auto again = run(
        "estimate --body square --n 50 --trials 3 --k 3..4 --seed 11 "
        "--manifest /tmp/hs_est2.manifest");
    CHECK(again.out == r.out);
}

TEST_CASE("cli: config file is equivalent to flags") {
    {
        std::ofstream f("/tmp/hs_run.cfg");
        f << "body=disk\nn=40\ntrials=3\nk=3..4\nseed=21\n";
    }
    const auto from_file = run("estimate --config /tmp/hs_run.cfg --manifest /tmp/hs_m1");
    const auto from_flags =
        run("estimate --body disk --n 40 --trials 3 --k 3..4 --seed 21 --manifest /tmp/hs_m2");
    CHECK(from_file.exit_code == 0);
    CHECK(from_file.out == from_flags.out);

    // flags override the file
    const auto overridden = run("estimate --config /tmp/hs_run.cfg --seed 22 --manifest /tmp/hs_m3");
    CHECK(overridden.exit_code == 0);
    CHECK(overridden.out != from_file.out);
}

TEST_CASE("cli: horton output") {
    const auto r = run("horton --m 5 --out /tmp/hs_h.csv");
    CHECK(r.exit_code == 0);
    CHECK(count_lines(slurp("/tmp/hs_h.csv")) == 33);
    const auto counted = run("count --in /tmp/hs_h.csv --kmin 7 --kmax 7 --engine brute");
    CHECK(counted.exit_code == 0);
    CHECK(counted.out.find("\"7\": 0") != std::string::npos);
}

TEST_CASE("cli: constants and verify") {
    const auto c = run("constants --d 2 --k 4");
    CHECK(c.exit_code == 0);
    CHECK(c.out.find("3.4202637326070944") != std::string::npos);

    const auto c3 = run("constants --d 3");
    CHECK(c3.exit_code == 0);
    CHECK(c3.out.find("empty_simplex_limit_lower_d3,3") != std::string::npos);
    CHECK(c3.out.find("3.3838643660877") != std::string::npos);

    const auto cj = run("constants --d 2 --format json");
    CHECK(cj.exit_code == 0);
    CHECK(cj.out.find("\"sylvester_p2_upper\"") != std::string::npos);

    const auto v = run("verify");
    CHECK(v.exit_code == 0);
    CHECK(v.out.find("FAIL") == std::string::npos);
    CHECK(count_lines(v.out) == 7);  // header + six checks
}

TEST_CASE("cli: compare3d smoke") {
    const auto r = run("compare3d --bodies tetrahedron,ball --n 16 --trials 3 --seed 3");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("tetrahedron,16,3,") != std::string::npos);
    CHECK(r.out.find("ball,16,3,") != std::string::npos);
}
