#include <doctest.h>

#include "holescope/holes.hpp"
#include "holescope/horton.hpp"

using namespace holescope;

TEST_CASE("horton set sizes and bounds") {
    CHECK(horton::horton_set({0, 1.0}).size() == 1);
    CHECK(horton::horton_set({5, 1.0}).size() == 32);
    CHECK_THROWS_AS(horton::horton_set({11, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(horton::horton_set({-1, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(horton::horton_set({3, 0.0}), std::invalid_argument);
}

TEST_CASE("m=2: four points contain a 4-hole") {
    const auto ps = horton::horton_set({2, 1.0});
    REQUIRE(ps.size() == 4);
    CHECK(holes::count_k_holes_bruteforce(ps, 4) >= 1);
}

TEST_CASE("no 7-holes for m up to 8") {
    for (int m = 3; m <= 8; ++m) {
        const auto ps = horton::horton_set({m, 1.0});
        const auto rep = holes::count_k_holes_fast(ps, 7, 2);
        CHECK(rep.counts.at(7) == 0);
        if (ps.size() >= 8) CHECK(rep.counts.at(6) > 0);  // 6-holes exist in large sets
    }
    // gap factor does not change the order type
    const auto scaled = horton::horton_set({6, 2.5});
    CHECK(holes::count_k_holes_fast(scaled, 7, 2).counts.at(7) == 0);
}

TEST_CASE("brute force confirms no 7-holes at m=5") {
    const auto ps = horton::horton_set({5, 1.0});
    CHECK(holes::count_k_holes_bruteforce(ps, 7) == 0);
}

TEST_CASE("doubling m roughly quadruples the empty-triangle count") {
    std::uint64_t prev = 0;
    for (int m = 6; m <= 8; ++m) {
        const auto ps = horton::horton_set({m, 1.0});
        const auto t = holes::count_empty_triangles_fast(ps, 2);
        if (prev > 0) {
            const double ratio = static_cast<double>(t) / static_cast<double>(prev);
            CHECK(ratio >= 3.5);
            CHECK(ratio <= 4.5);
        }
        prev = t;
    }
}

TEST_CASE("horton output is in general position") {
    for (int m : {4, 7, 9}) {
        const auto ps = horton::horton_set({m, 1.0});
        CHECK(geom::check_general_position(ps, 2));
    }
}
