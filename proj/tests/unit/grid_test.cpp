#include <doctest.h>

#include <cmath>
#include <set>

#include "wignerkin/grid.hpp"

using namespace wignerkin;

TEST_CASE("make_grid derived quantities") {
    PhaseGrid g = make_grid(2, 15, M_PI);
    CHECK(g.hx == doctest::Approx(2.0 * M_PI / 15).epsilon(1e-15));
    CHECK(g.xi_step == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(g.inv2 == 8);
    CHECK(g.hx * g.N == doctest::Approx(2.0 * g.L));
    CHECK(g.xi_step * g.L == doctest::Approx(M_PI));
}

TEST_CASE("make_grid rejects bad input") {
    CHECK_THROWS_AS(make_grid(2, 16, M_PI), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(2, 9, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(2, 9, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(4, 9, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(2, 3, 1.0), std::invalid_argument);
}

TEST_CASE("inv2 is the inverse of 2 mod N") {
    for (int N : {5, 7, 9, 11, 15, 21}) {
        PhaseGrid g = make_grid(2, N, 4.0);
        CHECK((2 * g.inv2) % N == 1);
    }
    PhaseGrid g9 = make_grid(2, 9, 4.0);
    CHECK(g9.inv2 == 5);
}

TEST_CASE("index map (k,k') -> (k+k', inv2(k-k')) is a bijection") {
    for (int N : {5, 9, 15}) {
        PhaseGrid g = make_grid(2, N, 1.0);
        std::set<std::pair<int, int>> hit;
        for (int k = -g.half; k <= g.half; ++k)
            for (int kp = -g.half; kp <= g.half; ++kp)
                hit.emplace(g.rep(k + kp), g.half_index(k - kp));
        CHECK(hit.size() == static_cast<std::size_t>(N) * N);
    }
}

TEST_CASE("centered representative") {
    PhaseGrid g = make_grid(2, 9, 1.0);
    CHECK(g.rep(5) == -4);
    CHECK(g.rep(-5) == 4);
    CHECK(g.rep(9) == 0);
    CHECK(g.rep(4) == 4);
}
