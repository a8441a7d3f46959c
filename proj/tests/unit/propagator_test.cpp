#include <doctest.h>

#include "unit/test_helpers.hpp"
#include "wignerkin/functionals.hpp"
#include "wignerkin/propagator.hpp"
#include "wignerkin/rng.hpp"

using namespace wignerkin;
using namespace wignerkin::testing;

TEST_CASE("free flow: identity at t=0 and exact group law") {
    PhaseGrid g = make_grid(2, 9, M_PI);
    DensityMatrix gm = random_band_limited_dm(g, g.half, 8.0, 3);
    DensityMatrix id = free_flow_dm(gm, 0.0);
    CHECK(rel_diff(id, gm) == 0.0);
    DensityMatrix a = free_flow_dm(free_flow_dm(gm, 0.31), 0.17);
    DensityMatrix b = free_flow_dm(gm, 0.48);
    CHECK(rel_diff(a, b) < 1e-13);
}

TEST_CASE("free flow preserves every Sobolev norm") {
    PhaseGrid g = make_grid(2, 9, M_PI);
    DensityMatrix gm = random_band_limited_dm(g, g.half, 8.0, 5);
    for (SobolevIndex idx : {SobolevIndex{0, 0}, SobolevIndex{1, 1}, SobolevIndex{2.5, 1.5}}) {
        const double n0 = sobolev_norm(gm, idx);
        const double n1 = sobolev_norm(free_flow_dm(gm, 0.7), idx);
        CHECK(std::abs(n1 - n0) <= 1e-12 * n0);
    }
}

TEST_CASE("intertwining with the Wigner transform is exact on the lattice") {
    PhaseGrid g = make_grid(2, 9, M_PI);
    Rng rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        KineticState f = KineticState::zeros(g);
        for (double& x : f.values) x = rng.gaussian();
        const double t = rng.uniform(-1.0, 1.0);
        KineticState a = wigner_forward(free_flow_dm(wigner_inverse(f), t));
        KineticState b = free_transport_kinetic(f, t);
        CHECK(rel_diff(a, b) < 1e-12);
    }
}

TEST_CASE("spatially uniform states are unchanged by transport") {
    // the advection term v.grad_x vanishes exactly for x-independent data
    PhaseGrid g = make_grid(2, 9, M_PI);
    Rng rng(23);
    KineticState f = KineticState::zeros(g);
    const std::size_t V = g.volume(2);
    std::vector<double> profile(V);
    for (double& x : profile) x = rng.gaussian();
    for (std::size_t r = 0; r < g.volume(2); ++r)
        std::copy(profile.begin(), profile.end(), f.values.begin() + r * V);
    KineticState moved = free_transport_kinetic(f, 0.4);
    CHECK(rel_diff(moved, f) < 1e-13);
}

TEST_CASE("transport conserves mass, momentum, energy") {
    PhaseGrid g = make_grid(2, 9, M_PI);
    KineticState f = gaussian_state(g, balanced_variance_x(g), balanced_variance(g), 0.8);
    Observables o0 = observables(f);
    Observables o1 = observables(free_transport_kinetic(f, 0.37));
    CHECK(std::abs(o1.mass - o0.mass) <= 1e-12 * std::abs(o0.mass));
    CHECK(std::abs(o1.momentum[0] - o0.momentum[0]) <= 1e-12 * o0.mass);
    CHECK(std::abs(o1.kinetic_energy - o0.kinetic_energy) <= 1e-12 * o0.kinetic_energy);
}

TEST_CASE("transport isometry in L2") {
    PhaseGrid g = make_grid(2, 9, M_PI);
    Rng rng(29);
    KineticState f = KineticState::zeros(g);
    for (double& x : f.values) x = rng.gaussian();
    CHECK(std::abs(l2_norm(free_transport_kinetic(f, 1.3)) - l2_norm(f)) <= 1e-12 * l2_norm(f));
}
