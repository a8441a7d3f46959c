#include <doctest.h>

#include "unit/test_helpers.hpp"
#include "wignerkin/collision.hpp"
#include "wignerkin/parallel.hpp"
#include "wignerkin/rng.hpp"

using namespace wignerkin;
using namespace wignerkin::testing;

namespace {

const CollisionKernel kUnit = ConstantKernel{1.0};

std::vector<double> kinetic_moments(const PhaseGrid& g, const KineticState& q) {
    const std::size_t R = g.volume(g.d), V = g.volume(g.d);
    std::vector<double> mom(2 + g.d, 0.0);
    std::vector<int> idx(g.d, 0);
    std::vector<std::array<double, 3>> vp(V, {0, 0, 0});
    for (std::size_t m = 0; m < V; ++m) {
        for (int a = 0; a < g.d; ++a) vp[m][a] = g.v(idx[a] - g.half);
        for (int a = g.d - 1; a >= 0; --a) {
            if (++idx[a] < g.N) break;
            idx[a] = 0;
        }
    }
    for (std::size_t r = 0; r < R; ++r)
        for (std::size_t m = 0; m < V; ++m) {
            const double x = q.values[r * V + m];
            mom[0] += x;
            for (int a = 0; a < g.d; ++a) mom[1 + a] += x * vp[m][a];
            double e = 0.0;
            for (int a = 0; a < g.d; ++a) e += vp[m][a] * vp[m][a];
            mom[1 + g.d] += x * e;
        }
    const double w = std::pow(g.hx * g.xi_step, g.d);
    for (double& x : mom) x *= w;
    return mom;
}

double l1_mass(const PhaseGrid& g, const KineticState& f) {
    double s = 0.0;
    for (double x : f.values) s += std::abs(x);
    return s * std::pow(g.hx * g.xi_step, g.d);
}

KineticState rot90(const KineticState& f) {
    // (x1,x2,v1,v2) -> (-x2,x1,-v2,v1), i.e. index (a,b) -> (N-1-b, a)
    const PhaseGrid& g = f.grid;
    const int N = g.N;
    KineticState out = KineticState::zeros(g);
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b)
            for (int c = 0; c < N; ++c)
                for (int e = 0; e < N; ++e) {
                    const std::size_t src =
                        ((static_cast<std::size_t>(a) * N + b) * N + c) * N + e;
                    const std::size_t dst =
                        ((static_cast<std::size_t>(N - 1 - b) * N + a) * N + (N - 1 - e)) * N + c;
                    out.values[dst] = f.values[src];
                }
    return out;
}

}  // namespace

TEST_CASE("post_collision examples") {
    std::array<double, 3> v{1, 0, 0}, vs{-1, 0, 0}, vp{}, vsp{};
    post_collision(v, vs, {1, 0, 0}, 2, vp, vsp);
    CHECK(vp[0] == doctest::Approx(-1.0));
    CHECK(vsp[0] == doctest::Approx(1.0));

    post_collision(v, vs, {0, 1, 0}, 2, vp, vsp);
    CHECK(vp[0] == doctest::Approx(1.0));
    CHECK(vp[1] == doctest::Approx(0.0));
    CHECK(vsp[0] == doctest::Approx(-1.0));

    const double s = std::sqrt(2.0) / 2.0;
    post_collision(v, vs, {s, s, 0}, 2, vp, vsp);
    CHECK(vp[0] == doctest::Approx(0.0));
    CHECK(vp[1] == doctest::Approx(-1.0));
    CHECK(vsp[0] == doctest::Approx(0.0));
    CHECK(vsp[1] == doctest::Approx(1.0));
    const double e = vp[0] * vp[0] + vp[1] * vp[1] + vsp[0] * vsp[0] + vsp[1] * vsp[1];
    CHECK(e == doctest::Approx(2.0).epsilon(1e-14));

    CHECK_THROWS_AS(post_collision(v, vs, {0.5, 0.5, 0}, 2, vp, vsp), std::invalid_argument);
}

TEST_CASE("post_collision conserves momentum and energy for random inputs") {
    Rng rng(91);
    for (int t = 0; t < 50; ++t) {
        std::array<double, 3> v{rng.gaussian(), rng.gaussian(), 0};
        std::array<double, 3> vs{rng.gaussian(), rng.gaussian(), 0};
        const double th = rng.uniform(0.0, 2.0 * M_PI);
        std::array<double, 3> om{std::cos(th), std::sin(th), 0};
        std::array<double, 3> vp{}, vsp{};
        post_collision(v, vs, om, 2, vp, vsp);
        for (int a = 0; a < 2; ++a)
            CHECK(vp[a] + vsp[a] == doctest::Approx(v[a] + vs[a]).epsilon(1e-13));
        const double e0 = v[0] * v[0] + v[1] * v[1] + vs[0] * vs[0] + vs[1] * vs[1];
        const double e1 = vp[0] * vp[0] + vp[1] * vp[1] + vsp[0] * vsp[0] + vsp[1] * vsp[1];
        CHECK(e1 == doctest::Approx(e0).epsilon(1e-12));
    }
}

TEST_CASE("angular quadrature weights sum to the sphere measure") {
    AngularQuadrature q2 = AngularQuadrature::uniform_circle(32);
    CHECK(q2.total_weight() == doctest::Approx(2.0 * M_PI).epsilon(1e-13));
    AngularQuadrature q3 = AngularQuadrature::sphere_product(4, 8);
    CHECK(q3.total_weight() == doctest::Approx(4.0 * M_PI).epsilon(1e-12));
}

TEST_CASE("b_minus against a uniform density is multiplication by i kappa") {
    PhaseGrid g = make_grid(2, 9, M_PI);
    AngularQuadrature quad = AngularQuadrature::uniform_circle(32);
    DensityMatrix g1 = random_band_limited_dm(g, 2, 2.0, 7);
    // f2 with density identically 1
    KineticState f2 = KineticState::zeros(g);
    const double val = 1.0 / (g.volume(2) * std::pow(g.xi_step, 2));
    for (double& x : f2.values) x = val;
    DensityMatrix g2 = wigner_inverse(f2);
    DensityMatrix out = b_minus(g1, g2, kUnit, quad);
    const double kap = kappa(ConstantKernel{1.0}, quad);
    DensityMatrix expect = g1;
    for (cplx& z : expect.values) z *= cplx(0.0, kap);
    CHECK(rel_diff(out, expect) < 1e-12);
}

TEST_CASE("zero arguments give zero; bilinearity holds exactly") {
    PhaseGrid g = make_grid(2, 9, M_PI);
    AngularQuadrature quad = AngularQuadrature::uniform_circle(16);
    DensityMatrix z = DensityMatrix::zeros(g);
    DensityMatrix g1 = random_band_limited_dm(g, 2, 2.0, 11);
    DensityMatrix g2 = random_band_limited_dm(g, 2, 2.0, 13);
    CHECK(l2_norm(b_minus(z, g2, kUnit, quad)) == 0.0);
    CHECK(l2_norm(b_plus(z, g2, kUnit, quad)) == 0.0);
    CHECK(l2_norm(b_plus(g1, z, kUnit, quad)) == 0.0);

    DensityMatrix g1s = g1;
    for (cplx& w : g1s.values) w *= 2.5;
    for (auto op : {b_minus, b_plus}) {
        DensityMatrix a = op(g1s, g2, kUnit, quad);
        DensityMatrix b = op(g1, g2, kUnit, quad);
        for (cplx& w : b.values) w *= 2.5;
        CHECK(rel_diff(a, b) < 1e-12);
    }
}

TEST_CASE("loss path matches the kinetic oracle exactly") {
    PhaseGrid g = make_grid(2, 9, M_PI);
    AngularQuadrature quad = AngularQuadrature::uniform_circle(32);
    KineticState f = random_nonneg_state(g, 1.0, 17);
    DensityMatrix gm = wigner_inverse(f);
    DensityMatrix bm = b_minus(gm, gm, kUnit, quad);
    // W[B^-] = i * Q^-(f, f)
    KineticState lo = q_loss_oracle(f, f, kUnit, quad);
    std::vector<cplx> img = wigner_forward_c(bm);
    double d2 = 0.0, n2 = 0.0;
    for (std::size_t i = 0; i < img.size(); ++i) {
        d2 += std::norm(img[i] - cplx(0.0, lo.values[i]));
        n2 += lo.values[i] * lo.values[i];
    }
    CHECK(std::sqrt(d2 / n2) < 1e-12);
}

TEST_CASE("density-matrix collision is the exact Wigner conjugate of the spectral path") {
    PhaseGrid g = make_grid(2, 9, M_PI);
    AngularQuadrature quad = AngularQuadrature::uniform_circle(32);
    KineticState f = random_nonneg_state(g, 1.0, 19);
    DensityMatrix gm = wigner_inverse(f);
    DensityMatrix zeta = collide(gm, kUnit, quad, /*conservative=*/false);
    KineticState q = q_spectral(f, kUnit, quad, /*conservative=*/false);
    std::vector<cplx> img = wigner_forward_c(zeta);  // = i Q
    double d2 = 0.0, n2 = 0.0;
    for (std::size_t i = 0; i < img.size(); ++i) {
        d2 += std::norm(img[i] - cplx(0.0, q.values[i]));
        n2 += q.values[i] * q.values[i];
    }
    CHECK(std::sqrt(d2 / n2) < 1e-12);
}

TEST_CASE("collision image of Hermitian data is purely imaginary (real kinetic Q)") {
    PhaseGrid g = make_grid(2, 9, M_PI);
    AngularQuadrature quad = AngularQuadrature::uniform_circle(32);
    DensityMatrix gm = random_band_limited_dm(g, 2, 1.5, 23);
    DensityMatrix zeta = collide(gm, kUnit, quad, false);
    std::vector<cplx> img = wigner_forward_c(zeta);
    double re2 = 0.0, t2 = 0.0;
    for (const cplx& z : img) {
        re2 += z.real() * z.real();
        t2 += std::norm(z);
    }
    CHECK(std::sqrt(re2 / t2) < 1e-8);
}

TEST_CASE("90-degree rotation equivariance of the spectral collision") {
    PhaseGrid g = make_grid(2, 9, M_PI);
    AngularQuadrature quad = AngularQuadrature::uniform_circle(32);  // divisible by 4
    KineticState f = random_nonneg_state(g, 1.0, 29);
    KineticState a = rot90(q_spectral(f, kUnit, quad, false));
    KineticState b = q_spectral(rot90(f), kUnit, quad, false);
    CHECK(rel_diff(a, b) < 1e-12);
}

TEST_CASE("conservative correction kills the discrete collision invariants") {
    PhaseGrid g = make_grid(2, 9, M_PI);
    AngularQuadrature quad = AngularQuadrature::uniform_circle(32);
    KineticState f = random_nonneg_state(g, 1.0, 31);
    KineticState q = q_spectral(f, kUnit, quad, true);
    std::vector<double> mom = kinetic_moments(g, q);
    const double ref = l1_mass(g, f);
    for (double m : mom) CHECK(std::abs(m) <= 1e-12 * ref * ref);
}

TEST_CASE("oracle: zero and spatially-constant states") {
    PhaseGrid g = make_grid(2, 9, M_PI);
    AngularQuadrature quad = AngularQuadrature::uniform_circle(16);
    KineticState z = KineticState::zeros(g);
    CHECK(l2_norm(q_gain_oracle(z, z, kUnit, quad)) == 0.0);

    KineticState c = KineticState::zeros(g);
    for (double& x : c.values) x = 0.7;
    KineticState gain = q_gain_oracle(c, c, kUnit, quad);
    KineticState loss = q_loss_oracle(c, c, kUnit, quad);
    CHECK(rel_diff(gain, loss) < 1e-12);
}

TEST_CASE("spectral equilibrium residual for a resolved Maxwellian (N=15)") {
    set_thread_count(2);
    PhaseGrid g = make_grid(2, 15, M_PI);
    KineticState f = gaussian_state(g, balanced_variance_x(g), balanced_variance(g), 1.0);
    KineticState q = q_spectral(f, kUnit, AngularQuadrature::uniform_circle(32), false);
    std::vector<cplx> fc(f.values.begin(), f.values.end());
    std::vector<cplx> lo =
        loss_image(g, fc, fc, 1.0, AngularQuadrature::uniform_circle(32));
    double ln = 0.0;
    for (const cplx& zc : lo) ln += std::norm(zc);
    CHECK(l2_norm(q) / std::sqrt(ln) < 1e-4);
    set_thread_count(1);
}

TEST_CASE("tabulated kernels: kinetic path only, constant table matches constant kernel") {
    PhaseGrid g = make_grid(2, 7, M_PI);
    AngularQuadrature quad = AngularQuadrature::uniform_circle(8);
    TabulatedKernel tab = TabulatedKernel::from_samples(
        4, 4, 20.0, std::vector<double>(16, 0.6));
    CHECK(tab.sup_norm == doctest::Approx(0.6));
    KineticState f = random_nonneg_state(g, 1.0, 37);
    KineticState a = q_gain_oracle(f, f, CollisionKernel{tab}, quad);
    KineticState b = q_gain_oracle(f, f, CollisionKernel{ConstantKernel{0.6}}, quad);
    CHECK(rel_diff(a, b) < 1e-12);

    DensityMatrix gm = wigner_inverse(f);
    CHECK_THROWS_AS(b_minus(gm, gm, CollisionKernel{tab}, quad), std::invalid_argument);
    CHECK_THROWS_AS(b_plus(gm, gm, CollisionKernel{tab}, quad), std::invalid_argument);
}
