#include <doctest.h>

#include "unit/test_helpers.hpp"
#include "wignerkin/rng.hpp"
#include "wignerkin/wigner.hpp"

using namespace wignerkin;
using namespace wignerkin::testing;

namespace {

KineticState random_state(const PhaseGrid& g, std::uint64_t seed) {
    Rng rng(seed);
    KineticState f = KineticState::zeros(g);
    for (double& x : f.values) x = rng.gaussian();
    return f;
}

}  // namespace

TEST_CASE("isometry and round trip for random states") {
    for (int N : {9, 15}) {
        PhaseGrid g = make_grid(2, N, M_PI);
        KineticState f = random_state(g, 5 + N);
        DensityMatrix gm = wigner_inverse(f);
        CHECK(std::abs(l2_norm(gm) - l2_norm(f)) <= 1e-12 * l2_norm(f));
        double resid = -1.0;
        KineticState back = wigner_forward(gm, &resid);
        CHECK(rel_diff(back, f) < 1e-12);
        CHECK(resid < 1e-13);
    }
}

TEST_CASE("zero maps to zero both ways") {
    PhaseGrid g = make_grid(2, 9, M_PI);
    KineticState f = KineticState::zeros(g);
    DensityMatrix gm = wigner_inverse(f);
    CHECK(l2_norm(gm) == 0.0);
    KineticState back = wigner_forward(gm);
    CHECK(l2_norm(back) == 0.0);
}

TEST_CASE("real f gives Hermitian gammahat, and conversely") {
    PhaseGrid g = make_grid(2, 9, M_PI);
    KineticState f = random_state(g, 77);
    DensityMatrix gm = wigner_inverse(f);
    CHECK(hermitian_defect(gm) < 1e-13);

    // a Hermitian-symmetrized random matrix has a real kinetic image
    DensityMatrix h = random_band_limited_dm(g, g.half, 10.0, 123);
    CHECK(hermitian_defect(h) < 1e-13);
    double resid = -1.0;
    wigner_forward(h, &resid);
    CHECK(resid < 1e-12);
}

TEST_CASE("non-Hermitian gamma is flagged; residue equals the antisymmetric part") {
    PhaseGrid g = make_grid(2, 9, M_PI);
    Rng rng(31);
    DensityMatrix gm = DensityMatrix::zeros(g);
    for (cplx& z : gm.values) z = cplx(rng.gaussian(), rng.gaussian());
    double resid = -1.0;
    wigner_forward(gm, &resid);
    CHECK(resid > 0.1);
    // direct-sum oracle for the antisymmetric part
    const int N = g.N;
    std::vector<std::size_t> stride(4, 1);
    for (int a = 2; a >= 0; --a) stride[a] = stride[a + 1] * N;
    double a2 = 0.0, t2 = 0.0;
    std::vector<int> ix(4, 0);
    for (std::size_t flat = 0; flat < gm.values.size(); ++flat) {
        std::size_t mir = (N - 1 - ix[2]) * stride[0] + (N - 1 - ix[3]) * stride[1] +
                          (N - 1 - ix[0]) * stride[2] + (N - 1 - ix[1]) * stride[3];
        a2 += std::norm(0.5 * (gm.values[flat] - std::conj(gm.values[mir])));
        t2 += std::norm(gm.values[flat]);
        for (int a = 3; a >= 0; --a) {
            if (++ix[a] < N) break;
            ix[a] = 0;
        }
    }
    CHECK(resid == doctest::Approx(std::sqrt(a2 / t2)).epsilon(1e-10));
}

TEST_CASE("separable gaussian matches the continuum closed form on interior pairs") {
    // both representation floors balanced at sigma = 1 when L = sqrt(pi N / 2)
    const int N = 21;
    PhaseGrid g = make_grid(2, N, std::sqrt(M_PI * N / 2.0));
    KineticState f = gaussian_state(g, 1.0, 1.0, 1.0);
    DensityMatrix gm = wigner_inverse(f);
    std::vector<cplx> rot = rotated_physical(gm);
    const std::size_t V = g.volume(2);
    double max_err = 0.0, max_val = 0.0;
    std::vector<int> ix(4, 0);
    for (std::size_t flat = 0; flat < rot.size(); ++flat) {
        double u2 = 0.0, y2 = 0.0;
        bool interior = true;
        for (int a = 0; a < 2; ++a) {
            const double u = g.x(ix[a] - g.half);
            const double y = g.hx * (ix[2 + a] - g.half);
            u2 += u * u;
            y2 += y * y;
            if (std::abs(u) > 0.35 * g.L || std::abs(y) > 0.7 * g.L) interior = false;
        }
        if (interior) {
            // gamma(x,x') = 2 pi exp(-|x+x'|^2/8) exp(-|x-x'|^2/2), |x+x'| = 2|u|
            const double expect = 2.0 * M_PI * std::exp(-u2 / 2.0) * std::exp(-y2 / 2.0);
            max_err = std::max(max_err, std::abs(rot[flat] - cplx(expect, 0.0)));
            max_val = std::max(max_val, std::abs(expect));
        }
        for (int a = 3; a >= 0; --a) {
            if (++ix[a] < N) break;
            ix[a] = 0;
        }
    }
    (void)V;
    CHECK(max_err / max_val < 1e-6);
}
