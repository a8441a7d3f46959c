#include <doctest.h>

#include <sstream>

#include "unit/test_helpers.hpp"
#include "wignerkin/dft.hpp"
#include "wignerkin/rng.hpp"

using namespace wignerkin;
using namespace wignerkin::testing;

namespace {

SpectralField random_field(const PhaseGrid& g, std::uint64_t seed) {
    Rng rng(seed);
    SpectralField f = SpectralField::zeros(g, Rep::physical);
    for (cplx& z : f.values) z = cplx(rng.gaussian(), rng.gaussian());
    return f;
}

// direct double-sum DFT oracle over all 2d axes (independent summation order)
SpectralField dft_oracle(const SpectralField& f) {
    const PhaseGrid& g = f.grid;
    const int d2 = 2 * g.d, N = g.N;
    SpectralField out = SpectralField::zeros(g, Rep::fourier);
    std::vector<int> k(d2, 0), j(d2, 0);
    const double scale = std::pow(static_cast<double>(N), -0.5 * d2);
    for (std::size_t ko = 0; ko < out.values.size(); ++ko) {
        cplx acc(0, 0);
        std::fill(j.begin(), j.end(), 0);
        for (std::size_t jo = 0; jo < f.values.size(); ++jo) {
            long ph = 0;
            for (int a = 0; a < d2; ++a) ph += static_cast<long>(k[a] - g.half) * (j[a] - g.half);
            const double ang = -2.0 * M_PI * (((ph % N) + N) % N) / N;
            acc += f.values[jo] * cplx(std::cos(ang), std::sin(ang));
            for (int a = d2 - 1; a >= 0; --a) {
                if (++j[a] < N) break;
                j[a] = 0;
            }
        }
        out.values[ko] = scale * acc;
        for (int a = d2 - 1; a >= 0; --a) {
            if (++k[a] < N) break;
            k[a] = 0;
        }
    }
    return out;
}

}  // namespace

TEST_CASE("to_fourier matches the direct double-sum oracle (N=5)") {
    PhaseGrid g = make_grid(2, 5, 2.0);
    SpectralField f = random_field(g, 11);
    SpectralField a = to_fourier(f);
    SpectralField b = dft_oracle(f);
    CHECK(rel_diff(a.values, b.values) < 1e-13);
}

TEST_CASE("unitarity and round trip") {
    for (int N : {9, 15}) {
        PhaseGrid g = make_grid(2, N, M_PI);
        SpectralField f = random_field(g, 42 + N);
        SpectralField fh = to_fourier(f);
        CHECK(std::abs(l2_norm(fh) - l2_norm(f)) <= 1e-12 * l2_norm(f));
        SpectralField back = to_physical(fh);
        CHECK(rel_diff(back.values, f.values) < 1e-12);
    }
}

TEST_CASE("point mass has constant-magnitude spectrum") {
    PhaseGrid g = make_grid(2, 9, M_PI);
    SpectralField f = SpectralField::zeros(g, Rep::physical);
    // delta at the origin of the 4-d lattice
    std::size_t origin = 0;
    std::vector<std::size_t> stride(4, 1);
    for (int a = 2; a >= 0; --a) stride[a] = stride[a + 1] * g.N;
    for (int a = 0; a < 4; ++a) origin += static_cast<std::size_t>(g.half) * stride[a];
    f.values[origin] = 1.0;
    SpectralField fh = to_fourier(f);
    const double expect = std::pow(static_cast<double>(g.N), -2.0);
    for (const cplx& z : fh.values) CHECK(std::abs(z) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("zero field stays zero") {
    PhaseGrid g = make_grid(2, 5, 1.0);
    SpectralField f = SpectralField::zeros(g, Rep::physical);
    SpectralField fh = to_fourier(f);
    CHECK(l2_norm(fh) == 0.0);
}

TEST_CASE("binary dump round trip") {
    PhaseGrid g = make_grid(2, 5, 1.5);
    SpectralField f = random_field(g, 7);
    f.rep = Rep::fourier;
    std::stringstream ss;
    dump_field(f, ss);
    SpectralField back = load_field(ss);
    CHECK(back.grid.N == 5);
    CHECK(back.grid.L == doctest::Approx(1.5));
    CHECK(back.rep == Rep::fourier);
    CHECK(rel_diff(back.values, f.values) == 0.0);
}
