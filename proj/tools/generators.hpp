#pragma once

#include <cmath>
#include <string>

#include "config.hpp"
#include "wignerkin/dft.hpp"
#include "wignerkin/rng.hpp"
#include "wignerkin/wigner.hpp"

namespace wignerkin::cli {

inline KineticState gaussian_bump(const PhaseGrid& g, double sx2, double sv2, double amp,
                                  double x0, double v0) {
    KineticState f = KineticState::zeros(g);
    const int d = g.d, N = g.N;
    const std::size_t R = g.volume(d), V = g.volume(d);
    std::vector<double> gx(R), gv(V);
    std::vector<int> idx(d, 0);
    for (std::size_t r = 0; r < R; ++r) {
        double x2 = 0.0;
        for (int a = 0; a < d; ++a) {
            const double x = g.x(idx[a] - g.half) - (a == 0 ? x0 : 0.0);
            x2 += x * x;
        }
        gx[r] = std::exp(-x2 / (2.0 * sx2));
        for (int a = d - 1; a >= 0; --a) {
            if (++idx[a] < N) break;
            idx[a] = 0;
        }
    }
    std::fill(idx.begin(), idx.end(), 0);
    for (std::size_t m = 0; m < V; ++m) {
        double v2 = 0.0;
        for (int a = 0; a < d; ++a) {
            const double v = g.v(idx[a] - g.half) - (a == 0 ? v0 : 0.0);
            v2 += v * v;
        }
        gv[m] = std::exp(-v2 / (2.0 * sv2));
        for (int a = d - 1; a >= 0; --a) {
            if (++idx[a] < N) break;
            idx[a] = 0;
        }
    }
    for (std::size_t r = 0; r < R; ++r)
        for (std::size_t m = 0; m < V; ++m) f.values[r * V + m] = amp * gx[r] * gv[m];
    return f;
}

// |G|^2 with G built from band-limited, envelope-damped random coefficients:
// nonnegative, smooth, exactly representable on the grid.
inline KineticState random_seeded_state(const PhaseGrid& g, double envelope, double floor_add,
                                        std::uint64_t seed) {
    Rng rng(seed);
    const int d = g.d, N = g.N;
    const int lim = (N - 1) / 4;
    auto rand_field = [&](std::size_t n) {
        std::vector<cplx> co(n, cplx(0, 0));
        std::vector<int> idx(d, 0);
        for (std::size_t i = 0; i < n; ++i) {
            bool keep = true;
            double k2 = 0.0;
            for (int a = 0; a < d; ++a) {
                const int kc = idx[a] - g.half;
                if (std::abs(kc) > lim) keep = false;
                k2 += static_cast<double>(kc) * kc;
            }
            const double re = rng.gaussian(), im = rng.gaussian();
            if (keep) co[i] = std::exp(-k2 / (2.0 * envelope * envelope)) * cplx(re, im);
            for (int a = d - 1; a >= 0; --a) {
                if (++idx[a] < N) break;
                idx[a] = 0;
            }
        }
        dft_axes(co, g, d, 0, d, +1);
        return co;
    };
    const std::size_t R = g.volume(d), V = g.volume(d);
    std::vector<cplx> Gx = rand_field(R), Gv = rand_field(V);
    KineticState f = KineticState::zeros(g);
    double mx = 0.0;
    for (std::size_t r = 0; r < R; ++r)
        for (std::size_t m = 0; m < V; ++m) {
            const double val = std::norm(Gx[r]) * std::norm(Gv[m]);
            f.values[r * V + m] = val;
            mx = std::max(mx, val);
        }
    if (mx > 0.0)
        for (double& x : f.values) x = x / mx + floor_add;
    return f;
}

// Identity-probe data: band-limited random profile in x times a resolved,
// slightly anisotropic gaussian in v.
inline DensityMatrix identity_probe_state(const PhaseGrid& g, std::uint64_t seed) {
    Rng rng(seed);
    const int d = g.d, N = g.N;
    const int lim = (N - 1) / 4;
    const std::size_t R = g.volume(d), V = g.volume(d);
    std::vector<cplx> co(R, cplx(0, 0));
    std::vector<int> idx(d, 0);
    for (std::size_t i = 0; i < R; ++i) {
        bool keep = true;
        double k2 = 0.0;
        for (int a = 0; a < d; ++a) {
            const int kc = idx[a] - g.half;
            if (std::abs(kc) > lim) keep = false;
            k2 += static_cast<double>(kc) * kc;
        }
        const double re = rng.gaussian(), im = rng.gaussian();
        if (keep) co[i] = std::exp(-k2 / 2.0) * cplx(re, im);
        for (int a = d - 1; a >= 0; --a) {
            if (++idx[a] < N) break;
            idx[a] = 0;
        }
    }
    dft_axes(co, g, d, 0, d, +1);
    const double sb = g.N * g.xi_step * g.xi_step / (2.0 * M_PI);
    const double s1 = 1.2 * sb, s2 = 0.8 * sb;
    const double vc0 = 0.35 * g.xi_step * (rng.uniform() - 0.5);
    const double vc1 = 0.4 * g.xi_step * (rng.uniform() - 0.5);
    KineticState f = KineticState::zeros(g);
    std::fill(idx.begin(), idx.end(), 0);
    std::vector<double> gv(V);
    for (std::size_t m = 0; m < V; ++m) {
        const double v0 = g.v(idx[0] - g.half) - vc0;
        const double v1 = g.v(idx[1 % d] - g.half) - vc1;
        gv[m] = std::exp(-v0 * v0 / (2.0 * s1) - v1 * v1 / (2.0 * s2));
        for (int a = d - 1; a >= 0; --a) {
            if (++idx[a] < N) break;
            idx[a] = 0;
        }
    }
    for (std::size_t r = 0; r < R; ++r)
        for (std::size_t m = 0; m < V; ++m)
            f.values[r * V + m] = (1.0 + 0.5 * co[r].real()) * gv[m];
    return wigner_inverse(f);
}

inline KineticState make_initial_state(const PhaseGrid& g, const Config& cfg,
                                       std::uint64_t seed) {
    const std::string gen = cfg.get_or("initial.generator", "gaussian");
    const double sx2 = cfg.get_double_or("initial.sigma_x2", g.N * g.hx * g.hx / (2.0 * M_PI));
    const double sv2 =
        cfg.get_double_or("initial.sigma_v2", g.N * g.xi_step * g.xi_step / (2.0 * M_PI));
    const double amp = cfg.get_double_or("initial.amplitude", 0.5);
    if (gen == "gaussian") {
        return gaussian_bump(g, sx2, sv2, amp, cfg.get_double_or("initial.x0", 0.0),
                             cfg.get_double_or("initial.v0", 0.0));
    }
    if (gen == "two-bump") {
        const double x0 = cfg.get_double_or("initial.separation", 0.25 * g.L);
        const double v0 = cfg.get_double_or("initial.v_separation", 0.0);
        KineticState a = gaussian_bump(g, sx2, sv2, amp, x0, v0);
        KineticState b = gaussian_bump(g, sx2, sv2, amp, -x0, -v0);
        for (std::size_t i = 0; i < a.values.size(); ++i) a.values[i] += b.values[i];
        return a;
    }
    if (gen == "random-seeded") {
        return random_seeded_state(g, cfg.get_double_or("initial.envelope", 1.0),
                                   cfg.get_double_or("initial.floor", 0.0), seed);
    }
    throw ConfigError("unknown initial.generator: " + gen);
}

}  // namespace wignerkin::cli
