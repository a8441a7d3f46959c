#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace wignerkin {

// Periodic phase-space discretization. The spatial box is [-L, L)^d with N
// (odd) points per axis; the Fourier lattice has spacing pi/L. Velocities
// live on the same centered lattice as the Fourier indices, v_m = m*pi/L.
//
// All lattice indices used in this codebase are "centered": an axis index c
// runs over K = {-(N-1)/2, ..., (N-1)/2}. Storage order maps c to the array
// offset c + (N-1)/2.
struct PhaseGrid {
    int d = 2;          // spatial dimension
    int N = 0;          // points per axis, odd
    double L = 0.0;     // half-width of the box
    double hx = 0.0;    // spatial spacing 2L/N
    double xi_step = 0.0;  // Fourier / velocity spacing pi/L
    int inv2 = 0;       // multiplicative inverse of 2 mod N, (N+1)/2
    int half = 0;       // (N-1)/2

    int rep(long a) const {
        // centered representative of a mod N
        long m = (a + half) % N;
        if (m < 0) m += N;
        return static_cast<int>(m - half);
    }
    double x(int c) const { return c * hx; }
    double v(int c) const { return c * xi_step; }
    // centered half-sum index; true midpoint for even sums, shifted by +-L
    // for odd sums (the torus midpoint map)
    int half_index(int sum) const { return rep(static_cast<long>(inv2) * sum); }

    std::size_t axis_size() const { return static_cast<std::size_t>(N); }
    std::size_t volume(int naxes) const {
        std::size_t p = 1;
        for (int i = 0; i < naxes; ++i) p *= axis_size();
        return p;
    }

    bool operator==(const PhaseGrid& o) const {
        return d == o.d && N == o.N && L == o.L;
    }
};

// Validates and builds a grid. Throws std::invalid_argument on even N,
// N < 5, non-positive L, or d outside {2, 3}.
PhaseGrid make_grid(int d, int N, double L);

}  // namespace wignerkin
