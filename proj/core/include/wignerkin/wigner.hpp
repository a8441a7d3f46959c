#pragma once

#include <vector>

#include "wignerkin/dft.hpp"
#include "wignerkin/field.hpp"

namespace wignerkin {

// Real distribution f(x, v) on the x-lattice times v-lattice, layout
// [x_1..x_d][v_1..v_d], row-major, centered indices.
struct KineticState {
    PhaseGrid grid;
    double time = 0.0;
    std::vector<double> values;

    static KineticState zeros(const PhaseGrid& g);
};

// Complex density matrix, canonical Fourier-side storage gammahat(xi, xi'),
// layout [k_1..k_d][k'_1..k'_d].
struct DensityMatrix {
    PhaseGrid grid;
    double time = 0.0;
    std::vector<cplx> values;

    static DensityMatrix zeros(const PhaseGrid& g);
};

double l2_norm(const KineticState& f);
double l2_norm(const DensityMatrix& g);

// Per-grid index tables: the Wigner pair permutation and the lattice
// transport phase. Cached; cheap to look up.
struct GridTables {
    // gammahat[i] = mixed[wigner_perm[i]] where mixed is the [eta][v] array
    std::vector<std::size_t> wigner_perm;
    // per axis-pair product m*s (centered), for the transport symbol
    std::vector<long> ms_product;  // [k][k'] row-major N x N
    // centered values per axis pair
    std::vector<int> sum_c;   // rep(k+k')  [k][k']
    std::vector<int> halfdiff_c;  // rep(inv2*(k-k'))  [k][k']
    // integer transport phase sum_a s_a*m_a, per mixed [eta][v] flat index
    // and per gammahat flat index (multiply by xi_step^2 for v.eta)
    std::vector<double> mixed_phase;
    std::vector<double> dm_phase;
};
const GridTables& grid_tables(const PhaseGrid& g);

// gamma = W^{-1}[f]: unitary DFT over the x axes followed by the exact index
// bijection eta = xi+xi', v = (xi-xi')/2 (inv2 reindexing). Exactly unitary.
DensityMatrix wigner_inverse(const KineticState& f);

// f = W[gamma]; the exact inverse of wigner_inverse. The imaginary part of
// the synthesized kinetic field (nonzero iff gamma is not Hermitian) is
// discarded; its relative l2 size is reported through imag_residual.
KineticState wigner_forward(const DensityMatrix& g, double* imag_residual = nullptr);

// Complex-valued kinetic image [x][v] (no realness assumption), and its
// inverse. These are the workhorses for the collision paths.
std::vector<cplx> wigner_forward_c(const DensityMatrix& g);
DensityMatrix wigner_inverse_c(const PhaseGrid& grid, const std::vector<cplx>& kinetic,
                               double time = 0.0);

// Mixed representation ftilde(eta, v): the permuted view of gammahat.
std::vector<cplx> to_mixed(const DensityMatrix& g);
DensityMatrix from_mixed(const PhaseGrid& grid, const std::vector<cplx>& mixed,
                         double time = 0.0);

// Physical-side materialization on the rotated pair lattice: the values
// gamma(u + y/2, u - y/2) at u on the x-lattice and y on the dual spacing
// lattice, with the continuum normalization g(u, y) = hv^d sum_m f(u, v_m)
// e^{i v_m . y}. Layout [u][y].
std::vector<cplx> rotated_physical(const DensityMatrix& g);

// ||gammahat - conj(gammahat(-xi',-xi))|| / ||gammahat||; zero iff W[gamma] is real.
double hermitian_defect(const DensityMatrix& g);

}  // namespace wignerkin
