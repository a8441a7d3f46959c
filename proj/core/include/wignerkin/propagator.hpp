#pragma once

#include "wignerkin/wigner.hpp"

namespace wignerkin {

// Lattice transport symbol Phi(k, k') = v_m . eta_s at the bijection-matched
// indices; equals (|xi|^2 - |xi'|^2)/2 on the unwrapped sector ("difference
// of squares"). Both propagators and the time derivative share it, which
// makes the Wigner intertwining identity exact on the lattice.
double transport_symbol(const PhaseGrid& g, std::size_t flat_index);

// gammahat *= exp(-i t Phi). Unitary; exact group law.
DensityMatrix free_flow_dm(const DensityMatrix& g, double t);

// fhat(eta, v) *= exp(-i t v.eta) (Fourier in x only). Exact for lattice
// velocities; periodic wrap-around in x.
KineticState free_transport_kinetic(const KineticState& f, double t);

// Same spectral shear applied to a complex kinetic image in-place.
void free_transport_mixed(const PhaseGrid& g, std::vector<cplx>& mixed, double t);

}  // namespace wignerkin
