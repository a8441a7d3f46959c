#pragma once

#include <vector>

#include "wignerkin/field.hpp"

namespace wignerkin {

// Dense unitary DFT on centered indices: kernel exp(sign*2pi*i*kc*jc/N)/sqrt(N).
// Grids here are small (N <= ~31), so dense matrix application is exact,
// deterministic, and fast enough; no FFT library is involved.
class DftPlan {
  public:
    explicit DftPlan(int N);
    int size() const { return N_; }
    // Transforms the axis with the given outer/inner block structure:
    // data is interpreted as [outer][N][inner], the N dimension is mixed.
    void apply(cplx* data, std::size_t outer, std::size_t inner, int sign) const;

  private:
    int N_;
    std::vector<cplx> fwd_;  // row-major N x N, sign = -1
    std::vector<cplx> inv_;  // sign = +1
};

const DftPlan& dft_plan(int N);  // cached per N

// Transform `naxes` consecutive axes starting at `first_axis` of a field
// shaped (N,)^naxes_total. sign=-1 forward, +1 inverse; unitary each axis.
void dft_axes(std::vector<cplx>& values, const PhaseGrid& g, int naxes_total, int first_axis,
              int naxes, int sign);

// Representation change for the 2d-dimensional field (all axes), unitary.
SpectralField to_fourier(const SpectralField& f);
SpectralField to_physical(const SpectralField& f);

}  // namespace wignerkin
