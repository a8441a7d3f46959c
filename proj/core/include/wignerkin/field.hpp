#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "wignerkin/grid.hpp"

namespace wignerkin {

using cplx = std::complex<double>;

enum class Rep { physical, fourier };

// Complex field over the 2d-dimensional product lattice (N points per axis),
// row-major, centered indices. Used for both the (x, x') and (xi, xi') sides.
struct SpectralField {
    PhaseGrid grid;
    Rep rep = Rep::physical;
    std::vector<cplx> values;

    std::size_t size() const { return values.size(); }
    static SpectralField zeros(const PhaseGrid& g, Rep r);
};

double l2_norm(const SpectralField& f);

// Raw binary dump: one-line textual header "wignerkin-field d=<d> N=<N>
// L=<L> rep=<physical|fourier>\n" followed by little-endian IEEE-754
// (re, im) pairs in row-major index order.
void dump_field(const SpectralField& f, std::ostream& os);
SpectralField load_field(std::istream& is);
void dump_field_file(const SpectralField& f, const std::string& path);
SpectralField load_field_file(const std::string& path);

}  // namespace wignerkin
