#include "wignerkin/propagator.hpp"

#include <cmath>

namespace wignerkin {

double transport_symbol(const PhaseGrid& g, std::size_t flat_index) {
    const GridTables& t = grid_tables(g);
    return t.dm_phase[flat_index] * g.xi_step * g.xi_step;
}

DensityMatrix free_flow_dm(const DensityMatrix& g, double t) {
    const GridTables& tab = grid_tables(g.grid);
    const double s2 = g.grid.xi_step * g.grid.xi_step;
    DensityMatrix out = g;
    out.time = g.time + t;
    for (std::size_t i = 0; i < out.values.size(); ++i) {
        const double ang = -t * s2 * tab.dm_phase[i];
        out.values[i] *= cplx(std::cos(ang), std::sin(ang));
    }
    return out;
}

void free_transport_mixed(const PhaseGrid& g, std::vector<cplx>& mixed, double t) {
    const GridTables& tab = grid_tables(g);
    const double s2 = g.xi_step * g.xi_step;
    for (std::size_t i = 0; i < mixed.size(); ++i) {
        const double ang = -t * s2 * tab.mixed_phase[i];
        mixed[i] *= cplx(std::cos(ang), std::sin(ang));
    }
}

KineticState free_transport_kinetic(const KineticState& f, double t) {
    std::vector<cplx> mixed(f.values.begin(), f.values.end());
    dft_axes(mixed, f.grid, 2 * f.grid.d, 0, f.grid.d, -1);
    free_transport_mixed(f.grid, mixed, t);
    dft_axes(mixed, f.grid, 2 * f.grid.d, 0, f.grid.d, +1);
    KineticState out;
    out.grid = f.grid;
    out.time = f.time + t;
    out.values.resize(mixed.size());
    for (std::size_t i = 0; i < mixed.size(); ++i) out.values[i] = mixed[i].real();
    return out;
}

}  // namespace wignerkin
