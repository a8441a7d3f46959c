#include "wignerkin/grid.hpp"

#include <cmath>

namespace wignerkin {

PhaseGrid make_grid(int d, int N, double L) {
    if (d != 2 && d != 3) throw std::invalid_argument("grid dimension must be 2 or 3");
    if (N % 2 == 0) throw std::invalid_argument("grid size must be odd");
    if (N < 5) throw std::invalid_argument("grid size must be at least 5");
    if (!(L > 0.0)) throw std::invalid_argument("box half-width must be positive");
    PhaseGrid g;
    g.d = d;
    g.N = N;
    g.L = L;
    g.hx = 2.0 * L / N;
    g.xi_step = M_PI / L;
    g.inv2 = (N + 1) / 2;
    g.half = (N - 1) / 2;
    return g;
}

}  // namespace wignerkin
