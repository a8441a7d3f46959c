#include "wignerkin/wigner.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace wignerkin {

KineticState KineticState::zeros(const PhaseGrid& g) {
    KineticState f;
    f.grid = g;
    f.values.assign(g.volume(2 * g.d), 0.0);
    return f;
}

DensityMatrix DensityMatrix::zeros(const PhaseGrid& g) {
    DensityMatrix m;
    m.grid = g;
    m.values.assign(g.volume(2 * g.d), cplx(0.0, 0.0));
    return m;
}

double l2_norm(const KineticState& f) {
    double s = 0.0;
    for (double x : f.values) s += x * x;
    return std::sqrt(s);
}

double l2_norm(const DensityMatrix& g) {
    double s = 0.0;
    for (const cplx& z : g.values) s += std::norm(z);
    return std::sqrt(s);
}

namespace {

GridTables build_tables(const PhaseGrid& g) {
    GridTables t;
    const int N = g.N;
    const std::size_t NN = static_cast<std::size_t>(N) * N;
    t.ms_product.resize(NN);
    t.sum_c.resize(NN);
    t.halfdiff_c.resize(NN);
    for (int a = 0; a < N; ++a) {
        for (int b = 0; b < N; ++b) {
            const int kc = a - g.half, kpc = b - g.half;
            const int s = g.rep(kc + kpc);
            const int m = g.half_index(kc - kpc);
            t.sum_c[a * N + b] = s;
            t.halfdiff_c[a * N + b] = m;
            t.ms_product[a * N + b] = static_cast<long>(m) * s;
        }
    }
    // flat permutation: for each gammahat index (k_1..k_d, k'_1..k'_d),
    // the source offset in the [eta_1..eta_d][v_1..v_d] array
    const int d = g.d;
    const std::size_t total = g.volume(2 * d);
    t.wigner_perm.resize(total);
    std::vector<int> idx(2 * d, 0);
    std::vector<std::size_t> stride(2 * d, 1);
    for (int a = 2 * d - 2; a >= 0; --a) stride[a] = stride[a + 1] * N;
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::size_t src = 0;
        for (int a = 0; a < d; ++a) {
            const int k = idx[a], kp = idx[d + a];
            src += static_cast<std::size_t>(t.sum_c[k * N + kp] + g.half) * stride[a];
            src += static_cast<std::size_t>(t.halfdiff_c[k * N + kp] + g.half) * stride[d + a];
        }
        t.wigner_perm[flat] = src;
        for (int a = 2 * d - 1; a >= 0; --a) {
            if (++idx[a] < N) break;
            idx[a] = 0;
        }
    }
    // transport phases
    t.mixed_phase.resize(total);
    std::fill(idx.begin(), idx.end(), 0);
    for (std::size_t flat = 0; flat < total; ++flat) {
        long p = 0;
        for (int a = 0; a < d; ++a)
            p += static_cast<long>(idx[a] - g.half) * (idx[d + a] - g.half);
        t.mixed_phase[flat] = static_cast<double>(p);
        for (int a = 2 * d - 1; a >= 0; --a) {
            if (++idx[a] < N) break;
            idx[a] = 0;
        }
    }
    t.dm_phase.resize(total);
    for (std::size_t i = 0; i < total; ++i) t.dm_phase[i] = t.mixed_phase[t.wigner_perm[i]];
    return t;
}

}  // namespace

const GridTables& grid_tables(const PhaseGrid& g) {
    static std::map<std::pair<int, int>, GridTables> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(g.d, g.N);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, build_tables(g)).first;
    return it->second;
}

DensityMatrix wigner_inverse(const KineticState& f) {
    std::vector<cplx> kin(f.values.begin(), f.values.end());
    return wigner_inverse_c(f.grid, kin, f.time);
}

DensityMatrix wigner_inverse_c(const PhaseGrid& grid, const std::vector<cplx>& kinetic,
                               double time) {
    if (kinetic.size() != grid.volume(2 * grid.d))
        throw std::invalid_argument("kinetic field does not match grid");
    std::vector<cplx> mixed = kinetic;
    dft_axes(mixed, grid, 2 * grid.d, 0, grid.d, -1);  // Fourier in x only
    const GridTables& t = grid_tables(grid);
    DensityMatrix out;
    out.grid = grid;
    out.time = time;
    out.values.resize(mixed.size());
    for (std::size_t i = 0; i < mixed.size(); ++i) out.values[i] = mixed[t.wigner_perm[i]];
    return out;
}

std::vector<cplx> wigner_forward_c(const DensityMatrix& g) {
    const GridTables& t = grid_tables(g.grid);
    std::vector<cplx> mixed(g.values.size());
    for (std::size_t i = 0; i < g.values.size(); ++i) mixed[t.wigner_perm[i]] = g.values[i];
    dft_axes(mixed, g.grid, 2 * g.grid.d, 0, g.grid.d, +1);
    return mixed;
}

KineticState wigner_forward(const DensityMatrix& g, double* imag_residual) {
    std::vector<cplx> kin = wigner_forward_c(g);
    KineticState f;
    f.grid = g.grid;
    f.time = g.time;
    f.values.resize(kin.size());
    double re2 = 0.0, im2 = 0.0;
    for (std::size_t i = 0; i < kin.size(); ++i) {
        f.values[i] = kin[i].real();
        re2 += kin[i].real() * kin[i].real();
        im2 += kin[i].imag() * kin[i].imag();
    }
    if (imag_residual) {
        const double tot = std::sqrt(re2 + im2);
        *imag_residual = tot > 0.0 ? std::sqrt(im2) / tot : 0.0;
    }
    return f;
}

std::vector<cplx> to_mixed(const DensityMatrix& g) {
    const GridTables& t = grid_tables(g.grid);
    std::vector<cplx> mixed(g.values.size());
    for (std::size_t i = 0; i < g.values.size(); ++i) mixed[t.wigner_perm[i]] = g.values[i];
    return mixed;
}

DensityMatrix from_mixed(const PhaseGrid& grid, const std::vector<cplx>& mixed, double time) {
    const GridTables& t = grid_tables(grid);
    DensityMatrix out;
    out.grid = grid;
    out.time = time;
    out.values.resize(mixed.size());
    for (std::size_t i = 0; i < mixed.size(); ++i) out.values[i] = mixed[t.wigner_perm[i]];
    return out;
}

std::vector<cplx> rotated_physical(const DensityMatrix& g) {
    const PhaseGrid& gr = g.grid;
    std::vector<cplx> work = to_mixed(g);
    dft_axes(work, gr, 2 * gr.d, 0, gr.d, +1);       // eta -> u
    dft_axes(work, gr, 2 * gr.d, gr.d, gr.d, +1);    // v -> y (e^{+i v.y} kernel)
    const double scale =
        std::pow(gr.xi_step, gr.d) * std::pow(static_cast<double>(gr.N), 0.5 * gr.d);
    for (cplx& z : work) z *= scale;
    return work;
}

double hermitian_defect(const DensityMatrix& g) {
    const PhaseGrid& gr = g.grid;
    const int N = gr.N, d = gr.d;
    const std::size_t total = gr.volume(2 * d);
    std::vector<int> idx(2 * d, 0);
    std::vector<std::size_t> stride(2 * d, 1);
    for (int a = 2 * d - 2; a >= 0; --a) stride[a] = stride[a + 1] * N;
    double diff2 = 0.0, tot2 = 0.0;
    for (std::size_t flat = 0; flat < total; ++flat) {
        // mirror index: (k, k') -> (-k', -k)
        std::size_t mir = 0;
        for (int a = 0; a < d; ++a) {
            mir += static_cast<std::size_t>(N - 1 - idx[d + a]) * stride[a];
            mir += static_cast<std::size_t>(N - 1 - idx[a]) * stride[d + a];
        }
        const cplx delta = g.values[flat] - std::conj(g.values[mir]);
        diff2 += std::norm(delta);
        tot2 += std::norm(g.values[flat]);
        for (int a = 2 * d - 1; a >= 0; --a) {
            if (++idx[a] < N) break;
            idx[a] = 0;
        }
    }
    return tot2 > 0.0 ? std::sqrt(diff2 / tot2) : 0.0;
}

}  // namespace wignerkin
