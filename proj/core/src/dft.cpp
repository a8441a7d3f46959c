#include "wignerkin/dft.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace wignerkin {

DftPlan::DftPlan(int N) : N_(N) {
    fwd_.resize(static_cast<std::size_t>(N) * N);
    inv_.resize(static_cast<std::size_t>(N) * N);
    const int half = (N - 1) / 2;
    const double s = 1.0 / std::sqrt(static_cast<double>(N));
    for (int k = 0; k < N; ++k) {
        for (int j = 0; j < N; ++j) {
            // exact phase via integer product reduced mod N
            long kc = k - half, jc = j - half;
            long p = ((kc * jc) % N + N) % N;
            double ang = 2.0 * M_PI * static_cast<double>(p) / N;
            fwd_[static_cast<std::size_t>(k) * N + j] = s * cplx(std::cos(ang), -std::sin(ang));
            inv_[static_cast<std::size_t>(k) * N + j] = s * cplx(std::cos(ang), std::sin(ang));
        }
    }
}

void DftPlan::apply(cplx* data, std::size_t outer, std::size_t inner, int sign) const {
    const std::vector<cplx>& M = sign < 0 ? fwd_ : inv_;
    const std::size_t N = static_cast<std::size_t>(N_);
    std::vector<cplx> buf(N * inner);
    for (std::size_t o = 0; o < outer; ++o) {
        cplx* block = data + o * N * inner;
        std::fill(buf.begin(), buf.end(), cplx(0.0, 0.0));
        for (std::size_t k = 0; k < N; ++k) {
            cplx* out = buf.data() + k * inner;
            const cplx* row = M.data() + k * N;
            for (std::size_t j = 0; j < N; ++j) {
                const cplx m = row[j];
                const cplx* in = block + j * inner;
                for (std::size_t i = 0; i < inner; ++i) out[i] += m * in[i];
            }
        }
        std::copy(buf.begin(), buf.end(), block);
    }
}

const DftPlan& dft_plan(int N) {
    static std::map<int, DftPlan> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(N);
    if (it == cache.end()) it = cache.emplace(N, DftPlan(N)).first;
    return it->second;
}

void dft_axes(std::vector<cplx>& values, const PhaseGrid& g, int naxes_total, int first_axis,
              int naxes, int sign) {
    const DftPlan& plan = dft_plan(g.N);
    const std::size_t N = g.axis_size();
    for (int a = first_axis; a < first_axis + naxes; ++a) {
        std::size_t outer = 1, inner = 1;
        for (int i = 0; i < a; ++i) outer *= N;
        for (int i = a + 1; i < naxes_total; ++i) inner *= N;
        plan.apply(values.data(), outer, inner, sign);
    }
}

SpectralField to_fourier(const SpectralField& f) {
    if (f.rep == Rep::fourier) throw std::invalid_argument("field is already fourier-side");
    SpectralField out = f;
    dft_axes(out.values, out.grid, 2 * out.grid.d, 0, 2 * out.grid.d, -1);
    out.rep = Rep::fourier;
    return out;
}

SpectralField to_physical(const SpectralField& f) {
    if (f.rep == Rep::physical) throw std::invalid_argument("field is already physical-side");
    SpectralField out = f;
    dft_axes(out.values, out.grid, 2 * out.grid.d, 0, 2 * out.grid.d, +1);
    out.rep = Rep::physical;
    return out;
}

}  // namespace wignerkin
