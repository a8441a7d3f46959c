#include "wignerkin/functionals.hpp"

#include <cmath>
#include <stdexcept>

#include "wignerkin/propagator.hpp"

namespace wignerkin {

namespace {

constexpr double kEntropyFloor = 1e-14;

// iterate centered multi-indices of the 2d-axis lattice
template <class F>
void for_each_pair_index(const PhaseGrid& g, F&& fn) {
    const int d = g.d, N = g.N;
    std::vector<int> idx(2 * d, 0);
    const std::size_t total = g.volume(2 * d);
    for (std::size_t flat = 0; flat < total; ++flat) {
        fn(flat, idx);
        for (int a = 2 * d - 1; a >= 0; --a) {
            if (++idx[a] < N) break;
            idx[a] = 0;
        }
    }
}

}  // namespace

double sobolev_norm(const DensityMatrix& g, const SobolevIndex& idx) {
    const PhaseGrid& gr = g.grid;
    const double s2 = gr.xi_step * gr.xi_step;
    double acc = 0.0;
    for_each_pair_index(gr, [&](std::size_t flat, const std::vector<int>& ix) {
        double sum2 = 0.0, diff2 = 0.0;
        for (int a = 0; a < gr.d; ++a) {
            const int k = ix[a] - gr.half, kp = ix[gr.d + a] - gr.half;
            sum2 += static_cast<double>(k + kp) * (k + kp);
            diff2 += static_cast<double>(k - kp) * (k - kp);
        }
        const double w = std::pow(1.0 + s2 * sum2, idx.alpha) * std::pow(1.0 + s2 * diff2, idx.beta);
        acc += w * std::norm(g.values[flat]);
    });
    return std::sqrt(acc);
}

double weighted_moment_norm(const DensityMatrix& g, int k, MomentSign sign,
                            const SobolevIndex& idx) {
    if (k < 1) throw std::domain_error("weighted_moment_norm: k must be >= 1");
    if (sign == MomentSign::plus) {
        if (idx.beta - k < 0.0)
            throw std::domain_error("weighted_moment_norm: beta - k < 0 (index underflow)");
        DensityMatrix w = weight_plus_pow(g, static_cast<double>(k));
        return sobolev_norm(w, SobolevIndex{idx.alpha, idx.beta - k});
    }
    if (idx.alpha - 2 * k < 0.0)
        throw std::domain_error("weighted_moment_norm: alpha - 2k < 0 (index underflow)");
    DensityMatrix w = weight_minus_pow(g, 2.0 * k);
    return sobolev_norm(w, SobolevIndex{idx.alpha - 2 * k, idx.beta});
}

Observables observables(const KineticState& f) {
    const PhaseGrid& g = f.grid;
    const int d = g.d, N = g.N;
    const double wq = std::pow(g.hx, d) * std::pow(g.xi_step, d);
    const std::size_t R = g.volume(d), V = g.volume(d);
    Observables o;
    o.min_value = f.values.empty() ? 0.0 : f.values[0];
    std::vector<int> vm(d, 0);
    std::vector<double> vvec(V), v2vec(V);
    std::vector<std::array<double, 3>> vpt(V, {0, 0, 0});
    for (std::size_t m = 0; m < V; ++m) {
        double e = 0.0;
        for (int a = 0; a < d; ++a) {
            vpt[m][a] = g.v(vm[a] - g.half);
            e += vpt[m][a] * vpt[m][a];
        }
        v2vec[m] = e;
        for (int a = d - 1; a >= 0; --a) {
            if (++vm[a] < N) break;
            vm[a] = 0;
        }
    }
    for (std::size_t r = 0; r < R; ++r) {
        const double* row = f.values.data() + r * V;
        for (std::size_t m = 0; m < V; ++m) {
            const double x = row[m];
            o.mass += x;
            for (int a = 0; a < d; ++a) o.momentum[a] += x * vpt[m][a];
            o.kinetic_energy += 0.5 * x * v2vec[m];
            if (x < o.min_value) o.min_value = x;
            if (x > kEntropyFloor) o.entropy_h += x * std::log(x);
            if (x < 0.0) o.negativity_mass -= x;
        }
    }
    o.mass *= wq;
    for (int a = 0; a < d; ++a) o.momentum[a] *= wq;
    o.kinetic_energy *= wq;
    o.entropy_h *= wq;
    o.negativity_mass *= wq;
    return o;
}

namespace {

enum class Axes { first_d, last_d };

// apply a pointwise factor in a partially transformed representation:
// sign_in transforms the chosen axes of the mixed array, fn multiplies, then
// the inverse transform restores the mixed representation.
template <class Fn>
DensityMatrix apply_in_rep(const DensityMatrix& g, Axes which, int sign_in, Fn&& fn) {
    std::vector<cplx> mixed = to_mixed(g);
    const int d = g.grid.d;
    const int first = which == Axes::first_d ? 0 : d;
    dft_axes(mixed, g.grid, 2 * d, first, d, sign_in);
    fn(mixed);
    dft_axes(mixed, g.grid, 2 * d, first, d, -sign_in);
    return from_mixed(g.grid, mixed, g.time);
}

template <class Fn>
void for_each_mixed_index(const PhaseGrid& g, std::vector<cplx>& mixed, Fn&& fn) {
    const int d = g.d, N = g.N;
    std::vector<int> idx(2 * d, 0);
    for (std::size_t flat = 0; flat < mixed.size(); ++flat) {
        fn(mixed[flat], idx);
        for (int a = 2 * d - 1; a >= 0; --a) {
            if (++idx[a] < N) break;
            idx[a] = 0;
        }
    }
}

}  // namespace

DensityMatrix weight_plus_pow(const DensityMatrix& g, double a) {
    const PhaseGrid& gr = g.grid;
    // (u, m) representation: eta axes -> physical u
    return apply_in_rep(g, Axes::first_d, +1, [&](std::vector<cplx>& mixed) {
        for_each_mixed_index(gr, mixed, [&](cplx& z, const std::vector<int>& ix) {
            double u2 = 0.0;
            for (int ax = 0; ax < gr.d; ++ax) {
                const double u = gr.x(ix[ax] - gr.half);
                u2 += u * u;
            }
            z *= std::pow(1.0 + 4.0 * u2, 0.5 * a);  // <2u> = <x+x'>
        });
    });
}

DensityMatrix weight_minus_pow(const DensityMatrix& g, double a) {
    const PhaseGrid& gr = g.grid;
    // (eta, y) representation: v axes -> dual y
    return apply_in_rep(g, Axes::last_d, +1, [&](std::vector<cplx>& mixed) {
        for_each_mixed_index(gr, mixed, [&](cplx& z, const std::vector<int>& ix) {
            double y2 = 0.0;
            for (int ax = 0; ax < gr.d; ++ax) {
                const double y = gr.hx * (ix[gr.d + ax] - gr.half);
                y2 += y * y;
            }
            z *= std::pow(1.0 + y2, 0.5 * a);  // <y> = <x-x'>
        });
    });
}

std::vector<DensityMatrix> weight_minus_vec(const DensityMatrix& g) {
    const PhaseGrid& gr = g.grid;
    std::vector<DensityMatrix> out;
    for (int comp = 0; comp < gr.d; ++comp) {
        out.push_back(apply_in_rep(g, Axes::last_d, +1, [&](std::vector<cplx>& mixed) {
            for_each_mixed_index(gr, mixed, [&](cplx& z, const std::vector<int>& ix) {
                z *= gr.hx * (ix[gr.d + comp] - gr.half);
            });
        }));
    }
    return out;
}

std::vector<DensityMatrix> grad_diff(const DensityMatrix& g) {
    const PhaseGrid& gr = g.grid;
    std::vector<DensityMatrix> out;
    for (int comp = 0; comp < gr.d; ++comp) {
        std::vector<cplx> mixed = to_mixed(g);
        for_each_mixed_index(gr, mixed, [&](cplx& z, const std::vector<int>& ix) {
            z *= cplx(0.0, 2.0 * gr.v(ix[gr.d + comp] - gr.half));
        });
        out.push_back(from_mixed(gr, mixed, g.time));
    }
    return out;
}

std::vector<DensityMatrix> grad_sum(const DensityMatrix& g) {
    const PhaseGrid& gr = g.grid;
    std::vector<DensityMatrix> out;
    for (int comp = 0; comp < gr.d; ++comp) {
        std::vector<cplx> mixed = to_mixed(g);
        for_each_mixed_index(gr, mixed, [&](cplx& z, const std::vector<int>& ix) {
            z *= cplx(0.0, gr.xi_step * (ix[comp] - gr.half));
        });
        out.push_back(from_mixed(gr, mixed, g.time));
    }
    return out;
}

DensityMatrix moment_source_plus(const DensityMatrix& g) {
    const GridTables& t = grid_tables(g.grid);
    const double s2 = g.grid.xi_step * g.grid.xi_step;
    auto lap = [&](const DensityMatrix& x) {
        DensityMatrix out = x;
        for (std::size_t i = 0; i < out.values.size(); ++i)
            out.values[i] *= -s2 * t.dm_phase[i];
        return out;
    };
    DensityMatrix w = weight_plus_pow(g, 1.0);
    DensityMatrix lw = lap(w);
    DensityMatrix wl = weight_plus_pow(lap(g), 1.0);
    for (std::size_t i = 0; i < lw.values.size(); ++i) lw.values[i] -= wl.values[i];
    return lw;
}

double support_fraction(const KineticState& f) {
    const PhaseGrid& g = f.grid;
    const int d = g.d, N = g.N;
    const std::size_t R = g.volume(d), V = g.volume(d);
    double outer = 0.0, total = 0.0;
    std::vector<int> idx(d, 0);
    std::vector<bool> xin(R), vin(V);
    for (std::size_t r = 0; r < R; ++r) {
        bool in = true;
        for (int a = 0; a < d; ++a)
            if (std::abs(g.x(idx[a] - g.half)) > 0.5 * g.L) in = false;
        xin[r] = in;
        for (int a = d - 1; a >= 0; --a) {
            if (++idx[a] < N) break;
            idx[a] = 0;
        }
    }
    const double vmax = g.v(g.half);
    std::fill(idx.begin(), idx.end(), 0);
    for (std::size_t m = 0; m < V; ++m) {
        bool in = true;
        for (int a = 0; a < d; ++a)
            if (std::abs(g.v(idx[a] - g.half)) > 0.5 * vmax) in = false;
        vin[m] = in;
        for (int a = d - 1; a >= 0; --a) {
            if (++idx[a] < N) break;
            idx[a] = 0;
        }
    }
    for (std::size_t r = 0; r < R; ++r)
        for (std::size_t m = 0; m < V; ++m) {
            const double w = f.values[r * V + m] * f.values[r * V + m];
            total += w;
            if (!xin[r] || !vin[m]) outer += w;
        }
    return total > 0.0 ? outer / total : 0.0;
}

namespace {

double rel_residual(const DensityMatrix& a, const DensityMatrix& b) {
    double d2 = 0.0, n2 = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        d2 += std::norm(a.values[i] - b.values[i]);
        n2 += std::norm(a.values[i]);
    }
    return n2 > 0.0 ? std::sqrt(d2 / n2) : std::sqrt(d2);
}

void axpy(DensityMatrix& y, double a, const DensityMatrix& x) {
    for (std::size_t i = 0; i < y.values.size(); ++i) y.values[i] += a * x.values[i];
}

}  // namespace

std::vector<IdentityResidual> verify_weight_identities(const DensityMatrix& g1,
                                                       const DensityMatrix& g2, double a,
                                                       double b, int k,
                                                       const CollisionKernel& kernel,
                                                       const AngularQuadrature& quad) {
    std::vector<IdentityResidual> out;
    const auto Wp = [&](const DensityMatrix& x, double e) { return weight_plus_pow(x, e); };
    const auto Wm = [&](const DensityMatrix& x, double e) { return weight_minus_pow(x, e); };

    // (1) <x+x'>^{a+b} B^- = B^-(<x+x'>^a g1, <x+x'>^b g2)
    {
        DensityMatrix lhs = Wp(b_minus(g1, g2, kernel, quad), a + b);
        DensityMatrix rhs = b_minus(Wp(g1, a), Wp(g2, b), kernel, quad);
        out.push_back({"plus_weight_bminus", rel_residual(lhs, rhs), true});
    }
    // (2) same for B^+
    {
        DensityMatrix lhs = Wp(b_plus(g1, g2, kernel, quad), a + b);
        DensityMatrix rhs = b_plus(Wp(g1, a), Wp(g2, b), kernel, quad);
        out.push_back({"plus_weight_bplus", rel_residual(lhs, rhs), false});
    }
    // (3) <x-x'>^a B^- = B^-(<x-x'>^a g1, <x-x'>^b g2)
    {
        DensityMatrix lhs = Wm(b_minus(g1, g2, kernel, quad), a);
        DensityMatrix rhs = b_minus(Wm(g1, a), Wm(g2, b), kernel, quad);
        out.push_back({"minus_weight_bminus", rel_residual(lhs, rhs), true});
    }
    // (4) <x-x'>^{2k} B^+ = sum multinomial (-1)^{j3} B^+(<x-x'>^{2j1} g1, <x-x'>^{2j2} g2)
    {
        DensityMatrix lhs = Wm(b_plus(g1, g2, kernel, quad), 2.0 * k);
        DensityMatrix rhs = DensityMatrix::zeros(g1.grid);
        auto factorial = [](int n) {
            double f = 1.0;
            for (int i = 2; i <= n; ++i) f *= i;
            return f;
        };
        for (int j1 = 0; j1 <= k; ++j1)
            for (int j2 = 0; j2 + j1 <= k; ++j2) {
                const int j3 = k - j1 - j2;
                const double coef = factorial(k) / (factorial(j1) * factorial(j2) * factorial(j3)) *
                                    ((j3 % 2 == 0) ? 1.0 : -1.0);
                DensityMatrix term =
                    b_plus(Wm(g1, 2.0 * j1), Wm(g2, 2.0 * j2), kernel, quad);
                axpy(rhs, coef, term);
            }
        out.push_back({"minus_weight_bplus_multinomial", rel_residual(lhs, rhs), false});
    }
    // (5) vector identities (x-x') through B^- and B^+
    {
        std::vector<DensityMatrix> y1 = weight_minus_vec(g1);
        std::vector<DensityMatrix> y2 = weight_minus_vec(g2);
        DensityMatrix bm = b_minus(g1, g2, kernel, quad);
        DensityMatrix bp = b_plus(g1, g2, kernel, quad);
        std::vector<DensityMatrix> ybm = weight_minus_vec(bm);
        std::vector<DensityMatrix> ybp = weight_minus_vec(bp);
        double rminus = 0.0, rplus = 0.0;
        for (int c = 0; c < g1.grid.d; ++c) {
            DensityMatrix rhsm = b_minus(y1[c], g2, kernel, quad);
            rminus = std::max(rminus, rel_residual(ybm[c], rhsm));
            DensityMatrix rhsp = b_plus(y1[c], g2, kernel, quad);
            axpy(rhsp, 1.0, b_plus(g1, y2[c], kernel, quad));
            rplus = std::max(rplus, rel_residual(ybp[c], rhsp));
        }
        out.push_back({"minus_vector_bminus", rminus, true});
        out.push_back({"minus_vector_bplus", rplus, false});
    }
    // (6) Leibniz for (grad_x + grad_x') through B^{+/-}
    {
        std::vector<DensityMatrix> d1 = grad_sum(g1);
        std::vector<DensityMatrix> d2 = grad_sum(g2);
        DensityMatrix bm = b_minus(g1, g2, kernel, quad);
        DensityMatrix bp = b_plus(g1, g2, kernel, quad);
        std::vector<DensityMatrix> dbm = grad_sum(bm);
        std::vector<DensityMatrix> dbp = grad_sum(bp);
        double rminus = 0.0, rplus = 0.0;
        for (int c = 0; c < g1.grid.d; ++c) {
            DensityMatrix rhsm = b_minus(d1[c], g2, kernel, quad);
            axpy(rhsm, 1.0, b_minus(g1, d2[c], kernel, quad));
            rminus = std::max(rminus, rel_residual(dbm[c], rhsm));
            DensityMatrix rhsp = b_plus(d1[c], g2, kernel, quad);
            axpy(rhsp, 1.0, b_plus(g1, d2[c], kernel, quad));
            rplus = std::max(rplus, rel_residual(dbp[c], rhsp));
        }
        out.push_back({"leibniz_bminus", rminus, true});
        out.push_back({"leibniz_bplus", rplus, false});
    }
    return out;
}

BilinearProbeResult bilinear_estimate_probe(const DensityMatrix& g1, const DensityMatrix& g2,
                                            const SobolevIndex& idx, double delta,
                                            const CollisionKernel& kernel,
                                            const AngularQuadrature& quad, double t_window,
                                            int time_nodes) {
    if (time_nodes < 2) throw std::invalid_argument("bilinear_estimate_probe: need >= 2 nodes");
    const SobolevIndex target{idx.alpha, idx.beta + delta};
    const double h = t_window / (time_nodes - 1);
    double accm = 0.0, accp = 0.0;
    for (int j = 0; j < time_nodes; ++j) {
        const double t = j * h;
        DensityMatrix u1 = free_flow_dm(g1, t);
        DensityMatrix u2 = free_flow_dm(g2, t);
        const double nm = sobolev_norm(b_minus(u1, u2, kernel, quad), target);
        const double np = sobolev_norm(b_plus(u1, u2, kernel, quad), target);
        const double w = (j == 0 || j == time_nodes - 1) ? 0.5 : 1.0;
        accm += w * nm * nm;
        accp += w * np * np;
    }
    const double l2tm = std::sqrt(accm * h);
    const double l2tp = std::sqrt(accp * h);
    const double n1d = sobolev_norm(g1, target);
    const double n1 = sobolev_norm(g1, idx);
    const double n2 = sobolev_norm(g2, idx);
    BilinearProbeResult r;
    r.t_window = t_window;
    r.time_nodes = time_nodes;
    r.c_minus = (n1d > 0.0 && n2 > 0.0) ? l2tm / (n1d * n2) : 0.0;
    r.c_plus = (n1 > 0.0 && n2 > 0.0) ? l2tp / (n1 * n2) : 0.0;
    return r;
}

}  // namespace wignerkin
