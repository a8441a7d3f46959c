#include "wignerkin/collision.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "wignerkin/parallel.hpp"

namespace wignerkin {

// -------------------- kernels --------------------

TabulatedKernel TabulatedKernel::from_samples(int nr, int nc, double r_max,
                                              std::vector<double> samples) {
    if (nr < 2 || nc < 2 || !(r_max > 0.0)) throw std::invalid_argument("bad kernel table shape");
    if (samples.size() != static_cast<std::size_t>(nr) * nc)
        throw std::invalid_argument("kernel table size mismatch");
    TabulatedKernel k;
    k.nr = nr;
    k.nc = nc;
    k.r_max = r_max;
    k.samples = std::move(samples);
    k.sup_norm = 0.0;
    for (double s : k.samples) {
        if (!(s >= 0.0)) throw std::invalid_argument("kernel samples must be nonnegative");
        k.sup_norm = std::max(k.sup_norm, s);
    }
    return k;
}

double TabulatedKernel::eval(double r, double c) const {
    const double rr = std::clamp(r, 0.0, r_max) / r_max * (nr - 1);
    const double cc = (std::clamp(c, -1.0, 1.0) + 1.0) / 2.0 * (nc - 1);
    const int i0 = std::min(static_cast<int>(rr), nr - 2);
    const int j0 = std::min(static_cast<int>(cc), nc - 2);
    const double fr = rr - i0, fc = cc - j0;
    const double* s = samples.data();
    const double a = s[i0 * nc + j0] * (1 - fc) + s[i0 * nc + j0 + 1] * fc;
    const double b = s[(i0 + 1) * nc + j0] * (1 - fc) + s[(i0 + 1) * nc + j0 + 1] * fc;
    return a * (1 - fr) + b * fr;
}

double kernel_sup_norm(const CollisionKernel& k) {
    if (const auto* c = std::get_if<ConstantKernel>(&k)) return c->amplitude;
    return std::get<TabulatedKernel>(k).sup_norm;
}

bool is_constant(const CollisionKernel& k) {
    return std::holds_alternative<ConstantKernel>(k);
}

double AngularQuadrature::total_weight() const {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
}

AngularQuadrature AngularQuadrature::uniform_circle(int n) {
    if (n < 4) throw std::invalid_argument("need at least 4 angular nodes");
    AngularQuadrature q;
    q.dim = 2;
    q.nodes.resize(n);
    q.weights.assign(n, 2.0 * M_PI / n);
    for (int j = 0; j < n; ++j) {
        const double th = 2.0 * M_PI * j / n;
        q.nodes[j] = {std::cos(th), std::sin(th), 0.0};
    }
    return q;
}

namespace {

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    x.resize(n);
    w.resize(n);
    for (int i = 0; i < n; ++i) {
        double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double dp = n * (t * p1 - p0) / (t * t - 1.0);
            const double dt = p1 / dp;
            t -= dt;
            if (std::abs(dt) < 1e-15) break;
        }
        double p0 = 1.0, p1 = t;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        const double dp = n * (t * p1 - p0) / (t * t - 1.0);
        x[i] = t;
        w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
}

}  // namespace

AngularQuadrature AngularQuadrature::sphere_product(int n_polar, int n_azimuth) {
    if (n_polar < 2 || n_azimuth < 4) throw std::invalid_argument("sphere rule too coarse");
    std::vector<double> ct, cw;
    gauss_legendre(n_polar, ct, cw);
    AngularQuadrature q;
    q.dim = 3;
    for (int i = 0; i < n_polar; ++i) {
        const double st = std::sqrt(std::max(0.0, 1.0 - ct[i] * ct[i]));
        for (int j = 0; j < n_azimuth; ++j) {
            const double ph = 2.0 * M_PI * j / n_azimuth;
            q.nodes.push_back({st * std::cos(ph), st * std::sin(ph), ct[i]});
            q.weights.push_back(cw[i] * 2.0 * M_PI / n_azimuth);
        }
    }
    return q;
}

void post_collision(const std::array<double, 3>& v, const std::array<double, 3>& v_star,
                    const std::array<double, 3>& omega, int d, std::array<double, 3>& v_prime,
                    std::array<double, 3>& v_star_prime) {
    double n2 = 0.0;
    for (int a = 0; a < d; ++a) n2 += omega[a] * omega[a];
    if (std::abs(std::sqrt(n2) - 1.0) > 1e-12)
        throw std::invalid_argument("omega must be a unit vector");
    double lam = 0.0;
    for (int a = 0; a < d; ++a) lam += omega[a] * (v_star[a] - v[a]);
    for (int a = 0; a < d; ++a) {
        v_prime[a] = v[a] + lam * omega[a];
        v_star_prime[a] = v_star[a] - lam * omega[a];
    }
    for (int a = d; a < 3; ++a) {
        v_prime[a] = 0.0;
        v_star_prime[a] = 0.0;
    }
}

// -------------------- shared helpers --------------------

namespace {

struct InvariantBasis {
    // basis vectors over the v lattice: 1, v_1..v_d, |v|^2; Cholesky of Gram
    int nb = 0;
    std::size_t V = 0;
    std::vector<double> phi;   // [nb][V]
    std::vector<double> chol;  // lower triangular nb x nb
};

InvariantBasis build_basis(const PhaseGrid& g) {
    InvariantBasis B;
    const int d = g.d;
    B.nb = d + 2;
    B.V = g.volume(d);
    B.phi.assign(static_cast<std::size_t>(B.nb) * B.V, 0.0);
    std::vector<int> idx(d, 0);
    for (std::size_t m = 0; m < B.V; ++m) {
        double e = 0.0;
        B.phi[m] = 1.0;
        for (int a = 0; a < d; ++a) {
            const double va = g.v(idx[a] - g.half);
            B.phi[(1 + a) * B.V + m] = va;
            e += va * va;
        }
        B.phi[(1 + d) * B.V + m] = e;
        for (int a = d - 1; a >= 0; --a) {
            if (++idx[a] < g.N) break;
            idx[a] = 0;
        }
    }
    // Gram and its Cholesky factor
    std::vector<double> G(static_cast<std::size_t>(B.nb) * B.nb, 0.0);
    for (int i = 0; i < B.nb; ++i)
        for (int j = 0; j <= i; ++j) {
            double s = 0.0;
            for (std::size_t m = 0; m < B.V; ++m) s += B.phi[i * B.V + m] * B.phi[j * B.V + m];
            G[i * B.nb + j] = s;
            G[j * B.nb + i] = s;
        }
    B.chol.assign(G.size(), 0.0);
    for (int i = 0; i < B.nb; ++i) {
        for (int j = 0; j <= i; ++j) {
            double s = G[i * B.nb + j];
            for (int k = 0; k < j; ++k) s -= B.chol[i * B.nb + k] * B.chol[j * B.nb + k];
            if (i == j)
                B.chol[i * B.nb + i] = std::sqrt(s);
            else
                B.chol[i * B.nb + j] = s / B.chol[j * B.nb + j];
        }
    }
    return B;
}

const InvariantBasis& invariant_basis(const PhaseGrid& g) {
    static std::map<std::pair<int, int>, InvariantBasis> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(g.d, g.N);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, build_basis(g)).first;
    return it->second;
}

void chol_solve(const InvariantBasis& B, double* b) {
    const int n = B.nb;
    for (int i = 0; i < n; ++i) {
        double s = b[i];
        for (int k = 0; k < i; ++k) s -= B.chol[i * n + k] * b[k];
        b[i] = s / B.chol[i * n + i];
    }
    for (int i = n - 1; i >= 0; --i) {
        double s = b[i];
        for (int k = i + 1; k < n; ++k) s -= B.chol[k * n + i] * b[k];
        b[i] = s / B.chol[i * n + i];
    }
}

double constant_amplitude(const CollisionKernel& k, const char* who) {
    if (const auto* c = std::get_if<ConstantKernel>(&k)) return c->amplitude;
    throw std::invalid_argument(std::string(who) + ": tabulated kernels are kinetic-path only");
}

// Band-limited evaluation of a lattice row: T(u) = sum_p chat_p e^{i y_p.u}.
struct RowInterp {
    const PhaseGrid* g;
    std::vector<cplx> chat;  // [p], centered storage
    mutable std::vector<cplx> ax;  // scratch [d][N]

    void build(const PhaseGrid& grid, const cplx* row) {
        g = &grid;
        const std::size_t V = grid.volume(grid.d);
        chat.assign(row, row + V);
        // chat = DFT_-(row)/N^{d/2}: plain (1/N^d) sum_m row e^{-2pi i m.p/N}
        dft_axes(chat, grid, grid.d, 0, grid.d, -1);
        const double s = std::pow(static_cast<double>(grid.N), -0.5 * grid.d);
        for (cplx& z : chat) z *= s;
        ax.resize(static_cast<std::size_t>(grid.d) * grid.N);
    }

    cplx eval(const double* u) const {
        const int N = g->N, d = g->d, half = g->half;
        for (int a = 0; a < d; ++a) {
            const double base = g->hx * u[a];
            for (int p = 0; p < N; ++p) {
                const double ang = base * (p - half);
                ax[a * N + p] = cplx(std::cos(ang), std::sin(ang));
            }
        }
        cplx acc(0.0, 0.0);
        if (d == 2) {
            const cplx* c = chat.data();
            for (int p0 = 0; p0 < N; ++p0) {
                cplx inner(0.0, 0.0);
                const cplx* row = c + static_cast<std::size_t>(p0) * N;
                for (int p1 = 0; p1 < N; ++p1) inner += row[p1] * ax[N + p1];
                acc += inner * ax[p0];
            }
        } else {
            const cplx* c = chat.data();
            for (int p0 = 0; p0 < N; ++p0)
                for (int p1 = 0; p1 < N; ++p1) {
                    cplx inner(0.0, 0.0);
                    const cplx* row = c + (static_cast<std::size_t>(p0) * N + p1) * N;
                    for (int p2 = 0; p2 < N; ++p2) inner += row[p2] * ax[2 * N + p2];
                    acc += inner * ax[p0] * ax[N + p1];
                }
        }
        return acc;
    }
};

double kernel_eval(const CollisionKernel& k, double r, double cosang) {
    if (const auto* c = std::get_if<ConstantKernel>(&k)) return c->amplitude;
    return std::get<TabulatedKernel>(k).eval(r, cosang);
}

void check_same_grid(const PhaseGrid& a, const PhaseGrid& b, const char* who) {
    if (!(a == b)) throw std::invalid_argument(std::string(who) + ": grid mismatch");
}

void check_quad_dim(const PhaseGrid& g, const AngularQuadrature& q, const char* who) {
    if (q.dim != g.d) throw std::invalid_argument(std::string(who) + ": quadrature dimension");
}

}  // namespace

// -------------------- oracles --------------------

namespace {

// Shared implementation; gain and loss differ only in the integrand.
KineticState q_oracle_impl(const KineticState& f1, const KineticState& f2,
                           const CollisionKernel& kernel, const AngularQuadrature& quad,
                           double cutoff, bool gain) {
    check_same_grid(f1.grid, f2.grid, "q_oracle");
    check_quad_dim(f1.grid, quad, "q_oracle");
    const PhaseGrid& g = f1.grid;
    const int d = g.d, N = g.N;
    const std::size_t R = g.volume(d), V = g.volume(d);
    const double hv_d = std::pow(g.xi_step, d);
    const double cut2 = cutoff * cutoff;

    // velocity lattice points
    std::vector<std::array<double, 3>> vpts(V, {0.0, 0.0, 0.0});
    {
        std::vector<int> idx(d, 0);
        for (std::size_t m = 0; m < V; ++m) {
            for (int a = 0; a < d; ++a) vpts[m][a] = g.v(idx[a] - g.half);
            for (int a = d - 1; a >= 0; --a) {
                if (++idx[a] < N) break;
                idx[a] = 0;
            }
        }
    }

    KineticState out = KineticState::zeros(g);
    out.time = f1.time;

    parallel_for(R, [&](std::size_t lo, std::size_t hi) {
        RowInterp t1, t2;
        std::vector<cplx> crow(V);
        for (std::size_t r = lo; r < hi; ++r) {
            const double* f1row = f1.values.data() + r * V;
            const double* f2row = f2.values.data() + r * V;
            if (gain) {
                for (std::size_t m = 0; m < V; ++m) crow[m] = f1row[m];
                t1.build(g, crow.data());
                for (std::size_t m = 0; m < V; ++m) crow[m] = f2row[m];
                t2.build(g, crow.data());
            }
            double* orow = out.values.data() + r * V;
            for (std::size_t m = 0; m < V; ++m) {
                const std::array<double, 3>& v = vpts[m];
                double acc = 0.0;
                for (std::size_t ms = 0; ms < V; ++ms) {
                    const std::array<double, 3>& vs = vpts[ms];
                    double rel2 = 0.0;
                    for (int a = 0; a < d; ++a) rel2 += (v[a] - vs[a]) * (v[a] - vs[a]);
                    if (rel2 > cut2) continue;
                    const double rel = std::sqrt(rel2);
                    double sum_om = 0.0;
                    if (gain) {
                        for (std::size_t j = 0; j < quad.size(); ++j) {
                            const std::array<double, 3>& o = quad.nodes[j];
                            double lam = 0.0;
                            for (int a = 0; a < d; ++a) lam += o[a] * (vs[a] - v[a]);
                            double vp[3], vsp[3];
                            for (int a = 0; a < d; ++a) {
                                vp[a] = v[a] + lam * o[a];
                                vsp[a] = vs[a] - lam * o[a];
                            }
                            double cosang = 0.0;
                            if (rel > 0.0) {
                                for (int a = 0; a < d; ++a) cosang += o[a] * (v[a] - vs[a]);
                                cosang /= rel;
                            }
                            const double b = kernel_eval(kernel, rel, cosang);
                            sum_om += quad.weights[j] * b *
                                      (t1.eval(vp) * t2.eval(vsp)).real();
                        }
                        acc += sum_om;
                    } else {
                        for (std::size_t j = 0; j < quad.size(); ++j) {
                            double cosang = 0.0;
                            if (rel > 0.0) {
                                for (int a = 0; a < d; ++a)
                                    cosang += quad.nodes[j][a] * (v[a] - vs[a]);
                                cosang /= rel;
                            }
                            sum_om += quad.weights[j] * kernel_eval(kernel, rel, cosang);
                        }
                        acc += sum_om * f2row[ms];
                    }
                }
                orow[m] = gain ? hv_d * acc : hv_d * acc * f1row[m];
            }
        }
    });
    return out;
}

}  // namespace

KineticState q_gain_oracle(const KineticState& f1, const KineticState& f2,
                           const CollisionKernel& kernel, const AngularQuadrature& quad,
                           double cutoff) {
    return q_oracle_impl(f1, f2, kernel, quad, cutoff, true);
}

KineticState q_loss_oracle(const KineticState& f1, const KineticState& f2,
                           const CollisionKernel& kernel, const AngularQuadrature& quad,
                           double cutoff) {
    return q_oracle_impl(f1, f2, kernel, quad, cutoff, false);
}

// -------------------- production paths --------------------

namespace {

// If the node set is antipodally symmetric, P_{-omega} = P_omega makes the
// two contributions identical; return the node indices to process with the
// weight multiplier (2 for one node of each pair).
std::vector<std::pair<std::size_t, double>> fold_antipodal(const AngularQuadrature& quad) {
    const std::size_t n = quad.size();
    std::vector<std::pair<std::size_t, double>> out;
    std::vector<char> used(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (used[i]) continue;
        std::size_t mate = n;
        for (std::size_t j = i + 1; j < n; ++j) {
            if (used[j]) continue;
            double dvp = 0.0;
            for (int a = 0; a < 3; ++a)
                dvp = std::max(dvp, std::abs(quad.nodes[i][a] + quad.nodes[j][a]));
            if (dvp < 1e-14 && std::abs(quad.weights[i] - quad.weights[j]) < 1e-14) {
                mate = j;
                break;
            }
        }
        if (mate < n) {
            used[i] = used[mate] = 1;
            out.emplace_back(i, 2.0 * quad.weights[i]);
        } else {
            used[i] = 1;
            out.emplace_back(i, quad.weights[i]);
        }
    }
    return out;
}

}  // namespace

std::vector<cplx> gain_image(const PhaseGrid& g, const std::vector<cplx>& f1,
                             const std::vector<cplx>& f2, double amplitude,
                             const AngularQuadrature& quad) {
    check_quad_dim(g, quad, "gain_image");
    const int d = g.d, N = g.N, half = g.half;
    const std::size_t R = g.volume(d), V = g.volume(d);
    std::vector<cplx> acc(R * V, cplx(0.0, 0.0));  // (u, p) accumulation

    // split re/im planes of the inputs once (vectorizable dot products)
    std::vector<double> f1r(R * V), f1i(R * V), f2r(R * V), f2i(R * V);
    for (std::size_t i = 0; i < R * V; ++i) {
        f1r[i] = f1[i].real();
        f1i[i] = f1[i].imag();
        f2r[i] = f2[i].real();
        f2i[i] = f2[i].imag();
    }
    const auto nodes = fold_antipodal(quad);

    parallel_for(R, [&](std::size_t rlo, std::size_t rhi) {
        std::vector<double> c1r(V), c1i(V), c2r(V), c2i(V);
        std::vector<cplx> ax1(static_cast<std::size_t>(d) * N), ax2(ax1.size());
        std::vector<int> pidx(d, 0);
        for (const auto& [j, w] : nodes) {
            const std::array<double, 3>& o = quad.nodes[j];
            std::fill(pidx.begin(), pidx.end(), 0);
            for (std::size_t p = 0; p < V; ++p) {
                // y_p, its projection along omega, and the complement
                double y[3] = {0, 0, 0}, dot = 0.0;
                for (int a = 0; a < d; ++a) {
                    y[a] = g.hx * (pidx[a] - half);
                    dot += y[a] * o[a];
                }
                for (int a = 0; a < d; ++a) {
                    const double ypar = dot * o[a];    // (P y)_a
                    const double yperp = y[a] - ypar;  // ((I-P) y)_a
                    for (int m = 0; m < N; ++m) {
                        const double vm = g.xi_step * (m - half);
                        double ang = vm * yperp;
                        ax1[a * N + m] = cplx(std::cos(ang), std::sin(ang));
                        ang = vm * ypar;
                        ax2[a * N + m] = cplx(std::cos(ang), std::sin(ang));
                    }
                }
                if (d == 2) {
                    std::size_t q = 0;
                    for (int m0 = 0; m0 < N; ++m0)
                        for (int m1 = 0; m1 < N; ++m1, ++q) {
                            const cplx a1 = ax1[m0] * ax1[N + m1];
                            const cplx a2 = ax2[m0] * ax2[N + m1];
                            c1r[q] = a1.real();
                            c1i[q] = a1.imag();
                            c2r[q] = a2.real();
                            c2i[q] = a2.imag();
                        }
                } else {
                    std::size_t q = 0;
                    for (int m0 = 0; m0 < N; ++m0)
                        for (int m1 = 0; m1 < N; ++m1)
                            for (int m2 = 0; m2 < N; ++m2, ++q) {
                                const cplx a1 = ax1[m0] * ax1[N + m1] * ax1[2 * N + m2];
                                const cplx a2 = ax2[m0] * ax2[N + m1] * ax2[2 * N + m2];
                                c1r[q] = a1.real();
                                c1i[q] = a1.imag();
                                c2r[q] = a2.real();
                                c2i[q] = a2.imag();
                            }
                }
                for (std::size_t r = rlo; r < rhi; ++r) {
                    const double* r1r = f1r.data() + r * V;
                    const double* r1i = f1i.data() + r * V;
                    const double* r2r = f2r.data() + r * V;
                    const double* r2i = f2i.data() + r * V;
                    double e1r = 0, e1i = 0, e2r = 0, e2i = 0;
                    for (std::size_t m = 0; m < V; ++m) {
                        e1r += r1r[m] * c1r[m] - r1i[m] * c1i[m];
                        e1i += r1r[m] * c1i[m] + r1i[m] * c1r[m];
                        e2r += r2r[m] * c2r[m] - r2i[m] * c2i[m];
                        e2i += r2r[m] * c2i[m] + r2i[m] * c2r[m];
                    }
                    acc[r * V + p] += w * cplx(e1r * e2r - e1i * e2i, e1r * e2i + e1i * e2r);
                }
                for (int a = d - 1; a >= 0; --a) {
                    if (++pidx[a] < N) break;
                    pidx[a] = 0;
                }
            }
        }
    });

    // transform (u, p) -> (u, m): f_out = DFT_-(acc) * amplitude * hv^d / N^{d/2}
    dft_axes(acc, g, 2 * d, d, d, -1);
    const double scale =
        amplitude * std::pow(g.xi_step, d) * std::pow(static_cast<double>(N), -0.5 * d);
    for (cplx& z : acc) z *= scale;
    return acc;
}

std::vector<cplx> loss_image(const PhaseGrid& g, const std::vector<cplx>& f1,
                             const std::vector<cplx>& f2, double amplitude,
                             const AngularQuadrature& quad) {
    check_quad_dim(g, quad, "loss_image");
    const int d = g.d;
    const std::size_t R = g.volume(d), V = g.volume(d);
    const double hv_d = std::pow(g.xi_step, d);
    const double scale = amplitude * quad.total_weight() * hv_d;
    std::vector<cplx> out(R * V);
    for (std::size_t r = 0; r < R; ++r) {
        cplx rho(0.0, 0.0);
        const cplx* r2 = f2.data() + r * V;
        for (std::size_t m = 0; m < V; ++m) rho += r2[m];
        rho *= scale;
        const cplx* r1 = f1.data() + r * V;
        cplx* o = out.data() + r * V;
        for (std::size_t m = 0; m < V; ++m) o[m] = rho * r1[m];
    }
    return out;
}

DensityMatrix b_minus(const DensityMatrix& g1, const DensityMatrix& g2,
                      const CollisionKernel& kernel, const AngularQuadrature& quad) {
    check_same_grid(g1.grid, g2.grid, "b_minus");
    const double c = constant_amplitude(kernel, "b_minus");
    std::vector<cplx> f1 = wigner_forward_c(g1), f2 = wigner_forward_c(g2);
    std::vector<cplx> img = loss_image(g1.grid, f1, f2, c, quad);
    for (cplx& z : img) z *= cplx(0.0, 1.0);  // B^- = i * W^{-1}[image]
    return wigner_inverse_c(g1.grid, img, g1.time);
}

DensityMatrix b_plus(const DensityMatrix& g1, const DensityMatrix& g2,
                     const CollisionKernel& kernel, const AngularQuadrature& quad) {
    check_same_grid(g1.grid, g2.grid, "b_plus");
    const double c = constant_amplitude(kernel, "b_plus");
    std::vector<cplx> f1 = wigner_forward_c(g1), f2 = wigner_forward_c(g2);
    std::vector<cplx> img = gain_image(g1.grid, f1, f2, c, quad);
    for (cplx& z : img) z *= cplx(0.0, 1.0);
    return wigner_inverse_c(g1.grid, img, g1.time);
}

DensityMatrix collide(const DensityMatrix& g, const CollisionKernel& kernel,
                      const AngularQuadrature& quad, bool conservative) {
    const double c = constant_amplitude(kernel, "collide");
    std::vector<cplx> f = wigner_forward_c(g);
    std::vector<cplx> img = gain_image(g.grid, f, f, c, quad);
    std::vector<cplx> lo = loss_image(g.grid, f, f, c, quad);
    for (std::size_t i = 0; i < img.size(); ++i) img[i] -= lo[i];
    if (conservative) conservative_correction(g.grid, img);
    for (cplx& z : img) z *= cplx(0.0, 1.0);
    return wigner_inverse_c(g.grid, img, g.time);
}

KineticState spectral_gain_kinetic(const KineticState& f, const CollisionKernel& kernel,
                                   const AngularQuadrature& quad) {
    const double c = constant_amplitude(kernel, "spectral_gain_kinetic");
    std::vector<cplx> fc(f.values.begin(), f.values.end());
    std::vector<cplx> img = gain_image(f.grid, fc, fc, c, quad);
    KineticState out = KineticState::zeros(f.grid);
    out.time = f.time;
    for (std::size_t i = 0; i < img.size(); ++i) out.values[i] = img[i].real();
    return out;
}

KineticState q_spectral(const KineticState& f, const CollisionKernel& kernel,
                        const AngularQuadrature& quad, bool conservative) {
    const double c = constant_amplitude(kernel, "q_spectral");
    std::vector<cplx> fc(f.values.begin(), f.values.end());
    std::vector<cplx> img = gain_image(f.grid, fc, fc, c, quad);
    std::vector<cplx> lo = loss_image(f.grid, fc, fc, c, quad);
    for (std::size_t i = 0; i < img.size(); ++i) img[i] -= lo[i];
    KineticState out = KineticState::zeros(f.grid);
    out.time = f.time;
    std::vector<double> q(img.size());
    for (std::size_t i = 0; i < img.size(); ++i) q[i] = img[i].real();
    if (conservative) conservative_correction(f.grid, q);
    out.values = std::move(q);
    return out;
}

namespace {

template <class T>
void correction_impl(const PhaseGrid& g, std::vector<T>& q) {
    const InvariantBasis& B = invariant_basis(g);
    const std::size_t R = g.volume(g.d), V = B.V;
    const int nb = B.nb;
    parallel_for(R, [&](std::size_t lo, std::size_t hi) {
        std::vector<double> bre(nb), bim(nb);
        for (std::size_t r = lo; r < hi; ++r) {
            T* row = q.data() + r * V;
            for (int i = 0; i < nb; ++i) {
                double sre = 0.0, sim = 0.0;
                const double* ph = B.phi.data() + static_cast<std::size_t>(i) * V;
                for (std::size_t m = 0; m < V; ++m) {
                    if constexpr (std::is_same_v<T, cplx>) {
                        sre += ph[m] * row[m].real();
                        sim += ph[m] * row[m].imag();
                    } else {
                        sre += ph[m] * row[m];
                    }
                }
                bre[i] = sre;
                bim[i] = sim;
            }
            chol_solve(B, bre.data());
            if constexpr (std::is_same_v<T, cplx>) chol_solve(B, bim.data());
            for (int i = 0; i < nb; ++i) {
                const double* ph = B.phi.data() + static_cast<std::size_t>(i) * V;
                for (std::size_t m = 0; m < V; ++m) {
                    if constexpr (std::is_same_v<T, cplx>)
                        row[m] -= cplx(bre[i] * ph[m], bim[i] * ph[m]);
                    else
                        row[m] -= bre[i] * ph[m];
                }
            }
        }
    });
}

}  // namespace

void conservative_correction(const PhaseGrid& g, std::vector<cplx>& q_kinetic) {
    correction_impl(g, q_kinetic);
}

void conservative_correction(const PhaseGrid& g, std::vector<double>& q_kinetic) {
    correction_impl(g, q_kinetic);
}

double kappa(const ConstantKernel& k, const AngularQuadrature& quad) {
    return k.amplitude * quad.total_weight();
}

VelocityInterpolant::VelocityInterpolant(const PhaseGrid& g, const double* row) : grid_(g) {
    const std::size_t V = g.volume(g.d);
    chat_.assign(row, row + V);
    dft_axes(chat_, g, g.d, 0, g.d, -1);
    const double s = std::pow(static_cast<double>(g.N), -0.5 * g.d);
    for (cplx& z : chat_) z *= s;
    ax_.resize(static_cast<std::size_t>(g.d) * g.N);
}

double VelocityInterpolant::eval(const std::array<double, 3>& v) const {
    const int N = grid_.N, d = grid_.d, half = grid_.half;
    for (int a = 0; a < d; ++a) {
        const double base = grid_.hx * v[a];
        for (int p = 0; p < N; ++p) {
            const double ang = base * (p - half);
            ax_[a * N + p] = cplx(std::cos(ang), std::sin(ang));
        }
    }
    cplx acc(0.0, 0.0);
    if (d == 2) {
        for (int p0 = 0; p0 < N; ++p0) {
            cplx inner(0.0, 0.0);
            const cplx* row = chat_.data() + static_cast<std::size_t>(p0) * N;
            for (int p1 = 0; p1 < N; ++p1) inner += row[p1] * ax_[N + p1];
            acc += inner * ax_[p0];
        }
    } else {
        for (int p0 = 0; p0 < N; ++p0)
            for (int p1 = 0; p1 < N; ++p1) {
                cplx inner(0.0, 0.0);
                const cplx* row = chat_.data() + (static_cast<std::size_t>(p0) * N + p1) * N;
                for (int p2 = 0; p2 < N; ++p2) inner += row[p2] * ax_[2 * N + p2];
                acc += inner * ax_[p0] * ax_[N + p1];
            }
    }
    return acc.real();
}

}  // namespace wignerkin
