#include "wignerkin/solver.hpp"

#include <cmath>

namespace wignerkin {

namespace {

// A(a, b) := -i B(a, b); its kinetic image is the bilinear Q integrand.
DensityMatrix bilinear_A(const DensityMatrix& a, const DensityMatrix& b, double amplitude,
                         const AngularQuadrature& quad, bool conservative) {
    std::vector<cplx> fa = wigner_forward_c(a);
    std::vector<cplx> fb = wigner_forward_c(b);
    std::vector<cplx> img = gain_image(a.grid, fa, fb, amplitude, quad);
    std::vector<cplx> lo = loss_image(a.grid, fa, fb, amplitude, quad);
    for (std::size_t i = 0; i < img.size(); ++i) img[i] -= lo[i];
    if (conservative) conservative_correction(a.grid, img);
    return wigner_inverse_c(a.grid, img, a.time);
}

void add_scaled(DensityMatrix& y, const cplx& a, const DensityMatrix& x) {
    for (std::size_t i = 0; i < y.values.size(); ++i) y.values[i] += a * x.values[i];
}

double diff_norm(const DensityMatrix& a, const DensityMatrix& b, const SobolevIndex& idx) {
    DensityMatrix d = a;
    for (std::size_t i = 0; i < d.values.size(); ++i) d.values[i] -= b.values[i];
    return sobolev_norm(d, idx);
}

// composite trapezoid of precomputed node terms over tau_0..tau_j
DensityMatrix trapezoid(const std::vector<DensityMatrix>& terms, int j, double h,
                        const PhaseGrid& grid) {
    DensityMatrix acc = DensityMatrix::zeros(grid);
    if (j < 1) return acc;
    add_scaled(acc, 0.5 * h, terms[0]);
    for (int i = 1; i < j; ++i) add_scaled(acc, h, terms[i]);
    add_scaled(acc, 0.5 * h, terms[j]);
    return acc;
}

StepDiagnostics make_diagnostics(const DensityMatrix& g, const SobolevIndex& idx, double time,
                                 double zeta_accum) {
    StepDiagnostics s;
    s.time = time;
    s.zeta_l1_accum = zeta_accum;
    s.h_ab = sobolev_norm(g, idx);
    s.h_a1b = sobolev_norm(g, SobolevIndex{idx.alpha + 1.0, idx.beta});
    s.h_ab1 = sobolev_norm(g, SobolevIndex{idx.alpha, idx.beta + 1.0});
    const double nan = std::nan("");
    try {
        s.moment_p1 = weighted_moment_norm(g, 1, MomentSign::plus, idx);
    } catch (const std::domain_error&) {
        s.moment_p1 = nan;
    }
    try {
        s.moment_m2 = weighted_moment_norm(g, 1, MomentSign::minus, idx);
    } catch (const std::domain_error&) {
        s.moment_m2 = nan;
    }
    KineticState f = wigner_forward(g, &s.herm_defect);
    s.obs = observables(f);
    s.support_frac = support_fraction(f);
    return s;
}

void nan_guard(const DensityMatrix& g, const char* who) {
    for (const cplx& z : g.values)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw SolverError(std::string(who) + ": non-finite state", 0.0, true);
}

}  // namespace

void SolverConfig::validate(int d) const {
    if (!(dt > 0.0) || !(T > 0.0) || dt > T + 1e-15)
        throw std::invalid_argument("solver config: need 0 < dt <= T");
    if (!(picard_tol > 0.0)) throw std::invalid_argument("solver config: picard_tol > 0");
    if (t_quad_nodes < 2) throw std::invalid_argument("solver config: t_quad_nodes >= 2");
    if (max_iter < 1) throw std::invalid_argument("solver config: max_iter >= 1");
    if (!idx.above_threshold(d))
        throw std::invalid_argument("solver config: alpha, beta must exceed (d-1)/2");
}

Trajectory solve_duhamel(const DensityMatrix& gamma0, const CollisionKernel& kernel,
                         const AngularQuadrature& quad, const SolverConfig& cfg) {
    cfg.validate(gamma0.grid.d);
    const double c = std::get<ConstantKernel>(kernel).amplitude;
    const int nq = cfg.t_quad_nodes;
    const int nstep = static_cast<int>(std::llround(cfg.T / cfg.dt));
    const double h = cfg.dt / (nq - 1);

    Trajectory traj;
    DensityMatrix gamma = gamma0;
    gamma.time = 0.0;
    double zeta_accum = 0.0;
    traj.times.push_back(0.0);
    traj.steps.push_back(make_diagnostics(gamma, cfg.idx, 0.0, zeta_accum));
    if (cfg.record_snapshots) traj.snapshots.push_back(gamma);

    for (int step = 0; step < nstep; ++step) {
        const double t0 = step * cfg.dt;
        std::vector<DensityMatrix> cur(nq, gamma);
        for (int j = 1; j < nq; ++j) cur[j] = free_flow_dm(gamma, j * h);
        std::vector<DensityMatrix> A(nq, DensityMatrix::zeros(gamma.grid));
        A[0] = bilinear_A(gamma, gamma, c, quad, cfg.conservative);

        StepDiagnostics diag;
        bool converged = false;
        for (int it = 0; it < cfg.max_iter; ++it) {
            for (int j = 1; j < nq; ++j) A[j] = bilinear_A(cur[j], cur[j], c, quad, cfg.conservative);
            double resid = 0.0;
            for (int j = 1; j < nq; ++j) {
                std::vector<DensityMatrix> terms;
                terms.reserve(j + 1);
                for (int i = 0; i <= j; ++i) terms.push_back(free_flow_dm(A[i], (j - i) * h));
                DensityMatrix next = free_flow_dm(gamma, j * h);
                DensityMatrix integ = trapezoid(terms, j, h, gamma.grid);
                add_scaled(next, cplx(1.0, 0.0), integ);
                resid = std::max(resid, diff_norm(next, cur[j], cfg.idx));
                cur[j] = std::move(next);
            }
            diag.residual_history.push_back(resid);
            diag.picard_iters = it + 1;
            diag.picard_residual = resid;
            if (!std::isfinite(resid)) throw SolverError("solve_duhamel: NaN residual", resid, true);
            if (resid < cfg.picard_tol) {
                converged = true;
                break;
            }
        }
        if (!converged)
            throw SolverError("solve_duhamel: Picard did not converge (dt too large for the data)",
                              diag.picard_residual, false);
        for (int j = 1; j < nq; ++j) A[j] = bilinear_A(cur[j], cur[j], c, quad, cfg.conservative);
        for (int j = 1; j < nq; ++j)
            zeta_accum += 0.5 * h * (sobolev_norm(A[j - 1], cfg.idx) + sobolev_norm(A[j], cfg.idx));

        gamma = cur[nq - 1];
        gamma.time = t0 + cfg.dt;
        nan_guard(gamma, "solve_duhamel");
        StepDiagnostics s = make_diagnostics(gamma, cfg.idx, gamma.time, zeta_accum);
        s.picard_iters = diag.picard_iters;
        s.picard_residual = diag.picard_residual;
        s.residual_history = diag.residual_history;
        traj.times.push_back(gamma.time);
        traj.steps.push_back(std::move(s));
        if (cfg.record_snapshots) traj.snapshots.push_back(gamma);
    }
    return traj;
}

Trajectory solve_splitting(const KineticState& f0, const CollisionKernel& kernel,
                           const AngularQuadrature& quad, const SolverConfig& cfg) {
    cfg.validate(f0.grid.d);
    const int nstep = static_cast<int>(std::llround(cfg.T / cfg.dt));
    const bool constant = is_constant(kernel);

    auto apply_q = [&](const KineticState& f) -> KineticState {
        if (constant) return q_spectral(f, kernel, quad, cfg.conservative);
        KineticState gain = q_gain_oracle(f, f, kernel, quad);
        KineticState loss = q_loss_oracle(f, f, kernel, quad);
        KineticState q = gain;
        for (std::size_t i = 0; i < q.values.size(); ++i) q.values[i] -= loss.values[i];
        if (cfg.conservative) conservative_correction(f.grid, q.values);
        return q;
    };

    Trajectory traj;
    KineticState f = f0;
    f.time = 0.0;
    DensityMatrix g0 = wigner_inverse(f);
    traj.times.push_back(0.0);
    traj.steps.push_back(make_diagnostics(g0, cfg.idx, 0.0, 0.0));
    if (cfg.record_snapshots) traj.snapshots.push_back(g0);

    for (int step = 0; step < nstep; ++step) {
        f = free_transport_kinetic(f, 0.5 * cfg.dt);
        // explicit midpoint for df/dt = Q(f, f)
        KineticState q1 = apply_q(f);
        KineticState mid = f;
        for (std::size_t i = 0; i < mid.values.size(); ++i)
            mid.values[i] += 0.5 * cfg.dt * q1.values[i];
        KineticState q2 = apply_q(mid);
        for (std::size_t i = 0; i < f.values.size(); ++i) f.values[i] += cfg.dt * q2.values[i];
        f = free_transport_kinetic(f, 0.5 * cfg.dt);
        f.time = (step + 1) * cfg.dt;
        for (double x : f.values)
            if (!std::isfinite(x)) throw SolverError("solve_splitting: non-finite state", 0.0, true);

        DensityMatrix g = wigner_inverse(f);
        traj.times.push_back(f.time);
        traj.steps.push_back(make_diagnostics(g, cfg.idx, f.time, 0.0));
        if (cfg.record_snapshots) traj.snapshots.push_back(g);
    }
    return traj;
}

DensityMatrix time_derivative(const DensityMatrix& g, const CollisionKernel& kernel,
                              const AngularQuadrature& quad, bool conservative) {
    const double c = std::get<ConstantKernel>(kernel).amplitude;
    const GridTables& t = grid_tables(g.grid);
    const double s2 = g.grid.xi_step * g.grid.xi_step;
    DensityMatrix out = bilinear_A(g, g, c, quad, conservative);  // -i B(g, g)
    for (std::size_t i = 0; i < out.values.size(); ++i)
        out.values[i] += cplx(0.0, -s2 * t.dm_phase[i]) * g.values[i];  // (i/2)Delta_pm
    return out;
}

MomentTrajectory solve_moment_system_plus(const DensityMatrix& gamma0,
                                          const CollisionKernel& kernel,
                                          const AngularQuadrature& quad,
                                          const SolverConfig& cfg) {
    cfg.validate(gamma0.grid.d);
    const double c = std::get<ConstantKernel>(kernel).amplitude;
    const int nq = cfg.t_quad_nodes;
    const int nstep = static_cast<int>(std::llround(cfg.T / cfg.dt));
    const double h = cfg.dt / (nq - 1);
    const PhaseGrid& grid = gamma0.grid;
    auto A = [&](const DensityMatrix& a, const DensityMatrix& b) {
        return bilinear_A(a, b, c, quad, cfg.conservative);
    };
    auto U = [&](const DensityMatrix& x, double t) { return free_flow_dm(x, t); };

    DensityMatrix gamma = gamma0;
    DensityMatrix g1p = weight_plus_pow(gamma0, 1.0);

    MomentTrajectory traj;
    traj.times.push_back(0.0);
    traj.base.push_back(gamma);
    traj.weighted.push_back(g1p);
    traj.weighted_norm.push_back(
        sobolev_norm(g1p, SobolevIndex{cfg.idx.alpha, cfg.idx.beta - 1.0}));

    for (int step = 0; step < nstep; ++step) {
        // base subinterval solve
        std::vector<DensityMatrix> base(nq, gamma);
        for (int j = 1; j < nq; ++j) base[j] = U(gamma, j * h);
        std::vector<DensityMatrix> As(nq, DensityMatrix::zeros(grid));
        As[0] = A(gamma, gamma);
        bool conv = false;
        for (int it = 0; it < cfg.max_iter; ++it) {
            for (int j = 1; j < nq; ++j) As[j] = A(base[j], base[j]);
            double resid = 0.0;
            for (int j = 1; j < nq; ++j) {
                std::vector<DensityMatrix> terms;
                for (int i = 0; i <= j; ++i) terms.push_back(U(As[i], (j - i) * h));
                DensityMatrix next = U(gamma, j * h);
                add_scaled(next, cplx(1.0, 0.0), trapezoid(terms, j, h, grid));
                resid = std::max(resid, diff_norm(next, base[j], cfg.idx));
                base[j] = std::move(next);
            }
            if (!std::isfinite(resid))
                throw SolverError("solve_moment_system_plus: NaN residual", resid, true);
            if (resid < cfg.picard_tol) {
                conv = true;
                break;
            }
        }
        if (!conv)
            throw SolverError("solve_moment_system_plus: base Picard did not converge", 0.0, false);
        for (int j = 1; j < nq; ++j) As[j] = A(base[j], base[j]);
        std::vector<DensityMatrix> S;
        S.reserve(nq);
        for (int j = 0; j < nq; ++j) S.push_back(moment_source_plus(base[j]));

        // coupled (gamma_{1,+}, z1 = -i zeta_{1,+}) Picard:
        //  g1(t) = U g1_0 + int U(t-s) z1(s) ds - i int U(t-s) S(s) ds
        //  z1(t) = A(U g1_0, U gamma_0) + int [A(U g1, U A_s) + A(U z1, U gamma)]
        //          - i int A(U S, U gamma)
        std::vector<DensityMatrix> curG(nq, g1p), curZ(nq, DensityMatrix::zeros(grid));
        for (int j = 0; j < nq; ++j) {
            curG[j] = U(g1p, j * h);
            curZ[j] = A(U(g1p, j * h), U(gamma, j * h));
        }
        bool conv2 = false;
        for (int it = 0; it < cfg.max_iter; ++it) {
            std::vector<DensityMatrix> newG(nq, DensityMatrix::zeros(grid));
            std::vector<DensityMatrix> newZ(nq, DensityMatrix::zeros(grid));
            double resid = 0.0;
            for (int j = 0; j < nq; ++j) {
                std::vector<DensityMatrix> tG, tZ;
                for (int i = 0; i <= j; ++i) {
                    const double dtau = (j - i) * h;
                    DensityMatrix gi = curZ[i];
                    add_scaled(gi, cplx(0.0, -1.0), S[i]);
                    tG.push_back(U(gi, dtau));
                    DensityMatrix zi = A(U(curG[i], dtau), U(As[i], dtau));
                    add_scaled(zi, cplx(1.0, 0.0), A(U(curZ[i], dtau), U(base[i], dtau)));
                    DensityMatrix src_term = A(U(S[i], dtau), U(base[i], dtau));
                    add_scaled(zi, cplx(0.0, -1.0), src_term);
                    tZ.push_back(std::move(zi));
                }
                newG[j] = U(g1p, j * h);
                add_scaled(newG[j], cplx(1.0, 0.0), trapezoid(tG, j, h, grid));
                newZ[j] = A(U(g1p, j * h), U(gamma, j * h));
                add_scaled(newZ[j], cplx(1.0, 0.0), trapezoid(tZ, j, h, grid));
                resid = std::max(resid, diff_norm(newG[j], curG[j], cfg.idx));
            }
            curG = std::move(newG);
            curZ = std::move(newZ);
            if (!std::isfinite(resid))
                throw SolverError("solve_moment_system_plus: NaN residual", resid, true);
            if (resid < cfg.picard_tol) {
                conv2 = true;
                break;
            }
        }
        if (!conv2)
            throw SolverError("solve_moment_system_plus: coupled Picard did not converge", 0.0,
                              false);

        gamma = base[nq - 1];
        g1p = curG[nq - 1];
        gamma.time = g1p.time = (step + 1) * cfg.dt;
        traj.times.push_back(gamma.time);
        traj.base.push_back(gamma);
        traj.weighted.push_back(g1p);
        traj.weighted_norm.push_back(
            sobolev_norm(g1p, SobolevIndex{cfg.idx.alpha, cfg.idx.beta - 1.0}));
    }
    return traj;
}

ContinuityResult continuity_probe(const DensityMatrix& gamma0, const DensityMatrix& chi,
                                  const std::vector<double>& eps_list,
                                  const CollisionKernel& kernel, const AngularQuadrature& quad,
                                  const SolverConfig& cfg) {
    SolverConfig c = cfg;
    c.record_snapshots = true;
    Trajectory baseline = solve_duhamel(gamma0, kernel, quad, c);
    ContinuityResult res;
    for (double eps : eps_list) {
        DensityMatrix pert = gamma0;
        add_scaled(pert, cplx(eps, 0.0), chi);
        const double chin = eps * sobolev_norm(chi, cfg.idx);
        if (eps == 0.0 || chin == 0.0) {
            res.epsilons.push_back(eps);
            res.ratios.push_back(0.0);
            continue;
        }
        Trajectory t2 = solve_duhamel(pert, kernel, quad, c);
        double sup = 0.0;
        for (std::size_t i = 0; i < baseline.snapshots.size(); ++i)
            sup = std::max(sup, diff_norm(t2.snapshots[i], baseline.snapshots[i], cfg.idx));
        res.epsilons.push_back(eps);
        res.ratios.push_back(sup / chin);
    }
    return res;
}

}  // namespace wignerkin
