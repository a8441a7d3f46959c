#pragma once

#include <stdexcept>
#include <vector>

#include "wignerkin/functionals.hpp"
#include "wignerkin/propagator.hpp"

namespace wignerkin {

struct SolverConfig {
    double T = 0.1;
    double dt = 0.005;
    double picard_tol = 1e-10;
    int max_iter = 50;
    int t_quad_nodes = 3;  // quadrature nodes per subinterval, >= 2
    SobolevIndex idx{1.0, 1.0};
    bool conservative = true;      // project collision invariants each application
    bool record_snapshots = true;

    void validate(int d) const;
};

struct SolverError : std::runtime_error {
    double final_residual;
    bool nan = false;
    SolverError(const std::string& msg, double r, bool is_nan)
        : std::runtime_error(msg), final_residual(r), nan(is_nan) {}
};

struct StepDiagnostics {
    double time = 0.0;
    int picard_iters = 0;
    double picard_residual = 0.0;
    std::vector<double> residual_history;
    double zeta_l1_accum = 0.0;  // running int_0^t ||B(gamma,gamma)||_{H^{a,b}} ds
    double h_ab = 0.0, h_a1b = 0.0, h_ab1 = 0.0;
    double moment_p1 = 0.0, moment_m2 = 0.0;  // NaN when the index underflows
    Observables obs;
    double support_frac = 0.0;
    double herm_defect = 0.0;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<DensityMatrix> snapshots;  // empty unless recorded
    std::vector<StepDiagnostics> steps;    // one entry per time, including t = 0
};

// Picard fixed-point marcher for the Duhamel form: per subinterval,
//   gamma^{n+1}(t) = U(t) gamma_start - i int_0^t U(t-s) B(gamma^n, gamma^n)(s) ds
// with composite trapezoid on t_quad_nodes nodes; stops when successive
// iterates differ by < picard_tol in H^{alpha,beta}. Throws SolverError on
// non-convergence (final residual reported) or NaN.
Trajectory solve_duhamel(const DensityMatrix& gamma0, const CollisionKernel& kernel,
                         const AngularQuadrature& quad, const SolverConfig& cfg);

// Strang splitting reference on the kinetic side: half free transport, one
// explicit midpoint collision substep of df/dt = Q(f, f), half transport.
Trajectory solve_splitting(const KineticState& f0, const CollisionKernel& kernel,
                           const AngularQuadrature& quad, const SolverConfig& cfg);

// d/dt gamma = (i/2) Delta_pm gamma - i B(gamma, gamma), evaluated with the
// same lattice transport symbol as the propagator.
DensityMatrix time_derivative(const DensityMatrix& g, const CollisionKernel& kernel,
                              const AngularQuadrature& quad, bool conservative = true);

struct MomentTrajectory {
    std::vector<double> times;
    std::vector<DensityMatrix> base;      // gamma(t)
    std::vector<DensityMatrix> weighted;  // gamma_{1,+}(t) from the coupled system
    std::vector<double> weighted_norm;    // ||gamma_{1,+}||_{H^{alpha,beta-1}}
};

// Solves the coupled (gamma_{1,+}, zeta_{1,+}) system (k = 1) alongside the
// base solution; the commutator source is evaluated exactly on the lattice
// (moment_source_plus).
MomentTrajectory solve_moment_system_plus(const DensityMatrix& gamma0,
                                          const CollisionKernel& kernel,
                                          const AngularQuadrature& quad,
                                          const SolverConfig& cfg);

struct ContinuityResult {
    std::vector<double> epsilons;
    std::vector<double> ratios;  // sup_t ||gamma1-gamma2||_H / ||eps*chi||_H
};

// Solves from gamma0 and gamma0 + eps*chi for each eps and reports the
// Lipschitz ratios of the solution map.
ContinuityResult continuity_probe(const DensityMatrix& gamma0, const DensityMatrix& chi,
                                  const std::vector<double>& eps_list,
                                  const CollisionKernel& kernel, const AngularQuadrature& quad,
                                  const SolverConfig& cfg);

}  // namespace wignerkin
