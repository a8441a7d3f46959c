#pragma once

#include <string>
#include <vector>

#include "wignerkin/collision.hpp"
#include "wignerkin/wigner.hpp"

namespace wignerkin {

struct SobolevIndex {
    double alpha = 1.0;
    double beta = 1.0;
    double delta = 0.0;  // gain-smoothing increment where applicable

    bool above_threshold(int d) const {
        return alpha > 0.5 * (d - 1) && beta > 0.5 * (d - 1);
    }
};

struct Observables {
    double mass = 0.0;
    double momentum[3] = {0.0, 0.0, 0.0};
    double kinetic_energy = 0.0;
    double entropy_h = 0.0;      // sum f log f over f > 1e-14, lattice weights
    double min_value = 0.0;
    double negativity_mass = 0.0;
};

// ||<xi+xi'>^alpha <xi-xi'>^beta gammahat||_2 with lattice weights; the
// brackets use the algebraic (unwrapped) sum and difference of the two
// centered frequencies.
double sobolev_norm(const DensityMatrix& g, const SobolevIndex& idx);

enum class MomentSign { plus, minus };

// ||<x+x'>^k gamma||_{H^{alpha,beta-k}} (plus) or
// ||<x-x'>^{2k} gamma||_{H^{alpha-2k,beta}} (minus), the physical-side weight
// materialized on the fundamental domain. Throws std::domain_error when the
// target index would be negative (index underflow), or for odd weight order
// on the minus side.
double weighted_moment_norm(const DensityMatrix& g, int k, MomentSign sign,
                            const SobolevIndex& idx);

Observables observables(const KineticState& f);

// ---- physical-side weight and derivative operators ----
DensityMatrix weight_plus_pow(const DensityMatrix& g, double a);   // <x+x'>^a gamma
DensityMatrix weight_minus_pow(const DensityMatrix& g, double a);  // <x-x'>^a gamma
std::vector<DensityMatrix> weight_minus_vec(const DensityMatrix& g);  // (x-x') gamma
std::vector<DensityMatrix> grad_diff(const DensityMatrix& g);  // (grad_x - grad_x') gamma
std::vector<DensityMatrix> grad_sum(const DensityMatrix& g);   // (grad_x + grad_x') gamma

// Exact lattice commutator [ (1/2)Delta_pm , <x+x'> ] gamma; its continuum
// form is (x+x')/<x+x'> . (grad_x - grad_x') gamma, the k = 1 moment-system
// source term.
DensityMatrix moment_source_plus(const DensityMatrix& g);

// Fraction of |f|^2 mass outside |x| <= L/2 or |v| <= v_max/2; runs whose
// support exceeds the monitored radius are flagged for moment claims.
double support_fraction(const KineticState& f);

struct IdentityResidual {
    std::string name;
    double residual = 0.0;
    bool interpolation_free = false;  // B^- side identities
};

// Checks the weight/derivative commutation identities of the collision
// operators with identical angular quadrature on both sides:
//  (1) <x+x'>^{a+b} B^- = B^-(<x+x'>^a ., <x+x'>^b .)
//  (2) same for B^+
//  (3) <x-x'>^a B^- = B^-(<x-x'>^a ., <x-x'>^b .)
//  (4) <x-x'>^{2k} B^+ = multinomial expansion with signs (-1)^{j3}
//  (5) (x-x') vector identities through B^- and B^+
//  (6) Leibniz rule for (grad_x + grad_x') through B^-, B^+
std::vector<IdentityResidual> verify_weight_identities(const DensityMatrix& g1,
                                                       const DensityMatrix& g2, double a,
                                                       double b, int k,
                                                       const CollisionKernel& kernel,
                                                       const AngularQuadrature& quad);

struct BilinearProbeResult {
    double c_minus = 0.0;  // empirical constant of the loss estimate
    double c_plus = 0.0;   // empirical constant of the gain estimate
    double t_window = 0.0;
    int time_nodes = 0;
};

// ||B^{+/-}(U_t gamma1, U_t gamma2)||_{L^2_t H^{alpha,beta+delta}} over
// [0, Twindow] (composite trapezoid, >= 33 nodes) divided by the right-hand
// side norm products of the loss/gain estimates.
BilinearProbeResult bilinear_estimate_probe(const DensityMatrix& g1, const DensityMatrix& g2,
                                            const SobolevIndex& idx, double delta,
                                            const CollisionKernel& kernel,
                                            const AngularQuadrature& quad, double t_window,
                                            int time_nodes = 33);

}  // namespace wignerkin
