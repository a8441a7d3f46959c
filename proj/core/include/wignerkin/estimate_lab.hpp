#pragma once

#include <array>
#include <string>
#include <vector>

namespace wignerkin {

// Numerical verification of the uniform-boundedness integrals behind the
// bilinear collision estimates (loss/gain Strichartz machinery and the
// fixed-time lossy bounds). All integrals are truncated at radius R with the
// resolution-halving difference reported as the convergence estimate;
// finite-vs-divergent classification is done by R- or |W|-growth studies.

struct ProbeValue {
    double value = 0.0;
    double convergence = 0.0;  // |I(res) - I(res/2)| / |I(res)|
};

using Vec2 = std::array<double, 2>;

// Loss-term spacetime integral (d = 2):
//   K = <xi+xi'>^{2a} int_{|w|<=R} dw (2|w|)^{-1} <xi+xi'-2w>^{-2a} <2w>^{-2a}
//       int_{P(w), |t|<=R} dS(z) <2z>^{-2b}
// with P(w) the plane tau + (|xi|^2-|xi'|^2)/2 - (xi-xi').w + 2w.z = 0.
// The 1/|w| singularity cancels against the polar Jacobian.
ProbeValue eval_loss_K(double tau, const Vec2& xi, const Vec2& xip, double alpha, double beta,
                       double R, int resolution);

// Inner plane integral alone, truncated at |t| <= R, for the
// below-threshold growth study (grows like R^{d-1-2 beta}).
double loss_plane_integral(double z0, double beta, double R, int resolution);
// log2 slope of the plane integral between R and 2R
double plane_growth_slope(double beta, double R, int resolution);

// Gain hyperplane integral I1: sup over sampled line orientations/offsets of
//   int_P dS(s) <W>^{2a} / (<s>^{2a} <s+W>^{2a}).
ProbeValue eval_gain_I1(const Vec2& W, double alpha, int orientations, double R, int resolution);

// Gain angular integral I2 (radial-tangential split, polar in s):
//   int_{S^1} dw int ds <W>^{2b} / (|s| <s_par + W>^{2(b+d)} <s_perp + W>^{2(b+d)})
ProbeValue eval_gain_I2(const Vec2& W, double beta, double delta, int n_omega, double R,
                        int resolution);

struct LossyBounds {
    ProbeValue z_factor;  // int <z>^{-2b} dz  (closed form pi/(b-1) at d=2)
    ProbeValue i20;       // sup-type integral int ds <W>^{2a}/(<s>^{2a}<W-s>^{2a})
    ProbeValue i21;       // angular integral with the (b+d) brackets split along omega
    double i_loss = 0.0;  // factorized product i20 * z_factor
};

LossyBounds eval_lossy_bounds(const Vec2& W, double alpha, double beta, double delta, double R,
                              int resolution);

struct DyadicResult {
    double direct_value = 0.0;   // omega-quadrature of the angular integral
    double dyadic_bound = 0.0;   // sum of schematic shell terms (+ leftover)
    double exponent = 0.0;       // log2 ratio of consecutive shell terms
    bool divergent = false;      // exponent >= 0
    double partial_growth = 0.0; // partial-sum ratio S(Kmax)/S(Kmax/2)
};

// Dyadic-decomposition cross-check of the lossy angular integrals
//   I  = int dw <W_par>^{d-1-2e} <W_perp>^{1-2(b+e)}
//   I' = int dw <W_par>^{d-1-2(b+e)} <W_perp>^{1-2e}
// against the shell sums sum_k 2^{-k-1} (2^{-k})^{d-2} (2^{k+1})^{g}.
DyadicResult dyadic_check_I(const Vec2& W, double beta, double eps, int Kmax);
DyadicResult dyadic_check_Iprime(const Vec2& W, double beta, double eps, int Kmax);

}  // namespace wignerkin
