#pragma once

#include <array>
#include <limits>
#include <variant>
#include <vector>

#include "wignerkin/wigner.hpp"

namespace wignerkin {

struct ConstantKernel {
    double amplitude = 1.0;
};

// b(r, cos theta) on a uniform (radius x cosine) table, bilinear
// interpolation, clamped at r > r_max. sup_norm is recorded at construction.
struct TabulatedKernel {
    int nr = 0, nc = 0;
    double r_max = 0.0;
    std::vector<double> samples;  // [ir][ic], r in [0, r_max], c in [-1, 1]
    double sup_norm = 0.0;

    static TabulatedKernel from_samples(int nr, int nc, double r_max,
                                        std::vector<double> samples);
    double eval(double r, double c) const;
};

using CollisionKernel = std::variant<ConstantKernel, TabulatedKernel>;

double kernel_sup_norm(const CollisionKernel& k);
bool is_constant(const CollisionKernel& k);

struct AngularQuadrature {
    int dim = 2;  // nodes on S^{dim-1}
    std::vector<std::array<double, 3>> nodes;
    std::vector<double> weights;

    double total_weight() const;
    std::size_t size() const { return nodes.size(); }

    // Uniform trapezoid on the circle; exact for trigonometric polynomials
    // of degree < n. Antipodally symmetric for even n.
    static AngularQuadrature uniform_circle(int n);
    // Gauss-Legendre in the polar cosine times uniform azimuth (d = 3).
    static AngularQuadrature sphere_product(int n_polar, int n_azimuth);
};

// Band-limited (trigonometric) evaluation of one velocity row at arbitrary
// off-lattice points; the evaluation is exact for the trig-polynomial
// extension of the lattice samples.
class VelocityInterpolant {
  public:
    VelocityInterpolant(const PhaseGrid& g, const double* row);
    double eval(const std::array<double, 3>& v) const;

  private:
    PhaseGrid grid_;
    std::vector<cplx> chat_;
    mutable std::vector<cplx> ax_;
};

// Post-collision velocities in the omega representation:
//   v'  = v + (omega.(v*-v)) omega,   v*' = v* - (omega.(v*-v)) omega.
// Throws std::invalid_argument unless | |omega| - 1 | <= 1e-12.
void post_collision(const std::array<double, 3>& v, const std::array<double, 3>& v_star,
                    const std::array<double, 3>& omega, int d, std::array<double, 3>& v_prime,
                    std::array<double, 3>& v_star_prime);

// ------------------------------------------------------------------
// Brute-force kinetic oracles (small grids; cost ~ N^{3d} N_omega).
// Direct quadrature over the v* lattice and the angular nodes, with
// band-limited (trigonometric) evaluation of f at v', v*'. The optional
// relative-velocity cutoff |v - v*| <= cutoff restricts the quadrature to
// the collisions that matter for interior-supported data (without it, the
// periodic extension contributes wrap terms at large output velocities).
// ------------------------------------------------------------------
KineticState q_gain_oracle(const KineticState& f1, const KineticState& f2,
                           const CollisionKernel& kernel, const AngularQuadrature& quad,
                           double cutoff = std::numeric_limits<double>::infinity());
KineticState q_loss_oracle(const KineticState& f1, const KineticState& f2,
                           const CollisionKernel& kernel, const AngularQuadrature& quad,
                           double cutoff = std::numeric_limits<double>::infinity());

// ------------------------------------------------------------------
// Production paths, constant kernel only. gain_image/loss_image return the
// complex kinetic image of -i*B^{+/-}(gamma1, gamma2) given the kinetic
// images f1, f2 of the arguments; they are the shared core of the
// density-matrix operators and the kinetic spectral path.
// ------------------------------------------------------------------
std::vector<cplx> gain_image(const PhaseGrid& g, const std::vector<cplx>& f1,
                             const std::vector<cplx>& f2, double amplitude,
                             const AngularQuadrature& quad);
std::vector<cplx> loss_image(const PhaseGrid& g, const std::vector<cplx>& f1,
                             const std::vector<cplx>& f2, double amplitude,
                             const AngularQuadrature& quad);

// B^-(g1,g2)(u, y) = i kappa g1(u, y) g2(u, 0): multiplication by the
// density of gamma2 at the rotated-lattice midpoint; interpolation-free.
DensityMatrix b_minus(const DensityMatrix& g1, const DensityMatrix& g2,
                      const CollisionKernel& kernel, const AngularQuadrature& quad);

// B^+(g1,g2)(u, y) = i kappa_j sum_j w_j g1(u, (I-P_j) y) g2(u, P_j y), with
// off-lattice y arguments by band-limited evaluation.
DensityMatrix b_plus(const DensityMatrix& g1, const DensityMatrix& g2,
                     const CollisionKernel& kernel, const AngularQuadrature& quad);

// zeta = B(gamma, gamma) = B^+ - B^-. With conservative = true the discrete
// collision invariants (mass, momentum, energy per spatial point) are
// projected out of the kinetic image before synthesis; this is the variant
// the time integrators use.
DensityMatrix collide(const DensityMatrix& g, const CollisionKernel& kernel,
                      const AngularQuadrature& quad, bool conservative = true);

// Kinetic spectral path: gain evaluated per spatial point in velocity-Fourier
// space by angular quadrature with band-limited evaluation at the Bobylev
// points; exactly the Wigner conjugate of b_plus.
KineticState spectral_gain_kinetic(const KineticState& f, const CollisionKernel& kernel,
                                   const AngularQuadrature& quad);

// Q(f, f) = gain - loss along the spectral path (constant kernel).
KineticState q_spectral(const KineticState& f, const CollisionKernel& kernel,
                        const AngularQuadrature& quad, bool conservative = true);

// Least-squares projection, per spatial point, removing the components of a
// collision output along the discrete collision invariants {1, v, |v|^2}.
void conservative_correction(const PhaseGrid& g, std::vector<cplx>& q_kinetic);
void conservative_correction(const PhaseGrid& g, std::vector<double>& q_kinetic);

// Calibrated operator scale for the constant kernel: kappa = c * sum_j w_j.
double kappa(const ConstantKernel& k, const AngularQuadrature& quad);

}  // namespace wignerkin
