#include "wignerkin/estimate_lab.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace wignerkin {

namespace {

// composite Gauss-Legendre (8-point) on [a, b] with n panels
double gl8(double a, double b, int panels, const std::function<double(double)>& f) {
    static const double xs[4] = {0.1834346424956498, 0.5255324099163290, 0.7966664774136267,
                                 0.9602898564975363};
    static const double ws[4] = {0.3626837833783620, 0.3137066458778873, 0.2223810344533745,
                                 0.1012285362903763};
    const double hp = (b - a) / panels;
    double acc = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double c = a + (p + 0.5) * hp, h2 = 0.5 * hp;
        for (int q = 0; q < 4; ++q) acc += ws[q] * (f(c + h2 * xs[q]) + f(c - h2 * xs[q]));
    }
    return acc * 0.5 * hp;
}

// dyadically graded quadrature on [0, R]: unit segment then doubling
// segments, `panels` GL panels each; resolves peaks near 0 and slow tails.
double gl8_graded(double R, int panels, const std::function<double(double)>& f) {
    if (R <= 1.0) return gl8(0.0, R, panels, f);
    double acc = gl8(0.0, 1.0, panels, f);
    double lo = 1.0;
    while (lo < R) {
        const double hi = std::min(2.0 * lo, R);
        acc += gl8(lo, hi, panels, f);
        lo = hi;
    }
    return acc;
}

// two-sided graded quadrature on [-R, R] centered at 0
double gl8_graded_sym(double R, int panels, const std::function<double(double)>& f) {
    return gl8_graded(R, panels, f) + gl8_graded(R, panels, [&](double t) { return f(-t); });
}

double bracket2(double u2) { return 1.0 + u2; }  // <u>^2 given |u|^2

double dot(const Vec2& a, const Vec2& b) { return a[0] * b[0] + a[1] * b[1]; }
double norm2(const Vec2& a) { return dot(a, a); }

double loss_K_at(double tau, const Vec2& xi, const Vec2& xip, double alpha, double beta,
                 double R, int res) {
    const int n_theta = 8 * res;
    const double sum2 = norm2({xi[0] + xip[0], xi[1] + xip[1]});
    const double pref = std::pow(bracket2(sum2), alpha);
    const double c0 = tau + 0.5 * (norm2(xi) - norm2(xip));
    const Vec2 dxi{xi[0] - xip[0], xi[1] - xip[1]};
    double acc = 0.0;
    for (int it = 0; it < n_theta; ++it) {
        const double th = 2.0 * M_PI * it / n_theta;
        const Vec2 n{std::cos(th), std::sin(th)};
        acc += (2.0 * M_PI / n_theta) *
               gl8_graded(R, res, [&](double r) {
                   // (2|w|)^{-1} r dr = dr/2 in polar coordinates
                   const Vec2 w{r * n[0], r * n[1]};
                   const double cw = c0 - dot(dxi, w);
                   const double z0 = (r > 0.0) ? -cw / (2.0 * r) : 0.0;
                   double inner = 2.0 * gl8_graded(R, res, [&](double t) {
                       return std::pow(bracket2(4.0 * (z0 * z0 + t * t)), -beta);
                   });
                   // asymptotic tail of the plane integral, |t| > R
                   if (beta > 0.5)
                       inner += 2.0 * std::pow(4.0, -beta) * std::pow(R, 1.0 - 2.0 * beta) /
                                (2.0 * beta - 1.0);
                   const double g1 = std::pow(
                       bracket2(norm2({xi[0] + xip[0] - 2 * w[0], xi[1] + xip[1] - 2 * w[1]})),
                       -alpha);
                   const double g2 = std::pow(bracket2(4.0 * r * r), -alpha);
                   return 0.5 * g1 * g2 * inner;
               });
    }
    return pref * acc;
}

}  // namespace

ProbeValue eval_loss_K(double tau, const Vec2& xi, const Vec2& xip, double alpha, double beta,
                       double R, int resolution) {
    if (resolution < 2) throw std::invalid_argument("eval_loss_K: resolution >= 2");
    ProbeValue out;
    out.value = loss_K_at(tau, xi, xip, alpha, beta, R, resolution);
    const double coarse = loss_K_at(tau, xi, xip, alpha, beta, R, std::max(2, resolution / 2));
    out.convergence = out.value != 0.0 ? std::abs(out.value - coarse) / std::abs(out.value) : 0.0;
    return out;
}

double loss_plane_integral(double z0, double beta, double R, int resolution) {
    return 2.0 * gl8_graded(R, std::max(resolution, 8), [&](double t) {
        return std::pow(bracket2(4.0 * (z0 * z0 + t * t)), -beta);
    });
}

double plane_growth_slope(double beta, double R, int resolution) {
    const double a = loss_plane_integral(0.0, beta, R, resolution);
    const double b = loss_plane_integral(0.0, beta, 2.0 * R, resolution);
    return std::log2(b / a);
}

ProbeValue eval_gain_I1(const Vec2& W, double alpha, int orientations, double R, int resolution) {
    const double pref = std::pow(bracket2(norm2(W)), alpha);
    auto line_integral = [&](const Vec2& n, double c, int res) {
        const Vec2 p0{c * n[0], c * n[1]};
        const Vec2 e{-n[1], n[0]};
        const double body = gl8_graded_sym(R, res, [&](double t) {
            const Vec2 s{p0[0] + t * e[0], p0[1] + t * e[1]};
            return pref * std::pow(bracket2(norm2(s)), -alpha) *
                   std::pow(bracket2(norm2({s[0] + W[0], s[1] + W[1]})), -alpha);
        });
        // asymptotic power tail: integrand ~ pref t^{-4 alpha} for |t| > R
        const double tail = 2.0 * pref * std::pow(R, 1.0 - 4.0 * alpha) / (4.0 * alpha - 1.0);
        return body + tail;
    };
    const double wn = std::sqrt(norm2(W));
    std::vector<double> offsets = {0.0, -0.25 * wn, 0.25 * wn, -0.5 * wn, 0.5 * wn, -wn, wn};
    auto sup_at = [&](int res) {
        double best = 0.0;
        for (int io = 0; io < orientations; ++io) {
            const double th = M_PI * io / orientations;
            const Vec2 n{std::cos(th), std::sin(th)};
            for (double c : offsets) best = std::max(best, line_integral(n, c, res));
        }
        std::vector<Vec2> extra = {{1.0, 0.0}, {0.0, 1.0}};
        if (wn > 0.0) {
            extra.push_back({W[0] / wn, W[1] / wn});
            extra.push_back({-W[1] / wn, W[0] / wn});
        }
        for (const Vec2& n : extra)
            for (double c : offsets) best = std::max(best, line_integral(n, c, res));
        return best;
    };
    ProbeValue out;
    out.value = sup_at(resolution);
    const double coarse = sup_at(std::max(2, resolution / 2));
    out.convergence = out.value != 0.0 ? std::abs(out.value - coarse) / out.value : 0.0;
    return out;
}

namespace {

double gain_I2_at(const Vec2& W, double beta, double delta, int n_omega, double R, int res) {
    const double p = beta + delta;
    const double pref = std::pow(bracket2(norm2(W)), beta);
    const int n_phi = 8 * res;
    double acc = 0.0;
    for (int jo = 0; jo < n_omega; ++jo) {
        const double to = 2.0 * M_PI * jo / n_omega;
        const Vec2 om{std::cos(to), std::sin(to)};
        const Vec2 omp{-om[1], om[0]};
        double inner = 0.0;
        for (int jp = 0; jp < n_phi; ++jp) {
            const double ph = 2.0 * M_PI * jp / n_phi;
            const double ca = std::cos(ph), sa = std::sin(ph);
            inner += (2.0 * M_PI / n_phi) * gl8_graded(R, res, [&](double r) {
                         const double a = r * ca;  // s_par along omega
                         const double b = r * sa;  // s_perp
                         const double q1 = bracket2(norm2({a * om[0] + W[0], a * om[1] + W[1]}));
                         const double q2 =
                             bracket2(norm2({b * omp[0] + W[0], b * omp[1] + W[1]}));
                         return std::pow(q1, -p) * std::pow(q2, -p);
                     });
        }
        acc += (2.0 * M_PI / n_omega) * inner;
    }
    return pref * acc;
}

}  // namespace

ProbeValue eval_gain_I2(const Vec2& W, double beta, double delta, int n_omega, double R,
                        int resolution) {
    ProbeValue out;
    out.value = gain_I2_at(W, beta, delta, n_omega, R, resolution);
    const double coarse = gain_I2_at(W, beta, delta, n_omega, R, std::max(2, resolution / 2));
    out.convergence = out.value != 0.0 ? std::abs(out.value - coarse) / out.value : 0.0;
    return out;
}

namespace {

double i20_at(const Vec2& W, double alpha, double R, int res) {
    const double pref = std::pow(bracket2(norm2(W)), alpha);
    const int n_theta = 8 * res;
    double acc = 0.0;
    for (int it = 0; it < n_theta; ++it) {
        const double th = 2.0 * M_PI * it / n_theta;
        const Vec2 n{std::cos(th), std::sin(th)};
        acc += (M_PI / n_theta) * gl8_graded(R, res, [&](double r) {
                   const Vec2 s{r * n[0], r * n[1]};
                   return r * std::pow(bracket2(norm2(s)), -alpha) *
                          std::pow(bracket2(norm2({W[0] - s[0], W[1] - s[1]})), -alpha);
               });
    }
    return pref * 2.0 * acc;
}

double zfactor_at(double beta, double R, int res) {
    const double body = 2.0 * M_PI * gl8_graded(R, res, [&](double r) {
        return r * std::pow(bracket2(r * r), -beta);
    });
    // exact tail of the radial reduction: int_R^inf r <r>^{-2 beta} dr
    const double tail = 2.0 * M_PI * std::pow(bracket2(R * R), 1.0 - beta) / (2.0 * (beta - 1.0));
    return body + tail;
}

double i21_at(const Vec2& W, double beta, double delta, double R, int res) {
    const double p = beta + delta;
    const double pref = std::pow(bracket2(norm2(W)), beta);
    const int n_omega = 16 * res;
    double acc = 0.0;
    for (int jo = 0; jo < n_omega; ++jo) {
        const double to = 2.0 * M_PI * jo / n_omega;
        const Vec2 om{std::cos(to), std::sin(to)};
        const double wpar = dot(W, om);
        const double wperp2 = norm2(W) - wpar * wpar;
        // |s_par + W_perp|^2 = a^2 + |W_perp|^2, |s_perp + W_par|^2 = b^2 + W_par^2
        const double ia = gl8_graded_sym(R, res, [&](double a) {
            return std::pow(bracket2(a * a + wperp2), -p);
        });
        const double ib = gl8_graded_sym(R, res, [&](double b) {
            return std::pow(bracket2(b * b + wpar * wpar), -p);
        });
        acc += (2.0 * M_PI / n_omega) * ia * ib;
    }
    return pref * acc;
}

}  // namespace

LossyBounds eval_lossy_bounds(const Vec2& W, double alpha, double beta, double delta, double R,
                              int resolution) {
    LossyBounds out;
    out.i20.value = i20_at(W, alpha, R, resolution);
    out.i20.convergence =
        std::abs(out.i20.value - i20_at(W, alpha, R, std::max(2, resolution / 2))) /
        std::max(out.i20.value, 1e-300);
    out.z_factor.value = zfactor_at(beta, R, resolution);
    out.z_factor.convergence =
        std::abs(out.z_factor.value - zfactor_at(beta, R, std::max(2, resolution / 2))) /
        std::max(out.z_factor.value, 1e-300);
    out.i21.value = i21_at(W, beta, delta, R, resolution);
    out.i21.convergence =
        std::abs(out.i21.value - i21_at(W, beta, delta, R, std::max(2, resolution / 2))) /
        std::max(out.i21.value, 1e-300);
    out.i_loss = out.i20.value * out.z_factor.value;
    return out;
}

namespace {

DyadicResult dyadic_impl(const Vec2& W, double e_par, double e_perp, double growth_exp,
                         int Kmax) {
    DyadicResult r;
    // direct omega quadrature of int dw <W_par>^{e_par} <W_perp>^{e_perp}
    const int n = 8192;
    double acc = 0.0;
    for (int j = 0; j < n; ++j) {
        const double th = 2.0 * M_PI * j / n;
        const Vec2 om{std::cos(th), std::sin(th)};
        const double wp = dot(W, om);
        const double wperp2 = norm2(W) - wp * wp;
        acc += (2.0 * M_PI / n) * std::pow(bracket2(wp * wp), 0.5 * e_par) *
               std::pow(bracket2(wperp2), 0.5 * e_perp);
    }
    r.direct_value = acc;
    // schematic shell terms s_k = 2^{-k-1} (2^{-k})^{d-2} (2^{k+1})^{growth}; d = 2
    double shells = 0.0, partial_half = 0.0;
    double prev = 0.0;
    for (int k = 1; k <= Kmax; ++k) {
        const double sk = std::pow(2.0, -k - 1.0) * std::pow(2.0, (k + 1.0) * growth_exp);
        shells += sk;
        if (k == Kmax / 2) partial_half = shells;
        if (k == Kmax && prev > 0.0) r.exponent = std::log2(sk / prev);
        prev = sk;
    }
    // leftover region |W_perp| >= |W_par|/2: measure <= 2 pi, integrand <= 1
    r.dyadic_bound = shells + 2.0 * M_PI;
    r.divergent = r.exponent >= 0.0;
    r.partial_growth = partial_half > 0.0 ? shells / partial_half : 0.0;
    return r;
}

}  // namespace

DyadicResult dyadic_check_I(const Vec2& W, double beta, double eps, int Kmax) {
    // I = int dw <W_par>^{d-1-2e} <W_perp>^{1-2(b+e)}; schematic growth
    // (2^{k+1})^{d-1-2e}, plus the transferred power when b+e < 1/2.
    const double growth = (1.0 - 2.0 * eps) + std::max(0.0, 1.0 - 2.0 * (beta + eps));
    return dyadic_impl(W, 1.0 - 2.0 * eps, 1.0 - 2.0 * (beta + eps), growth, Kmax);
}

DyadicResult dyadic_check_Iprime(const Vec2& W, double beta, double eps, int Kmax) {
    const double growth = (1.0 - 2.0 * eps) + std::max(0.0, 1.0 - 2.0 * (beta + eps));
    // poles at omega perpendicular to W: the exponent roles swap
    return dyadic_impl(W, 1.0 - 2.0 * (beta + eps), 1.0 - 2.0 * eps, growth, Kmax);
}

}  // namespace wignerkin
