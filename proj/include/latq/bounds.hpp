#pragma once

#include <numbers>

namespace latq {

// Normalized second moment of a ball as dimension grows: 1/(2*pi*e).
inline constexpr double kSphereBound = 1.0 / (2.0 * std::numbers::pi * std::numbers::e);

// Ensemble bound for random q-ary code lattices: the self-consistent
// distortion d0, the rate R0 at the matching exponential tilt, the second
// moment G_inf = d0 * q^(2*(R0-1)), and the fixed-point residual of d0.
struct BoundResult {
    int q = 0;
    double d0 = 0;
    double R0 = 0;
    double G_inf = 0;
    double residual = 0;
};

// Tilted kernel: average over the alphabet of exp(s * rho(x, k)).
double g_func(double s, double x, int q);

// Distortion at tilt s: twice the integral over [0, 1/2] of
// (d/ds g) / g. The s-derivative is evaluated analytically.
double d_of_s(double s, int q);

// Twice the integral over [0, 1/2] of ln g.
double z_of_s(double s, int q);

// Rate at tilt s: (-1/2 - z_of_s(s)) / ln q.
double rate_of_s(double s, int q);

// Self-consistent distortion: the d solving d = d_of_s(-1/(2d)).
// Damped fixed-point iteration seeded at q/(2*pi*e); when the map is too
// close to the identity to make progress, falls back to bisection on the
// residual. The returned value has |d_of_s(-1/(2*d0)) - d0| < 1e-10.
double solve_d0(int q);

// Rate at the self-consistent tilt s = -1/(2*d0).
double compute_r0(int q, double d0);

BoundResult evaluate_bound(int q);

// Second-moment bound with the code rate imposed: solve rate_of_s(s) = Rc
// for the tilt, then return d_of_s(s) * q^(2*(Rc-1)).
double bound_at_rate(int q, double Rc);

// Same quantities integrated over one full alphabet period [0, q] with a
// 1/q normalization instead of the reduced interval [0, 1/2]; the kernel
// has unit period and is even about 1/2, so these must agree with the
// reduced forms. Kept as a cross-check of that reduction.
double d_of_s_full_period(double s, int q);
double rate_full_period(int q, double d0);

}  // namespace latq
