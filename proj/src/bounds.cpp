#include "latq/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "latq/field.hpp"
#include "latq/metrics.hpp"

namespace latq {

namespace {

struct GVal {
    double g;
    double dg;  // derivative with respect to the tilt s
};

// Sum exp(s*rho) smallest-term-first and drop terms below 1e-300; they sit
// far under the quadrature tolerance and would only flush to zero anyway.
GVal g_pair(double s, double x, int q) {
    static thread_local std::vector<double> dist;
    dist.clear();
    dist.reserve(q);
    for (int k = 0; k < q; ++k) dist.push_back(rho(x, k, q));
    std::sort(dist.begin(), dist.end(), std::greater<double>());

    double sg = 0, sd = 0;
    for (double r : dist) {
        const double e = s * r;
        if (e < -690.0) continue;
        const double t = std::exp(e);
        sg += t;
        sd += r * t;
    }
    return {sg / q, sd / q};
}

// Adaptive Simpson with Richardson correction.
double adapt(const std::function<double(double)>& f, double a, double fa, double m, double fm,
             double b, double fb, double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adapt(f, a, fa, lm, flm, m, fm, left, 0.5 * tol, depth - 1) +
           adapt(f, m, fm, rm, frm, b, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adapt(f, a, fa, m, fm, b, fb, whole, tol, 48);
}

constexpr double kQuadTol = 1e-12;

// Integral over [0, q] split at half-integer breakpoints, where the
// wrap-around distance switches branches and the integrand loses
// smoothness.
double integrate_period(const std::function<double(double)>& f, int q) {
    double total = 0;
    for (int j = 0; j < 2 * q; ++j)
        total += integrate(f, 0.5 * j, 0.5 * (j + 1), kQuadTol / (2 * q));
    return total;
}

void check_prime(int q) {
    if (!is_prime(q)) throw std::invalid_argument("alphabet size must be prime");
}

}  // namespace

double g_func(double s, double x, int q) {
    check_prime(q);
    return g_pair(s, x, q).g;
}

double d_of_s(double s, int q) {
    check_prime(q);
    return 2.0 * integrate(
                     [s, q](double x) {
                         const GVal v = g_pair(s, x, q);
                         return v.dg / v.g;
                     },
                     0.0, 0.5, kQuadTol);
}

double z_of_s(double s, int q) {
    check_prime(q);
    return 2.0 * integrate([s, q](double x) { return std::log(g_pair(s, x, q).g); }, 0.0, 0.5,
                           kQuadTol);
}

double rate_of_s(double s, int q) {
    return (-0.5 - z_of_s(s, q)) / std::log(static_cast<double>(q));
}

double solve_d0(int q) {
    check_prime(q);
    const double seed = q / (2.0 * std::numbers::pi * std::numbers::e);
    const auto F = [q](double d) { return d_of_s(-1.0 / (2.0 * d), q); };

    double d = seed;
    for (int it = 0; it < 600; ++it) {
        const double f = F(d);
        if (std::fabs(f - d) < 1e-10) return d;
        d = 0.5 * (d + f);
    }

    // The damped map stalls when its slope is nearly 1; switch to
    // bisection on the residual h(d) = F(d) - d, which decreases through
    // the root.
    double a = d;
    double ha = F(a) - a;
    if (std::fabs(ha) < 1e-10) return a;
    double b = a, hb = ha;
    double step = std::max(1e-6, 0.01 * a);
    bool bracketed = false;
    for (int i = 0; i < 200; ++i) {
        b = (ha > 0) ? a + step : std::max(a - step, 1e-12);
        hb = F(b) - b;
        if (std::fabs(hb) < 1e-10) return b;
        if ((ha > 0) != (hb > 0)) {
            bracketed = true;
            break;
        }
        a = b;
        ha = hb;
        step *= 2.0;
    }
    if (!bracketed) throw std::runtime_error("distortion fixed point: failed to bracket a root");
    if (a > b) {
        std::swap(a, b);
        std::swap(ha, hb);
    }
    for (int i = 0; i < 200; ++i) {
        const double m = 0.5 * (a + b);
        const double hm = F(m) - m;
        if (std::fabs(hm) < 1e-10) return m;
        if ((hm > 0) == (ha > 0)) {
            a = m;
            ha = hm;
        } else {
            b = m;
        }
    }
    throw std::runtime_error("distortion fixed point did not converge");
}

double compute_r0(int q, double d0) {
    if (d0 <= 0) throw std::invalid_argument("distortion must be positive");
    return rate_of_s(-1.0 / (2.0 * d0), q);
}

BoundResult evaluate_bound(int q) {
    BoundResult r;
    r.q = q;
    r.d0 = solve_d0(q);
    r.R0 = compute_r0(q, r.d0);
    r.G_inf = r.d0 * std::pow(static_cast<double>(q), 2.0 * (r.R0 - 1.0));
    r.residual = std::fabs(d_of_s(-1.0 / (2.0 * r.d0), q) - r.d0);
    return r;
}

double bound_at_rate(int q, double Rc) {
    check_prime(q);
    if (Rc <= 0.0 || Rc >= 1.0) throw std::invalid_argument("code rate must lie in (0, 1)");

    // rate_of_s grows without bound as s -> -inf and is negative near 0-,
    // so bracket the tilt between those regimes.
    double hi = -1e-9;
    if (rate_of_s(hi, q) >= Rc) throw std::invalid_argument("rate infeasible for this alphabet");
    double lo = -1.0;
    while (rate_of_s(lo, q) < Rc) {
        lo *= 2.0;
        if (lo < -1e7) throw std::invalid_argument("rate infeasible for this alphabet");
    }
    double s = 0.5 * (lo + hi);
    for (int i = 0; i < 200; ++i) {
        s = 0.5 * (lo + hi);
        const double r = rate_of_s(s, q);
        if (std::fabs(r - Rc) < 1e-13) break;
        if (r < Rc)
            hi = s;
        else
            lo = s;
    }
    return d_of_s(s, q) * std::pow(static_cast<double>(q), 2.0 * (Rc - 1.0));
}

double d_of_s_full_period(double s, int q) {
    check_prime(q);
    return integrate_period(
               [s, q](double x) {
                   const GVal v = g_pair(s, x, q);
                   return v.dg / v.g;
               },
               q) /
           q;
}

double rate_full_period(int q, double d0) {
    if (d0 <= 0) throw std::invalid_argument("distortion must be positive");
    const double s = -1.0 / (2.0 * d0);
    const double z = integrate_period([s, q](double x) { return std::log(g_pair(s, x, q).g); }, q) /
                     q;
    return (-0.5 - z) / std::log(static_cast<double>(q));
}

}  // namespace latq
