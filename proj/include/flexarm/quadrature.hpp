#pragma once

#include "flexarm/errors.hpp"

#include <cmath>
#include <functional>

namespace flexarm {

// Adaptive Gauss-Kronrod (G7/K15) integration over a finite interval.
// The interval is bisected recursively until the local K15-G7 error
// estimate passes the tolerance test.
namespace detail {

// abscissa, Gauss weight (0 for Kronrod-only nodes), Kronrod weight
inline constexpr double kGK15[8][3] = {
    {0.000000000000000, 0.417959183673469, 0.209482141084728},
    {0.405845151377397, 0.381830050505119, 0.190350578064785},
    {0.741531185599394, 0.279705391489277, 0.140653259715525},
    {0.949107912342759, 0.129484966168870, 0.063092092629979},
    {0.207784955007898, 0.0, 0.204432940075298},
    {0.586087235467691, 0.0, 0.169004726639267},
    {0.864864423359769, 0.0, 0.104790010322250},
    {0.991455371120813, 0.0, 0.022935322010529},
};

template <class F>
double gk15(const F& f, double a, double b, double& err) {
    const double mid = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double f0 = f(mid);
    double g7 = kGK15[0][1] * f0;
    double k15 = kGK15[0][2] * f0;
    for (int i = 1; i < 8; ++i) {
        const double dx = h * kGK15[i][0];
        const double fi = f(mid + dx) + f(mid - dx);
        g7 += kGK15[i][1] * fi;
        k15 += kGK15[i][2] * fi;
    }
    g7 *= h;
    k15 *= h;
    err = std::abs(k15 - g7);
    return k15;
}

template <class F>
double integrate_rec(const F& f, double a, double b, double tol, int depth) {
    double err = 0.0;
    const double s = gk15(f, a, b, err);
    if (err <= tol || err <= 1e-300) return s;
    if (depth > 48)
        throw NumericalError("quadrature did not converge on ["
                             + std::to_string(a) + ", " + std::to_string(b) + "]");
    const double mid = 0.5 * (a + b);
    return integrate_rec(f, a, mid, 0.5 * tol, depth + 1)
         + integrate_rec(f, mid, b, 0.5 * tol, depth + 1);
}

} // namespace detail

// Integrate f over [a, b] to relative tolerance rel_tol (with a small
// absolute floor so integrals that vanish do not spin forever).
template <class F>
double integrate(const F& f, double a, double b, double rel_tol = 1e-10) {
    double err = 0.0;
    const double coarse = detail::gk15(f, a, b, err);
    const double tol = std::max(rel_tol * std::abs(coarse), 1e-14);
    return detail::integrate_rec(f, a, b, tol, 0);
}

} // namespace flexarm
