#ifndef DFINT_QUAD_HPP
#define DFINT_QUAD_HPP

#include <algorithm>
#include <cmath>
#include <complex>

namespace dfint::quad {

using Complex = std::complex<double>;

struct GKResult {
    Complex value{0.0, 0.0};
    double err = 0.0;
    double l1 = 0.0;
};

// 15-point Kronrod nodes with embedded 7-point Gauss rule.
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class F>
GKResult gk15_apply(F& f, double a, double b) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    Complex fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(mid - half * kXgk[i]);
        fv[14 - i] = f(mid + half * kXgk[i]);
    }
    fv[7] = f(mid);
    Complex res_k = kWgk[7] * fv[7];
    Complex res_g = kWg[3] * fv[7];
    double l1 = kWgk[7] * std::abs(fv[7]);
    for (int i = 0; i < 7; ++i) {
        Complex pair = fv[i] + fv[14 - i];
        res_k += kWgk[i] * pair;
        l1 += kWgk[i] * (std::abs(fv[i]) + std::abs(fv[14 - i]));
        if (i % 2 == 1) res_g += kWg[i / 2] * pair;
    }
    GKResult r;
    r.value = res_k * half;
    r.l1 = l1 * std::abs(half);
    r.err = std::abs(res_k - res_g) * std::abs(half);
    return r;
}

namespace detail {
template <class F>
void gk15_rec(F& f, double a, double b, double budget, int depth, GKResult& acc) {
    GKResult r = gk15_apply(f, a, b);
    double floor_err = 16.0 * 2.2e-16 * r.l1;
    if (r.err <= std::max(budget, floor_err) || depth <= 0) {
        acc.value += r.value;
        acc.err += std::max(r.err, floor_err);
        acc.l1 += r.l1;
        return;
    }
    double m = 0.5 * (a + b);
    gk15_rec(f, a, m, 0.5 * budget, depth - 1, acc);
    gk15_rec(f, m, b, 0.5 * budget, depth - 1, acc);
}
} // namespace detail

/// Adaptive bisection toward err <= rel_tol * L1 (with a roundoff floor).
template <class F>
GKResult gk15_adaptive(F&& f, double a, double b, double rel_tol, int max_depth) {
    GKResult probe = gk15_apply(f, a, b);
    double budget = std::max(rel_tol * probe.l1, 1e-300);
    double floor_err = 16.0 * 2.2e-16 * probe.l1;
    if (probe.err <= std::max(budget, floor_err) || max_depth <= 0) {
        probe.err = std::max(probe.err, floor_err);
        return probe;
    }
    GKResult acc;
    double m = 0.5 * (a + b);
    detail::gk15_rec(f, a, m, 0.5 * budget, max_depth - 1, acc);
    detail::gk15_rec(f, m, b, 0.5 * budget, max_depth - 1, acc);
    return acc;
}

} // namespace dfint::quad

#endif
