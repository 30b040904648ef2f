#include "dfint/special.hpp"

#include <cmath>
#include <cstdlib>

namespace dfint::special {

namespace {

// Lanczos g = 7, 9 coefficients.
constexpr double kLanczosG = 7.0;
constexpr double kLanczosCoeff[9] = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

Complex lanczos_positive(Complex z) {
    // valid for Re z >= 0.5
    z -= 1.0;
    Complex x = kLanczosCoeff[0];
    for (int i = 1; i < 9; ++i)
        x += kLanczosCoeff[i] / (z + static_cast<double>(i));
    Complex t = z + (kLanczosG + 0.5);
    return std::sqrt(2.0 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

void check_gamma_pole(Complex z) {
    if (std::abs(z.imag()) > kIntegerGuard) return;
    double n = std::round(z.real());
    if (n <= 0.0 && std::abs(z - Complex(n, 0.0)) < kIntegerGuard)
        throw PoleError("gamma: argument within guard band of pole at " +
                        std::to_string(static_cast<long>(n)));
}

} // namespace

bool near_integer(double x, double guard) {
    return std::abs(x - std::round(x)) < guard;
}

double principal_arg(Complex w) {
    double a = std::arg(w);
    if (a <= -kPi) a = kPi; // negative reals take arg = +pi
    return a;
}

Complex principal_pow(Complex w, double a) {
    if (w == Complex(0.0, 0.0)) {
        if (a > 0.0) return {0.0, 0.0};
        throw ZeroBaseError("principal_pow: 0 base with exponent <= 0");
    }
    if (a == 0.0) return {1.0, 0.0};
    double lm = std::log(std::abs(w));
    double th = principal_arg(w);
    return std::exp(Complex(a * lm, a * th));
}

Complex pow_lower_branch(Complex w, double g) {
    if (w == Complex(0.0, 0.0))
        throw ZeroBaseError("pow_lower_branch: zero base");
    double th = principal_arg(w);
    if (th > 0.0) th -= 2.0 * kPi;
    return std::exp(Complex(g * std::log(std::abs(w)), g * th));
}

Complex rho(double c, Complex w) {
    double s = (w.imag() >= 0.0) ? -1.0 : 1.0;
    return std::exp(Complex(0.0, s * kPi * c));
}

Complex gamma(Complex z) {
    check_gamma_pole(z);
    if (z.real() < 0.5) {
        // reflection: Gamma(z) = pi / (sin(pi z) Gamma(1 - z))
        return kPi / (std::sin(kPi * z) * lanczos_positive(1.0 - z));
    }
    return lanczos_positive(z);
}

double gamma_real(double x) {
    return gamma(Complex(x, 0.0)).real();
}

double recip_gamma(double x) {
    if (x < 0.5) {
        // 1/Gamma(x) = sin(pi x) Gamma(1 - x) / pi
        return std::sin(kPi * x) * gamma(Complex(1.0 - x, 0.0)).real() / kPi;
    }
    return 1.0 / gamma(Complex(x, 0.0)).real();
}

double gamma_ratio(double x, int n) {
    double r = 1.0;
    if (n >= 0) {
        for (int j = 0; j < n; ++j) r *= x + j;
    } else {
        for (int j = 1; j <= -n; ++j) r /= (x - j);
    }
    return r;
}

double falling_factorial(double c, int k) {
    double r = 1.0;
    for (int j = 0; j < k; ++j) r *= c - j;
    return r;
}

double pochhammer_symbol(double a, int k) {
    return gamma_ratio(a, k);
}

namespace {

constexpr int kSeriesCap = 10000;
constexpr double kSeriesEps = 1e-17;

// Direct Gauss series; nullptr-safe convergence reporting.
Complex series_impl(double a, double b, double c, Complex z, bool* converged) {
    Complex term = 1.0, sum = 1.0;
    int small_streak = 0;
    for (int k = 0; k < kSeriesCap; ++k) {
        term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z;
        sum += term;
        if (std::abs(term) < kSeriesEps * std::abs(sum)) {
            if (++small_streak >= 3) {
                if (converged) *converged = true;
                return sum;
            }
        } else {
            small_streak = 0;
        }
    }
    if (converged) {
        *converged = false;
        return sum;
    }
    throw ToleranceError("hyp2f1: series did not converge within term cap");
}

void check_c_param(double c) {
    if (c < 0.5 && near_integer(c, kIntegerGuard) && std::round(c) <= 0.0)
        throw DegenerateParamError("hyp2f1: c within guard band of nonpositive integer");
}

Complex dispatch(double a, double b, double c, Complex z, int depth);

// 2F1(a,b,c;z) in terms of 1-z; needs c-a-b noninteger.
Complex connection_at_one(double a, double b, double c, Complex z, int depth) {
    if (near_integer(c - a - b, kIntegerGuard))
        throw DegenerateParamError("hyp2f1: c-a-b within guard band of an integer; "
                                   "connection formula at z = 1 degenerates");
    using std::sin;
    Complex omz = 1.0 - z;
    double g_c = gamma_real(c);
    Complex t1 = g_c * gamma_real(c - a - b) * recip_gamma(c - a) * recip_gamma(c - b) *
                 dispatch(a, b, 1.0 + a + b - c, omz, depth + 1);
    Complex t2 = g_c * gamma_real(a + b - c) * recip_gamma(a) * recip_gamma(b) *
                 principal_pow(omz, c - a - b) *
                 dispatch(c - a, c - b, 1.0 + c - a - b, omz, depth + 1);
    return t1 + t2;
}

// 2F1(a,b,c;z) in terms of 1/z; needs b-a noninteger, z off [0, inf).
Complex connection_at_infinity(double a, double b, double c, Complex z, int depth) {
    if (near_integer(b - a, kIntegerGuard))
        throw DegenerateParamError("hyp2f1: b-a within guard band of an integer; "
                                   "connection formula at z = inf degenerates");
    double g_c = gamma_real(c);
    Complex zi = 1.0 / z;
    Complex t1 = g_c * gamma_real(b - a) * recip_gamma(b) * recip_gamma(c - a) *
                 principal_pow(-z, -a) *
                 dispatch(a, a - c + 1.0, a - b + 1.0, zi, depth + 1);
    Complex t2 = g_c * gamma_real(a - b) * recip_gamma(a) * recip_gamma(c - b) *
                 principal_pow(-z, -b) *
                 dispatch(b, b - c + 1.0, b - a + 1.0, zi, depth + 1);
    return t1 + t2;
}

Complex dispatch(double a, double b, double c, Complex z, int depth) {
    check_c_param(c);
    if (depth > 4)
        throw ToleranceError("hyp2f1: transformation recursion did not settle");
    if (z.imag() == 0.0 && z.real() >= 1.0)
        throw BranchCutError("hyp2f1: z on the branch cut [1, inf)");

    if (std::abs(z) <= 0.75) return series_impl(a, b, c, z, nullptr);
    if (std::abs(1.0 - z) <= 0.5) return connection_at_one(a, b, c, z, depth);

    // Pfaff pulls out the parameter with the smaller real part, which
    // maximizes Re(c'-a'-b') = Re(b-a) for the transformed series.
    if (a > b) std::swap(a, b);
    Complex zp = z / (z - 1.0);
    double rp = std::abs(zp);
    if (z.real() < 0.5 - 1e-12 && rp <= 0.97) {
        return principal_pow(1.0 - z, -a) *
               series_impl(a, c - b, c, zp, nullptr);
    }
    if (std::abs(z) >= 1.25) return connection_at_infinity(a, b, c, z, depth);

    // Awkward annulus: pick whichever transformed series converges.
    if (rp <= 1.0 + 1e-12) {
        bool poly_ok = (rp < 1.0 - 1e-9) || (b - a > 0.3);
        if (poly_ok) {
            bool conv = false;
            Complex s = series_impl(a, c - b, c, zp, &conv);
            if (conv) return principal_pow(1.0 - z, -a) * s;
        }
    }
    if (std::abs(z) > 1.0 + 1e-9) return connection_at_infinity(a, b, c, z, depth);
    {
        bool conv = false;
        Complex s = series_impl(a, b, c, z, &conv);
        if (conv) return s;
    }
    throw ToleranceError("hyp2f1: no transformation converges near |z| = |1-z| = 1");
}

} // namespace

Complex hyp2f1_series(double a, double b, double c, Complex z) {
    check_c_param(c);
    return series_impl(a, b, c, z, nullptr);
}

Complex hyp2f1(double a, double b, double c, Complex z) {
    return dispatch(a, b, c, z, 0);
}

Complex hyp2f1(const Hyp2F1Params& p) {
    return dispatch(p.a, p.b, p.c, p.z, 0);
}

} // namespace dfint::special
