#ifndef DFINT_SPECIAL_HPP
#define DFINT_SPECIAL_HPP

#include <complex>

#include "dfint/errors.hpp"

namespace dfint {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// Guard band around forbidden integer parameter configurations.
/// Operations reject inputs inside the band rather than perturbing them.
inline constexpr double kIntegerGuard = 1e-6;

namespace special {

/// True if x lies within `guard` of an integer.
bool near_integer(double x, double guard = kIntegerGuard);

/// Argument in (-pi, pi].  std::arg returns -pi for negative reals reached
/// from below zero; this maps that edge to +pi so the convention is exact.
double principal_arg(Complex w);

/// w^a on the principal branch: |w|^a * exp(i a arg w), arg w in (-pi, pi].
/// Throws ZeroBaseError for w = 0 with a <= 0; returns 0 for w = 0, a > 0.
Complex principal_pow(Complex w, double a);

/// w^g on the branch continued from (0,inf) through the lower half-plane
/// around the negative axis: arg in (-2pi, 0].  Coincides with the principal
/// branch for Im w <= 0.
Complex pow_lower_branch(Complex w, double g);

/// Half-plane phase factor: e^{-i pi c} for Im w >= 0, e^{+i pi c} otherwise.
Complex rho(double c, Complex w);

/// Complex Gamma via the Lanczos approximation (g = 7, 9 coefficients),
/// reflection formula for Re z < 0.5.  Throws PoleError within the integer
/// guard band of a nonpositive-integer pole.
Complex gamma(Complex z);
double gamma_real(double x);

/// 1/Gamma(x); exactly the analytic reciprocal, zero at the poles.
double recip_gamma(double x);

/// Gamma(x+n)/Gamma(x) as a finite product; valid also where the individual
/// Gammas are polar.
double gamma_ratio(double x, int n);

/// c(c-1)...(c-k+1) = Gamma(c+1)/Gamma(c+1-k).
double falling_factorial(double c, int k);

/// (a)_k = a(a+1)...(a+k-1); 1 for k = 0.
double pochhammer_symbol(double a, int k);

struct Hyp2F1Params {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    Complex z;
};

/// Gauss 2F1 on the principal branch (cut along [1, inf)).
///
/// Region policy: direct series for |z| <= 0.75; the z -> 1-z connection
/// formula for |1-z| <= 0.5 (needs c-a-b noninteger); the Pfaff transform
/// z -> z/(z-1) for Re z < 1/2; the z -> 1/z connection (needs b-a
/// noninteger) otherwise.  On the critical line Re z = 1/2 the Pfaff series
/// has |z'| = 1 and is accepted only when it converges absolutely.
Complex hyp2f1(const Hyp2F1Params& p);
Complex hyp2f1(double a, double b, double c, Complex z);

/// Direct series evaluation (no transformations); converges for |z| < 1,
/// and on |z| = 1 when Re(c-a-b) > 0.  Exposed for cross-backend checks.
Complex hyp2f1_series(double a, double b, double c, Complex z);

} // namespace special
} // namespace dfint

#endif
