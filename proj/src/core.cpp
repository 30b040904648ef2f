#include "dfint/core.hpp"

#include <cmath>

namespace dfint::core {

using contour::FactorSpec;
using contour::Path;
using contour::PochhammerSpec;
using contour::QuadratureConfig;
using special::gamma;
using special::hyp2f1;
using special::near_integer;
using special::principal_pow;
using special::rho;

namespace {

double dist_to_positive_axis(Complex w) {
    if (w.real() >= 0.0) return std::abs(w.imag());
    return std::abs(w);
}

double dist_to_left_ray_from_one(Complex w) {
    // distance to (-inf, 1]
    if (w.real() <= 1.0) return std::abs(w.imag());
    return std::abs(w - Complex(1.0, 0.0));
}

double dist_to_outward_ray(Complex w, Complex anchor) {
    // distance from w to {r*anchor : r >= 1}
    double m2 = std::norm(anchor);
    if (m2 == 0.0) return std::abs(w);
    double t = (w.real() * anchor.real() + w.imag() * anchor.imag()) / m2;
    t = std::max(t, 1.0);
    return std::abs(w - t * anchor);
}

Complex exp2pii(double x) { return std::exp(Complex(0.0, 2.0 * kPi * x)); }

void require_noninteger_ad(double a, double d) {
    if (near_integer(a) || near_integer(d))
        throw IntegerExponentError("exponents a and d must be noninteger");
}

} // namespace

bool EvalPoint::in_D0(double margin) const {
    return dist_to_positive_axis(w2) > margin && dist_to_positive_axis(w1) > margin &&
           dist_to_outward_ray(w1, w2) > margin;
}

bool EvalPoint::in_D1(double margin) const {
    return dist_to_positive_axis(w1) > margin && dist_to_left_ray_from_one(w2) > margin &&
           dist_to_outward_ray(w2, w1) > margin;
}

std::vector<Complex> standard_basepoints() {
    return {Complex(0.5), Complex(0.35), Complex(0.65), Complex(0.22), Complex(0.78),
            Complex(0.12), Complex(0.88), Complex(0.06), Complex(0.94)};
}

Complex pochhammer_integral(const std::vector<FactorSpec>& factors, int loop_p, int loop_q,
                            const std::vector<int>& interior_p,
                            const std::vector<int>& interior_q,
                            const std::vector<Complex>& basepoints,
                            const QuadratureConfig& cfg, const contour::ExtraFn& extra,
                            const std::function<Complex(Complex)>& anchor_factor) {
    static const double margins[] = {0.35, 0.2, 0.1, 0.05, 0.02};
    std::string last_error = "no basepoint candidates";
    for (Complex A : basepoints) {
        for (double m : margins) {
            PochhammerSpec spec;
            spec.factors = factors;
            spec.loop_p = loop_p;
            spec.loop_q = loop_q;
            spec.basepoint = A;
            spec.interior_with_p = interior_p;
            spec.interior_with_q = interior_q;
            spec.loop_margin = m;
            Path path;
            try {
                path = contour::build_pochhammer_contour(spec);
            } catch (const GeometryError& e) {
                last_error = e.what();
                continue;
            }
            Complex value = contour::integrate_branched(factors, path, extra, cfg);
            if (anchor_factor) value *= anchor_factor(A);
            return value;
        }
    }
    throw GeometryError("no feasible double-loop contour: " + last_error);
}

// --- H ---------------------------------------------------------------------

Complex eval_H_closed(double a, double d) {
    require_noninteger_ad(a, d);
    Complex bracket = -1.0 + exp2pii(a) - exp2pii(a + d) + exp2pii(d);
    return bracket * gamma(Complex(a + 1.0)) * gamma(Complex(d + 1.0)) /
           gamma(Complex(a + d + 2.0));
}

Complex eval_H_quadrature(double a, double d, const QuadratureConfig& cfg) {
    require_noninteger_ad(a, d);
    std::vector<FactorSpec> factors = {{Complex(0.0), a, false}, {Complex(1.0), d, true}};
    return pochhammer_integral(factors, 0, 1, {}, {}, standard_basepoints(), cfg);
}

Complex eval_H(double a, double d, Method method, const QuadratureConfig& cfg) {
    return method == Method::Closed ? eval_H_closed(a, d) : eval_H_quadrature(a, d, cfg);
}

// --- G ---------------------------------------------------------------------

Complex eval_G_closed(double a, double c, double d, Complex w) {
    require_noninteger_ad(a, d);
    if (dist_to_positive_axis(w) <= 1e-9)
        throw DomainError("eval_G: w on the cut [0, inf)");
    Complex num = rho(c, w) * 4.0 * kPi * kPi * principal_pow(w, c) *
                  hyp2f1(-c, a + 1.0, a + d + 2.0, 1.0 / w);
    Complex den = std::exp(Complex(0.0, -kPi * (a + d + 2.0))) *
                  gamma(Complex(a + d + 2.0)) * gamma(Complex(-a)) * gamma(Complex(-d));
    return num / den;
}

Complex eval_G_quadrature(double a, double c, double d, Complex w,
                          const QuadratureConfig& cfg) {
    require_noninteger_ad(a, d);
    if (dist_to_positive_axis(w) <= 1e-9)
        throw DomainError("eval_G: w on the cut [0, inf)");
    std::vector<FactorSpec> factors = {
        {Complex(0.0), a, false}, {w, c, false}, {Complex(1.0), d, true}};
    return pochhammer_integral(factors, 0, 2, {}, {}, standard_basepoints(), cfg);
}

Complex eval_G_tilde_quadrature(double a, double c, double d, Complex w,
                                const QuadratureConfig& cfg) {
    require_noninteger_ad(a, d);
    if (dist_to_left_ray_from_one(w) <= 1e-9)
        throw DomainError("eval_G_tilde: w on the cut (-inf, 1]");
    std::vector<FactorSpec> factors = {
        {Complex(0.0), a, false}, {w, c, true}, {Complex(1.0), d, true}};
    return pochhammer_integral(factors, 0, 2, {}, {}, standard_basepoints(), cfg);
}

Complex eval_G(double a, double c, double d, Complex w, Method method,
               const QuadratureConfig& cfg) {
    return method == Method::Closed ? eval_G_closed(a, c, d, w)
                                    : eval_G_quadrature(a, c, d, w, cfg);
}

// --- F ---------------------------------------------------------------------

Complex eval_F(const ExponentQuad& q, const EvalPoint& p, const QuadratureConfig& cfg) {
    require_noninteger_ad(q.a, q.d);
    if (!p.in_D0())
        throw DomainError("eval_F: (w1, w2) outside D0");
    std::vector<FactorSpec> factors = {{Complex(0.0), q.a, false},
                                       {p.w1, q.b, false},
                                       {p.w2, q.c, false},
                                       {Complex(1.0), q.d, true}};
    return pochhammer_integral(factors, 0, 3, {}, {}, standard_basepoints(), cfg);
}

Complex eval_generic(const std::vector<FactorSpec>& factors, int loop_p, int loop_q,
                     Complex basepoint, const QuadratureConfig& cfg) {
    return pochhammer_integral(factors, loop_p, loop_q, {}, {}, {basepoint}, cfg);
}

} // namespace dfint::core
