#ifndef DFINT_CORE_HPP
#define DFINT_CORE_HPP

#include "dfint/contour.hpp"

namespace dfint::core {

struct ExponentQuad {
    double a = 0.0, b = 0.0, c = 0.0, d = 0.0;
};

/// Evaluation point (w1, w2) with membership tests for the single-valuedness
/// domains.  D0 cuts along [0,inf) for both variables and along the ray
/// {r*w2 : r >= 1} for w1; D1 cuts w1 along [0,inf) and w2 along (-inf,1]
/// and {r*w1 : r >= 1}.
struct EvalPoint {
    Complex w1, w2;

    bool in_D0(double margin = 1e-9) const;
    bool in_D1(double margin = 1e-9) const;
};

enum class Method { Closed, Quadrature };

/// H(a,d): the N = 2 double-loop integral about {0,1} of v^a (1-v)^d.
Complex eval_H(double a, double d, Method method = Method::Closed,
               const contour::QuadratureConfig& cfg = {});
Complex eval_H_closed(double a, double d);
Complex eval_H_quadrature(double a, double d, const contour::QuadratureConfig& cfg = {});

/// G(a,c,d;w): the N = 3 integral of v^a (v-w)^c (1-v)^d with w exterior.
Complex eval_G(double a, double c, double d, Complex w, Method method = Method::Closed,
               const contour::QuadratureConfig& cfg = {});
Complex eval_G_closed(double a, double c, double d, Complex w);
Complex eval_G_quadrature(double a, double c, double d, Complex w,
                          const contour::QuadratureConfig& cfg = {});
/// Variant with the factor written (w-v)^c; defined for w off (-inf,1].
Complex eval_G_tilde_quadrature(double a, double c, double d, Complex w,
                                const contour::QuadratureConfig& cfg = {});

/// F(a,b,c,d; w1,w2): the N = 4 integral with both w's exterior, (w1,w2) in D0.
Complex eval_F(const ExponentQuad& q, const EvalPoint& p,
               const contour::QuadratureConfig& cfg = {});

/// General-N double-loop integral about factors[loop_p], factors[loop_q]
/// from the given basepoint; all other factor points exterior.
Complex eval_generic(const std::vector<contour::FactorSpec>& factors, int loop_p,
                     int loop_q, Complex basepoint,
                     const contour::QuadratureConfig& cfg = {});

/// Shared driver: builds a feasible double-loop contour (trying the given
/// basepoints against a ladder of loop margins) and integrates.
/// `anchor_factor`, when set, multiplies the result by a basepoint-dependent
/// constant (used to renormalize integrands whose factors carry non-unit
/// linear coefficients).
Complex pochhammer_integral(const std::vector<contour::FactorSpec>& factors, int loop_p,
                            int loop_q, const std::vector<int>& interior_p,
                            const std::vector<int>& interior_q,
                            const std::vector<Complex>& basepoints,
                            const contour::QuadratureConfig& cfg,
                            const contour::ExtraFn& extra = {},
                            const std::function<Complex(Complex)>& anchor_factor = {});

/// Default basepoint ladder inside (0,1) for contours about {0,1}.
std::vector<Complex> standard_basepoints();

} // namespace dfint::core

#endif
