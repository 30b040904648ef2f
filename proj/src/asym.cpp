#include "dfint/asym.hpp"

#include <cmath>

namespace dfint::asym {

using contour::FactorSpec;
using contour::QuadratureConfig;
using core::EvalPoint;
using core::ExponentQuad;
using special::falling_factorial;
using special::near_integer;
using special::pow_lower_branch;
using special::principal_pow;
using special::rho;

namespace {

Complex exp2pii(double x) { return std::exp(Complex(0.0, 2.0 * kPi * x)); }
Complex exppii(double x) { return std::exp(Complex(0.0, kPi * x)); }

void require_noninteger(double x, const char* what) {
    if (near_integer(x))
        throw IntegerConditionError(std::string(what) + " must be noninteger");
}

double dist_to_unit_segment(Complex z) {
    double x = std::clamp(z.real(), 0.0, 1.0);
    return std::abs(z - Complex(x, 0.0));
}

// Does the straight segment [p, q] meet (-inf, 0]?
bool segment_hits_negative_axis(Complex p, Complex q, double tol) {
    if (std::abs(p.imag()) <= tol && p.real() <= tol) return true;
    if (std::abs(q.imag()) <= tol && q.real() <= tol) return true;
    if ((p.imag() > 0.0) == (q.imag() > 0.0)) return false;
    double t = p.imag() / (p.imag() - q.imag());
    double xc = p.real() + t * (q.real() - p.real());
    return xc <= tol;
}

double factorial(int k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

// --- continuation-policy validity walks -------------------------------------

// P2's direct integral equals its continuation at (w1, w2) when a straight
// w2-homotopy from the primary configuration keeps the transformed points
// w2/(w2-1) and (w1-w2)/(1-w2) off [0,1] and the anchor values
// A + w2(1-A) and A + w2(1-A) - w1 (all A in (0,1)) off the negative axis.
bool p2_direct_reachable(Complex w1, Complex w2) {
    const Complex start(0.5, 0.04);
    const int steps = 256;
    const double m = 1e-6;
    for (int i = 0; i <= steps; ++i) {
        Complex wt = start + (static_cast<double>(i) / steps) * (w2 - start);
        Complex den = wt - 1.0;
        if (std::abs(den) < m) return false;
        Complex z1 = wt / den;
        Complex z2 = (w1 - wt) / (1.0 - wt);
        if (dist_to_unit_segment(z1) < m || dist_to_unit_segment(z2) < m) return false;
        // anchor sweep over A in (0,1): segments [wt, 1] and [wt - w1, 1 - w1]
        if (segment_hits_negative_axis(wt, Complex(1.0, 0.0), m)) return false;
        if (segment_hits_negative_axis(wt - w1, 1.0 - w1, m)) return false;
    }
    return true;
}

bool q2_direct_reachable(Complex w1, Complex w2) {
    const Complex start(0.5, -0.04);
    const int steps = 256;
    const double m = 1e-6;
    for (int i = 0; i <= steps; ++i) {
        Complex wt = start + (static_cast<double>(i) / steps) * (w1 - start);
        if (std::abs(wt) < m) return false;
        Complex z3 = w2 / wt;
        Complex z4 = 1.0 / wt;
        if (dist_to_unit_segment(z3) < m || dist_to_unit_segment(z4) < m) return false;
        if (segment_hits_negative_axis(-w2, wt - w2, m)) return false;
        if (segment_hits_negative_axis(Complex(1.0, 0.0), 1.0 - wt, m)) return false;
    }
    return true;
}

} // namespace

// --- auxiliary integrals -----------------------------------------------------

Complex eval_aux(AuxKind kind, const ExponentQuad& q, const EvalPoint& p,
                 const QuadratureConfig& cfg) {
    const double a = q.a, b = q.b, c = q.c, d = q.d;
    if (near_integer(a) || near_integer(d))
        throw IntegerExponentError("exponents a and d must be noninteger");
    const Complex w1 = p.w1, w2 = p.w2;

    switch (kind) {
    case AuxKind::P1: {
        require_noninteger(c + d, "c+d");
        Complex pref = (exp2pii(d) - 1.0) / (exp2pii(c + d) - 1.0);
        std::vector<FactorSpec> f = {{Complex(0.0), a, false},
                                     {w1, b, false},
                                     {w2, c, true},
                                     {Complex(1.0), d, true}};
        return pref * core::pochhammer_integral(f, 0, 3, {}, {2}, core::standard_basepoints(),
                                                cfg);
    }
    case AuxKind::Q1:
    case AuxKind::Q1Tilde: {
        require_noninteger(a + b, "a+b");
        Complex pref = (exp2pii(a) - 1.0) / (exp2pii(a + b) - 1.0);
        std::vector<FactorSpec> f = {{Complex(0.0), a, false},
                                     {w1, b, false},
                                     {w2, c, kind == AuxKind::Q1Tilde},
                                     {Complex(1.0), d, true}};
        return pref * core::pochhammer_integral(f, 0, 3, {1}, {}, core::standard_basepoints(),
                                                cfg);
    }
    case AuxKind::R1: {
        require_noninteger(a + b + c, "a+b+c");
        Complex pref = (exp2pii(a) - 1.0) / (exp2pii(a + b + c) - 1.0);
        std::vector<FactorSpec> f = {{Complex(0.0), a, false},
                                     {w1, b, false},
                                     {w2, c, false},
                                     {Complex(1.0), d, true}};
        return pref * core::pochhammer_integral(f, 0, 3, {1, 2}, {},
                                                core::standard_basepoints(), cfg);
    }
    case AuxKind::T1: {
        require_noninteger(a + b, "a+b");
        require_noninteger(c + d, "c+d");
        if (!(0.0 < w1.real() && w1.real() < w2.real() && w2.real() < 1.0 &&
              w1.imag() < 0.0 && w2.imag() > 0.0))
            throw DomainError("T1: point outside the primary configuration");
        Complex pref = (exp2pii(a) - 1.0) * (exp2pii(d) - 1.0) /
                       ((exp2pii(a + b) - 1.0) * (exp2pii(c + d) - 1.0));
        std::vector<FactorSpec> f = {{Complex(0.0), a, false},
                                     {w1, b, false},
                                     {w2, c, true},
                                     {Complex(1.0), d, true}};
        std::vector<Complex> bps;
        for (Complex A : core::standard_basepoints())
            if (A.real() > w1.real() && A.real() < w2.real()) bps.push_back(A);
        if (bps.empty()) throw GeometryError("T1: no basepoint between Re w1 and Re w2");
        return pref * core::pochhammer_integral(f, 0, 3, {1}, {2}, bps, cfg);
    }
    case AuxKind::P2: {
        require_noninteger(c + d, "c+d");
        if (!p2_direct_reachable(w1, w2))
            throw DomainError("P2: point not reachable by the continuation policy");
        Complex z1 = w2 / (w2 - 1.0);
        Complex z2 = (w1 - w2) / (1.0 - w2);
        Complex pref = (exp2pii(a) - 1.0) * exppii(d) / (1.0 - exp2pii(c + d));
        std::vector<FactorSpec> f = {
            {z1, a, false}, {z2, b, false}, {Complex(0.0), c, false}, {Complex(1.0), d, true}};
        auto anchor = [&](Complex A) {
            Complex v1 = w2 + A * (1.0 - w2);
            Complex v2 = w2 - w1 + A * (1.0 - w2);
            return principal_pow(v1, a) * principal_pow(v2, b) /
                   (principal_pow(A - z1, a) * principal_pow(A - z2, b));
        };
        return pref * core::pochhammer_integral(f, 2, 3, {}, {}, core::standard_basepoints(),
                                                cfg, {}, anchor);
    }
    case AuxKind::Q2: {
        require_noninteger(a + b, "a+b");
        if (!q2_direct_reachable(w1, w2))
            throw DomainError("Q2: point not reachable by the continuation policy");
        Complex z3 = w2 / w1;
        Complex z4 = 1.0 / w1;
        Complex pref = (exp2pii(d) - 1.0) * exppii(-b) / (1.0 - exp2pii(-(a + b)));
        std::vector<FactorSpec> f = {
            {Complex(0.0), a, false}, {Complex(1.0), b, true}, {z3, c, false}, {z4, d, false}};
        auto anchor = [&](Complex A) {
            return principal_pow(A * w1 - w2, c) * principal_pow(1.0 - A * w1, d) /
                   (principal_pow(A - z3, c) * principal_pow(A - z4, d));
        };
        return pref * core::pochhammer_integral(f, 0, 1, {}, {}, core::standard_basepoints(),
                                                cfg, {}, anchor);
    }
    case AuxKind::R2: {
        require_noninteger(a + b, "a+b");
        require_noninteger(a + b + c, "a+b+c");
        if (!(0.0 < w1.real() && w1.real() < w2.real() && w2.real() < 1.0 &&
              w1.imag() < 0.0 && w2.imag() < 0.0))
            throw DomainError("R2: point outside the primary configuration");
        Complex z5 = w1 / w2;
        Complex z6 = 1.0 / w2;
        Complex pref = exp2pii(a + b) * (exp2pii(a) - 1.0) * (exp2pii(d) - 1.0) * exppii(c) /
                       ((exp2pii(a + b) - 1.0) * (exp2pii(a + b + c) - 1.0));
        std::vector<FactorSpec> f = {
            {Complex(0.0), a, false}, {z5, b, false}, {Complex(1.0), c, true}, {z6, d, false}};
        std::vector<Complex> bps;
        for (Complex A : core::standard_basepoints())
            if ((A * w2 - w1).real() > 0.0) bps.push_back(A);
        if (bps.empty()) throw GeometryError("R2: no basepoint with Re(A w2 - w1) > 0");
        auto anchor = [&](Complex A) {
            return principal_pow(A * w2 - w1, b) * principal_pow(1.0 - A * w2, d) /
                   (principal_pow(A - z5, b) * principal_pow(A - z6, d));
        };
        return pref * core::pochhammer_integral(f, 0, 2, {1}, {}, bps, cfg, {}, anchor);
    }
    }
    throw UsageError("eval_aux: unknown kind");
}

Complex p2_on_E(const ExponentQuad& q, double theta1, double theta2,
                const QuadratureConfig& cfg) {
    if (!(0.0 < theta1 && theta1 < theta2 && theta2 < kPi))
        throw DomainError("p2_on_E: angles outside the open triangle");
    require_noninteger(q.c + q.d, "c+d");
    Complex w1 = 1.0 - std::exp(Complex(0.0, -2.0 * theta2));
    Complex w2 = (std::sin(theta2) / std::sin(theta1)) *
                 std::exp(Complex(0.0, -(theta2 - theta1)));
    Complex den = w2 - 1.0;
    Complex z1 = 1.0 + 1.0 / den;
    Complex z2 = 1.0 - (w1 - 1.0) / den;
    Complex pref = (exp2pii(q.a) - 1.0) * exppii(q.d) / (1.0 - exp2pii(q.c + q.d));
    Complex phase = exppii(q.a - q.b) * principal_pow(den, q.a + q.b);
    if (w1.imag() <= 0.0) phase *= exp2pii(q.b);
    std::vector<FactorSpec> f = {
        {z1, q.a, false}, {z2, q.b, false}, {Complex(0.0), q.c, false}, {Complex(1.0), q.d, true}};
    return pref * phase *
           core::pochhammer_integral(f, 2, 3, {}, {}, core::standard_basepoints(), cfg);
}

// --- identity verifiers ------------------------------------------------------

double verify_identity(IdentityKind kind, const ExponentQuad& q, const EvalPoint& p,
                       const QuadratureConfig& cfg) {
    const double a = q.a, b = q.b, c = q.c, d = q.d;
    Complex lhs = core::eval_F(q, p, cfg);
    Complex rhs;
    switch (kind) {
    case IdentityKind::FP:
        rhs = rho(c, p.w2) * (eval_aux(AuxKind::P1, q, p, cfg) +
                              principal_pow(p.w2 - 1.0, c + d + 1.0) *
                                  eval_aux(AuxKind::P2, q, p, cfg));
        break;
    case IdentityKind::FQ:
        rhs = eval_aux(AuxKind::Q1, q, p, cfg) +
              pow_lower_branch(p.w1, a + b + 1.0) * eval_aux(AuxKind::Q2, q, p, cfg);
        break;
    case IdentityKind::FRQ:
        rhs = eval_aux(AuxKind::R1, q, p, cfg) +
              pow_lower_branch(p.w2, a + c + 1.0) * eval_aux(AuxKind::R2, q, p, cfg) +
              pow_lower_branch(p.w1, a + b + 1.0) * eval_aux(AuxKind::Q2, q, p, cfg);
        break;
    case IdentityKind::FSQ:
        rhs = rho(c, p.w2) * (eval_aux(AuxKind::T1, q, p, cfg) +
                              principal_pow(p.w2 - 1.0, c + d + 1.0) *
                                  eval_aux(AuxKind::P2, q, p, cfg)) +
              pow_lower_branch(p.w1, a + b + 1.0) * eval_aux(AuxKind::Q2, q, p, cfg);
        break;
    }
    return std::abs(lhs - rhs) / (std::abs(lhs) + std::abs(rhs) + 1e-300);
}

// --- expansion coefficients --------------------------------------------------

ExpansionTermSet expansion_coeffs(int theorem, const ExponentQuad& q, int K,
                                  std::optional<Complex> frozen) {
    const double a = q.a, b = q.b, c = q.c, d = q.d;
    ExpansionTermSet set;
    set.theorem = theorem;
    set.order = K;
    set.frozen = frozen;

    switch (theorem) {
    case 1: {
        require_noninteger(c + d, "c+d");
        if (!frozen) throw UsageError("theorem 1 coefficients need the frozen w1");
        Complex w1 = *frozen;
        Complex pref1 = (exp2pii(d) - 1.0) / (exp2pii(c + d) - 1.0);
        Complex pref2 = (exp2pii(a) - 1.0) * exppii(d) / (1.0 - exp2pii(c + d));
        for (int k = 0; k <= K; ++k) {
            Complex a1 = pref1 * falling_factorial(c, k) / factorial(k) *
                         core::eval_G_closed(a, b, c + d - k, w1);
            set.terms.push_back({a1, static_cast<double>(k), 0.0, 1u});
            Complex inner = 0.0;
            for (int l = 0; l <= k; ++l)
                inner += falling_factorial(a, k - l) * falling_factorial(b, l) *
                         principal_pow(1.0 - w1, b - l) /
                         (factorial(k - l) * factorial(l));
            Complex a2 = pref2 * inner * core::eval_H_closed(c, d + k);
            set.terms.push_back({a2, c + d + 1.0 + k, 0.0, 1u});
        }
        break;
    }
    case 2: {
        require_noninteger(a + b, "a+b");
        if (!frozen) throw UsageError("theorem 2 coefficients need the frozen w2");
        Complex w2 = *frozen;
        Complex pref1 = (exp2pii(a) - 1.0) / (exp2pii(a + b) - 1.0);
        Complex pref2 = (exp2pii(d) - 1.0) * exppii(a) / (exp2pii(a + b) - 1.0);
        for (int k = 0; k <= K; ++k) {
            Complex b1 = pref1 * falling_factorial(b, k) *
                         ((k % 2 == 0) ? 1.0 : -1.0) / factorial(k) *
                         core::eval_G_closed(a + b - k, c, d, w2);
            set.terms.push_back({b1, static_cast<double>(k), 0.0, 0u});
            Complex inner = 0.0;
            for (int l = 0; l <= k; ++l)
                inner += falling_factorial(c, k - l) * falling_factorial(d, l) *
                         ((l % 2 == 0) ? 1.0 : -1.0) *
                         principal_pow(-w2, c - k + l) /
                         (factorial(k - l) * factorial(l));
            Complex b2 = pref2 * inner * core::eval_H_closed(a + k, b);
            set.terms.push_back({b2, a + b + 1.0 + k, 0.0, 2u});
        }
        break;
    }
    case 3: {
        require_noninteger(a + b, "a+b");
        require_noninteger(a + b + c, "a+b+c");
        Complex pref1 = (exp2pii(a) - 1.0) / (exp2pii(a + b + c) - 1.0);
        Complex pref2 = (exp2pii(a) - 1.0) * (exp2pii(d) - 1.0) * exppii(a + b) /
                        ((exp2pii(a + b) - 1.0) * (exp2pii(a + b + c) - 1.0));
        Complex pref3 = (exp2pii(d) - 1.0) * exppii(a) / (exp2pii(a + b) - 1.0);
        for (int k = 0; k + 0 <= K; ++k) {
            for (int l = 0; k + l <= K; ++l) {
                double sgn = ((k + l) % 2 == 0) ? 1.0 : -1.0;
                double fk = 1.0 / (factorial(k) * factorial(l));
                Complex c1 = pref1 * falling_factorial(b, k) * falling_factorial(c, l) * sgn *
                             fk * core::eval_H_closed(a + b + c - k - l, d);
                set.terms.push_back({c1, static_cast<double>(k), static_cast<double>(l), 0u});
                Complex c2 = pref2 * falling_factorial(b, k) * falling_factorial(d, l) * sgn *
                             fk * core::eval_H_closed(a + b - k + l, c);
                set.terms.push_back(
                    {c2, static_cast<double>(k), a + b + c + 1.0 + l - k, 4u});
                Complex c3 = pref3 * falling_factorial(c, k) * falling_factorial(d, l) * sgn *
                             fk * core::eval_H_closed(a + k + l, b);
                set.terms.push_back(
                    {c3, a + b + 1.0 + l + k, c - k, 3u});
            }
        }
        break;
    }
    case 4: {
        require_noninteger(a + b, "a+b");
        require_noninteger(c + d, "c+d");
        Complex pref1 = (exp2pii(a) - 1.0) * (exp2pii(d) - 1.0) /
                        ((exp2pii(a + b) - 1.0) * (exp2pii(c + d) - 1.0));
        Complex pref2 = (exp2pii(a) - 1.0) * exppii(d) / (1.0 - exp2pii(c + d));
        Complex pref3 = (exp2pii(d) - 1.0) * exppii(a) / (exp2pii(a + b) - 1.0);
        for (int k = 0; k <= K; ++k) {
            for (int l = 0; k + l <= K; ++l) {
                double sgk = (k % 2 == 0) ? 1.0 : -1.0;
                double fk = 1.0 / (factorial(k) * factorial(l));
                Complex d1 = pref1 * falling_factorial(b, k) * falling_factorial(c, l) * sgk *
                             fk * core::eval_H_closed(a + b - k, c + d - l);
                set.terms.push_back({d1, static_cast<double>(k), static_cast<double>(l), 1u});
                Complex d2 = pref2 * falling_factorial(b, k) *
                             falling_factorial(a + b - k, l) * sgk * fk *
                             core::eval_H_closed(c, d + l);
                set.terms.push_back({d2, static_cast<double>(k), c + d + 1.0 + l, 1u});
                // inner sum in place of the resummed Gamma-ratio form: the
                // w1-power k splits between the two expanded factors
                double inner3 = 0.0;
                for (int j = 0; j <= k; ++j)
                    inner3 += falling_factorial(c, j) * ((j % 2 == 0) ? 1.0 : -1.0) /
                              factorial(j) * falling_factorial(d, k - j) *
                              (((k - j) % 2 == 0) ? 1.0 : -1.0) / factorial(k - j) *
                              falling_factorial(c - j, l) / factorial(l);
                Complex d3 = pref3 * inner3 * core::eval_H_closed(a + k, b);
                set.terms.push_back({d3, a + b + 1.0 + k, static_cast<double>(l), 3u});
            }
        }
        break;
    }
    case 0: {
        require_noninteger(c + d, "c+d");
        Complex pref1 = (exp2pii(d) - 1.0) / (exp2pii(c + d) - 1.0);
        Complex pref2 = (exp2pii(a) - 1.0) * exppii(d) / (1.0 - exp2pii(c + d));
        for (int k = 0; k <= K; ++k) {
            Complex a1 = pref1 * falling_factorial(c, k) / factorial(k) *
                         core::eval_H_closed(a, c + d - k);
            set.terms.push_back({a1, static_cast<double>(k), 0.0, 1u});
            Complex a2 = pref2 * falling_factorial(a, k) / factorial(k) *
                         core::eval_H_closed(c, d + k);
            set.terms.push_back({a2, c + d + 1.0 + k, 0.0, 1u});
        }
        break;
    }
    default:
        throw UsageError("expansion_coeffs: theorem must be 1..4 or 0");
    }
    return set;
}

Complex evaluate_expansion(const ExpansionTermSet& set, const ExponentQuad& q,
                           const EvalPoint& p) {
    const Complex w1 = p.w1, w2 = p.w2;
    Complex s1, s2;
    switch (set.theorem) {
    case 1:
    case 0:
        s1 = w2 - 1.0;
        s2 = 1.0;
        break;
    case 2:
        s1 = w1;
        s2 = 1.0;
        break;
    case 3:
        s1 = w1;
        s2 = w2;
        break;
    case 4:
        s1 = w1;
        s2 = w2 - 1.0;
        break;
    default:
        throw UsageError("evaluate_expansion: bad theorem id");
    }
    Complex rc = rho(q.c, w2);
    Complex rab = rho(q.a + q.b, w1);
    Complex rabc = rho(q.a + q.b + q.c, w2);
    Complex sum = 0.0;
    for (const auto& t : set.terms) {
        Complex v = t.coeff * principal_pow(s1, t.e1);
        if (t.e2 != 0.0) v *= principal_pow(s2, t.e2);
        if (t.rho_mask & 1u) v *= rc;
        if (t.rho_mask & 2u) v *= rab;
        if (t.rho_mask & 4u) v *= rabc;
        sum += v;
    }
    return sum;
}

Complex expand_F(int theorem, const ExponentQuad& q, const EvalPoint& p, int K) {
    std::optional<Complex> frozen;
    if (theorem == 1) frozen = p.w1;
    if (theorem == 2) frozen = p.w2;
    return evaluate_expansion(expansion_coeffs(theorem, q, K, frozen), q, p);
}

double first_omitted_order(int theorem, const ExponentQuad& q, int K) {
    const double a = q.a, b = q.b, c = q.c, d = q.d;
    double integer_family = K + 1.0;
    switch (theorem) {
    case 1:
    case 0:
        return std::min(integer_family, c + d + 2.0 + K);
    case 2:
        return std::min(integer_family, a + b + 2.0 + K);
    case 3:
        return std::min(integer_family, a + b + c + 2.0 + K);
    case 4:
        return std::min({integer_family, c + d + 2.0 + K, a + b + 2.0 + K});
    default:
        throw UsageError("first_omitted_order: bad theorem id");
    }
}

} // namespace dfint::asym
