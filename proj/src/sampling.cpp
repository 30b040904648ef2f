#include "dfint/sampling.hpp"

#include <cmath>

namespace dfint::sampling {

using asym::IdentityKind;
using core::EvalPoint;
using core::ExponentQuad;

double random_noninteger(std::mt19937_64& rng, double lo, double hi, double guard) {
    std::uniform_real_distribution<double> uni(lo, hi);
    for (;;) {
        double x = uni(rng);
        if (std::abs(x - std::round(x)) >= guard) return x;
    }
}

namespace {

bool combos_ok(const ExponentQuad& q, IdentityKind kind, double guard) {
    auto ok = [&](double x) { return std::abs(x - std::round(x)) >= guard; };
    if (!ok(q.a) || !ok(q.d)) return false;
    switch (kind) {
    case IdentityKind::FP: return ok(q.c + q.d);
    case IdentityKind::FQ: return ok(q.a + q.b);
    case IdentityKind::FRQ: return ok(q.a + q.b) && ok(q.a + q.b + q.c);
    case IdentityKind::FSQ: return ok(q.a + q.b) && ok(q.c + q.d);
    }
    return false;
}

} // namespace

ExponentQuad random_exponents(std::mt19937_64& rng, IdentityKind kind, double guard) {
    std::uniform_real_distribution<double> uni(-0.9, 1.5);
    for (;;) {
        ExponentQuad q{uni(rng), uni(rng), uni(rng), uni(rng)};
        if (combos_ok(q, kind, guard)) return q;
    }
}

IdentitySample sample_identity_point(IdentityKind kind, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    auto box = [&](double lo_re, double hi_re, double lo_im, double hi_im) {
        return Complex(lo_re + (hi_re - lo_re) * u01(rng), lo_im + (hi_im - lo_im) * u01(rng));
    };

    for (;;) {
        ExponentQuad q = random_exponents(rng, kind);
        EvalPoint p;
        switch (kind) {
        case IdentityKind::FP: {
            double sgn = (u01(rng) < 0.5) ? 1.0 : -1.0;
            p.w1 = box(-2.2, -0.5, 0.2, 1.2);
            p.w1 = Complex(p.w1.real(), sgn * p.w1.imag());
            p.w2 = box(0.3, 0.72, 0.08, 0.26);
            break;
        }
        case IdentityKind::FQ: {
            double sgn = (u01(rng) < 0.5) ? 1.0 : -1.0;
            p.w1 = box(0.12, 0.42, -0.24, -0.07);
            p.w2 = box(-2.5, -0.8, 0.25, 1.0);
            p.w2 = Complex(p.w2.real(), sgn * p.w2.imag());
            break;
        }
        case IdentityKind::FRQ: {
            double re2 = 0.25 + 0.3 * u01(rng);
            double re1 = re2 * (0.15 + 0.45 * u01(rng));
            p.w1 = Complex(re1, -(0.03 + 0.08 * u01(rng)));
            p.w2 = Complex(re2, -(0.09 + 0.12 * u01(rng)));
            if (!(std::abs(p.w1) < 0.7 * std::abs(p.w2))) continue;
            Complex ratio = p.w2 / p.w1;
            if (std::abs(ratio.imag()) < 0.08 && ratio.real() > -0.2 && ratio.real() < 1.4)
                continue;
            break;
        }
        case IdentityKind::FSQ: {
            p.w1 = box(0.08, 0.28, -0.18, -0.05);
            p.w2 = box(0.56, 0.84, 0.06, 0.2);
            break;
        }
        }
        if (!p.in_D0()) continue;
        return {q, p};
    }
}

} // namespace dfint::sampling
