#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "dfint/core.hpp"

using namespace dfint;
using namespace dfint::core;
using special::near_integer;

namespace {
double rel_err(Complex got, Complex want) {
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}
} // namespace

TEST_CASE("H closed values") {
    CHECK(rel_err(eval_H_closed(-0.5, -0.5), Complex(-4.0 * kPi)) < 1e-13);
    CHECK_THROWS_AS(eval_H_closed(1.0, 0.5), IntegerExponentError);
    CHECK_THROWS_AS(eval_H_quadrature(1.0, 0.5), IntegerExponentError);
}

TEST_CASE("H backend agreement on a small sweep") {
    contour::QuadratureConfig cfg;
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> uni(-0.9, 2.5);
    int n = 0;
    while (n < 15) {
        double a = uni(rng), d = uni(rng);
        if (std::abs(a - std::round(a)) < 0.05 || std::abs(d - std::round(d)) < 0.05) continue;
        ++n;
        CHECK(rel_err(eval_H_quadrature(a, d, cfg), eval_H_closed(a, d)) < 1e-8);
    }
}

TEST_CASE("G reduces to H at c = 0") {
    for (Complex w : {Complex(-2.0, 0.5), Complex(0.3, -0.9)}) {
        CHECK(rel_err(eval_G_closed(0.3, 0.0, -0.4, w), eval_H_closed(0.3, -0.4)) < 1e-12);
    }
}

TEST_CASE("G backends agree") {
    contour::QuadratureConfig cfg;
    Complex w(-2.0, 0.5);
    Complex closed = eval_G_closed(0.3, -0.7, -0.4, w);
    Complex quad = eval_G_quadrature(0.3, -0.7, -0.4, w, cfg);
    CHECK(rel_err(quad, closed) < 1e-8);
}

TEST_CASE("G backends agree on a left-half-plane sweep") {
    contour::QuadratureConfig cfg;
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> ue(-0.9, 1.5);
    std::uniform_real_distribution<double> ur(-3.0, -0.3);
    std::uniform_real_distribution<double> uim(-1.5, 1.5);
    int n = 0;
    while (n < 10) {
        double a = ue(rng), c = ue(rng), d = ue(rng);
        if (near_integer(a, 0.05) || near_integer(d, 0.05)) continue;
        Complex w(ur(rng), uim(rng));
        ++n;
        CHECK(rel_err(eval_G_quadrature(a, c, d, w, cfg), eval_G_closed(a, c, d, w)) < 1e-7);
    }
}

TEST_CASE("G rho relation against the tilde variant") {
    contour::QuadratureConfig cfg;
    for (Complex w : {Complex(-1.0, 0.3), Complex(-1.0, -0.3)}) {
        Complex lhs = eval_G_quadrature(0.3, -0.7, -0.4, w, cfg);
        Complex rhs = special::rho(-0.7, w) * eval_G_tilde_quadrature(0.3, -0.7, -0.4, w, cfg);
        CHECK(rel_err(lhs, rhs) < 1e-9);
    }
}

TEST_CASE("G rejects w on the cut") {
    CHECK_THROWS_AS(eval_G_closed(0.3, -0.7, -0.4, Complex(2.0, 0.0)), DomainError);
    CHECK_THROWS_AS(eval_G_quadrature(0.3, -0.7, -0.4, Complex(0.5, 0.0), {}), DomainError);
}

TEST_CASE("domain membership") {
    EvalPoint in{Complex(-1.0, -1.0), Complex(-2.0, 0.5)};
    CHECK(in.in_D0());
    EvalPoint cut1{Complex(0.5, 0.0), Complex(-2.0, 0.5)};
    CHECK(!cut1.in_D0());
    EvalPoint ray{Complex(-4.0, 1.0), Complex(-2.0, 0.5)};  // w1 = 2*w2
    CHECK(!ray.in_D0());
    EvalPoint d1{Complex(-1.0, -1.0), Complex(0.5, 0.0)};
    CHECK(!d1.in_D1());  // w2 on (-inf, 1]
    EvalPoint d1ok{Complex(-1.0, -1.0), Complex(2.0, 0.4)};
    CHECK(d1ok.in_D1());
}

TEST_CASE("F collapses to G when b or c vanishes") {
    contour::QuadratureConfig cfg;
    EvalPoint p{Complex(-1.0, -1.0), Complex(-2.0, 0.5)};
    Complex f_b0 = eval_F({0.3, 0.0, -0.7, -0.4}, p, cfg);
    CHECK(rel_err(f_b0, eval_G_closed(0.3, -0.7, -0.4, p.w2)) < 1e-9);
    Complex f_c0 = eval_F({0.3, 0.45, 0.0, -0.4}, p, cfg);
    CHECK(rel_err(f_c0, eval_G_closed(0.3, 0.45, -0.4, p.w1)) < 1e-9);
}

TEST_CASE("F rejects points outside D0") {
    CHECK_THROWS_AS(eval_F({0.3, 0.45, -0.7, -0.4},
                           EvalPoint{Complex(0.5, 0.0), Complex(-2.0, 0.5)}, {}),
                    DomainError);
}

TEST_CASE("F conjugation carries the phase e^{-2 pi i (a+d)}") {
    contour::QuadratureConfig cfg;
    ExponentQuad q{0.3, 0.45, -0.7, -0.4};
    EvalPoint p{Complex(-1.0, -1.0), Complex(-2.0, 0.5)};
    EvalPoint pc{std::conj(p.w1), std::conj(p.w2)};
    Complex lhs = std::conj(eval_F(q, pc, cfg));
    Complex rhs = std::exp(Complex(0.0, -2.0 * kPi * (q.a + q.d))) * eval_F(q, p, cfg);
    CHECK(rel_err(lhs, rhs) < 1e-8);
}

TEST_CASE("eval_generic reductions") {
    contour::QuadratureConfig cfg;
    std::vector<contour::FactorSpec> two = {{Complex(0.0), -0.5, false},
                                            {Complex(1.0), -0.5, true}};
    CHECK(rel_err(eval_generic(two, 0, 1, Complex(0.5), cfg), Complex(-4.0 * kPi)) < 1e-8);

    std::vector<contour::FactorSpec> three = {{Complex(0.0), 0.3, false},
                                              {Complex(-2.0, 0.5), -0.7, false},
                                              {Complex(1.0), -0.4, true}};
    CHECK(rel_err(eval_generic(three, 0, 2, Complex(0.5), cfg),
                  eval_G_closed(0.3, -0.7, -0.4, Complex(-2.0, 0.5))) < 1e-8);

    // a fifth factor with zero exponent leaves the N = 4 value unchanged
    EvalPoint p{Complex(-1.0, -1.0), Complex(-2.0, 0.5)};
    ExponentQuad q{0.3, 0.45, -0.7, -0.4};
    std::vector<contour::FactorSpec> five = {{Complex(0.0), q.a, false},
                                             {p.w1, q.b, false},
                                             {p.w2, q.c, false},
                                             {Complex(1.0), q.d, true},
                                             {Complex(0.4, 2.0), 0.0, false}};
    CHECK(rel_err(eval_generic(five, 0, 3, Complex(0.5), cfg), eval_F(q, p, cfg)) < 1e-9);
}
