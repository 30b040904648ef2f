#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "dfint/contour.hpp"
#include "dfint/special.hpp"

using namespace dfint;
using namespace dfint::contour;


namespace {

double rel_err(Complex got, Complex want) {
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

PochhammerSpec h_spec(double a, double d, Complex A = Complex(0.5), double margin = 0.3) {
    PochhammerSpec s;
    s.factors = {{Complex(0.0), a, false}, {Complex(1.0), d, true}};
    s.loop_p = 0;
    s.loop_q = 1;
    s.basepoint = A;
    s.loop_margin = margin;
    return s;
}

Complex h_closed(double a, double d) {
    Complex bracket = -1.0 + std::exp(Complex(0.0, 2.0 * kPi * a)) -
                      std::exp(Complex(0.0, 2.0 * kPi * (a + d))) +
                      std::exp(Complex(0.0, 2.0 * kPi * d));
    return bracket * special::gamma(Complex(a + 1.0)) * special::gamma(Complex(d + 1.0)) /
           special::gamma(Complex(a + d + 2.0));
}

} // namespace

TEST_CASE("pochhammer contour winds to zero and closes") {
    auto spec = h_spec(-0.5, -0.5);
    Path path = build_pochhammer_contour(spec);
    CHECK(path.closed(1e-12 * path.vertex_span()));
    int arcs = 0;
    for (const auto& s : path.segments)
        if (std::holds_alternative<ArcSeg>(s)) ++arcs;
    CHECK(arcs == 4);

    BranchTrace trace;
    QuadratureConfig cfg;
    integrate_branched(spec.factors, path, {}, cfg, &trace);
    REQUIRE(trace.initial_args.size() == 2);
    for (std::size_t j = 0; j < 2; ++j)
        CHECK(std::abs(trace.final_args[j] - trace.initial_args[j]) < 1e-9);
}

TEST_CASE("pochhammer geometry errors") {
    // interior point colliding with the basepoint
    PochhammerSpec s;
    s.factors = {{Complex(0.0), 0.3, false}, {Complex(1.0), -0.4, true}, {Complex(0.5), 0.45, false}};
    s.loop_p = 0;
    s.loop_q = 1;
    s.basepoint = Complex(0.5);
    s.interior_with_p = {2};
    CHECK_THROWS_AS(build_pochhammer_contour(s), GeometryError);
}

TEST_CASE("loop radius respects the prescribed interior point") {
    PochhammerSpec s;
    s.factors = {{Complex(0.0), 0.3, false},
                 {Complex(1.0), -0.4, true},
                 {Complex(0.1, -0.05), 0.45, false}};
    s.loop_p = 0;
    s.loop_q = 1;
    s.basepoint = Complex(0.5);
    s.interior_with_p = {2};
    Path path = build_pochhammer_contour(s);
    const auto& arc = std::get<ArcSeg>(path.segments[1]);
    Complex centroid = 0.5 * (Complex(0.0) + Complex(0.1, -0.05));
    CHECK(arc.radius >= (1.0 + s.loop_margin) * std::abs(Complex(0.1, -0.05) - centroid));
    CHECK(std::abs(arc.center - centroid) < 1e-12);
}

TEST_CASE("beta integrals by collapsed quadrature") {
    QuadratureConfig cfg;
    std::vector<FactorSpec> f = {{Complex(0.0), -0.5, false}, {Complex(1.0), -0.5, true}};
    Path seg{{LineSeg{Complex(0.0), Complex(1.0)}}};
    CHECK(rel_err(integrate_collapsed(f, seg, {}, cfg), Complex(kPi)) < 1e-12);

    std::vector<FactorSpec> g = {{Complex(0.0), 0.3, false}, {Complex(1.0), -0.4, true}};
    Complex want = special::gamma(Complex(1.3)) * special::gamma(Complex(0.6)) / special::gamma(Complex(1.9));
    CHECK(rel_err(integrate_collapsed(g, seg, {}, cfg), want) < 1e-12);

    std::vector<FactorSpec> dvg = {{Complex(0.0), -1.2, false}, {Complex(1.0), -0.4, true}};
    CHECK_THROWS_AS(integrate_collapsed(dvg, seg, {}, cfg), DivergentEndpointError);
}

TEST_CASE("residue via analytic extra on a circle") {
    QuadratureConfig cfg;
    Path circle{{ArcSeg{Complex(0.0), 1.0, 0.0, 2.0 * kPi}}};
    auto extra = [](Complex u) { return 1.0 / u; };
    CHECK(rel_err(integrate_branched({}, circle, extra, cfg), Complex(0.0, 2.0 * kPi)) < 1e-12);
}

TEST_CASE("pochhammer H(-1/2,-1/2) equals -4 pi") {
    QuadratureConfig cfg;
    auto spec = h_spec(-0.5, -0.5);
    Path path = build_pochhammer_contour(spec);
    Complex v = integrate_branched(spec.factors, path, {}, cfg);
    CHECK(rel_err(v, Complex(-4.0 * kPi)) < 1e-10);
}

TEST_CASE("pochhammer H matches closed form at complex-valued bracket") {
    QuadratureConfig cfg;
    for (auto [a, d] : {std::pair{0.3, -0.4}, {1.3, 0.45}, {-0.7, 2.2}}) {
        auto spec = h_spec(a, d);
        Path path = build_pochhammer_contour(spec);
        Complex v = integrate_branched(spec.factors, path, {}, cfg);
        CHECK(rel_err(v, h_closed(a, d)) < 1e-9);
    }
}

TEST_CASE("basepoint independence") {
    QuadratureConfig cfg;
    std::vector<FactorSpec> f = {{Complex(0.0), 0.3, false},
                                 {Complex(-1.0, -1.0), 0.45, false},
                                 {Complex(-2.0, 0.5), -0.7, false},
                                 {Complex(1.0), -0.4, true}};
    auto run = [&](Complex A) {
        PochhammerSpec s;
        s.factors = f;
        s.loop_p = 0;
        s.loop_q = 3;
        s.basepoint = A;
        return integrate_branched(f, build_pochhammer_contour(s), {}, cfg);
    };
    Complex v1 = run(Complex(0.3)), v2 = run(Complex(0.7));
    CHECK(std::abs(v1 - v2) <= 10.0 * cfg.rel_tol * std::abs(v1));
}

TEST_CASE("loop margin independence") {
    QuadratureConfig cfg;
    auto v1 = [&] {
        auto s = h_spec(0.3, -0.4, Complex(0.5), 0.15);
        return integrate_branched(s.factors, build_pochhammer_contour(s), {}, cfg);
    }();
    auto v2 = [&] {
        auto s = h_spec(0.3, -0.4, Complex(0.5), 0.3);
        return integrate_branched(s.factors, build_pochhammer_contour(s), {}, cfg);
    }();
    CHECK(std::abs(v1 - v2) <= 10.0 * cfg.rel_tol * std::abs(v1));
}

TEST_CASE("segment-split additivity") {
    QuadratureConfig cfg;
    auto spec = h_spec(0.3, -0.4);
    Path path = build_pochhammer_contour(spec);
    Complex v = integrate_branched(spec.factors, path, {}, cfg);
    for (std::size_t idx : {std::size_t{1}, std::size_t{4}, std::size_t{0}}) {
        Path split = split_segment(path, idx);
        Complex vs = integrate_branched(spec.factors, split, {}, cfg);
        CHECK(std::abs(v - vs) <= 10.0 * cfg.rel_tol * std::abs(v));
    }
}

TEST_CASE("singularity on path rejected") {
    QuadratureConfig cfg;
    std::vector<FactorSpec> f = {{Complex(0.5, 0.0), -0.5, false}};
    Path seg{{LineSeg{Complex(0.0), Complex(1.0)}}};
    CHECK_THROWS_AS(integrate_branched(f, seg, {}, cfg), SingularityOnPathError);
    CHECK_THROWS_AS(integrate_collapsed(f, seg, {}, cfg), SingularityOnPathError);
}

TEST_CASE("schwarz reflection over random branched integrands") {
    QuadratureConfig cfg;
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> ue(-0.9, 1.5);
    std::uniform_real_distribution<double> ux(-2.0, 2.0);
    int done = 0;
    double worst = 0.0;
    while (done < 50) {
        double a = ue(rng), d = ue(rng);
        if (std::abs(a - std::round(a)) < 0.05 || std::abs(d - std::round(d)) < 0.05) continue;
        Complex w(ux(rng), ux(rng));
        if (std::abs(w) < 0.3 || std::abs(w - 1.0) < 0.3 || std::abs(w.imag()) < 0.05) continue;
        std::vector<FactorSpec> f = {
            {Complex(0.0), a, false}, {w, ue(rng), false}, {Complex(1.0), d, true}};
        PochhammerSpec s;
        s.factors = f;
        s.loop_p = 0;
        s.loop_q = 2;
        s.basepoint = Complex(0.4);
        Path path;
        try {
            path = build_pochhammer_contour(s);
        } catch (const GeometryError&) {
            continue;
        }
        ++done;
        Complex v = integrate_branched(f, path, {}, cfg);
        std::vector<FactorSpec> fc = f;
        for (auto& ff : fc) ff.base = std::conj(ff.base);
        Complex vc = integrate_branched(fc, conjugate_path(path), {}, cfg);
        double resid = std::abs(std::conj(v) - vc) / std::max(std::abs(v), 1e-300);
        worst = std::max(worst, resid);
    }
    CHECK(worst < 1e-9);
}
