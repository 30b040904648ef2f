#include "dfint/sle.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "quad.hpp"

namespace dfint::sle {

using contour::ArcSeg;
using contour::FactorSpec;
using contour::LineSeg;
using contour::Path;
using contour::QuadratureConfig;
using core::EvalPoint;
using core::ExponentQuad;
using special::gamma_real;
using special::near_integer;
using special::principal_arg;
using special::principal_pow;

namespace {

Complex expi(double x) { return std::exp(Complex(0.0, x)); }

void require_alpha(double alpha) {
    if (!(alpha > 1.0)) throw DomainError("alpha must exceed 1");
}

void require_noninteger_alpha(double alpha) {
    require_alpha(alpha);
    if (near_integer(alpha))
        throw IntegerAlphaError("alpha within guard band of an integer");
}

void require_upper_half(Complex z) {
    if (!(z.imag() > 0.0)) throw DomainError("z must lie strictly in the upper half-plane");
}

ExponentQuad green_quad(double alpha) {
    return {alpha - 1.0, alpha - 1.0, -0.5 * alpha, -0.5 * alpha};
}

Complex sigma(double theta2, double alpha) {
    return expi(theta2 >= 0.5 * kPi ? -kPi * alpha : kPi * alpha);
}

} // namespace

std::pair<Complex, Complex> map_w(double theta1, double theta2) {
    if (!(0.0 < theta1 && theta1 <= theta2 && theta2 < kPi))
        throw DomainError("map_w: need 0 < theta1 <= theta2 < pi");
    Complex w1 = 1.0 - expi(-2.0 * theta2);
    Complex w2 = (std::sin(theta2) / std::sin(theta1)) * expi(-(theta2 - theta1));
    return {w1, w2};
}

std::vector<int> classify_sector(double theta1, double theta2, const SectorParams& sp) {
    if (!(0.0 < theta1 && theta1 < theta2 && theta2 < kPi))
        throw DomainError("classify_sector: point outside the open triangle");
    const double d = sp.delta, c = sp.c;
    const double pi = kPi;
    std::vector<int> out;

    if (theta2 - theta1 < c * std::sqrt(2.0) && theta1 > d && theta2 < pi - d)
        out.push_back(1);

    bool s2 = (theta2 < c && std::atan(theta1 / theta2) < 0.25 * pi - d) ||
              (theta2 > pi - c && std::atan(theta1 / (pi - theta2)) < 0.25 * pi - d);
    if (s2) out.push_back(2);

    if (theta2 > pi - c && std::atan((pi - theta2) / theta1) < 0.25 * pi - d &&
        std::atan((pi - theta2) / (pi - theta1)) < 0.25 * pi - d)
        out.push_back(3);

    bool s4 = false;
    if (theta1 + theta2 < c * std::sqrt(2.0)) {
        double t = std::atan(theta1 / theta2);
        s4 = s4 || (d < t && t < 0.25 * pi);
    }
    if (theta2 - theta1 > pi - c * std::sqrt(2.0)) {
        double t = std::atan((pi - theta2) / theta1);
        s4 = s4 || (d < t && t < 0.5 * pi - d);
    }
    if (theta1 + theta2 > 2.0 * pi - c * std::sqrt(2.0)) {
        double t = std::atan((pi - theta2) / (pi - theta1));
        s4 = s4 || (d < t && t < 0.25 * pi);
    }
    if (s4) out.push_back(4);

    if (theta1 < c && theta2 - theta1 > d && theta1 + theta2 < pi - d)
        out.push_back(5);

    return out;
}

double hat_c(double alpha) {
    require_noninteger_alpha(alpha);
    double s = std::sin(0.5 * kPi * alpha);
    return 4.0 * s * s * std::sin(kPi * alpha) * gamma_real(1.0 - 0.5 * alpha) *
           gamma_real(1.5 * alpha - 1.0) / gamma_real(alpha);
}

Complex eval_I(double alpha, Complex z, double xi1, double xi2,
               const QuadratureConfig& cfg) {
    require_noninteger_alpha(alpha);
    require_upper_half(z);
    if (!(xi1 < xi2)) throw DomainError("eval_I: need xi1 < xi2");
    std::vector<FactorSpec> f = {{z, alpha - 1.0, false},
                                 {std::conj(z), alpha - 1.0, false},
                                 {Complex(xi1), -0.5 * alpha, false},
                                 {Complex(xi2), -0.5 * alpha, true}};
    Complex basepoint = 0.5 * (z + Complex(xi2));
    return core::pochhammer_integral(f, 0, 3, {}, {}, {basepoint}, cfg);
}

double green_h(const GreenInput& g, const QuadratureConfig& cfg) {
    require_noninteger_alpha(g.alpha);
    if (!(0.0 < g.theta1 && g.theta1 < g.theta2 && g.theta2 < kPi))
        throw DomainError("green_h: point outside the open triangle");
    if (std::abs(g.theta2 - 0.5 * kPi) < 1e-4)
        throw NearHalfPiError("green_h: theta2 inside the excluded band about pi/2");
    auto [w1, w2] = map_w(g.theta1, g.theta2);
    // theta1 = pi/2 puts w1 on the ray {r w2 : r >= 1}, which D0 cuts only to
    // keep the auxiliary functions single-valued; the integral itself is
    // analytic across it, so require just the primary cuts here.
    auto off_positive_axis = [](Complex w) {
        double d = (w.real() >= 0.0) ? std::abs(w.imag()) : std::abs(w);
        return d > 1e-9;
    };
    if (!off_positive_axis(w1) || !off_positive_axis(w2))
        throw DomainError("green_h: mapped point touches the cut [0, inf)");
    ExponentQuad q = green_quad(g.alpha);
    std::vector<contour::FactorSpec> factors = {{Complex(0.0), q.a, false},
                                                {w1, q.b, false},
                                                {w2, q.c, false},
                                                {Complex(1.0), q.d, true}};
    Complex F = core::pochhammer_integral(factors, 0, 3, {}, {},
                                          core::standard_basepoints(), cfg);
    Complex val = sigma(g.theta2, g.alpha) *
                  principal_pow(-expi(g.theta2), g.alpha - 1.0) * F;
    double h = std::pow(std::sin(g.theta1), g.alpha - 1.0) / hat_c(g.alpha) * val.imag();
    if (!std::isfinite(h)) throw ToleranceError("green_h: non-finite value");
    return h;
}

namespace {

double hf_assemble(double theta, double alpha, Complex f21) {
    double ch = hat_c(alpha);
    Complex bracket = expi(-0.5 * kPi * alpha) * f21;
    return std::pow(2.0, alpha + 1.0) * kPi / ch * std::sin(0.5 * kPi * alpha) *
           std::pow(std::sin(theta), 2.0 * alpha - 2.0) * bracket.real();
}

} // namespace

double green_hf(double theta, double alpha) {
    require_noninteger_alpha(alpha);
    if (!(0.0 < theta && theta < kPi)) throw DomainError("green_hf: theta outside (0, pi)");
    Complex arg = 0.5 * (1.0 - Complex(0.0, 1.0) / std::tan(theta));
    return hf_assemble(theta, alpha, special::hyp2f1(1.0 - alpha, alpha, 1.0, arg));
}

double green_hf_series(double theta, double alpha) {
    require_noninteger_alpha(alpha);
    if (!(0.0 < theta && theta < kPi)) throw DomainError("green_hf: theta outside (0, pi)");
    Complex arg = 0.5 * (1.0 - Complex(0.0, 1.0) / std::tan(theta));
    return hf_assemble(theta, alpha, special::hyp2f1_series(1.0 - alpha, alpha, 1.0, arg));
}

Complex green_X(double theta1, double theta2, double alpha, const QuadratureConfig& cfg) {
    require_noninteger_alpha(alpha);
    ExponentQuad q = green_quad(alpha);
    auto [w1, w2] = map_w(theta1, theta2);
    (void)w1;
    Complex p2 = asym::p2_on_E(q, theta1, theta2, cfg);
    return sigma(theta2, alpha) * principal_pow(-expi(theta2), alpha - 1.0) *
           expi(-0.5 * kPi * alpha) * principal_pow(w2 - 1.0, 1.0 - alpha) * p2;
}

double green_imX(double theta1, double theta2, double alpha, const QuadratureConfig& cfg) {
    return green_X(theta1, theta2, alpha, cfg).imag();
}

// --- Schramm side ------------------------------------------------------------

namespace {

std::vector<FactorSpec> j_factors(double alpha, Complex z, double xi) {
    return {{z, alpha, false},
            {std::conj(z), alpha - 2.0, false},
            {Complex(0.0), -0.5 * alpha, false},
            {Complex(xi), -0.5 * alpha, false}};
}

Path j_path(Complex z, double xi) {
    double r = std::abs(z - xi);
    bool five_piece = (r > 0.9 * xi && r < 1.1 * xi && std::abs(z) < 0.5 * xi);
    if (!five_piece) {
        double th = principal_arg(z - Complex(xi));
        return Path{{ArcSeg{Complex(xi), r, -th, th}}};
    }
    double r0 = std::abs(z);
    double thz = principal_arg(z);
    double cc = 0.5 * xi;
    return Path{{ArcSeg{Complex(0.0), r0, -thz, 0.0},
                 LineSeg{Complex(r0), Complex(xi - cc)},
                 ArcSeg{Complex(xi), cc, -kPi, kPi},
                 LineSeg{Complex(xi - cc), Complex(r0)},
                 ArcSeg{Complex(0.0), r0, 0.0, thz}}};
}

void require_schramm(const SchrammInput& s) {
    require_alpha(s.alpha);
    require_upper_half(s.z);
    if (!(s.xi > 0.0)) throw DomainError("xi must be positive");
}

} // namespace

Complex eval_J(const SchrammInput& s, const QuadratureConfig& cfg) {
    require_schramm(s);
    return contour::integrate_collapsed(j_factors(s.alpha, s.z, s.xi), j_path(s.z, s.xi),
                                        {}, cfg);
}

Complex eval_J_boundary(double alpha, double x, double xi, const QuadratureConfig& cfg) {
    require_alpha(alpha);
    if (!(xi > 0.0)) throw DomainError("xi must be positive");
    if (x >= xi) return {0.0, 0.0};
    double radius = xi - x;
    Path path{{ArcSeg{Complex(xi), radius, -kPi, kPi}}};
    std::vector<FactorSpec> f = {{Complex(x), 2.0 * alpha - 2.0, false},
                                 {Complex(0.0), -0.5 * alpha, false},
                                 {Complex(xi), -0.5 * alpha, false}};
    double tol = 1e-12 * std::max(std::abs(x), xi);
    double arg0 = (x > tol) ? 0.0 : (x < -tol ? -kPi : -0.5 * kPi);
    std::vector<double> init = {-0.5 * kPi, arg0, -kPi};
    return contour::integrate_collapsed(f, path, {}, cfg, init);
}

double eval_reJ(const SchrammInput& s, const QuadratureConfig& cfg) {
    require_schramm(s);
    double x = s.z.real(), y = s.z.imag();
    std::vector<FactorSpec> f = {{s.z, s.alpha - 2.0, false},
                                 {std::conj(s.z), s.alpha - 2.0, false},
                                 {Complex(0.0), -0.5 * s.alpha, false},
                                 {Complex(s.xi), -0.5 * s.alpha, false}};
    auto extra = [x, y](Complex u) { return Complex(0.0, -2.0 * y) * (u - x); };
    Complex v = contour::integrate_collapsed(f, j_path(s.z, s.xi), extra, cfg);
    return v.real();
}

Complex eval_M(const SchrammInput& s, const QuadratureConfig& cfg) {
    require_schramm(s);
    const double a2 = 0.5 * s.alpha;
    Complex zb = std::conj(s.z);
    return std::pow(s.z.imag(), s.alpha - 2.0) * principal_pow(s.z, -a2) *
           principal_pow(s.z - s.xi, -a2) * principal_pow(zb, 1.0 - a2) *
           principal_pow(zb - s.xi, 1.0 - a2) * eval_J(s, cfg);
}

double re_M_cross(const SchrammInput& s, const QuadratureConfig& cfg) {
    require_schramm(s);
    double x = s.z.real(), y = s.z.imag();
    Complex J = eval_J(s, cfg);
    double pre = std::pow(y, s.alpha - 2.0) * std::pow(std::abs(s.z), -s.alpha) *
                 std::pow(std::abs(s.z - s.xi), -s.alpha);
    return pre * ((x * x - y * y - s.xi * x) * J.real() + y * (2.0 * x - s.xi) * J.imag());
}

double c_alpha_closed(double alpha) {
    require_alpha(alpha);
    return -2.0 * std::pow(kPi, 1.5) * gamma_real(0.5 * (alpha - 1.0)) *
           gamma_real(1.5 * alpha - 1.0) /
           (std::pow(gamma_real(0.5 * alpha), 2.0) * gamma_real(alpha));
}

double c_alpha_semicircle(double alpha, double r, double xi, const QuadratureConfig& cfg) {
    require_alpha(alpha);
    if (!(r > 0.0 && r < 2.0 * xi)) throw DomainError("c_alpha: need r in (0, 2 xi)");
    if (std::abs(r - xi) < 1e-6 * xi)
        throw DomainError("c_alpha: semicircle radius too close to xi");
    QuadratureConfig inner = cfg;
    inner.rel_tol = std::min(cfg.rel_tol, 1e-9);
    auto f = [&](double phi) {
        Complex z = r * expi(phi);
        SchrammInput s{alpha, z, xi};
        return eval_M(s, inner) * Complex(0.0, 1.0) * r * expi(phi);
    };
    boost::math::quadrature::tanh_sinh<double> ts(12);
    const double eps = 1e-8;
    Complex I = ts.integrate(f, eps, kPi - eps, 1e-8);
    return -I.real();
}

double schramm_P(const SchrammInput& s, const QuadratureConfig& cfg, double lift) {
    require_schramm(s);
    const double alpha = s.alpha, xi = s.xi;
    const double x = s.z.real(), y = s.z.imag();
    const double yh = y + lift;
    const double ca = c_alpha_closed(alpha);

    auto reM = [&](double xp, double yp) {
        return eval_M(SchrammInput{alpha, Complex(xp, yp), xi}, cfg).real();
    };

    double total = 0.0;
    if (lift != 0.0) {
        auto fv = [&](double t) {
            return Complex(-eval_M(SchrammInput{alpha, Complex(x, t), xi}, cfg).imag());
        };
        total += quad::gk15_adaptive(fv, y, yh, cfg.rel_tol, 12).value.real();
    }

    // truncation point from the power-decay tail bound
    double X0 = std::max({10.0 * xi, 10.0 * std::abs(s.z), 100.0});
    double C = 3.0 * std::max(std::abs(reM(X0, yh)) * std::pow(X0, alpha),
                              std::abs(reM(1.5 * X0, yh)) * std::pow(1.5 * X0, alpha));
    double tail_target = std::max(0.1 * cfg.rel_tol * std::abs(ca), 1e-13);
    double x_end = X0;
    if (C > 0.0) {
        double need = std::pow(C / ((alpha - 1.0) * tail_target), 1.0 / (alpha - 1.0));
        x_end = std::max(X0, need);
    }
    if (x_end > 1e7)
        throw TailBoundError("schramm_P: tail bound cannot meet tolerance before cutoff");

    double p = x;
    while (p < x_end) {
        double step = std::max(0.5 * std::max(1.0, yh), 0.5 * std::abs(p));
        double pn = std::min(p + step, x_end);
        auto fh = [&](double t) { return Complex(reM(t, yh)); };
        total += quad::gk15_adaptive(fh, p, pn, cfg.rel_tol, 12).value.real();
        p = pn;
    }
    return total / ca;
}

} // namespace dfint::sle
