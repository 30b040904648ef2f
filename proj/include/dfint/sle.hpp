#ifndef DFINT_SLE_HPP
#define DFINT_SLE_HPP

#include <utility>
#include <vector>

#include "dfint/asym.hpp"

namespace dfint::sle {

struct GreenInput {
    double alpha = 2.5;  // alpha = 8/kappa
    double theta1 = 0.0, theta2 = 0.0;
};

struct SectorParams {
    double delta = 0.05;
    double c = 0.5;
};

struct SchrammInput {
    double alpha = 2.5;
    Complex z;       // strictly in the upper half-plane
    double xi = 1.0; // marked boundary point, xi > 0
};

/// w1 = 1 - e^{-2 i theta2}, w2 = (sin theta2 / sin theta1) e^{-i(theta2-theta1)}.
/// Requires 0 < theta1 <= theta2 < pi.
std::pair<Complex, Complex> map_w(double theta1, double theta2);

/// Labels (1..5) of the asymptotic sectors containing the point; may be
/// empty or overlap.
std::vector<int> classify_sector(double theta1, double theta2,
                                 const SectorParams& params = {});

/// Normalization constant of the Green's kernel.  Rejects alpha within the
/// integer guard band (the continuity extension is out of quadrature scope).
double hat_c(double alpha);

/// The double-loop integral about {z, xi2} with zbar and xi1 exterior,
/// basepoint (z + xi2)/2.
Complex eval_I(double alpha, Complex z, double xi1, double xi2,
               const contour::QuadratureConfig& cfg = {});

/// Green's-function boundary kernel h(theta1, theta2).
double green_h(const GreenInput& g, const contour::QuadratureConfig& cfg = {});

/// Diagonal boundary value h_f(theta); `green_hf_series` forces the direct
/// 2F1 series backend.
double green_hf(double theta, double alpha);
double green_hf_series(double theta, double alpha);

/// X(theta1, theta2) built from the continued P2 representation; its
/// imaginary part vanishes identically on the triangle.
Complex green_X(double theta1, double theta2, double alpha,
                const contour::QuadratureConfig& cfg = {});
double green_imX(double theta1, double theta2, double alpha,
                 const contour::QuadratureConfig& cfg = {});

/// J(z, xi) for z in the upper half-plane (path from conj(z) to z passing
/// right of xi), and its boundary extension J(x, xi) (zero for x >= xi).
Complex eval_J(const SchrammInput& s, const contour::QuadratureConfig& cfg = {});
Complex eval_J_boundary(double alpha, double x, double xi,
                        const contour::QuadratureConfig& cfg = {});

/// Re J through the manifestly real-extracting representation.
double eval_reJ(const SchrammInput& s, const contour::QuadratureConfig& cfg = {});

/// M(z, xi) = y^{alpha-2} z^{-a/2} (z-xi)^{-a/2} zbar^{1-a/2} (zbar-xi)^{1-a/2} J.
Complex eval_M(const SchrammInput& s, const contour::QuadratureConfig& cfg = {});
/// Re M through the |z|-power identity; cross-check for eval_M.
double re_M_cross(const SchrammInput& s, const contour::QuadratureConfig& cfg = {});

/// Normalization constant of Schramm's formula: closed form, and the
/// r-independent semicircle quadrature.
double c_alpha_closed(double alpha);
double c_alpha_semicircle(double alpha, double r, double xi = 1.0,
                          const contour::QuadratureConfig& cfg = {});

/// P(z, xi) = (1/c_alpha) int_x^inf Re M(x'+iy) dx'.  `lift` routes the
/// contour through height y+lift first (path-independence checks).
double schramm_P(const SchrammInput& s, const contour::QuadratureConfig& cfg = {},
                 double lift = 0.0);

} // namespace dfint::sle

#endif
