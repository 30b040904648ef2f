#include "dfint/contour.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "quad.hpp"

namespace dfint::contour {

using special::principal_arg;

namespace {

constexpr double kOnPathRel = 1e-12;
constexpr double kTwoPi = 2.0 * kPi;

Complex unit_toward(Complex from, Complex to) {
    Complex d = to - from;
    double m = std::abs(d);
    if (m == 0.0) throw GeometryError("degenerate direction");
    return d / m;
}

double dist_point_lineseg(Complex z, Complex a, Complex b) {
    Complex ab = b - a;
    double l2 = std::norm(ab);
    if (l2 == 0.0) return std::abs(z - a);
    double t = ((z.real() - a.real()) * ab.real() + (z.imag() - a.imag()) * ab.imag()) / l2;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(z - (a + t * ab));
}

} // namespace

Complex segment_start(const PathSegment& s) {
    if (const auto* l = std::get_if<LineSeg>(&s)) return l->from;
    const auto& a = std::get<ArcSeg>(s);
    return a.center + a.radius * std::polar(1.0, a.arg_from);
}

Complex segment_end(const PathSegment& s) {
    if (const auto* l = std::get_if<LineSeg>(&s)) return l->to;
    const auto& a = std::get<ArcSeg>(s);
    return a.center + a.radius * std::polar(1.0, a.arg_to);
}

Complex segment_point(const PathSegment& s, double t) {
    if (const auto* l = std::get_if<LineSeg>(&s)) return l->from + t * (l->to - l->from);
    const auto& a = std::get<ArcSeg>(s);
    return a.center + a.radius * std::polar(1.0, a.arg_from + t * (a.arg_to - a.arg_from));
}

Complex segment_deriv(const PathSegment& s, double t) {
    if (const auto* l = std::get_if<LineSeg>(&s)) return l->to - l->from;
    const auto& a = std::get<ArcSeg>(s);
    double d = a.arg_to - a.arg_from;
    return Complex(0.0, 1.0) * a.radius * d * std::polar(1.0, a.arg_from + t * d);
}

double segment_length(const PathSegment& s) {
    if (const auto* l = std::get_if<LineSeg>(&s)) return std::abs(l->to - l->from);
    const auto& a = std::get<ArcSeg>(s);
    return a.radius * std::abs(a.arg_to - a.arg_from);
}

bool Path::closed(double tol) const {
    return !segments.empty() && std::abs(start() - end()) <= tol;
}

double Path::vertex_span() const {
    std::vector<Complex> v;
    for (const auto& s : segments) {
        v.push_back(segment_start(s));
        v.push_back(segment_end(s));
    }
    double span = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j)
            span = std::max(span, std::abs(v[i] - v[j]));
    return span;
}

Path split_segment(const Path& path, std::size_t index) {
    Path out = path;
    const PathSegment& s = path.segments.at(index);
    PathSegment first, second;
    if (const auto* l = std::get_if<LineSeg>(&s)) {
        Complex mid = 0.5 * (l->from + l->to);
        first = LineSeg{l->from, mid};
        second = LineSeg{mid, l->to};
    } else {
        const auto& a = std::get<ArcSeg>(s);
        double mid = 0.5 * (a.arg_from + a.arg_to);
        first = ArcSeg{a.center, a.radius, a.arg_from, mid};
        second = ArcSeg{a.center, a.radius, mid, a.arg_to};
    }
    out.segments[index] = first;
    out.segments.insert(out.segments.begin() + static_cast<std::ptrdiff_t>(index) + 1, second);
    return out;
}

Path conjugate_path(const Path& path) {
    Path out;
    out.segments.reserve(path.segments.size());
    for (const auto& s : path.segments) {
        if (const auto* l = std::get_if<LineSeg>(&s)) {
            out.segments.push_back(LineSeg{std::conj(l->from), std::conj(l->to)});
        } else {
            const auto& a = std::get<ArcSeg>(s);
            out.segments.push_back(ArcSeg{std::conj(a.center), a.radius, -a.arg_from, -a.arg_to});
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Pochhammer contour construction
// ---------------------------------------------------------------------------

namespace {

struct Cluster {
    Complex center;
    double radius = 0.0;
    Complex entry;
    double entry_arg = 0.0;
};

Cluster plan_loop(const std::vector<Complex>& cluster, const std::vector<Complex>& excluded,
                  Complex basepoint, double margin) {
    Complex centroid = 0.0;
    for (Complex z : cluster) centroid += z;
    centroid /= static_cast<double>(cluster.size());
    double spread = 0.0;
    for (Complex z : cluster) spread = std::max(spread, std::abs(z - centroid));

    double rmin = (1.0 + margin) * spread;
    double rcap = std::numeric_limits<double>::infinity();
    for (Complex x : excluded) rcap = std::min(rcap, std::abs(x - centroid) / (1.0 + margin));
    if (!(rcap > 0.0) || !std::isfinite(rcap))
        throw GeometryError("pochhammer loop: no admissible radius");
    if (rmin >= rcap)
        throw GeometryError("pochhammer loop: prescribed interior points cannot be "
                            "enclosed while excluding the rest");

    Cluster c;
    c.center = centroid;
    c.radius = (spread > 0.0) ? std::sqrt(rmin * rcap) : 0.5 * rcap;
    c.entry = centroid + c.radius * unit_toward(centroid, basepoint);
    c.entry_arg = principal_arg(c.entry - c.center);
    return c;
}

} // namespace

Path build_pochhammer_contour(const PochhammerSpec& spec) {
    const int n = static_cast<int>(spec.factors.size());
    if (spec.loop_p < 0 || spec.loop_p >= n || spec.loop_q < 0 || spec.loop_q >= n ||
        spec.loop_p == spec.loop_q)
        throw GeometryError("pochhammer spec: invalid loop pair");
    if (!(spec.loop_margin > 0.0))
        throw GeometryError("pochhammer spec: loop_margin must be positive");

    std::vector<char> role(static_cast<std::size_t>(n), 'x');  // exterior
    role[static_cast<std::size_t>(spec.loop_p)] = 'p';
    role[static_cast<std::size_t>(spec.loop_q)] = 'q';
    for (int i : spec.interior_with_p) {
        if (i < 0 || i >= n || role[static_cast<std::size_t>(i)] != 'x')
            throw GeometryError("pochhammer spec: bad interior_with_p index");
        role[static_cast<std::size_t>(i)] = 'p';
    }
    for (int i : spec.interior_with_q) {
        if (i < 0 || i >= n || role[static_cast<std::size_t>(i)] != 'x')
            throw GeometryError("pochhammer spec: bad interior_with_q index");
        role[static_cast<std::size_t>(i)] = 'q';
    }

    std::vector<Complex> cluster_p, cluster_q, rest;
    for (int i = 0; i < n; ++i) {
        Complex z = spec.factors[static_cast<std::size_t>(i)].base;
        char r = role[static_cast<std::size_t>(i)];
        if (r == 'p') cluster_p.push_back(z);
        else if (r == 'q') cluster_q.push_back(z);
        else rest.push_back(z);
    }

    double scale = 0.0;
    {
        std::vector<Complex> all;
        for (const auto& f : spec.factors) all.push_back(f.base);
        all.push_back(spec.basepoint);
        for (std::size_t i = 0; i < all.size(); ++i)
            for (std::size_t j = i + 1; j < all.size(); ++j)
                scale = std::max(scale, std::abs(all[i] - all[j]));
    }
    if (scale == 0.0) throw GeometryError("pochhammer spec: degenerate geometry");

    std::vector<Complex> excl_p = rest, excl_q = rest;
    excl_p.insert(excl_p.end(), cluster_q.begin(), cluster_q.end());
    excl_p.push_back(spec.basepoint);
    excl_q.insert(excl_q.end(), cluster_p.begin(), cluster_p.end());
    excl_q.push_back(spec.basepoint);

    Cluster p = plan_loop(cluster_p, excl_p, spec.basepoint, spec.loop_margin);
    Cluster q = plan_loop(cluster_q, excl_q, spec.basepoint, spec.loop_margin);

    double dd = std::abs(p.center - q.center);
    if ((p.radius + q.radius) * (1.0 + spec.loop_margin) > dd) {
        double shrink = 0.95 * dd / ((1.0 + spec.loop_margin) * (p.radius + q.radius));
        double rp = p.radius * shrink, rq = q.radius * shrink;
        double spread_p = 0.0, spread_q = 0.0;
        for (Complex z : cluster_p) spread_p = std::max(spread_p, std::abs(z - p.center));
        for (Complex z : cluster_q) spread_q = std::max(spread_q, std::abs(z - q.center));
        if (rp < (1.0 + spec.loop_margin) * spread_p || rq < (1.0 + spec.loop_margin) * spread_q)
            throw GeometryError("pochhammer loops: circles cannot be made disjoint");
        p.radius = rp;
        q.radius = rq;
        p.entry = p.center + p.radius * unit_toward(p.center, spec.basepoint);
        q.entry = q.center + q.radius * unit_toward(q.center, spec.basepoint);
        p.entry_arg = principal_arg(p.entry - p.center);
        q.entry_arg = principal_arg(q.entry - q.center);
    }

    // connectors must clear the opposite circle and every factor point
    auto check_connector = [&](Complex e, const Cluster& other) {
        if (dist_point_lineseg(other.center, spec.basepoint, e) <= other.radius * (1.0 + 1e-6))
            throw GeometryError("pochhammer connector crosses the other loop");
        for (const auto& f : spec.factors)
            if (dist_point_lineseg(f.base, spec.basepoint, e) < 1e-7 * scale)
                throw GeometryError("pochhammer connector passes through a factor point");
    };
    check_connector(p.entry, q);
    check_connector(q.entry, p);

    auto loop = [&](const Cluster& c, bool ccw, Path& path) {
        double turn = ccw ? kTwoPi : -kTwoPi;
        path.segments.push_back(LineSeg{spec.basepoint, c.entry});
        path.segments.push_back(ArcSeg{c.center, c.radius, c.entry_arg, c.entry_arg + turn});
        path.segments.push_back(LineSeg{c.entry, spec.basepoint});
    };

    Path path;
    loop(p, true, path);
    loop(q, true, path);
    loop(p, false, path);
    loop(q, false, path);
    return path;
}

// ---------------------------------------------------------------------------
// Branch-tracked integration
// ---------------------------------------------------------------------------

namespace {

double dist_point_arcpiece(Complex z, const ArcSeg& arc, double t0, double t1) {
    double d = arc.arg_to - arc.arg_from;
    double p0 = arc.arg_from + t0 * d, p1 = arc.arg_from + t1 * d;
    double lo = std::min(p0, p1), hi = std::max(p0, p1);
    Complex rel = z - arc.center;
    double rz = std::abs(rel);
    if (rz > 0.0) {
        double psi = std::arg(rel);
        double k0 = std::ceil((lo - psi) / kTwoPi - 1e-15);
        if (psi + kTwoPi * k0 <= hi + 1e-15) return std::abs(rz - arc.radius);
    } else {
        return arc.radius;
    }
    return std::min(std::abs(z - (arc.center + arc.radius * std::polar(1.0, p0))),
                    std::abs(z - (arc.center + arc.radius * std::polar(1.0, p1))));
}

double dist_point_piece(Complex z, const PathSegment& seg, double t0, double t1) {
    if (const auto* l = std::get_if<LineSeg>(&seg))
        return dist_point_lineseg(z, l->from + t0 * (l->to - l->from),
                                  l->from + t1 * (l->to - l->from));
    return dist_point_arcpiece(z, std::get<ArcSeg>(seg), t0, t1);
}

// Mode of a factor on one segment: tracked by knots, or analytic about an
// endpoint of the whole path.
enum class FactorMode : char { Tracked, AtStart, AtEnd, AtBoth };

struct AnalyticForm {
    // unwrapped argument is arg0 + arg1 * t (reversal included); magnitude is
    // mag_scale * (t or 1-t) for lines, 2 r |sin(coef * s)| for arcs.
    double arg0 = 0.0, arg1 = 0.0;
    bool is_arc = false;
    bool from_left = true;  // which endpoint distance enters the magnitude
    double line_len = 0.0;
    double arc_r = 0.0, arc_half_sweep = 0.0;

    double magnitude(double dist_left, double dist_right) const {
        double s = from_left ? dist_left : dist_right;
        if (!is_arc) return s * line_len;
        return 2.0 * arc_r * std::abs(std::sin(arc_half_sweep * s));
    }
};

struct SegPlan {
    bool de = false;
    std::vector<double> knots;
    std::vector<std::vector<Complex>> knot_g;   // [knot][factor], tracked only
    std::vector<std::vector<double>> knot_arg;  // unwrapped args at knots
    std::vector<FactorMode> mode;
    std::vector<AnalyticForm> aform;            // valid where mode != Tracked
};

Complex oriented_g(const FactorSpec& f, Complex u) {
    return f.reversed ? f.base - u : u - f.base;
}

// u(t) - base evaluated without forming u(t) first; the affine form keeps the
// relative error bounded when the segment ends very close to the base point.
Complex stable_g(const FactorSpec& f, const PathSegment& seg, double t) {
    Complex g;
    if (const auto* l = std::get_if<LineSeg>(&seg)) {
        g = (1.0 - t) * (l->from - f.base) + t * (l->to - f.base);
    } else {
        const auto& a = std::get<ArcSeg>(seg);
        g = (a.center - f.base) +
            a.radius * std::polar(1.0, a.arg_from + t * (a.arg_to - a.arg_from));
    }
    return f.reversed ? -g : g;
}

AnalyticForm make_analytic_form(const FactorSpec& f, const PathSegment& seg, bool at_start) {
    AnalyticForm a;
    if (const auto* l = std::get_if<LineSeg>(&seg)) {
        a.is_arc = false;
        a.line_len = std::abs(l->to - l->from);
        a.from_left = at_start;
        a.arg0 = at_start ? principal_arg(l->to - l->from) : principal_arg(l->from - l->to);
        a.arg1 = 0.0;
    } else {
        const auto& arc = std::get<ArcSeg>(seg);
        double d = arc.arg_to - arc.arg_from;
        double sg = (d >= 0.0) ? 1.0 : -1.0;
        a.is_arc = true;
        a.arc_r = arc.radius;
        a.arc_half_sweep = 0.5 * d;
        a.from_left = at_start;
        if (at_start) {
            a.arg0 = arc.arg_from + sg * 0.5 * kPi;
            a.arg1 = 0.5 * d;
        } else {
            a.arg0 = arc.arg_to - 0.5 * d - sg * 0.5 * kPi;
            a.arg1 = 0.5 * d;
        }
    }
    if (f.reversed) a.arg0 += kPi;
    return a;
}

void refine_knots(const PathSegment& seg, const std::vector<FactorSpec>& factors,
                  const SegPlan& plan, double max_arg_step, double on_path_tol,
                  double t0, double t1, int depth, std::vector<double>& out) {
    double len = segment_length(seg) * (t1 - t0);
    bool need_split = false;
    for (std::size_t j = 0; j < factors.size() && !need_split; ++j) {
        if (plan.mode[j] != FactorMode::Tracked) continue;
        double d = dist_point_piece(factors[j].base, seg, t0, t1);
        if (d < on_path_tol)
            throw SingularityOnPathError("factor base point lies on the integration path");
        double swing = (len >= 2.0 * d) ? kPi : 2.0 * std::asin(0.5 * len / d);
        if (swing >= max_arg_step) need_split = true;
    }
    if (!need_split) {
        out.push_back(t1);
        return;
    }
    if (depth > 60)
        throw SingularityOnPathError("branch tracking subdivision did not terminate");
    double tm = 0.5 * (t0 + t1);
    refine_knots(seg, factors, plan, max_arg_step, on_path_tol, t0, tm, depth + 1, out);
    refine_knots(seg, factors, plan, max_arg_step, on_path_tol, tm, t1, depth + 1, out);
}

struct RunResult {
    Complex value{0.0, 0.0};
    double err = 0.0;
    double l1 = 0.0;
};

} // namespace

Complex integrate_path(const std::vector<FactorSpec>& factors, const Path& path,
                       const ExtraFn& extra, const QuadratureConfig& cfg,
                       const IntegrateOptions& opts) {
    if (path.segments.empty()) throw GeometryError("integrate_path: empty path");
    if (!(cfg.rel_tol > 0.0) || !(cfg.abs_tol > 0.0) ||
        !(cfg.max_arg_step > 0.0 && cfg.max_arg_step < kPi))
        throw UsageError("integrate_path: invalid quadrature configuration");
    for (const auto& s : path.segments) {
        if (const auto* l = std::get_if<LineSeg>(&s)) {
            if (l->from == l->to) throw GeometryError("integrate_path: degenerate line");
        } else if (!(std::get<ArcSeg>(s).radius > 0.0)) {
            throw GeometryError("integrate_path: arc radius must be positive");
        }
    }
    const std::size_t nf = factors.size();
    const std::size_t ns = path.segments.size();

    double scale = path.vertex_span();
    for (const auto& f : factors)
        for (const auto& s : path.segments) {
            scale = std::max(scale, std::abs(f.base - segment_start(s)));
            scale = std::max(scale, std::abs(f.base - segment_end(s)));
        }
    if (scale == 0.0) throw GeometryError("integrate_path: degenerate geometry");
    const double on_tol = kOnPathRel * scale;

    for (std::size_t s = 1; s < ns; ++s)
        if (std::abs(segment_start(path.segments[s]) - segment_end(path.segments[s - 1])) > on_tol)
            throw GeometryError("integrate_path: path segments do not join continuously");

    const Complex pstart = path.start();
    const Complex pend = path.end();

    // classify factors per segment
    std::vector<SegPlan> plans(ns);
    for (std::size_t s = 0; s < ns; ++s) {
        const PathSegment& seg = path.segments[s];
        plans[s].mode.assign(nf, FactorMode::Tracked);
        plans[s].aform.resize(nf);
        for (std::size_t j = 0; j < nf; ++j) {
            bool at_a = std::abs(factors[j].base - segment_start(seg)) < on_tol;
            bool at_b = std::abs(factors[j].base - segment_end(seg)) < on_tol;
            if (!at_a && !at_b) continue;
            bool path_open_start = (s == 0) && std::abs(factors[j].base - pstart) < on_tol;
            bool path_open_end = (s == ns - 1) && std::abs(factors[j].base - pend) < on_tol;
            if (!opts.allow_endpoint_singularity || !((at_a && path_open_start) || (at_b && path_open_end)))
                throw SingularityOnPathError("factor base point coincides with an interior "
                                             "path vertex");
            FactorMode m = (at_a && at_b) ? FactorMode::AtBoth
                                          : (at_a ? FactorMode::AtStart : FactorMode::AtEnd);
            plans[s].mode[j] = m;
            plans[s].aform[j] =
                make_analytic_form(factors[j], seg, m != FactorMode::AtEnd);
            plans[s].de = true;
        }
    }

    if (opts.allow_endpoint_singularity) {
        double exp_start = 0.0, exp_end = 0.0;
        bool any_start = false, any_end = false;
        for (std::size_t j = 0; j < nf; ++j) {
            if (std::abs(factors[j].base - pstart) < on_tol) {
                exp_start += factors[j].exponent;
                any_start = true;
            }
            if (std::abs(factors[j].base - pend) < on_tol) {
                exp_end += factors[j].exponent;
                any_end = true;
            }
        }
        if ((any_start && exp_start <= -1.0 + 1e-12) || (any_end && exp_end <= -1.0 + 1e-12))
            throw DivergentEndpointError("endpoint exponent sum <= -1, integral diverges");
    }

    // initial unwrapped arguments
    std::vector<double> args(nf);
    for (std::size_t j = 0; j < nf; ++j) {
        if (opts.initial_args) {
            args[j] = (*opts.initial_args)[j];
        } else if (std::abs(factors[j].base - pstart) < on_tol) {
            Complex dir = segment_deriv(path.segments.front(), 0.0);
            args[j] = principal_arg(factors[j].reversed ? -dir : dir);
        } else {
            args[j] = principal_arg(oriented_g(factors[j], pstart));
        }
    }
    if (opts.trace) opts.trace->initial_args = args;

    // build knots and propagate phases segment by segment
    std::vector<std::vector<double>> aoffset(ns, std::vector<double>(nf, 0.0));
    for (std::size_t s = 0; s < ns; ++s) {
        const PathSegment& seg = path.segments[s];
        SegPlan& plan = plans[s];

        std::vector<double> knots{0.0};
        if (std::holds_alternative<ArcSeg>(seg)) {
            const auto& a = std::get<ArcSeg>(seg);
            int pieces = std::max(1, static_cast<int>(
                                          std::ceil(std::abs(a.arg_to - a.arg_from) /
                                                    cfg.max_arg_step)));
            for (int i = 1; i <= pieces; ++i)
                knots.push_back(static_cast<double>(i) / pieces);
        } else {
            knots.push_back(1.0);
        }
        std::vector<double> refined{0.0};
        for (std::size_t i = 1; i < knots.size(); ++i)
            refine_knots(seg, factors, plan, cfg.max_arg_step, on_tol, knots[i - 1], knots[i],
                         0, refined);
        plan.knots = std::move(refined);

        const std::size_t nk = plan.knots.size();
        plan.knot_g.assign(nk, std::vector<Complex>(nf));
        plan.knot_arg.assign(nk, std::vector<double>(nf));
        for (std::size_t j = 0; j < nf; ++j) {
            if (plan.mode[j] != FactorMode::Tracked) {
                // glue the analytic branch to the incoming phase
                double formula0 = plan.aform[j].arg0;
                aoffset[s][j] = kTwoPi * std::round((args[j] - formula0) / kTwoPi);
                args[j] = plan.aform[j].arg0 + plan.aform[j].arg1 + aoffset[s][j];
                continue;
            }
            Complex g = stable_g(factors[j], seg, 0.0);
            plan.knot_g[0][j] = g;
            plan.knot_arg[0][j] = args[j];
            for (std::size_t i = 1; i < nk; ++i) {
                Complex gi = stable_g(factors[j], seg, plan.knots[i]);
                double step = principal_arg(gi / plan.knot_g[i - 1][j]);
                if (std::abs(step) > 0.5 * kPi)
                    throw SingularityOnPathError(
                        "phase step exceeded pi/2; path under-resolved near a base point");
                plan.knot_arg[i][j] = plan.knot_arg[i - 1][j] + step;
                plan.knot_g[i][j] = gi;
            }
            args[j] = plan.knot_arg[nk - 1][j];
        }
    }
    if (opts.trace) opts.trace->final_args = args;

    // integrand over one segment
    auto make_eval = [&](std::size_t s) {
        const PathSegment& seg = path.segments[s];
        const SegPlan& plan = plans[s];
        return [&, s](double t, double dl, double dr) -> Complex {
            double acc_log = 0.0, acc_arg = 0.0;
            for (std::size_t j = 0; j < nf; ++j) {
                double m, th;
                if (plan.mode[j] != FactorMode::Tracked) {
                    const AnalyticForm& a = plan.aform[j];
                    m = a.magnitude(dl, dr);
                    th = a.arg0 + a.arg1 * t + aoffset[s][j];
                } else {
                    auto it = std::upper_bound(plan.knots.begin(), plan.knots.end(), t);
                    std::size_t i = static_cast<std::size_t>(
                        std::max<std::ptrdiff_t>(0, (it - plan.knots.begin()) - 1));
                    Complex g = stable_g(factors[j], seg, t);
                    m = std::abs(g);
                    th = plan.knot_arg[i][j] + principal_arg(g / plan.knot_g[i][j]);
                }
                acc_log += factors[j].exponent * std::log(m);
                acc_arg += factors[j].exponent * th;
            }
            Complex val = std::exp(Complex(acc_log, acc_arg));
            if (extra) val *= extra(segment_point(seg, t));
            return val * segment_deriv(seg, t);
        };
    };

    auto run = [&](double tol) {
        tol = std::max(tol, 1e-14);
        RunResult r;
        boost::math::quadrature::tanh_sinh<double> ts(static_cast<std::size_t>(cfg.de_level_max));
        for (std::size_t s = 0; s < ns; ++s) {
            auto ev = make_eval(s);
            double err = 0.0, l1 = 0.0;
            Complex v;
            if (plans[s].de) {
                // split at the midpoint so each singular endpoint sits at
                // parameter 0 of its half, where tanh-sinh keeps full
                // precision in the distance to the endpoint
                double e2 = 0.0, l2 = 0.0;
                auto left = [&](double t) { return ev(t, t, 1.0 - t); };
                auto right = [&](double u) { return ev(1.0 - u, 1.0 - u, u); };
                v = ts.integrate(left, 0.0, 0.5, tol, &err, &l1);
                v += ts.integrate(right, 0.0, 0.5, tol, &e2, &l2);
                err += e2;
                l1 += l2;
            } else {
                auto f1 = [&](double t) { return ev(t, t, 1.0 - t); };
                v = {0.0, 0.0};
                const auto& kn = plans[s].knots;
                for (std::size_t i = 0; i + 1 < kn.size(); ++i) {
                    quad::GKResult r =
                        quad::gk15_adaptive(f1, kn[i], kn[i + 1], tol, cfg.max_depth);
                    v += r.value;
                    err += r.err;
                    l1 += r.l1;
                }
            }
            r.value += v;
            r.err += err;
            r.l1 += l1;
            if (std::getenv("DFINT_TRACE_QUAD"))
                std::fprintf(stderr, "seg %zu %s: knots %zu err %.3e l1 %.3e\n", s,
                             plans[s].de ? "DE" : "GK", plans[s].knots.size(), err, l1);
        }
        return r;
    };

    double tol1 = std::max(0.1 * cfg.rel_tol, 5e-16);
    RunResult r = run(tol1);
    double target = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(r.value));
    if (r.err > target) {
        double tol2 = std::clamp(0.3 * target / std::max(r.l1, 1e-300), 5e-16, tol1);
        if (tol2 < tol1) r = run(tol2);
        target = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(r.value));
        if (r.err > 4.0 * target)
            throw ToleranceError("integrate_path: requested tolerance not met (err " +
                                 std::to_string(r.err) + ", target " + std::to_string(target) +
                                 ", L1 " + std::to_string(r.l1) + ")");
    }
    return r.value;
}

Complex integrate_branched(const std::vector<FactorSpec>& factors, const Path& path,
                           const ExtraFn& extra, const QuadratureConfig& cfg,
                           BranchTrace* trace) {
    IntegrateOptions opts;
    opts.allow_endpoint_singularity = false;
    opts.trace = trace;
    return integrate_path(factors, path, extra, cfg, opts);
}

Complex integrate_collapsed(const std::vector<FactorSpec>& factors, const Path& path,
                            const ExtraFn& extra, const QuadratureConfig& cfg,
                            const std::optional<std::vector<double>>& initial_args) {
    IntegrateOptions opts;
    opts.allow_endpoint_singularity = true;
    opts.initial_args = initial_args;
    return integrate_path(factors, path, extra, cfg, opts);
}

} // namespace dfint::contour
