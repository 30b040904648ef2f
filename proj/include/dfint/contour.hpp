#ifndef DFINT_CONTOUR_HPP
#define DFINT_CONTOUR_HPP

#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "dfint/special.hpp"

namespace dfint::contour {

/// One multivalued factor of the integrand: (u - base)^exponent, or
/// (base - u)^exponent when `reversed` is set.
struct FactorSpec {
    Complex base;
    double exponent = 0.0;
    bool reversed = false;
};

struct LineSeg {
    Complex from, to;
};

/// Circular arc; arg_to - arg_from may exceed 2*pi in magnitude for winding,
/// and its sign gives the orientation.
struct ArcSeg {
    Complex center;
    double radius = 0.0;
    double arg_from = 0.0, arg_to = 0.0;
};

using PathSegment = std::variant<LineSeg, ArcSeg>;

Complex segment_start(const PathSegment& s);
Complex segment_end(const PathSegment& s);
Complex segment_point(const PathSegment& s, double t);  // t in [0, 1]
Complex segment_deriv(const PathSegment& s, double t);
double segment_length(const PathSegment& s);

struct Path {
    std::vector<PathSegment> segments;

    Complex start() const { return segment_start(segments.front()); }
    Complex end() const { return segment_end(segments.back()); }
    bool closed(double tol) const;
    /// Max pairwise distance among segment endpoints.
    double vertex_span() const;
};

/// Split segment `index` of `path` at its parametric midpoint.
Path split_segment(const Path& path, std::size_t index);

/// Reflect a path across the real axis (orientation of arcs flips sign).
Path conjugate_path(const Path& path);

struct PochhammerSpec {
    std::vector<FactorSpec> factors;
    int loop_p = 0, loop_q = 1;           // indices into factors
    Complex basepoint;
    std::vector<int> interior_with_p;     // extra factor indices inside loop p
    std::vector<int> interior_with_q;
    double loop_margin = 0.3;
};

/// Realize the double-loop commutator contour (p+, q+, p-, q-): from the
/// basepoint around the p-circle counterclockwise and back, same for q, then
/// both clockwise.  Each loop's circle is centered at the centroid of its
/// prescribed interior points with radius at least (1+loop_margin) times the
/// cluster spread, and every excluded point keeps the same relative margin.
/// Throws GeometryError when no such circles exist.
Path build_pochhammer_contour(const PochhammerSpec& spec);

struct QuadratureConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    int max_depth = 30;
    double max_arg_step = kPi / 4.0;
    int de_level_max = 12;
};

using ExtraFn = std::function<Complex(Complex)>;

/// Unwrapped per-factor arguments at the start and end of a traversal.
struct BranchTrace {
    std::vector<double> initial_args;
    std::vector<double> final_args;
};

struct IntegrateOptions {
    /// Permit factor base points coinciding with the open ends of the path
    /// (first segment start / last segment end); integrated with a
    /// double-exponential rule there.
    bool allow_endpoint_singularity = false;
    /// Override the starting unwrapped argument of each factor (default:
    /// principal value at the path start, tangent direction for base points
    /// sitting exactly on the start).
    std::optional<std::vector<double>> initial_args;
    BranchTrace* trace = nullptr;
};

/// Integrate prod_j factor_j(u) * extra(u) du along `path`, each factor's
/// phase tracked continuously from its principal value at the path start.
Complex integrate_path(const std::vector<FactorSpec>& factors, const Path& path,
                       const ExtraFn& extra, const QuadratureConfig& cfg,
                       const IntegrateOptions& opts = {});

/// Branch-tracked integral with all base points strictly off the path.
Complex integrate_branched(const std::vector<FactorSpec>& factors, const Path& path,
                           const ExtraFn& extra, const QuadratureConfig& cfg,
                           BranchTrace* trace = nullptr);

/// Improper integral with base points allowed at the ends of the path
/// (exponents there must exceed -1); tanh-sinh at the singular ends.
Complex integrate_collapsed(const std::vector<FactorSpec>& factors, const Path& path,
                            const ExtraFn& extra, const QuadratureConfig& cfg,
                            const std::optional<std::vector<double>>& initial_args = {});

} // namespace dfint::contour

#endif
