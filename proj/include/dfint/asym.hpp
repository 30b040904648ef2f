#ifndef DFINT_ASYM_HPP
#define DFINT_ASYM_HPP

#include <optional>

#include "dfint/core.hpp"

namespace dfint::asym {

enum class AuxKind { P1, P2, Q1, Q2, R1, R2, T1, Q1Tilde };

enum class IdentityKind { FP, FQ, FRQ, FSQ };

/// Evaluate one of the auxiliary double-loop integrals, prefactor constants
/// included.  P2/Q2 accept any point reachable from their primary
/// configuration by a straight-line homotopy that keeps the transformed
/// branch points off [0,1] and the integrand's anchor values off the
/// negative axis; R2/T1 are restricted to their primary configurations.
Complex eval_aux(AuxKind kind, const core::ExponentQuad& q, const core::EvalPoint& p,
                 const contour::QuadratureConfig& cfg = {});

/// P2 on the image of the angle triangle under the w-map, evaluated through
/// its explicitly continued representation (valid there for Im w2 < 0).
Complex p2_on_E(const core::ExponentQuad& q, double theta1, double theta2,
                const contour::QuadratureConfig& cfg = {});

/// Relative residual |LHS - RHS| / (|LHS| + |RHS| + 1e-300) of one of the
/// four decomposition identities, both sides by quadrature.
double verify_identity(IdentityKind kind, const core::ExponentQuad& q,
                       const core::EvalPoint& p, const contour::QuadratureConfig& cfg = {});

/// One term of a truncated expansion: coeff * s1^e1 * s2^e2 times the phase
/// factors selected by rho_mask, where (s1, s2) are the theorem's small
/// quantities.
struct ExpansionTerm {
    Complex coeff;
    double e1 = 0.0;
    double e2 = 0.0;
    unsigned rho_mask = 0;  // 1: rho_c(w2), 2: rho_{a+b}(w1), 4: rho_{a+b+c}(w2)
};

struct ExpansionTermSet {
    int theorem = 0;  // 1..4; 0 denotes the N = 3 expansion of G about w = 1
    int order = 0;
    std::optional<Complex> frozen;
    std::vector<ExpansionTerm> terms;
};

/// Coefficients with total index <= K.  `frozen` supplies the non-limiting
/// variable where the coefficients depend on it (w1 for theorem 1, w2 for
/// theorem 2); theorems 3, 4 and the G-expansion take no frozen argument.
ExpansionTermSet expansion_coeffs(int theorem, const core::ExponentQuad& q, int K,
                                  std::optional<Complex> frozen = {});

/// Evaluate a coefficient set at (w1, w2).
Complex evaluate_expansion(const ExpansionTermSet& set, const core::ExponentQuad& q,
                           const core::EvalPoint& p);

/// Truncated asymptotic value of F near the theorem's limit point.
Complex expand_F(int theorem, const core::ExponentQuad& q, const core::EvalPoint& p, int K);

/// Real part of the first power omitted by the K-truncation; the predicted
/// convergence order of expand_F.
double first_omitted_order(int theorem, const core::ExponentQuad& q, int K);

} // namespace dfint::asym

#endif
