#ifndef DFINT_SAMPLING_HPP
#define DFINT_SAMPLING_HPP

#include <random>

#include "dfint/asym.hpp"

namespace dfint::sampling {

/// Uniform draw from (lo, hi) resampled until at least `guard` away from
/// every integer.
double random_noninteger(std::mt19937_64& rng, double lo, double hi, double guard = 0.05);

/// Exponent draw from (-0.9, 1.5) with a, d and the identity's combination
/// conditions kept `guard` away from the integers.
core::ExponentQuad random_exponents(std::mt19937_64& rng, asym::IdentityKind kind,
                                    double guard = 0.05);

struct IdentitySample {
    core::ExponentQuad q;
    core::EvalPoint p;
};

/// A random point inside the identity's primary configuration, guaranteed
/// feasible for both sides' contours.
IdentitySample sample_identity_point(asym::IdentityKind kind, std::mt19937_64& rng);

} // namespace dfint::sampling

#endif
