#ifndef DFINT_ERRORS_HPP
#define DFINT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dfint {

/// Base class for all dfint errors. `kind()` returns a stable identifier
/// used in CLI reports ("failed: <kind>").
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
    virtual const char* kind() const noexcept { return "Error"; }
};

#define DFINT_DEFINE_ERROR(Name)                                          \
    class Name final : public Error {                                     \
    public:                                                               \
        explicit Name(const std::string& msg) : Error(msg) {}             \
        const char* kind() const noexcept override { return #Name; }      \
    }

DFINT_DEFINE_ERROR(PoleError);
DFINT_DEFINE_ERROR(ZeroBaseError);
DFINT_DEFINE_ERROR(BranchCutError);
DFINT_DEFINE_ERROR(DegenerateParamError);
DFINT_DEFINE_ERROR(IntegerExponentError);
DFINT_DEFINE_ERROR(IntegerConditionError);
DFINT_DEFINE_ERROR(IntegerAlphaError);
DFINT_DEFINE_ERROR(DomainError);
DFINT_DEFINE_ERROR(GeometryError);
DFINT_DEFINE_ERROR(ToleranceError);
DFINT_DEFINE_ERROR(SingularityOnPathError);
DFINT_DEFINE_ERROR(DivergentEndpointError);
DFINT_DEFINE_ERROR(NearHalfPiError);
DFINT_DEFINE_ERROR(TailBoundError);
DFINT_DEFINE_ERROR(UsageError);

#undef DFINT_DEFINE_ERROR

} // namespace dfint

#endif
