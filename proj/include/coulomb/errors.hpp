#pragma once

#include <stdexcept>
#include <string>

namespace coulomb {

/// Base class for every error raised by the library. `code()` is a stable
/// machine-readable identifier used in CLI error reports.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

#define COULOMB_DEFINE_ERROR(Name)                                              \
    class Name : public Error {                                                 \
    public:                                                                     \
        explicit Name(const std::string& what) : Error(#Name, what) {}          \
    };

COULOMB_DEFINE_ERROR(DivisionNotExact)
COULOMB_DEFINE_ERROR(NonzeroConstantTerm)
COULOMB_DEFINE_ERROR(ZeroWeight)
COULOMB_DEFINE_ERROR(NotAUnit)
COULOMB_DEFINE_ERROR(NonabelianUnsupported)
COULOMB_DEFINE_ERROR(RadiusTooSmall)
COULOMB_DEFINE_ERROR(NotMinuscule)
COULOMB_DEFINE_ERROR(NotDominant)
COULOMB_DEFINE_ERROR(UnconstrainedGauge)
COULOMB_DEFINE_ERROR(EliminationFailure)
COULOMB_DEFINE_ERROR(ParseError)
COULOMB_DEFINE_ERROR(InvalidArgument)

#undef COULOMB_DEFINE_ERROR

} // namespace coulomb
