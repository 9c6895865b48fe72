#pragma once

#include <stdexcept>
#include <string>

namespace totref {

/// Base of every error raised by the library. `kind()` is a stable key used in reports.
class error : public std::runtime_error {
public:
    error(std::string kind, const std::string& what) : std::runtime_error(what), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define TOTREF_DEFINE_ERROR(Name)                                                    \
    class Name : public error {                                                      \
    public:                                                                          \
        explicit Name(const std::string& what) : error(#Name, what) {}               \
    }

TOTREF_DEFINE_ERROR(ParseError);
TOTREF_DEFINE_ERROR(UnknownVariable);
TOTREF_DEFINE_ERROR(RingMismatch);
TOTREF_DEFINE_ERROR(InvalidRing);
TOTREF_DEFINE_ERROR(DimensionMismatch);
TOTREF_DEFINE_ERROR(NotAComplex);
TOTREF_DEFINE_ERROR(InvalidResolution);
TOTREF_DEFINE_ERROR(WrongBackend);
TOTREF_DEFINE_ERROR(UnitInput);
TOTREF_DEFINE_ERROR(EquivalenceViolation);
TOTREF_DEFINE_ERROR(UnsupportedQuotient);
TOTREF_DEFINE_ERROR(PreconditionFailed);
TOTREF_DEFINE_ERROR(NotAUnit);
TOTREF_DEFINE_ERROR(NonHomogeneous);
TOTREF_DEFINE_ERROR(InconclusiveStrategy);
TOTREF_DEFINE_ERROR(TooLarge);

#undef TOTREF_DEFINE_ERROR

}  // namespace totref
