#pragma once

#include <stdexcept>
#include <string>

namespace toral {

// Every library error carries a stable name so the CLI can report it verbatim.
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& what)
        : std::runtime_error(what), name_(std::move(name)) {}
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

#define TORAL_DEFINE_ERROR(Name)                                              \
    class Name : public Error {                                               \
    public:                                                                   \
        explicit Name(const std::string& what) : Error(#Name, what) {}        \
    }

TORAL_DEFINE_ERROR(NotHyperbolic);
TORAL_DEFINE_ERROR(MalformedPartition);
TORAL_DEFINE_ERROR(NonConvergence);
TORAL_DEFINE_ERROR(UnknownCatalogEntry);
TORAL_DEFINE_ERROR(DomainMismatch);
TORAL_DEFINE_ERROR(InadmissibleWindow);
TORAL_DEFINE_ERROR(RegimeViolation);
TORAL_DEFINE_ERROR(OutOfWindow);
TORAL_DEFINE_ERROR(EmptyRange);
TORAL_DEFINE_ERROR(WindowTooSmall);
TORAL_DEFINE_ERROR(BudgetExceeded);
TORAL_DEFINE_ERROR(DegenerateFit);

#undef TORAL_DEFINE_ERROR

class BoundaryHit : public Error {
public:
    BoundaryHit(int index, const std::string& what)
        : Error("BoundaryHit", what), index_(index) {}
    // Iterate exponent j at which T^j x fell on a partition boundary.
    int index() const noexcept { return index_; }

private:
    int index_;
};

}  // namespace toral
