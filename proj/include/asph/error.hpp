#pragma once

#include <stdexcept>
#include <string>

namespace asph {

enum class ErrorKind {
    DegenerateLeadingCoefficient,
    StencilOutOfDomain,
    NonFiniteState,
    ComplexLattice,
    PoleProximity,
    ValueOutOfRealRange,
    DegenerateTangentPlane,
    IndefiniteMetric,
    NotIsothermal,
    DomainViolation,
    SingularGauge,
    BranchAmbiguity,
    QuadratureFailure,
    NoBracket,
    RealityLoss,
    InvalidArgument,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace asph
