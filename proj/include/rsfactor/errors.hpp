#pragma once

#include <stdexcept>
#include <string>

namespace rsfactor {

// Invalid run-time configuration (bad rank, malformed signature, ...).
struct ConfigurationError : std::runtime_error {
    explicit ConfigurationError(const std::string& what) : std::runtime_error(what) {}
};

// A caller-supplied value failed a precondition (e.g. a non-unimodular 2x2 block).
struct InvalidInput : std::runtime_error {
    explicit InvalidInput(const std::string& what) : std::runtime_error(what) {}
};

// A disk-constrained coordinate left (or touched) the unit disk.
struct DomainViolation : std::runtime_error {
    explicit DomainViolation(const std::string& what) : std::runtime_error(what) {}
};

// An element does not lie in the requested Birkhoff component, or the
// requested Weyl element is not available (e.g. not in W(K)).
struct StratumError : std::runtime_error {
    explicit StratumError(const std::string& what) : std::runtime_error(what) {}
};

// Pivot detection could not decide between two strata: the input sits
// numerically on a component boundary.  Samplers treat this as a resample
// signal, never as a silent change of the detected Weyl element.
struct StratumBoundary : std::runtime_error {
    explicit StratumBoundary(const std::string& what) : std::runtime_error(what) {}
};

// An internal consistency check failed; the input claimed a membership it
// does not have, or the computation broke down.
struct InvariantViolation : std::runtime_error {
    explicit InvariantViolation(const std::string& what) : std::runtime_error(what) {}
};

// A finite-difference computation is unreliable at the requested point
// (typically too close to a disk boundary for the chosen step).
struct NumericalWarning : std::runtime_error {
    explicit NumericalWarning(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rsfactor
