#pragma once

#include <stdexcept>
#include <string>

namespace psdisc {

// Base class for every validation failure raised by the library. The CLI maps
// these to exit code 2; Undefined (all-reject postselection) maps to exit 3.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct HermDefectTooLarge : Error { using Error::Error; };
struct ConvergenceFailure : Error { using Error::Error; };
struct NotPSD : Error { using Error::Error; };
struct ZeroOperator : Error { using Error::Error; };
struct DimMismatch : Error { using Error::Error; };
struct BadRank : Error { using Error::Error; };
struct ZeroProjector : Error { using Error::Error; };
struct BadPrior : Error { using Error::Error; };
struct NotDensity : Error { using Error::Error; };
struct SumExceedsIdentity : Error { using Error::Error; };
struct UnequalSupports : Error { using Error::Error; };
struct EqualSupports : Error { using Error::Error; };
struct CaseMismatch : Error { using Error::Error; };
struct CBoundViolated : Error { using Error::Error; };
struct MembershipViolated : Error { using Error::Error; };
struct SetEmptyForSupports : Error { using Error::Error; };
struct ZeroOverlap : Error { using Error::Error; };
struct ProjectorsNotOrthogonal : Error { using Error::Error; };
struct Degenerate : Error { using Error::Error; };

// Raised when the postselected error is requested for an (almost) all-reject
// measurement: the defining ratio has a vanishing denominator, so the value
// does not exist -- it is not 0.
struct Undefined : Error { using Error::Error; };

}  // namespace psdisc
