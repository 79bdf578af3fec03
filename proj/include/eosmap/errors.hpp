#pragma once

#include <stdexcept>
#include <string>

namespace eosmap {

// Base for all numerical / contract failures raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CriticalPointSingularity : Error { using Error::Error; };
struct NoInteriorFixedPoint : Error { using Error::Error; };
struct SeedOutOfDomain : Error { using Error::Error; };
struct InsufficientSamples : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };
struct DerivativeSingular : Error { using Error::Error; };
struct SeedOrbitNotFound : Error { using Error::Error; };
struct BranchTooShort : Error { using Error::Error; };
struct MonotoneMap : Error { using Error::Error; };
struct InvalidRange : Error { using Error::Error; };
struct EmptyScan : Error { using Error::Error; };

// Newton landed on an orbit whose true period divides the requested one.
struct ConvergedToLowerPeriod : Error {
    ConvergedToLowerPeriod(int requested, int found)
        : Error("refine: requested period " + std::to_string(requested) +
                " converged to period " + std::to_string(found)),
          requested_period(requested),
          found_period(found) {}
    int requested_period;
    int found_period;
};

}  // namespace eosmap
