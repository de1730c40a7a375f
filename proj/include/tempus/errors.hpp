#pragma once

#include <stdexcept>
#include <string>

namespace tempus {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// invalid arguments / refused constructions (CLI maps these to usage errors)
struct InvalidParam : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };
struct SingularGamma : Error { using Error::Error; };
struct DegenerateSpectrum : Error { using Error::Error; };

// runtime computation failures (CLI maps these to solver errors)
struct NonConvergent : Error { using Error::Error; };
struct QuadratureFailure : Error { using Error::Error; };
struct NotHermitian : Error { using Error::Error; };
struct NoRootInRange : Error { using Error::Error; };
struct AmbiguousRoot : Error { using Error::Error; };
struct FormUnavailable : Error { using Error::Error; };
struct NormDrift : Error { using Error::Error; };

} // namespace tempus
