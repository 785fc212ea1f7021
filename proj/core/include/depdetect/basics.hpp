#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace depdetect {

// All integer and rational values in the pipeline are arbitrary precision.
// mpq_class keeps rationals canonical: lowest terms, positive denominator.
using Int = mpz_class;
using Rat = mpq_class;

// Contract-level failures. Each maps to one named error in the module contracts;
// everything derives from Error so callers can catch the whole family.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotPrime : Error { using Error::Error; };
struct ZeroInverse : Error { using Error::Error; };
struct EvenCharacteristic : Error { using Error::Error; };
struct PointNotOnCurve : Error { using Error::Error; };
struct SingularCurve : Error { using Error::Error; };
struct BadReduction : Error { using Error::Error; };
struct UnsupportedScale : Error { using Error::Error; };
struct DecompositionFailure : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct InvalidInstance : Error { using Error::Error; };
struct ConvergenceFailure : Error { using Error::Error; };
struct SingularGram : Error { using Error::Error; };
struct FactorizationOverflow : Error { using Error::Error; };
struct BadPrime : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

}  // namespace depdetect
