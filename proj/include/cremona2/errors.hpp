// Error taxonomy shared by every module.
//
// Each failure mode named in the module contracts is a distinct exception
// type so callers (and the CLI exit-code mapping) can tell a violated
// precondition from an internal bug.
#pragma once

#include <stdexcept>
#include <string>

namespace cremona2 {

/// Base class of every library error.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define CREMONA2_DEFINE_ERROR(Name)                                 \
  class Name : public Error {                                       \
   public:                                                          \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
  }

// ff
CREMONA2_DEFINE_ERROR(ReducibleModulus);
CREMONA2_DEFINE_ERROR(InvalidModulus);
CREMONA2_DEFINE_ERROR(MixedFields);
CREMONA2_DEFINE_ERROR(ZeroInverse);
CREMONA2_DEFINE_ERROR(NotADivisor);
CREMONA2_DEFINE_ERROR(NoSuchElement);
CREMONA2_DEFINE_ERROR(ParseError);
CREMONA2_DEFINE_ERROR(UnknownField);
// poly
CREMONA2_DEFINE_ERROR(MixedContexts);
CREMONA2_DEFINE_ERROR(ArityMismatch);
CREMONA2_DEFINE_ERROR(ZeroPolynomial);
CREMONA2_DEFINE_ERROR(ExponentOverflow);
// geom
CREMONA2_DEFINE_ERROR(ZeroVector);
CREMONA2_DEFINE_ERROR(TooManyPoints);
CREMONA2_DEFINE_ERROR(ChartFailure);
// frob
CREMONA2_DEFINE_ERROR(IndeterminatePoint);
CREMONA2_DEFINE_ERROR(PeriodOverflow);
CREMONA2_DEFINE_ERROR(UnsupportedSize);
// classify
CREMONA2_DEFINE_ERROR(UnsupportedPair);
CREMONA2_DEFINE_ERROR(MismatchReport);
// rmap
CREMONA2_DEFINE_ERROR(SpaceMismatch);
CREMONA2_DEFINE_ERROR(UnknownName);
CREMONA2_DEFINE_ERROR(WrongDimension);
CREMONA2_DEFINE_ERROR(ZeroFunction);
// cli
CREMONA2_DEFINE_ERROR(IoError);
CREMONA2_DEFINE_ERROR(BadCertificate);

#undef CREMONA2_DEFINE_ERROR

}  // namespace cremona2
