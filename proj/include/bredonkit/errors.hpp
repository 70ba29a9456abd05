#pragma once

#include <stdexcept>
#include <string>

namespace bredonkit {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define BREDONKIT_ERROR(Name)                                   \
  class Name : public Error {                                   \
   public:                                                      \
    explicit Name(const std::string& what) : Error(what) {}     \
  }

BREDONKIT_ERROR(ParseError);
BREDONKIT_ERROR(ExplosionError);
BREDONKIT_ERROR(MismatchedParent);
BREDONKIT_ERROR(Unsupported);
BREDONKIT_ERROR(ObjectMismatch);
BREDONKIT_ERROR(AxiomViolation);
BREDONKIT_ERROR(NotCohomological);
BREDONKIT_ERROR(NotNormal);
BREDONKIT_ERROR(NotAFamily);
BREDONKIT_ERROR(ResourceError);
BREDONKIT_ERROR(DegreeOutOfRange);
BREDONKIT_ERROR(IncompleteCoefficient);
BREDONKIT_ERROR(InvalidComplex);
BREDONKIT_ERROR(InvalidModule);
BREDONKIT_ERROR(PreconditionError);

#undef BREDONKIT_ERROR

}  // namespace bredonkit
