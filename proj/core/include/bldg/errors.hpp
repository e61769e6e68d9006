#pragma once

#include <stdexcept>
#include <string>

namespace bldg {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define BLDG_DECLARE_ERROR(Name)            \
  class Name : public Error {               \
   public:                                  \
    using Error::Error;                     \
  };

BLDG_DECLARE_ERROR(BoundExceeded)
BLDG_DECLARE_ERROR(SystemMismatch)
BLDG_DECLARE_ERROR(InvalidSpec)
BLDG_DECLARE_ERROR(FieldMismatch)
BLDG_DECLARE_ERROR(DivisionByZero)
BLDG_DECLARE_ERROR(PrecisionExhausted)
BLDG_DECLARE_ERROR(FrobeniusNotInvertible)
BLDG_DECLARE_ERROR(UnsupportedSpec)
BLDG_DECLARE_ERROR(NotReduced)
BLDG_DECLARE_ERROR(SearchBudgetExceeded)
BLDG_DECLARE_ERROR(NotFound)
BLDG_DECLARE_ERROR(ParseError)

#undef BLDG_DECLARE_ERROR

}  // namespace bldg
