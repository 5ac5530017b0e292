#pragma once

#include <stdexcept>
#include <string>

namespace fnx {

// Base of every error raised by the library. The CLI maps
// MathCheckError to exit code 1 and everything else to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A mathematical check failed (bound violated, bijection mismatch).
class MathCheckError : public Error {
 public:
  using Error::Error;
};

#define FNX_DEFINE_ERROR(Name, Base)  \
  class Name : public Base {          \
   public:                            \
    using Base::Base;                 \
  };

FNX_DEFINE_ERROR(ParseError, Error)
FNX_DEFINE_ERROR(SpanError, Error)
FNX_DEFINE_ERROR(DomainError, Error)
FNX_DEFINE_ERROR(SingularError, Error)
FNX_DEFINE_ERROR(ZeroRowError, Error)
FNX_DEFINE_ERROR(ConsistencyError, Error)
FNX_DEFINE_ERROR(InconclusiveError, Error)
FNX_DEFINE_ERROR(RangeError, Error)
FNX_DEFINE_ERROR(EmptyError, Error)
FNX_DEFINE_ERROR(DimensionError, Error)
FNX_DEFINE_ERROR(DegeneracyError, Error)
FNX_DEFINE_ERROR(SizeError, Error)
FNX_DEFINE_ERROR(ZeroPolyError, Error)
FNX_DEFINE_ERROR(PositiveDimError, Error)
FNX_DEFINE_ERROR(DegenerateError, Error)
FNX_DEFINE_ERROR(FormError, Error)
FNX_DEFINE_ERROR(SmoothnessError, Error)
FNX_DEFINE_ERROR(ResolutionError, Error)
FNX_DEFINE_ERROR(ViolationError, MathCheckError)

#undef FNX_DEFINE_ERROR

}  // namespace fnx
