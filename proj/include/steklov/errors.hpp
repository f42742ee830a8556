#pragma once

#include <stdexcept>
#include <string>

namespace steklov {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define STEKLOV_DEFINE_ERROR(Name)          \
  class Name : public Error {               \
   public:                                  \
    using Error::Error;                     \
  }

STEKLOV_DEFINE_ERROR(GridTooSmall);
STEKLOV_DEFINE_ERROR(NotReal);
STEKLOV_DEFINE_ERROR(NotPositive);
STEKLOV_DEFINE_ERROR(NonZeroSum);
STEKLOV_DEFINE_ERROR(WrongSum);
STEKLOV_DEFINE_ERROR(CanonicalizationFailure);
STEKLOV_DEFINE_ERROR(UnknownBracket);
STEKLOV_DEFINE_ERROR(TruncationTooSmall);
STEKLOV_DEFINE_ERROR(DegenerateDenominator);
STEKLOV_DEFINE_ERROR(NotHermitian);
STEKLOV_DEFINE_ERROR(ParseError);

#undef STEKLOV_DEFINE_ERROR

}  // namespace steklov
