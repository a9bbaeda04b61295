#pragma once

#include <stdexcept>
#include <string>

namespace cliffcoact {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Field / scalar layer.
struct CharTwoError : Error { using Error::Error; };
struct BadPrimeError : Error { using Error::Error; };
struct NotASquareBaseError : Error { using Error::Error; };  // d already a square
struct DivisionByZeroError : Error { using Error::Error; };
struct FieldMismatchError : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

// Algebra layer.
struct BadIndexError : Error { using Error::Error; };
struct AlgebraMismatchError : Error { using Error::Error; };
struct NotInvertibleError : Error { using Error::Error; };

// Hopf / comodule layer.
struct NotSubsetError : Error { using Error::Error; };
struct InvalidActionError : Error { using Error::Error; };
struct InvalidCoactionError : Error { using Error::Error; };
struct InvalidTupleError : Error { using Error::Error; };
struct NotAutomorphismError : Error { using Error::Error; };
struct FlagMismatchError : Error { using Error::Error; };

// Even-case splitting.
struct NotEvenError : Error { using Error::Error; };
struct NotSemisimpleError : Error { using Error::Error; };
struct DeltaNotSquareError : Error { using Error::Error; };

// Enumeration guards.
struct TooLargeError : Error { using Error::Error; };
struct UnsupportedError : Error { using Error::Error; };

// A broken internal invariant; always a bug.
struct InternalError : Error { using Error::Error; };

}  // namespace cliffcoact
