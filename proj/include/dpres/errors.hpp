#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dpres {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define DPRES_DEFINE_ERROR(Name)            \
  class Name : public Error {               \
   public:                                  \
    using Error::Error;                     \
  }

DPRES_DEFINE_ERROR(InvalidNode);
DPRES_DEFINE_ERROR(CapExceeded);
DPRES_DEFINE_ERROR(ShapeMismatch);
DPRES_DEFINE_ERROR(Disconnected);
DPRES_DEFINE_ERROR(NotBipartite);
DPRES_DEFINE_ERROR(NotDirected);
DPRES_DEFINE_ERROR(OwnerNotFound);
DPRES_DEFINE_ERROR(OddDegree);
DPRES_DEFINE_ERROR(NotDisjointSystem);
DPRES_DEFINE_ERROR(PairCountMismatch);
DPRES_DEFINE_ERROR(LayerMismatch);
DPRES_DEFINE_ERROR(PreconditionFailed);
DPRES_DEFINE_ERROR(InvariantViolation);
DPRES_DEFINE_ERROR(UsageError);

#undef DPRES_DEFINE_ERROR

/// Malformed input text; carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& reason)
      : Error("line " + std::to_string(line) + ": " + reason), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace dpres
