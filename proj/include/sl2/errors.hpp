#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sl2 {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ContextMismatch : Error {
  using Error::Error;
};
struct NotInvertible : Error {
  using Error::Error;
};
struct InvalidReduction : Error {
  using Error::Error;
};
struct InvalidArgument : Error {
  using Error::Error;
};
struct PreconditionError : Error {
  using Error::Error;
};
struct ConsistencyError : Error {
  using Error::Error;
};
struct ParseError : Error {
  using Error::Error;
};

// Thrown when a materialization would exceed the element cap.
struct FeasibilityError : Error {
  FeasibilityError(const std::string& what, std::uint64_t cap)
      : Error(what + " (cap " + std::to_string(cap) +
              " elements; raise with --max-elements or SL2_MAX_ELEMENTS)"),
        cap(cap) {}
  std::uint64_t cap;
};

}  // namespace sl2
