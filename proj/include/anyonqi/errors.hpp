#pragma once

#include <stdexcept>
#include <string>

namespace anyonqi {

// Base of every error thrown by the library. The CLI maps these to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed tree shape, or an operation that needs a different coupling shape.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Argument outside the operation's domain (unknown charge, bad index, mismatched bases).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Charge superselection rule violated: coherence between global-charge sectors.
class CssrViolation : public Error {
 public:
  using Error::Error;
};

// Requested fusion channel is not an allowed outcome.
class FusionError : public Error {
 public:
  using Error::Error;
};

// Text input (model, state, operator, tree label) could not be parsed.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace anyonqi
