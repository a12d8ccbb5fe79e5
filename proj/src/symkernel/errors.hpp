#pragma once

#include <stdexcept>
#include <string>

namespace eds {

// Base class for every error raised by the symbolic layers. Code paths that
// reach the C boundary translate these into status codes plus messages.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class DivisionByZero : public Error {
public:
  explicit DivisionByZero(const std::string& what) : Error(what) {}
};

// Raised when a substitution or pullback makes a denominator vanish.
class VanishingDenominator : public Error {
public:
  explicit VanishingDenominator(const std::string& what) : Error(what) {}
};

// Raised by solve_linear when an equation is not degree <= 1 in the unknowns.
class NonlinearSystem : public Error {
public:
  explicit NonlinearSystem(const std::string& what) : Error(what) {}
};

class UnknownSymbolError : public Error {
public:
  explicit UnknownSymbolError(const std::string& what) : Error(what) {}
};

// Raised when a jet operation would exceed the chart's configured order.
class OrderOverflow : public Error {
public:
  explicit OrderOverflow(const std::string& what) : Error(what) {}
};

// Raised when an exterior operation needs a differential that has no rule.
class MissingDifferential : public Error {
public:
  explicit MissingDifferential(const std::string& what) : Error(what) {}
};

// Raised when ideal generators fail the independence precondition.
class DegenerateGenerators : public Error {
public:
  explicit DegenerateGenerators(const std::string& what) : Error(what) {}
};

class ParseError : public Error {
public:
  explicit ParseError(const std::string& what) : Error(what) {}
};

}  // namespace eds
