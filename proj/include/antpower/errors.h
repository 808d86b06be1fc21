#ifndef ANTPOWER_ERRORS_H_
#define ANTPOWER_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace antpower {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TopologyError : public Error {
 public:
  using Error::Error;
};

// A caller broke a documented precondition.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

// Internal bookkeeping went inconsistent (e.g. negative indirect cost).
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

// The exhaustive oracle refuses instances larger than its state budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// A flow has no route between its endpoints.
class UnroutableFlow : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace antpower

#endif  // ANTPOWER_ERRORS_H_
