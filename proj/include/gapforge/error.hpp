#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gapforge {

// Caller supplied something outside an operation's domain.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

class ParseError : public InputError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// A configured size limit would be exceeded. Never silently truncated.
class CapExceeded : public InputError {
 public:
  explicit CapExceeded(const std::string& what) : InputError(what) {}
};

// A supplied witness does not meet the precondition of a witness extractor.
class WitnessError : public InputError {
 public:
  explicit WitnessError(const std::string& what) : InputError(what) {}
};

// A seeded generator could not produce a verified object within its retry budget.
class GenerationError : public std::runtime_error {
 public:
  explicit GenerationError(const std::string& what) : std::runtime_error(what) {}
};

// A brute-force verification failed on an object that should satisfy it.
class VerificationError : public std::runtime_error {
 public:
  explicit VerificationError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a proven bound is observed violated; indicates a bug here.
class InternalFault : public std::logic_error {
 public:
  explicit InternalFault(const std::string& what) : std::logic_error(what) {}
};

}  // namespace gapforge
