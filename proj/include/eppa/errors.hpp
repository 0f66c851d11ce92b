#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace eppa {

/// An operation was called with arguments outside its contract
/// (unknown vertex, non-injective map, map that is not a partial
/// automorphism, disconnected graph where connectivity is required...).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A construction would exceed the configured vertex cap. Carries the stage
/// so callers can report where the blowup happened.
class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(std::string stage, std::uint64_t requested, std::uint64_t cap)
      : std::runtime_error(stage + ": " + std::to_string(requested) +
                           " vertices requested, cap is " + std::to_string(cap)),
        stage_(std::move(stage)),
        requested_(requested),
        cap_(cap) {}

  const std::string& stage() const { return stage_; }
  std::uint64_t requested() const { return requested_; }
  std::uint64_t cap() const { return cap_; }

 private:
  std::string stage_;
  std::uint64_t requested_;
  std::uint64_t cap_;
};

/// A bounded search ran out of work budget before reaching a verdict.
class BudgetExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal invariant of the construction failed. Always a bug or a
/// corrupted input witness, never a legitimate outcome.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Malformed input file.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void ensure(bool condition, const std::string& what) {
  if (!condition) throw InvariantViolation(what);
}

}  // namespace eppa
