#pragma once

#include <stdexcept>
#include <string>

namespace fgr {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Value outside the representable or admissible range (weights above the
// 2^40 cap, digits that do not fit the radix, ...).
class RangeError : public Error {
 public:
  using Error::Error;
};

class NoPrimeInRange : public Error {
 public:
  using Error::Error;
};

class InfeasiblePlanting : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// A caller broke an operation's precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// An internal invariant of a reduction failed. Always a bug.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

#define FGR_CHECK(cond, msg)                                              \
  do {                                                                    \
    if (!(cond)) throw ::fgr::InvariantViolation(std::string(msg) + " [" #cond "]"); \
  } while (0)

}  // namespace fgr
