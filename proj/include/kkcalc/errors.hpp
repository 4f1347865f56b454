#pragma once

#include <stdexcept>
#include <string>

namespace kkcalc {

// Base of every input or contract error raised by the library. The CLI maps
// these to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisibilityError : public Error {
 public:
  using Error::Error;
};

class NonPositiveError : public Error {
 public:
  using Error::Error;
};

class CommutativityError : public Error {
 public:
  using Error::Error;
};

class AlgebraMismatchError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class HomDataError : public Error {
 public:
  using Error::Error;
};

class IncompatibleRepError : public Error {
 public:
  using Error::Error;
};

class StageRangeError : public Error {
 public:
  using Error::Error;
};

class SeedIncompatibleError : public Error {
 public:
  using Error::Error;
};

class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace kkcalc
