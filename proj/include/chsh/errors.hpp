#pragma once

#include <stdexcept>
#include <string>

namespace chsh {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A basis parameter left [0, 1].
class ParamOutOfRange : public Error {
 public:
  using Error::Error;
};

// A state construction collapsed to the null vector.
class DegenerateState : public Error {
 public:
  using Error::Error;
};

// Input to a measurement is not a valid density matrix.
class InvalidDensity : public Error {
 public:
  using Error::Error;
};

}  // namespace chsh
