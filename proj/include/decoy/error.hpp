#pragma once

#include <stdexcept>
#include <string>

namespace decoy {

// Malformed or inconsistent user input (documents, formulas, flags).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A checked property did not hold.
class PropertyFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A configured enumeration or size cap was exceeded.
class ResourceCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Solver-side consistency failure; never caused by user input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace decoy
