#pragma once

#include <stdexcept>
#include <string>

namespace rulingsim {

/// Bad user input: malformed files, invalid parameters, incompatible graphs.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A generator could not produce an instance satisfying its certificate.
class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rulingsim
