#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace translucent {

// Raised for malformed user input: files, names, indices, parameters.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t position)
      : InputError(what + " at position " + std::to_string(position)), position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

}  // namespace translucent
