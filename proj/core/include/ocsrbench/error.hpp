//
// Project ocsrbench
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ocsrbench {

// Raised by the molfile and SMILES readers. line() is 1-based for molfiles;
// for SMILES it holds the 0-based character offset instead.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string &what, std::size_t location)
      : std::runtime_error(what), location_(location) { }

  std::size_t location() const noexcept { return location_; }

 private:
  std::size_t location_;
};

class MoleculeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class RenderError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class HarnessError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ocsrbench
