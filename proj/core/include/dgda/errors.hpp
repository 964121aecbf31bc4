#pragma once

#include <stdexcept>
#include <string>

namespace dgda {

class DgdaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public DgdaError {
 public:
  using DgdaError::DgdaError;
};

// Raised when an input violates a contract; carries the offending generator
// label and a printed residue when one exists.
class PreconditionError : public DgdaError {
 public:
  PreconditionError(const std::string& what, std::string generator = {},
                    std::string residue = {})
      : DgdaError(what), generator_(std::move(generator)), residue_(std::move(residue)) {}

  const std::string& generator() const { return generator_; }
  const std::string& residue() const { return residue_; }

 private:
  std::string generator_;
  std::string residue_;
};

// A computation needed data beyond the configured order window.
class WindowExit : public DgdaError {
 public:
  using DgdaError::DgdaError;
};

class ParseError : public DgdaError {
 public:
  using DgdaError::DgdaError;
};

}  // namespace dgda
