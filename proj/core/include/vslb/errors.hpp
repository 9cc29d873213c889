#pragma once

#include <stdexcept>
#include <string>

namespace vslb {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Array shapes disagree with the lattice they are paired with.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A coefficient array does not describe a real-valued field.
class HermitianError : public Error {
 public:
  using Error::Error;
};

/// An operation was handed input outside its domain (non-solenoidal, nonzero mean, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent run configuration. `field()` names the offending key.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace vslb
