#pragma once

#include <stdexcept>
#include <string>

namespace modanom {

/// Base class for every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands built over different registries, caps or grids.
class StructuralError : public Error {
 public:
  using Error::Error;
};

class NotInvertible : public Error {
 public:
  using Error::Error;
};

class NotNilpotent : public Error {
 public:
  using Error::Error;
};

/// Numeric evaluation outside the upper half plane.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// theta(0, tau) vanishes identically; ask for the derivative instead.
class ZeroFunction : public Error {
 public:
  using Error::Error;
};

class SpecError : public Error {
 public:
  using Error::Error;
};

class CapError : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A numeric check cannot guarantee its truncation tail at the requested tolerance.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace modanom
