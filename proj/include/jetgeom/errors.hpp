#pragma once

#include <stdexcept>
#include <string>

namespace jetgeom {

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SingularMatrix : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

class AsymmetricMatrix : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

class NonInvertibleMetric : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

/// A point lies outside the domain of the object being evaluated.
class DomainError : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

/// An extremal left the domain during integration; carries the last valid time.
class DomainExit : public DomainError {
 public:
  DomainExit(const std::string& what, double last_valid_t)
      : DomainError(what), last_valid_t_(last_valid_t) {}
  double last_valid_t() const noexcept { return last_valid_t_; }

 private:
  double last_valid_t_;
};

class MalformedField : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

class ParseError : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

class InvalidConstant : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

class SignatureMismatch : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

}  // namespace jetgeom
