#pragma once

#include <stdexcept>
#include <string>

namespace trapent {

// Every failure raised by the numerical library derives from Error, so callers
// (the CLI in particular) can separate numeric failures from usage errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain: gamma poles, odd mode indices,
// non-positive aspect ratios and similar.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Evaluation requested too close to a pole of F.
class NearPoleError : public Error {
 public:
  NearPoleError(const std::string& what, double distance)
      : Error(what), distance_(distance) {}
  double distance() const noexcept { return distance_; }

 private:
  double distance_;
};

// A convergent series hit its hard term cap before meeting its tolerance.
class SeriesCapError : public Error {
 public:
  using Error::Error;
};

class RootError : public Error {
 public:
  using Error::Error;
};

class NoRootError : public RootError {
 public:
  using RootError::RootError;
};

// More than one sign change inside a single pole interval.
class MultipleRootsError : public RootError {
 public:
  using RootError::RootError;
};

// Relative-motion denominator x - E_k vanishes for some retained mode.
class ResonantDenominatorError : public Error {
 public:
  using Error::Error;
};

class NormalizationError : public Error {
 public:
  using Error::Error;
};

class SymmetryError : public Error {
 public:
  using Error::Error;
};

}  // namespace trapent
