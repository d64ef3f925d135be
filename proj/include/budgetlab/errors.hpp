#pragma once

#include <stdexcept>
#include <string>

namespace budgetlab {

// Base class for all errors thrown by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class SupportTooLarge : public Error {
 public:
  using Error::Error;
};

class EmptyConditioning : public Error {
 public:
  using Error::Error;
};

class TooManyItems : public Error {
 public:
  using Error::Error;
};

// Exact SRev enumeration exceeded its size guard; callers fall back to the grid.
class TooLarge : public Error {
 public:
  using Error::Error;
};

class RequiresIndependence : public Error {
 public:
  using Error::Error;
};

class RequiresWeaklyCorrelated : public Error {
 public:
  using Error::Error;
};

class NotMhr : public Error {
 public:
  using Error::Error;
};

// A comparison against an irrational threshold fell inside its enclosure.
class InexactComparison : public Error {
 public:
  using Error::Error;
};

}  // namespace budgetlab
