#pragma once

#include <stdexcept>
#include <string>

namespace entroscope {

// Invalid input or violated precondition. The message names the offending
// parameter so front ends can surface it verbatim.
class domain_error : public std::invalid_argument {
 public:
  explicit domain_error(const std::string& what) : std::invalid_argument(what) {}
};

// A mesh too coarse for the requested cutoff. Carries the panel count that
// would satisfy the resolution guard.
class resolution_error : public domain_error {
 public:
  resolution_error(const std::string& what, long required_panels)
      : domain_error(what), required_panels(required_panels) {}
  long required_panels;
};

// Two meshes closer than their own panel scale.
class proximity_error : public domain_error {
 public:
  explicit proximity_error(const std::string& what) : domain_error(what) {}
};

// A numerical routine failed to deliver (eigenvalue out of range, quadrature
// not converging). Distinct from bad input.
class numerical_error : public std::runtime_error {
 public:
  explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace entroscope
