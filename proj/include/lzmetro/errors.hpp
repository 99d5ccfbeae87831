#pragma once

#include <stdexcept>
#include <string>

namespace lzm {

/// Failure of a numerical routine (integrator, quadrature) to reach the
/// requested accuracy. The message carries the routine's diagnostic.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// Evaluation at a pole of a meromorphic function.
class PoleError : public std::domain_error {
 public:
  explicit PoleError(const std::string& what) : std::domain_error(what) {}
};

/// Invalid user-supplied configuration. `field` names the offending key.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::invalid_argument(what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

}  // namespace lzm
