#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace grsaa {

/// Invalid user input or violated precondition (bad box, L > N, ...).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A per-sample residual or Jacobian produced NaN/Inf.
class NonFiniteResidual : public std::runtime_error {
 public:
  NonFiniteResidual(std::size_t sample_index, const std::string& what)
      : std::runtime_error(what), sample_index_(sample_index) {}

  std::size_t sample_index() const noexcept { return sample_index_; }

 private:
  std::size_t sample_index_;
};

/// A problem evaluator was called outside its domain (e.g. non-positive price).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Rank-deficient Jacobian in the continuation kernel.
class SingularJacobian : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace grsaa
