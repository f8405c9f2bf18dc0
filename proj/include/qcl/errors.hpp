#pragma once

#include <stdexcept>
#include <string>

namespace qcl {

/// Evaluation requested outside the domain where an object is defined.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A quadrature or root solve did not reach its requested accuracy.
class NumericFailure : public std::runtime_error {
 public:
  NumericFailure(const std::string& what, double achieved)
      : std::runtime_error(what + " (achieved error " + std::to_string(achieved) + ")"),
        achieved_(achieved) {}
  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

/// Field evaluated on (or arbitrarily close to) its own source worldline.
class SingularityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Fock truncation too small for the requested evolution.
class TruncationLeakage : public std::runtime_error {
 public:
  TruncationLeakage(const std::string& what, double leakage)
      : std::runtime_error(what), leakage_(leakage) {}
  double leakage() const noexcept { return leakage_; }

 private:
  double leakage_;
};

/// Malformed or out-of-schema scenario configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qcl
