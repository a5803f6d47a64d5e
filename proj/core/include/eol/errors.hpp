#pragma once

#include <stdexcept>
#include <string>

namespace eol {

struct DivisionByZero : std::domain_error {
  explicit DivisionByZero(const std::string& what) : std::domain_error(what) {}
};

struct NonPositiveBase : std::domain_error {
  explicit NonPositiveBase(const std::string& what) : std::domain_error(what) {}
};

struct OriginEvaluation : std::domain_error {
  explicit OriginEvaluation(const std::string& what) : std::domain_error(what) {}
};

struct NonSymmetricResult : std::runtime_error {
  explicit NonSymmetricResult(const std::string& what) : std::runtime_error(what) {}
};

struct DegenerateMetric : std::runtime_error {
  explicit DegenerateMetric(const std::string& what) : std::runtime_error(what) {}
};

struct NonInvariantIntegrand : std::runtime_error {
  explicit NonInvariantIntegrand(const std::string& what) : std::runtime_error(what) {}
};

struct PreconditionViolated : std::runtime_error {
  explicit PreconditionViolated(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace eol
