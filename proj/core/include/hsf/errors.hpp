#pragma once

#include <stdexcept>
#include <string>

namespace hsf {

// Exit-code contract used by the CLI: 2 precondition, 3 numerical,
// 4 construction-infeasible / geometric failure.
class PreconditionError : public std::runtime_error {
 public:
  explicit PreconditionError(const std::string& msg) : std::runtime_error(msg) {}
};

class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

// Parameters too tame for the construction (e.g. L < 2).
class ConstructionInfeasible : public std::runtime_error {
 public:
  explicit ConstructionInfeasible(const std::string& msg) : std::runtime_error(msg) {}
};

// A verified geometric inequality failed; carries the inequality and margin.
class GeometricFailure : public std::runtime_error {
 public:
  GeometricFailure(const std::string& inequality, double log_margin)
      : std::runtime_error("geometric failure: " + inequality +
                           " (log-margin " + std::to_string(log_margin) + ")"),
        inequality_(inequality),
        log_margin_(log_margin) {}

  const std::string& inequality() const { return inequality_; }
  double log_margin() const { return log_margin_; }

 private:
  std::string inequality_;
  double log_margin_;
};

inline int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const PreconditionError*>(&e)) return 2;
  if (dynamic_cast<const NumericalError*>(&e)) return 3;
  if (dynamic_cast<const ConstructionInfeasible*>(&e)) return 4;
  if (dynamic_cast<const GeometricFailure*>(&e)) return 4;
  return 1;
}

}  // namespace hsf
