#pragma once

#include <string>
#include <vector>

#include "normsys/error.hpp"
#include "normsys/mas.hpp"
#include "normsys/norm.hpp"

namespace normsys {

struct Violation {
  std::string rule;    // e.g. "seriality", "strict-subset"
  std::string detail;  // offending state/agent/action, human readable
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }
  bool mentions(std::string_view rule) const;
  std::string to_string() const;
};

/// Raised by operations that require valid inputs.
class ValidationError : public Error {
 public:
  explicit ValidationError(ValidationReport report)
      : Error("validation failed:\n" + report.to_string()), report_(std::move(report)) {}
  const ValidationReport& report() const noexcept { return report_; }

 private:
  ValidationReport report_;
};

/// Checks every multiagent-system invariant; an empty report certifies a
/// well-formed system.
ValidationReport validate_mas(const Mas& mas);

/// Checks the norm against `mas`: shape, strict-subset rule, update range.
ValidationReport validate_norm(const Mas& mas, const NormativeSystem& norm);

}  // namespace normsys
