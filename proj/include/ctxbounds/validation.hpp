#pragma once

#include <string>
#include <vector>

namespace ctxbounds {

enum class Severity { Warning, Error };

const char* to_string(Severity s);

struct Finding {
  Severity severity = Severity::Error;
  std::string location;
  std::string message;
};

/// Collected findings of a structural or numerical check. `ok` holds iff no
/// finding has error severity.
struct ValidationReport {
  bool ok = true;
  std::vector<Finding> findings;

  void warn(std::string location, std::string message);
  void fail(std::string location, std::string message);

  std::size_t error_count() const;
  std::size_t warning_count() const;
};

}  // namespace ctxbounds
