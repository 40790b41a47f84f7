#pragma once

namespace groth {

/// Outcome of a property check in a report.
enum class CheckStatus {
  pass,
  fail,
  skipped,  // preconditions not met (e.g. uncertified optimum)
  partial,  // checked on a trimmed support only
};

inline const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::skipped: return "skipped";
    case CheckStatus::partial: return "partial";
  }
  return "?";
}

}  // namespace groth
