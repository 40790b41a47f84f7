#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "groth/matrix.hpp"
#include "groth/status.hpp"

namespace groth {

inline constexpr const char* kVersion = "0.1.0";

struct ReportItem {
  std::string name;
  double value = 0.0;
  std::optional<std::pair<double, double>> bracket;
  CheckStatus status = CheckStatus::pass;
  std::optional<double> slack;  // how far inside the asserted bound; negative = violated
  std::string note;
};

/// Results of one command. Serialized with a fixed field order so equal
/// runs give equal bytes.
struct Report {
  std::string version = kVersion;
  std::string command;
  std::uint64_t seed = 0;
  std::vector<ReportItem> items;
  std::vector<std::pair<std::string, DenseMatrix>> matrices;
  std::vector<std::pair<std::string, RVector>> vectors;
  std::string error_code;  // empty on success
  std::string error;

  ReportItem& add(std::string name, double value, CheckStatus status = CheckStatus::pass);
  /// pass unless some item failed; skipped/partial items do not fail a report.
  CheckStatus overall() const;
};

std::string serialize(const Report& r);
void write_report(const Report& r, const std::string& path);

}  // namespace groth
