#pragma once

// The verification battery behind `k3lab verify`: one entry per check, with a
// status that drives the exit code.

#include "k3lab/stability.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace k3lab {

enum class Status {
  Pass,
  Fail,
  Flagged,  // both sides computed and shown, never adjudicated
  Skipped,  // precondition (e.g. a non-trivial Brauer class) absent
};
std::string to_string(Status s);

struct ReportEntry {
  std::string name;
  std::string location;  // which statement the check exercises
  Status status = Status::Fail;
  std::string expected;
  std::string actual;
};

struct BatteryOptions {
  int scan_bound = kDefaultScanBound;
  int jobs = 1;
};

std::vector<ReportEntry> run_battery(const Scenario& sc, const BatteryOptions& opts = {});

/// 0 when no entry failed, 1 otherwise. Flagged and skipped entries never count.
int exit_code(const std::vector<ReportEntry>& entries);

/// {"checks": [...], "exit": int}
nlohmann::json report_json(const std::vector<ReportEntry>& entries);
/// One line per entry: "name: status, expected X, actual Y [location]".
std::string report_text(const std::vector<ReportEntry>& entries);

/// Pic(S,B) intersected with v^perp, for v = (0, h, eps).
Lattice fibre_picard(const Scenario& sc, const Integer& eps);

/// True when h = e1+e2 and B = (e2+lambda)/2 in the coordinates of the first U block.
bool in_normal_form(const Scenario& sc);

}  // namespace k3lab
