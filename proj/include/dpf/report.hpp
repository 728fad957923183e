#pragma once

// Text and JSON reports behind the command-line subcommands. JSON keys are
// stable; text output is line-oriented and deterministic.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dpf/model.hpp"
#include "dpf/singular.hpp"

namespace dpf {

enum class Format { kText, kJson };

struct Report {
  std::string body;  // ends with a newline
  bool ok = true;    // false for a domain rejection (exit status 1)
};

/// Parses "0,2,2,2" (degree 1) or "a,n1,n2" (degree 2). Throws
/// kInvalidArgument on a malformed list, kInvalidConstants when inadmissible.
StructureConstants parse_constants(int degree, const std::string& csv);

/// Parses "t,x,y,z,w" with rational entries.
Point parse_point(const std::string& csv);

Report validate_report(const FibrationModel& model, Format fmt);
Report table_report(const StructureConstants& sc, Format fmt);
Report classify_report(const StructureConstants& sc, Format fmt);
Report linsys_report(const StructureConstants& sc, int n_max, Format fmt);
Report linsys_report(const FibrationModel& model, int n_max, Format fmt);
Report catalog_report(const StructureConstants& sc, Format fmt);

/// V is the source, U the target of the map with the given forward
/// exponents.
Report transform_report(const FibrationModel& v, const FibrationModel& u,
                        const std::array<int, 4>& forward, Format fmt);

Report smooth_point_report(const FibrationModel& model, const ChartPoint& pt, Format fmt);
Report smooth_fp_report(const FibrationModel& model, const std::vector<std::uint64_t>& primes,
                        const FpSearchOptions& options, Format fmt);

struct SweepOptions {
  int degree = 2;
  int bound = 3;
  int n_max = 3;
  int uniqueness_trials = 0;
  std::uint64_t seed = 0x5eed;
};

Report sweep_report(const SweepOptions& opt, Format fmt);

}  // namespace dpf
