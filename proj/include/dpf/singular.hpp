#pragma once

// Jacobian smoothness at chart points, exhaustive singular-point search
// over F_p, and coarse local data (Hessian rank, Brieskorn exponents).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dpf/exactpoly.hpp"
#include "dpf/model.hpp"

namespace dpf {

/// A point of the affine chart where the weight-1 coordinate `chart` is 1.
/// coords holds (t, x, y, z, w) with coords[chart] == 1.
struct ChartPoint {
  Var chart = Var::x;
  Point coords{0, 0, 0, 0, 0};
  bool operator==(const ChartPoint&) const = default;
};

/// Builds the chart point with the given coordinates and the chart
/// coordinate set to 1. Throws kInvalidChart for a chart of weight > 1.
ChartPoint chart_point(const WeightSystem& ws, Var chart, const Point& coords);

std::string to_string(const ChartPoint& p);  // "chart y: (t,x,y,z,w) = (0,0,1,0,0)"

/// False iff the equation and all five partial derivatives vanish.
/// Throws kInvalidChart when the point breaks the chart convention.
bool is_smooth_at(const FibrationModel& model, const ChartPoint& pt);

struct FpChartPoint {
  Var chart = Var::x;
  FpPoint coords{};
  auto operator<=>(const FpChartPoint&) const = default;
};

struct FpSearchOptions {
  std::optional<std::vector<std::uint64_t>> t_values;  // all of F_p when empty
  /// Singular points of the fibers V_t: the t-derivative is not required
  /// to vanish.
  bool fiber_only = false;
  unsigned threads = 0;  // 0: hardware concurrency
};

/// Every F_p point of the weight-1 charts (x = 1; x = 0, y = 1; and for
/// degree 2 x = y = 0, z = 1) where the reduced equation and its partials
/// vanish, sorted. Throws kDenominatorNotInvertible.
std::vector<FpChartPoint> singular_search_fp(const FibrationModel& model, std::uint64_t p,
                                             const FpSearchOptions& options = {});

struct SingularityReport {
  bool is_singular = true;
  BigradedPoly local_equation;  // chart equation with the point moved to 0
  int quadratic_rank = 0;
  int corank = 0;
  std::optional<std::vector<int>> brieskorn_exponents;  // ascending
  bool brieskorn_on_slice = false;  // exponents of a generic slice t = l(x,..)
  std::optional<long> milnor_number;
  std::optional<std::string> label_hint;
};

/// Throws kNotSingular when the point is smooth.
SingularityReport local_report(const FibrationModel& model, const ChartPoint& pt);

}  // namespace dpf
