#pragma once

// Monomial fiber transformations between local models over a DVR with
// parameter t: the exponent constraint system, coefficient transport, and
// the designated points a non-trivial transformation forces to be singular.

#include <array>
#include <optional>
#include <random>
#include <string>

#include "dpf/exactpoly.hpp"
#include "dpf/model.hpp"

namespace dpf {

/// p = t^a x, q = t^b y, r = t^c z, s = t^d w (forward) and the inverse
/// exponents (backward). forward[i] + backward[i] = m * weight(i).
struct MonomialMap {
  int degree = 1;
  std::array<int, 4> forward{};
  std::array<int, 4> backward{};
  int m = 0;  // 0 for the identity

  /// True when either exponent set is all zero, i.e. the map is a global
  /// weighted rescaling or the identity.
  bool trivial() const;
  MonomialMap inverse() const;
  bool operator==(const MonomialMap&) const = default;
};

/// The unique backward exponents and m for a forward tuple. All-zero input
/// gives the identity with m = 0. Throws kInfeasible with the reason, or
/// kInvalidArgument for a negative entry or a bad degree.
MonomialMap solve_constraints(int degree, const std::array<int, 4>& forward);

/// Re-substitution check of every constraint equality and zero condition.
bool satisfies_constraints(const MonomialMap& map);

enum class ModelSide { kSource, kTarget };

const char* side_name(ModelSide s);  // "source", "target"

struct ForcedSingularity {
  ModelSide side = ModelSide::kSource;
  Point point{};  // (t, x, y, z, w) in the coordinates of that side
};

/// The weight-1 coordinate point forced singular on one side: on the source
/// the first of x, y (, z) with backward exponent 0; on the target the first
/// with forward exponent 0. Empty for trivial maps.
std::optional<Point> designated_point(const MonomialMap& map, ModelSide side);

/// Which side the case analysis forces: the source when the forward
/// w-exponent is at most the backward one, otherwise the target.
ModelSide forced_side(const MonomialMap& map);

struct TransportResult {
  FibrationModel source;  // germ model with equation t^(-2d) g(t^a x, ...)
  bool integral = false;
  std::optional<ForcedSingularity> forced_singularity;
};

/// Pulls the target equation back along the map. When the map is
/// non-trivial and the result integral, the designated point of the forced
/// side is confirmed by Jacobian evaluation (kInternalInconsistency if not).
/// Throws kNonIntegral for a non-integral result unless allow_non_integral.
TransportResult transport(const MonomialMap& map, const FibrationModel& target,
                          bool allow_non_integral = false);

/// v -> scalar[v] * t^t_power[v] * image[v] for each fiber coordinate v.
struct FiberSubstitution {
  std::array<Var, 4> image{Var::x, Var::y, Var::z, Var::w};
  std::array<int, 4> t_power{};
  std::array<Rational, 4> scalar{1, 1, 1, 1};

  bool is_identity() const;
  std::string to_string() const;  // "x -> t^-1 y, y -> t x, z -> z, w -> w"
  bool operator==(const FiberSubstitution&) const = default;
};

/// Throws kInvalidArgument when the substitution mixes weights.
BigradedPoly apply_substitution(const FiberSubstitution& sub, const BigradedPoly& p);

/// a == lambda * t^k * b for some non-zero rational lambda and integer k.
bool proportional_up_to_t_power(const BigradedPoly& a, const BigradedPoly& b);

bool preserves_equation(const FiberSubstitution& sub, const FibrationModel& model);

/// A weight-respecting permutation with t-power scalings (|power| <= bound)
/// taking b's equation to a multiple of a's, preferring the smallest total
/// |power|. The default bound is the largest t-degree in either equation
/// plus 2. Returns nullopt when no such substitution exists; throws
/// kSearchBoundExceeded when one exists over Q but not within the bound.
std::optional<FiberSubstitution> find_isomorphism(const FibrationModel& a,
                                                  const FibrationModel& b,
                                                  std::optional<int> bound = std::nullopt);

enum class UniquenessVerdict {
  kIsomorphism,
  kForcesSingularityInV,
  kForcesSingularityInU,
  kForcesSingularityInBoth,
  kNotRelated,
};

const char* verdict_name(UniquenessVerdict v);  // "isomorphism", ...

struct UniquenessReport {
  UniquenessVerdict verdict = UniquenessVerdict::kNotRelated;
  TransportResult forward;   // U pulled back to V
  TransportResult backward;  // V pulled back to U
  std::optional<Point> singular_in_v;
  std::optional<Point> singular_in_u;
};

/// V is the source and U the target of map. Not-related unless one of the
/// transports reproduces the other model's equation.
UniquenessReport uniqueness_check(const FibrationModel& v, const FibrationModel& u,
                                  const MonomialMap& map);

struct RandomInstance {
  MonomialMap map;
  FibrationModel target;
};

/// A random non-trivial map with m <= max_m and a valid germ target whose
/// coefficients have t-degree <= max_t_degree, biased towards integral
/// transport.
RandomInstance random_instance(int degree, std::mt19937_64& rng, int max_m = 8,
                               int max_t_degree = 12);

}  // namespace dpf
