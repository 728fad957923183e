#pragma once

// Del Pezzo fibrations of degree 1 and 2 as hypersurfaces in weighted
// projective bundles, and their discrete structure constants.

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dpf/exactpoly.hpp"

namespace dpf {

enum class BaseKind { kProjectiveLine, kGerm };

const char* base_kind_name(BaseKind kind);  // "P1" or "germ"

/// Base degrees (e_x, e_y, e_z, e_w): coordinate v is a section of
/// O(w_v, e_v) on the ambient bundle.
using Twists = std::array<int, 4>;

/// Structure constants: (eps, n1, n2, n3) for degree 1, (a, n1, n2) for
/// degree 2. Construction does not validate; see constant_violations.
struct StructureConstants {
  int degree = 1;
  int epsilon = 0;  // degree 1
  int a = 0;        // degree 2
  int n1 = 0;
  int n2 = 0;
  int n3 = 0;  // degree 1

  static StructureConstants d1(int epsilon, int n1, int n2, int n3);
  static StructureConstants d2(int a, int n1, int n2);

  int b() const { return degree == 1 ? n1 + n2 + n3 : n1 + n2; }
  /// Twist m of the pushed-forward bundle, normalized so the smallest
  /// splitting summand is 0.
  int m_twist() const;
  std::vector<int> values() const;  // in declaration order of the tuple
  std::string to_string() const;    // "0,2,2,2" or "1,0,0"

  bool operator==(const StructureConstants&) const = default;
};

/// Names of failed constraints; empty when the constants are admissible.
std::vector<std::string> constant_violations(const StructureConstants& sc);

/// Throws kInvalidConstants listing the failed constraints.
void require_valid(const StructureConstants& sc);

/// Divisor class a*M + b*L on the ambient bundle.
struct AmbientClass {
  int m = 0;
  int l = 0;
  bool operator==(const AmbientClass&) const = default;
};

std::string to_string(const AmbientClass& c);  // "2M - 4L"

struct AmbientData {
  std::vector<int> splitting;
  std::optional<AmbientClass> q_class;  // degree 1 only
  AmbientClass r_class;
};

AmbientData ambient_data(const StructureConstants& sc);

/// Split degrees of the normal bundle of the base section (degree 1).
std::pair<int, int> normal_bundle_of_section(const StructureConstants& sc);

struct TwistData {
  Twists twists{};
  int delta = 0;  // base degree of the equation
};

/// Twists read off the splitting before any shift (some may be negative).
TwistData normalized_twists(const StructureConstants& sc);

/// Normalized twists plus the least weighted shift making all of them
/// non-negative; the twists written into model files.
TwistData catalog_twists(const StructureConstants& sc);

struct FibrationModel {
  WeightSystem weights = WeightSystem::for_degree(1);
  BaseKind base = BaseKind::kGerm;
  std::optional<Twists> twists;
  BigradedPoly equation;
  std::optional<StructureConstants> constants;

  int degree() const { return weights.degree(); }
  /// Base degree of the equation, 2*e_w; requires twists.
  int delta() const;
  /// f4 of w^2 + z^3 + z f4 + f6 (degree 1), or of w^2 + f4 (degree 2).
  BigradedPoly f4() const;
  /// f6 of the degree-1 normal form; zero for degree 2.
  BigradedPoly f6() const;

  bool operator==(const FibrationModel& o) const;
};

struct ValidationReport {
  std::vector<std::string> violations;  // failed check names
  std::vector<std::string> details;     // one line per violation
  std::vector<std::string> notes;       // unchecked properties
  bool valid() const { return violations.empty(); }
};

ValidationReport validate(const FibrationModel& model);

/// Throws kInvalidModel when validate reports any violation.
void require_valid(const FibrationModel& model);

/// Reads structure constants off the twists of a P1 model. Every check but
/// irreducibility must pass (kInvalidModel otherwise); throws
/// kInconsistentTwists when no admissible constants match.
StructureConstants infer_constants(const FibrationModel& model);

/// A P1 model with catalog twists whose equation contains every admissible
/// monomial, each with coefficient t^0 and t^c (c its coefficient degree).
FibrationModel generic_model(const StructureConstants& sc);

// ---- model files ----------------------------------------------------------

/// Line-oriented `key: value` text; `#` starts a comment line.
FibrationModel parse_model(std::string_view text);
std::string serialize_model(const FibrationModel& model);
FibrationModel load_model(const std::string& path);

}  // namespace dpf
