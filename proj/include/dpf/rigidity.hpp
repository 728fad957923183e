#pragma once

// Rigidity classification by structure constants and the catalog of
// alternative Mori structures in the non-rigid cases.

#include <optional>
#include <string>
#include <vector>

#include "dpf/exactpoly.hpp"
#include "dpf/model.hpp"

namespace dpf {

enum class RigidityStatus { kRigid, kRigidGeneric, kNonRigid, kOutOfClassification };

const char* status_name(RigidityStatus s);  // "rigid", "rigid-generic", ...

struct RigidityVerdict {
  RigidityStatus status = RigidityStatus::kRigid;
  std::optional<std::string> case_id;
  std::string citation;
};

RigidityVerdict classify(const StructureConstants& sc);

/// All admissible tuples with max(n_i, |a|) <= bound, ordered
/// lexicographically by their value tuple.
std::vector<StructureConstants> enumerate_constants(int degree, int bound);

enum class LinkType { kI, kII, kIII, kIV, kFlop, kAntiFlip, kContraction };

const char* link_type_name(LinkType t);

enum class FactSource { kCheckable, kLiterature };

struct NumericFact {
  std::string name;
  Rational value;
  FactSource source = FactSource::kCheckable;
};

struct MoriStructureRecord {
  std::string description;
  std::optional<LinkType> link;  // absent for the fibration itself
  bool conjectural = false;
  std::vector<NumericFact> facts;
  std::string note;
};

std::vector<MoriStructureRecord> mori_structures(const StructureConstants& sc);

/// Recomputes a checkable fact by name from intersect/linsys. Throws
/// kInvalidArgument for names without a verifier.
Rational recompute_fact(const StructureConstants& sc, const std::string& name);

struct FactCheck {
  std::string record;
  std::string name;
  Rational stored;
  Rational computed;
  bool ok = false;
};

/// Every checkable fact of every record for sc, recomputed.
std::vector<FactCheck> verify_catalog(const StructureConstants& sc);

}  // namespace dpf
