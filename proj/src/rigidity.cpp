#include "dpf/rigidity.hpp"

#include <algorithm>
#include <map>

#include "dpf/error.hpp"
#include "dpf/intersect.hpp"
#include "dpf/linsys.hpp"

namespace dpf {

const char* status_name(RigidityStatus s) {
  switch (s) {
    case RigidityStatus::kRigid: return "rigid";
    case RigidityStatus::kRigidGeneric: return "rigid-generic";
    case RigidityStatus::kNonRigid: return "non-rigid";
    case RigidityStatus::kOutOfClassification: return "out-of-classification";
  }
  return "?";
}

const char* link_type_name(LinkType t) {
  switch (t) {
    case LinkType::kI: return "I";
    case LinkType::kII: return "II";
    case LinkType::kIII: return "III";
    case LinkType::kIV: return "IV";
    case LinkType::kFlop: return "flop";
    case LinkType::kAntiFlip: return "anti-flip";
    case LinkType::kContraction: return "contraction";
  }
  return "?";
}

namespace {

struct Degree2Case {
  int a, n1, n2;
  const char* id;
  RigidityStatus status;
};

constexpr Degree2Case kDegree2Cases[] = {
    {0, 0, 2, "1", RigidityStatus::kRigidGeneric},
    {-2, 2, 4, "2", RigidityStatus::kRigidGeneric},
    {-3, 2, 6, "3", RigidityStatus::kRigidGeneric},
    {1, 0, 0, "4", RigidityStatus::kNonRigid},
    {0, 1, 1, "5", RigidityStatus::kNonRigid},
    {-1, 2, 2, "6", RigidityStatus::kNonRigid},
    {0, 0, 1, "7", RigidityStatus::kNonRigid},
    {-1, 1, 2, "8", RigidityStatus::kNonRigid},
};

const Degree2Case* find_case(const StructureConstants& sc) {
  for (const auto& c : kDegree2Cases) {
    if (c.a == sc.a && c.n1 == sc.n1 && c.n2 == sc.n2) return &c;
  }
  return nullptr;
}

std::string d2_tuple(const StructureConstants& sc) {
  return "a=" + std::to_string(sc.a) + ", n1=" + std::to_string(sc.n1) +
         ", n2=" + std::to_string(sc.n2);
}

}  // namespace

RigidityVerdict classify(const StructureConstants& sc) {
  require_valid(sc);
  RigidityVerdict v;
  if (sc.degree == 1) {
    if (sc == StructureConstants::d1(0, 2, 2, 2)) {
      v.status = RigidityStatus::kNonRigid;
      v.case_id = "d1-1";
      v.citation = "degree-1 rigidity theorem, exception 1: eps=0, n1=n2=n3=2";
    } else if (sc == StructureConstants::d1(0, 0, 1, 2)) {
      v.status = RigidityStatus::kNonRigid;
      v.case_id = "d1-2";
      v.citation = "degree-1 rigidity theorem, exception 2: eps=0, n1=0, n2=1, n3=2";
    } else {
      v.status = RigidityStatus::kRigid;
      v.citation = "degree-1 rigidity theorem: rigid outside the two exceptions";
    }
    return v;
  }
  const int s = sc.b() + 2 * sc.a;
  if (s > 2) {
    v.status = RigidityStatus::kRigid;
    v.citation = "degree-2 rigidity theorem: b+2a > 2 implies rigid";
    return v;
  }
  if (s <= 0) {
    v.status = RigidityStatus::kOutOfClassification;
    v.citation = "excluded: theorem asserts b+2a>0";
    return v;
  }
  if (const auto* c = find_case(sc)) {
    v.status = c->status;
    v.case_id = c->id;
    v.citation = "degree-2 rigidity theorem, b+2a=" + std::to_string(s) + ", case " + c->id +
                 ": " + d2_tuple(sc) +
                 (c->status == RigidityStatus::kRigidGeneric ? " (rigid for general members)"
                                                             : " (non-rigid)");
    return v;
  }
  v.status = RigidityStatus::kOutOfClassification;
  v.citation = "not realizable: b+2a=" + std::to_string(s) + " outside the listed cases";
  return v;
}

std::vector<StructureConstants> enumerate_constants(int degree, int bound) {
  std::vector<StructureConstants> out;
  if (degree == 1) {
    for (int eps = 0; eps <= bound; ++eps)
      for (int n1 = 0; n1 <= bound; ++n1)
        for (int n2 = n1; n2 <= bound; ++n2)
          for (int n3 = n2; n3 <= bound; ++n3) {
            const auto sc = StructureConstants::d1(eps, n1, n2, n3);
            if (constant_violations(sc).empty()) out.push_back(sc);
          }
  } else if (degree == 2) {
    for (int a = -bound; a <= bound; ++a)
      for (int n1 = 0; n1 <= bound; ++n1)
        for (int n2 = n1; n2 <= bound; ++n2) {
          const auto sc = StructureConstants::d2(a, n1, n2);
          if (constant_violations(sc).empty()) out.push_back(sc);
        }
  } else {
    throw Error(ErrorCode::kInvalidArgument, "degree must be 1 or 2");
  }
  return out;
}

// ---- catalog ---------------------------------------------------------------

namespace {

NumericFact checkable(const std::string& name, Rational v) {
  return {name, std::move(v), FactSource::kCheckable};
}

NumericFact literature(const std::string& name, Rational v) {
  return {name, std::move(v), FactSource::kLiterature};
}

const char* const kAntiFlipNote =
    "discrepancy: the case list gives (a,n1,n2)=(-1,2,2) while the anti-flip description "
    "is stated for (-1,2,3); the pencil |-K-F| it uses has h0=2 at (-1,2,2) and h0=1 at "
    "(-1,2,3), which has b+2a=3 and is rigid by the theorem";

MoriStructureRecord self_record(const StructureConstants& sc, std::string note) {
  MoriStructureRecord r;
  r.description = sc.degree == 1 ? "the del Pezzo fibration V/P1 of degree 1 itself"
                                 : "the del Pezzo fibration V/P1 of degree 2 itself";
  r.facts.push_back(checkable("(-K)^3", intersection_table(sc).minus_k_cubed));
  r.note = std::move(note);
  return r;
}

}  // namespace

std::vector<MoriStructureRecord> mori_structures(const StructureConstants& sc) {
  const RigidityVerdict v = classify(sc);
  std::vector<MoriStructureRecord> out;
  const std::string id = v.case_id.value_or("");

  if (sc.degree == 1 && id == "d1-1") {
    auto self = self_record(sc, "s_b is the only curve in its class");
    self.facts.push_back(checkable("N(s_b) summand 1", -1));
    self.facts.push_back(checkable("N(s_b) summand 2", -1));
    self.facts.push_back(literature("|Bir(V)| for general V", 2));
    out.push_back(self);
    MoriStructureRecord u;
    u.description =
        "U/P1 obtained by the flop centred at s_b; the strict transform of the pencil "
        "|-K-F| is base point free on U and makes it a degree-1 fibration with the same "
        "structure constants";
    u.link = LinkType::kIV;
    u.facts.push_back(checkable("h0(-K-F)", 2));
    u.note = "V and U are the only non-singular Mori fibrations in the class";
    out.push_back(u);
    return out;
  }
  if (sc.degree == 1 && id == "d1-2") {
    auto self = self_record(sc, "");
    self.facts.push_back(checkable("h0(-K-2F)", 1));
    self.facts.push_back(checkable("N(s_b) summand 1", 0));
    self.facts.push_back(checkable("N(s_b) summand 2", -1));
    out.push_back(self);
    MoriStructureRecord cone;
    cone.description =
        "the double cone U over the Veronese surface, a Fano threefold of index 2 with "
        "Picard rank 1; |3(-K)-3F| contracts the unique member G_V of |-K-2F| along its rulings";
    cone.link = LinkType::kIII;
    cone.facts.push_back(literature("(-K_U)^3", 8));
    cone.facts.push_back(checkable("h0(-K-2F)", 1));
    out.push_back(cone);
    MoriStructureRecord fam;
    fam.description =
        "degree-1 fibrations V_l from blowing up the curves l of a two-dimensional family of "
        "elliptic curves on U (Gorenstein with one double point when l is nodal or cuspidal)";
    fam.link = LinkType::kIII;
    fam.conjectural = true;
    fam.note = "conjecturally U and the V_l are all Mori structures";
    out.push_back(fam);
    return out;
  }
  if (sc.degree == 2 && id == "4") {
    out.push_back(self_record(sc, "the ambient bundle is P1 x P2"));
    MoriStructureRecord cb;
    cb.description =
        "conic bundle V -> P2 given by the second projection of P1 x P2; P1 <- V -> P2 is a "
        "trivial link";
    cb.link = LinkType::kIV;
    cb.facts.push_back(checkable("discriminant degree", 8));
    out.push_back(cb);
    return out;
  }
  if (sc.degree == 2 && id == "5") {
    out.push_back(self_record(sc, "|-2K| contracts V onto a double quadric cone in P4"));
    MoriStructureRecord flop;
    flop.description =
        "a second degree-2 fibration with the same structure constants after flopping the "
        "curves of class s0";
    flop.link = LinkType::kFlop;
    flop.facts.push_back(literature("curves of class s0 (at most)", 2));
    flop.note = "exactly two structures is proven for general members whose branch quartic "
                "avoids the cone vertex";
    out.push_back(flop);
    return out;
  }
  if (sc.degree == 2 && id == "6") {
    auto self = self_record(sc, kAntiFlipNote);
    self.facts.push_back(checkable("h0(-K-F)", 2));
    out.push_back(self);
    MoriStructureRecord af;
    af.description =
        "anti-flip centred at the unique curve C of class s0 to U/P1, a degree-1 fibration "
        "with one non-Gorenstein point of index 2; general members of |-K-F| become its fibers";
    af.link = LinkType::kAntiFlip;
    af.facts.push_back(literature("N(C) summand 1", -1));
    af.facts.push_back(literature("N(C) summand 2", -2));
    af.facts.push_back(checkable("h0(-K-F)", 2));
    af.note = std::string("conjecturally V and U are all Mori structures; ") + kAntiFlipNote;
    out.push_back(af);
    return out;
  }
  if (sc.degree == 2 && id == "7") {
    auto self = self_record(sc, "");
    self.facts.push_back(checkable("h0(-K-2F)", 1));
    out.push_back(self);
    MoriStructureRecord ds;
    ds.description =
        "the double space U of index 2 (double cover of P3 branched in a quartic); the unique "
        "member of |-K-2F|, an elliptic curve times a line, contracts onto U";
    ds.link = LinkType::kIII;
    ds.facts.push_back(checkable("h0(-K-2F)", 1));
    out.push_back(ds);
    MoriStructureRecord fam;
    fam.description =
        "degree-2 fibrations V_l from curves l of genus 1 and degree 2 on U, and fibrations "
        "into cubic surfaces when l splits into two lines";
    fam.link = LinkType::kIII;
    fam.conjectural = true;
    fam.note = "conjecturally U and the V_l are all Mori structures";
    out.push_back(fam);
    return out;
  }
  if (sc.degree == 2 && id == "8") {
    auto self = self_record(sc, "");
    self.facts.push_back(checkable("h0(H-2F)", 1));
    out.push_back(self);
    MoriStructureRecord fl;
    fl.description =
        "flop of the unique curve of class s0, then contraction of the strict transform of "
        "G_V in |H-2F| to a double cone over the Veronese surface with one double point";
    fl.link = LinkType::kFlop;
    fl.facts.push_back(literature("N(s0) summand 1", -1));
    fl.facts.push_back(literature("N(s0) summand 2", -1));
    fl.facts.push_back(checkable("h0(H-2F)", 1));
    out.push_back(fl);
    MoriStructureRecord fam;
    fam.description = "singular Gorenstein degree-1 fibrations on that double cone";
    fam.link = LinkType::kIII;
    fam.conjectural = true;
    fam.note = "conjecturally these are all Mori structures";
    out.push_back(fam);
    return out;
  }

  std::string note;
  if (v.status == RigidityStatus::kRigidGeneric) {
    note = "rigid for general members; the generality assumption is believed removable";
  } else if (v.status == RigidityStatus::kOutOfClassification) {
    note = "outside the classification: " + v.citation;
  } else {
    note = "unique non-singular Mori fibration in its class";
  }
  if (sc == StructureConstants::d2(-1, 2, 3)) note += "; " + std::string(kAntiFlipNote);
  auto self = self_record(sc, note);
  if (sc == StructureConstants::d2(-1, 2, 3)) self.facts.push_back(checkable("h0(-K-F)", 1));
  out.push_back(self);
  return out;
}

Rational recompute_fact(const StructureConstants& sc, const std::string& name) {
  require_valid(sc);
  // h0(-K - jF) as a one-fiber-weight count
  auto h0_minus_k = [&](int j) -> long {
    if (sc.degree == 2) return h0_double_cover_d2(sc, 1, 2 - sc.a - sc.b() - j);
    const auto m = generic_model(sc);
    return h0_bidegree(m, 1, anticanonical_base_twist(m) - j);
  };
  if (name == "(-K)^3") return intersection_table(sc).minus_k_cubed;
  if (name == "h0(-K-F)") return h0_minus_k(1);
  if (name == "h0(-K-2F)") return h0_minus_k(2);
  if (name == "h0(H-2F)" && sc.degree == 2) return h0_double_cover_d2(sc, 1, -2);
  if (name == "N(s_b) summand 1") return normal_bundle_of_section(sc).first;
  if (name == "N(s_b) summand 2") return normal_bundle_of_section(sc).second;
  if (name == "discriminant degree" && sc.degree == 2) {
    const auto ad = ambient_data(sc);
    if (sc.n1 != 0 || sc.n2 != 0 || ad.r_class.l != 2) {
      throw Error(ErrorCode::kInvalidArgument,
                  "discriminant degree needs a (2,4) branch divisor on P1 x P2");
    }
    // Over a point of P2 the branch locus is a binary quadric whose
    // coefficients are forms of degree m on P2; the discriminant has degree 2m.
    return 2 * ad.r_class.m;
  }
  throw Error(ErrorCode::kInvalidArgument, "no verifier for fact '" + name + "'");
}

std::vector<FactCheck> verify_catalog(const StructureConstants& sc) {
  std::vector<FactCheck> out;
  for (const auto& rec : mori_structures(sc)) {
    for (const auto& f : rec.facts) {
      if (f.source != FactSource::kCheckable) continue;
      FactCheck c;
      c.record = rec.description;
      c.name = f.name;
      c.stored = f.value;
      c.computed = recompute_fact(sc, f.name);
      c.ok = c.stored == c.computed;
      out.push_back(std::move(c));
    }
  }
  return out;
}

}  // namespace dpf
