#pragma once

// Section counts for |n(-K)+kF| and the base-component test.

#include <optional>
#include <vector>

#include "dpf/exactpoly.hpp"
#include "dpf/model.hpp"

namespace dpf {

/// h0 of O_V(n, k) on a P1 model: coordinate monomials of fiber weight n
/// times binary forms of the complementary base degree, minus the multiples
/// of the equation. For germ models k is ignored and the single-fiber count
/// is returned. Throws kInvalidModel, or kReducibleEquation when the
/// equation fails the irreducibility probe.
long h0_bidegree(const FibrationModel& model, int n, int k);

/// Base twist beta with -K = O_V(1, beta): sum of twists + 2 - delta.
int anticanonical_base_twist(const FibrationModel& model);

/// h0(V, nH + kF) for the degree-2 double cover of P(O + O(n1) + O(n2)).
long h0_double_cover_d2(const StructureConstants& sc, int n, int k);

/// Fiber monomials spanning the sections of O_V(n, k) modulo the equation
/// (w-degree at most 1), each appearing with a non-empty coefficient space.
std::vector<BigradedPoly> section_monomials(const WeightSystem& ws, const Twists& twists,
                                            int n, int k);

struct LinearSystemStatus {
  int n = 0;
  long dim_h0 = 0;
  std::optional<BigradedPoly> base_component;
};

enum class ConjectureVerdict { kSupportsRigidity, kSupportsNonRigidity };

const char* verdict_name(ConjectureVerdict v);  // "supports-rigidity", ...

struct ConjectureStatus {
  std::vector<LinearSystemStatus> rows;  // n = 1..n_max, for |n(-K) - F|
  ConjectureVerdict verdict = ConjectureVerdict::kSupportsRigidity;
};

/// Uses the hypersurface engine on a P1 model with twists.
ConjectureStatus conjecture_status(const FibrationModel& model, int n_max = 6);

/// Degree 1: the generic model with catalog twists. Degree 2: the double
/// cover engine.
ConjectureStatus conjecture_status(const StructureConstants& sc, int n_max = 6);

}  // namespace dpf
