#include <gtest/gtest.h>

#include <random>

#include "dpf/error.hpp"
#include "dpf/fibertrans.hpp"

using namespace dpf;

namespace {

FibrationModel example(const std::string& name) {
  return load_model(std::string(DPF_MODELS_DIR) + "/" + name + ".model");
}

Point pt(int t, int x, int y, int z, int w) { return {t, x, y, z, w}; }

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInternalInconsistency;
}

}  // namespace

TEST(SolveConstraints, SmoothCaseTuples) {
  const auto d1 = solve_constraints(1, {0, 6, 2, 3});
  EXPECT_EQ(d1.m, 6);
  EXPECT_EQ(d1.backward, (std::array<int, 4>{6, 0, 10, 15}));
  const auto d2 = solve_constraints(2, {1, 4, 0, 2});
  EXPECT_EQ(d2.m, 4);
  EXPECT_EQ(d2.backward, (std::array<int, 4>{3, 0, 4, 6}));
}

TEST(SolveConstraints, AutomorphismTuples) {
  const auto d2 = solve_constraints(2, {1, 2, 0, 2});
  EXPECT_EQ(d2.m, 2);
  EXPECT_EQ(d2.backward, (std::array<int, 4>{1, 0, 2, 2}));
  // The printed degree-1 backward tuple (0,2,2,3) does not satisfy the
  // system; the unique solution is (0,1,0,0) with m = 1.
  const auto d1 = solve_constraints(1, {1, 0, 2, 3});
  EXPECT_EQ(d1.m, 1);
  EXPECT_EQ(d1.backward, (std::array<int, 4>{0, 1, 0, 0}));
  MonomialMap printed{1, {1, 0, 2, 3}, {0, 2, 2, 3}, 1};
  EXPECT_FALSE(satisfies_constraints(printed));
  printed.m = 2;
  EXPECT_FALSE(satisfies_constraints(printed));
}

TEST(SolveConstraints, IdentityAndInfeasible) {
  const auto id = solve_constraints(1, {0, 0, 0, 0});
  EXPECT_EQ(id.m, 0);
  EXPECT_TRUE(id.trivial());
  EXPECT_EQ(code_of([] { solve_constraints(1, {1, 1, 2, 2}); }), ErrorCode::kInfeasible);
  EXPECT_EQ(code_of([] { solve_constraints(1, {1, 1, 2, 3}); }), ErrorCode::kInfeasible);
  EXPECT_EQ(code_of([] { solve_constraints(2, {0, 0, 0, 1}); }), ErrorCode::kInfeasible);
  EXPECT_EQ(code_of([] { solve_constraints(2, {-1, 0, 0, 0}); }), ErrorCode::kInvalidArgument);
}

TEST(Property, SolvedMapsSatisfyEveryConstraint) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> e(0, 9);
  int solved = 0;
  for (int i = 0; i < 4000; ++i) {
    const int degree = 1 + i % 2;
    std::array<int, 4> f{e(rng), e(rng), e(rng), e(rng)};
    f[e(rng) % 4] = 0;
    if (degree == 1 && e(rng) < 5) {
      const int k = f[2] / 2;
      f[2] = 2 * k;
      f[3] = 3 * k;
    }
    try {
      const auto map = solve_constraints(degree, f);
      EXPECT_TRUE(satisfies_constraints(map));
      EXPECT_TRUE(satisfies_constraints(map.inverse()));
      ++solved;
    } catch (const Error& err) {
      EXPECT_EQ(err.code(), ErrorCode::kInfeasible);
    }
  }
  EXPECT_GT(solved, 500);
}

TEST(Transport, SmoothCaseDegreeOne) {
  const auto v = example("d1_smooth_V");
  const auto u = example("d1_smooth_U");
  const auto r = transport(solve_constraints(1, {0, 6, 2, 3}), u);
  EXPECT_TRUE(r.integral);
  EXPECT_EQ(to_text(r.source.equation), to_text(v.equation));
  EXPECT_EQ(to_text(r.source.f6()), "t^24 x y^5 + x^5 y");
  ASSERT_TRUE(r.forced_singularity);
  EXPECT_EQ(r.forced_singularity->side, ModelSide::kSource);
  EXPECT_EQ(r.forced_singularity->point, pt(0, 0, 1, 0, 0));
}

TEST(Transport, SmoothCaseDegreeTwo) {
  const auto v = example("d2_smooth_V");
  const auto r = transport(solve_constraints(2, {1, 4, 0, 2}), example("d2_smooth_U"));
  EXPECT_EQ(to_text(r.source.equation), to_text(v.equation));
  EXPECT_EQ(r.source.f4(), parse_poly("y z^3 + t x^4 + t^12 y^4", v.weights));
  ASSERT_TRUE(r.forced_singularity);
  EXPECT_EQ(r.forced_singularity->point, pt(0, 0, 1, 0, 0));
  EXPECT_TRUE(jacobian_vanishes(v.equation, r.forced_singularity->point));
}

TEST(Transport, AutomorphismDegreeTwo) {
  const auto r = transport(solve_constraints(2, {1, 2, 0, 2}), example("d2_auto_U"));
  EXPECT_EQ(to_text(r.source.equation), to_text(example("d2_auto_V").equation));
}

TEST(Transport, PrintedDegreeOneAutomorphismTableIsNotIntegral) {
  const auto map = solve_constraints(1, {1, 0, 2, 3});
  const auto u = example("d1_auto_U");
  EXPECT_EQ(code_of([&] { transport(map, u); }), ErrorCode::kNonIntegral);
  EXPECT_FALSE(transport(map, u, true).integral);
}

TEST(Transport, IdentityMap) {
  const auto v = example("d1_smooth_V");
  const auto r = transport(solve_constraints(1, {0, 0, 0, 0}), v);
  EXPECT_TRUE(r.integral);
  EXPECT_EQ(r.source.equation, v.equation);
  EXPECT_FALSE(r.forced_singularity);
}

TEST(Property, ForcedPointIsSingularAndReverseTransportIsIdentity) {
  for (int degree : {1, 2}) {
    std::mt19937_64 rng(0x5eed + degree);
    int integral = 0;
    for (int i = 0; i < 300; ++i) {
      const auto inst = random_instance(degree, rng);
      const auto r = transport(inst.map, inst.target, true);
      if (!r.integral) continue;
      ++integral;
      ASSERT_TRUE(r.forced_singularity);
      const auto& fs = *r.forced_singularity;
      const auto& eq = fs.side == ModelSide::kSource ? r.source.equation : inst.target.equation;
      EXPECT_TRUE(jacobian_vanishes(eq, fs.point));
      const auto back = transport(inst.map.inverse(), r.source);
      EXPECT_EQ(back.source.equation, inst.target.equation);
    }
    EXPECT_GT(integral, 200) << "degree " << degree;
  }
}

TEST(Preserves, Examples) {
  const auto v = example("d1_auto_V");
  FiberSubstitution chi;
  chi.image = {Var::y, Var::x, Var::z, Var::w};
  chi.t_power = {-1, 1, 0, 0};
  EXPECT_EQ(chi.to_string(), "x -> t^-1 y, y -> t x, z -> z, w -> w");
  EXPECT_TRUE(preserves_equation(chi, v));
  FiberSubstitution tx;
  tx.t_power = {1, 0, 0, 0};
  EXPECT_FALSE(preserves_equation(tx, v));
  EXPECT_TRUE(preserves_equation(FiberSubstitution{}, v));
  FiberSubstitution bad;
  bad.image = {Var::z, Var::y, Var::x, Var::w};
  EXPECT_EQ(code_of([&] { preserves_equation(bad, v); }), ErrorCode::kInvalidArgument);
}

TEST(Property, PreservesIsInvariantUnderWeightedRescaling) {
  std::mt19937_64 rng(7);
  const std::vector<std::string> names = {"d1_auto_V", "d1_smooth_V", "d2_auto_V",
                                          "d2_smooth_U"};
  for (const auto& name : names) {
    const auto model = example(name);
    const auto ws = model.weights;
    for (int i = 0; i < 40; ++i) {
      FiberSubstitution s;
      if (ws.degree() == 1 && rng() % 2) s.image = {Var::y, Var::x, Var::z, Var::w};
      if (ws.degree() == 2) {
        std::array<Var, 3> h{Var::x, Var::y, Var::z};
        std::shuffle(h.begin(), h.end(), rng);
        s.image = {h[0], h[1], h[2], Var::w};
      }
      for (auto& e : s.t_power) e = static_cast<int>(rng() % 5) - 2;
      const bool base = preserves_equation(s, model);
      const Rational lambda(static_cast<long>(rng() % 7) + 2, static_cast<long>(rng() % 5) + 1);
      FiberSubstitution scaled = s;
      for (int k = 0; k < 4; ++k) {
        for (int j = 0; j < ws.weight(kFiberVars[k]); ++j) scaled.scalar[k] *= lambda;
      }
      EXPECT_EQ(preserves_equation(scaled, model), base) << name;
    }
  }
}

TEST(FindIsomorphism, AutomorphismPairs) {
  const auto s1 = find_isomorphism(example("d1_auto_V"), example("d1_auto_U"));
  ASSERT_TRUE(s1);
  EXPECT_EQ(s1->to_string(), "x -> y, y -> x, z -> z, w -> w");
  EXPECT_EQ(apply_substitution(*s1, example("d1_auto_U").equation), example("d1_auto_V").equation);

  const auto s2 = find_isomorphism(example("d2_auto_V"), example("d2_auto_U"), 4);
  ASSERT_TRUE(s2);
  EXPECT_EQ(s2->t_power, (std::array<int, 4>{0, 0, 0, 0}));
  EXPECT_EQ(apply_substitution(*s2, example("d2_auto_U").equation), example("d2_auto_V").equation);
}

TEST(FindIsomorphism, IdentityAndNone) {
  const auto v = example("d2_smooth_V");
  const auto s = find_isomorphism(v, v);
  ASSERT_TRUE(s);
  EXPECT_TRUE(s->is_identity());
  FibrationModel other = v;
  other.equation = parse_poly("w^2 + x^4 + y^4 + z^4", v.weights);
  EXPECT_FALSE(find_isomorphism(v, other).has_value());
}

TEST(FindIsomorphism, BoundTooSmall) {
  EXPECT_EQ(code_of([] { find_isomorphism(example("d1_smooth_V"), example("d1_smooth_U"), 2); }),
            ErrorCode::kSearchBoundExceeded);
}

TEST(Uniqueness, Examples) {
  const auto d1 = uniqueness_check(example("d1_smooth_V"), example("d1_smooth_U"),
                                   solve_constraints(1, {0, 6, 2, 3}));
  EXPECT_EQ(d1.verdict, UniquenessVerdict::kForcesSingularityInV);
  const auto d2s = uniqueness_check(example("d2_smooth_V"), example("d2_smooth_U"),
                                    solve_constraints(2, {1, 4, 0, 2}));
  EXPECT_EQ(d2s.verdict, UniquenessVerdict::kForcesSingularityInV);
  const auto d2a = uniqueness_check(example("d2_auto_V"), example("d2_auto_U"),
                                    solve_constraints(2, {1, 2, 0, 2}));
  EXPECT_EQ(d2a.verdict, UniquenessVerdict::kForcesSingularityInBoth);
  const auto v = example("d1_smooth_U");
  EXPECT_EQ(uniqueness_check(v, v, solve_constraints(1, {0, 0, 0, 0})).verdict,
            UniquenessVerdict::kIsomorphism);
  EXPECT_EQ(uniqueness_check(example("d1_auto_V"), example("d1_auto_U"),
                             solve_constraints(1, {1, 0, 2, 3}))
                .verdict,
            UniquenessVerdict::kNotRelated);
}

TEST(Designated, AllExampleModelsMatchTheirAnnotations) {
  // Singular: both smooth-case V, all four automorphism models.
  EXPECT_TRUE(jacobian_vanishes(example("d1_smooth_V").equation, pt(0, 0, 1, 0, 0)));
  EXPECT_TRUE(jacobian_vanishes(example("d2_smooth_V").equation, pt(0, 0, 1, 0, 0)));
  const auto m1 = solve_constraints(1, {1, 0, 2, 3});
  EXPECT_TRUE(jacobian_vanishes(example("d1_auto_V").equation,
                                *designated_point(m1, ModelSide::kSource)));
  EXPECT_TRUE(jacobian_vanishes(example("d1_auto_U").equation,
                                *designated_point(m1, ModelSide::kTarget)));
  const auto m2 = solve_constraints(2, {1, 2, 0, 2});
  EXPECT_TRUE(jacobian_vanishes(example("d2_auto_V").equation,
                                *designated_point(m2, ModelSide::kSource)));
  EXPECT_TRUE(jacobian_vanishes(example("d2_auto_U").equation,
                                *designated_point(m2, ModelSide::kTarget)));
  EXPECT_EQ(*designated_point(m1, ModelSide::kSource), pt(0, 1, 0, 0, 0));
}
