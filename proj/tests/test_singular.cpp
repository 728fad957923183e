#include <gtest/gtest.h>

#include <random>

#include "dpf/error.hpp"
#include "dpf/fibertrans.hpp"
#include "dpf/singular.hpp"

using namespace dpf;

namespace {

FibrationModel example(const std::string& name) {
  return load_model(std::string(DPF_MODELS_DIR) + "/" + name + ".model");
}

FibrationModel germ(int degree, const char* eq) {
  FibrationModel m;
  m.weights = WeightSystem::for_degree(degree);
  m.equation = parse_poly(eq, m.weights);
  return m;
}

ChartPoint origin(const FibrationModel& m, Var chart) {
  return chart_point(m.weights, chart, {0, 0, 0, 0, 0});
}

const std::vector<std::string> kExamples = {"d1_smooth_V", "d1_smooth_U", "d2_smooth_V",
                                            "d2_smooth_U", "d1_auto_V",   "d1_auto_U",
                                            "d2_auto_V",   "d2_auto_U"};

}  // namespace

TEST(Smooth, SmoothCasePair) {
  const auto v = example("d1_smooth_V");
  const auto u = example("d1_smooth_U");
  EXPECT_FALSE(is_smooth_at(v, origin(v, Var::y)));
  EXPECT_TRUE(is_smooth_at(u, origin(u, Var::y)));
  // t = 1 and (x, z, w) = (0, -1, 1) on w^2 + z^3 + x^5 + x
  EXPECT_TRUE(is_smooth_at(u, chart_point(u.weights, Var::y, {1, 0, 1, -1, 1})));
}

TEST(Smooth, ChartConvention) {
  const auto v = example("d1_smooth_V");
  try {
    origin(v, Var::z);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidChart);
  }
  ChartPoint bad{Var::x, {0, 2, 0, 0, 0}};
  EXPECT_THROW(is_smooth_at(v, bad), Error);
  const auto d2 = example("d2_auto_V");
  EXPECT_NO_THROW(origin(d2, Var::z));
}

TEST(FpSearch, SmoothCaseDegreeOne) {
  EXPECT_TRUE(singular_search_fp(example("d1_smooth_U"), 5).empty());
  const auto found = singular_search_fp(example("d1_smooth_V"), 5);
  const FpChartPoint expected{Var::y, {0, 0, 1, 0, 0}};
  EXPECT_NE(std::find(found.begin(), found.end(), expected), found.end());
}

TEST(FpSearch, DeterministicAcrossThreadCounts) {
  const auto v = example("d2_auto_V");
  FpSearchOptions one;
  one.threads = 1;
  FpSearchOptions many;
  many.threads = 8;
  EXPECT_EQ(singular_search_fp(v, 7, one), singular_search_fp(v, 7, many));
}

TEST(FpSearch, DenominatorNotInvertible) {
  const auto m = germ(1, "w^2 + z^3 + 1/5 x^6 + y^6");
  try {
    singular_search_fp(m, 5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDenominatorNotInvertible);
  }
  EXPECT_NO_THROW(singular_search_fp(m, 7));
}

TEST(FpSearch, FiberOnlyMode) {
  // U_0 of the smooth degree-2 pair is singular at x = 1, y = z = w = 0
  // while the threefold is smooth there.
  const auto u = example("d2_smooth_U");
  FpSearchOptions central;
  central.t_values = std::vector<std::uint64_t>{0};
  EXPECT_TRUE(singular_search_fp(u, 7, central).empty());
  central.fiber_only = true;
  EXPECT_FALSE(singular_search_fp(u, 7, central).empty());
  EXPECT_TRUE(singular_search_fp(example("d1_smooth_U"), 7, central).empty());
}

TEST(LocalReport, DegreeOneSmoothCase) {
  const auto v = example("d1_smooth_V");
  const auto r = local_report(v, origin(v, Var::y));
  EXPECT_EQ(r.local_equation, parse_poly("w^2 + z^3 + x^5 + t^24 x", v.weights));
  EXPECT_EQ(r.quadratic_rank, 1);
  EXPECT_EQ(r.corank, 3);
  ASSERT_TRUE(r.brieskorn_exponents);
  EXPECT_EQ(*r.brieskorn_exponents, (std::vector<int>{2, 3, 5}));
  EXPECT_TRUE(r.brieskorn_on_slice);
  EXPECT_EQ(r.milnor_number, 8);
  EXPECT_EQ(r.label_hint, "slice type E8");
}

TEST(LocalReport, DegreeTwoAutomorphismCase) {
  const auto v = example("d2_auto_V");
  const auto r = local_report(v, origin(v, Var::y));
  EXPECT_EQ(r.local_equation, parse_poly("w^2 + z^3 + x^4 + t^2 z", v.weights));
  EXPECT_EQ(r.quadratic_rank, 1);
  EXPECT_FALSE(r.brieskorn_exponents);
  EXPECT_FALSE(r.milnor_number);
  EXPECT_FALSE(r.label_hint);
}

TEST(LocalReport, NodeAndNotSingular) {
  const auto a1 = germ(2, "w^2 + x^2 z^2 + y^2 z^2 + t^2 z^4");
  const auto r = local_report(a1, origin(a1, Var::z));
  EXPECT_EQ(r.quadratic_rank, 4);
  EXPECT_EQ(r.corank, 0);
  EXPECT_EQ(r.milnor_number, 1);
  EXPECT_EQ(r.label_hint, "A1");
  const auto u = example("d1_smooth_U");
  try {
    local_report(u, origin(u, Var::y));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotSingular);
  }
}

TEST(Property, ExactAndFiniteFieldVerdictsAgree) {
  for (const auto& name : kExamples) {
    const auto model = example(name);
    for (std::uint64_t p : {5u, 7u, 11u}) {
      const auto found = singular_search_fp(model, p);
      std::vector<Var> charts{Var::x, Var::y};
      if (model.degree() == 2) charts.push_back(Var::z);
      for (std::size_t ci = 0; ci < charts.size(); ++ci) {
        for (int t = -1; t <= 2; ++t)
          for (int a = -1; a <= 1; ++a)
            for (int b = -1; b <= 1; ++b)
              for (int c = -1; c <= 1; ++c) {
                Point q{t, 0, 0, 0, 0};
                const int free[3] = {a, b, c};
                for (std::size_t k = ci + 1, j = 0; k < 4; ++k, ++j) {
                  q[static_cast<int>(kFiberVars[k])] = free[j];
                }
                const auto cp = chart_point(model.weights, charts[ci], q);
                // Reduction of the exact Jacobian values decides membership.
                bool all_zero_mod_p = true;
                std::vector<BigradedPoly> polys{model.equation};
                for (Var v : kAllVars) polys.push_back(partial_derivative(model.equation, v));
                for (const auto& poly : polys) {
                  const mpz_class val = evaluate(poly, cp.coords).get_num();
                  if (val % static_cast<unsigned long>(p) != 0) all_zero_mod_p = false;
                }
                FpChartPoint red{charts[ci], {}};
                for (int i = 0; i < 5; ++i) {
                  const long v = cp.coords[i].get_num().get_si();
                  red.coords[i] = static_cast<std::uint64_t>(((v % static_cast<long>(p)) + p) % p);
                }
                const bool member = std::find(found.begin(), found.end(), red) != found.end();
                EXPECT_EQ(member, all_zero_mod_p) << name << " p=" << p << " " << to_string(cp);
                if (!is_smooth_at(model, cp)) EXPECT_TRUE(member) << name << to_string(cp);
              }
      }
    }
  }
}

TEST(Property, QuadraticRankInvariantUnderChartPermutations) {
  const auto v = example("d2_auto_V");
  const auto p = origin(v, Var::y);
  const int rank = local_report(v, p).quadratic_rank;
  std::array<Var, 3> h{Var::x, Var::y, Var::z};
  std::mt19937_64 rng(3);
  do {
    FiberSubstitution s;
    s.image = {h[0], h[1], h[2], Var::w};
    s.scalar = {Rational(static_cast<long>(rng() % 5) + 1), 1, Rational(static_cast<long>(rng() % 3) + 2),
                -1};
    FibrationModel moved = v;
    moved.equation = apply_substitution(s, v.equation);
    // The new point has image(y) = 1 and every other coordinate 0.
    const auto q = origin(moved, h[1]);
    EXPECT_EQ(local_report(moved, q).quadratic_rank, rank);
  } while (std::next_permutation(h.begin(), h.end()));
}

TEST(Verdicts, ExampleAnnotations) {
  // Singular: both smooth-case V and all automorphism models.
  EXPECT_FALSE(is_smooth_at(example("d1_smooth_V"), origin(example("d1_smooth_V"), Var::y)));
  EXPECT_FALSE(is_smooth_at(example("d2_smooth_V"), origin(example("d2_smooth_V"), Var::y)));
  EXPECT_FALSE(is_smooth_at(example("d1_auto_V"), origin(example("d1_auto_V"), Var::x)));
  EXPECT_FALSE(is_smooth_at(example("d1_auto_U"), origin(example("d1_auto_U"), Var::y)));
  EXPECT_FALSE(is_smooth_at(example("d2_auto_V"), origin(example("d2_auto_V"), Var::y)));
  EXPECT_FALSE(is_smooth_at(example("d2_auto_U"), origin(example("d2_auto_U"), Var::z)));
  // Non-singular: both smooth-case U, with no F_p singular points.
  for (std::uint64_t p : {5u, 7u, 11u}) {
    EXPECT_TRUE(singular_search_fp(example("d1_smooth_U"), p).empty());
    EXPECT_TRUE(singular_search_fp(example("d2_smooth_U"), p).empty());
  }
}
