#include <gtest/gtest.h>

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

#include "dpf/dpf.h"

namespace {

std::string path(const char* name) { return std::string(DPF_MODELS_DIR) + "/" + name + ".model"; }

std::string take(char* s) {
  std::string out(s);
  dpf_string_free(s);
  return out;
}

dpf_model* load(const char* name) {
  dpf_model* m = nullptr;
  EXPECT_EQ(dpf_model_load(path(name).c_str(), &m), DPF_OK) << dpf_last_error();
  return m;
}

}  // namespace

TEST(CApi, StatusNames) {
  EXPECT_STREQ(dpf_status_name(DPF_OK), "OK");
  EXPECT_STREQ(dpf_status_name(DPF_ERR_PARSE), "ParseError");
  EXPECT_STREQ(dpf_status_name(DPF_ERR_INVALID_CONSTANTS), "InvalidConstants");
  EXPECT_STREQ(dpf_status_name(DPF_ERR_INVALID_ARGUMENT), "InvalidArgument");
  EXPECT_STREQ(dpf_status_name(DPF_ERR_NULL_ARGUMENT), "NullArgument");
  EXPECT_STREQ(dpf_status_name(static_cast<dpf_status>(999)), "UnknownError");
}

TEST(CApi, ModelRoundTrip) {
  dpf_model* m = load("d1_smooth_V");
  int degree = 0;
  ASSERT_EQ(dpf_model_degree(m, &degree), DPF_OK);
  EXPECT_EQ(degree, 1);
  char* eq = nullptr;
  ASSERT_EQ(dpf_model_equation(m, &eq), DPF_OK);
  EXPECT_EQ(take(eq), "t^24 x y^5 + x^5 y + z^3 + w^2");
  int valid = 0;
  ASSERT_EQ(dpf_model_is_valid(m, &valid), DPF_OK);
  EXPECT_EQ(valid, 1);
  dpf_model_free(m);
}

TEST(CApi, ErrorsAndNulls) {
  dpf_model* m = nullptr;
  EXPECT_EQ(dpf_model_parse("degree: 7\n", &m), DPF_ERR_PARSE);
  EXPECT_NE(std::string(dpf_last_error()), "");
  EXPECT_EQ(m, nullptr);
  EXPECT_EQ(dpf_model_load(nullptr, &m), DPF_ERR_NULL_ARGUMENT);
  EXPECT_EQ(dpf_model_load("/nonexistent/file.model", &m), DPF_ERR_INVALID_ARGUMENT);
  dpf_constants* c = nullptr;
  const int bad[4] = {0, 3, 2, 2};
  EXPECT_EQ(dpf_constants_create(1, bad, 4, &c), DPF_ERR_INVALID_CONSTANTS);
  EXPECT_EQ(dpf_constants_create(1, bad, 3, &c), DPF_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(dpf_constants_parse(2, "1,x,0", &c), DPF_ERR_INVALID_ARGUMENT);
  dpf_model_free(nullptr);
  dpf_constants_free(nullptr);
  dpf_string_free(nullptr);
}

TEST(CApi, LastErrorIsPerThread) {
  dpf_model* m = nullptr;
  ASSERT_EQ(dpf_model_parse("garbage", &m), DPF_ERR_PARSE);
  std::string other;
  std::thread([&] { other = dpf_last_error(); }).join();
  EXPECT_EQ(other, "");
  EXPECT_NE(std::string(dpf_last_error()), "");
}

TEST(CApi, ConstantsQueries) {
  struct Row {
    int degree;
    std::vector<int> values;
    long k3;
    dpf_rigidity status;
  };
  const Row rows[] = {{1, {0, 2, 2, 2}, 2, DPF_NON_RIGID},
                      {1, {0, 0, 1, 2}, 4, DPF_NON_RIGID},
                      {2, {1, 0, 0}, 6, DPF_NON_RIGID},
                      {2, {0, 0, 1}, 8, DPF_NON_RIGID}};
  for (const auto& r : rows) {
    dpf_constants* c = nullptr;
    ASSERT_EQ(dpf_constants_create(r.degree, r.values.data(), r.values.size(), &c), DPF_OK)
        << dpf_last_error();
    long k3 = 0;
    ASSERT_EQ(dpf_minus_k_cubed(c, &k3), DPF_OK);
    EXPECT_EQ(k3, r.k3);
    dpf_rigidity st{};
    ASSERT_EQ(dpf_classify(c, &st), DPF_OK);
    EXPECT_EQ(st, r.status);
    int k2 = -1;
    ASSERT_EQ(dpf_k2_condition(c, &k2), DPF_OK);
    EXPECT_EQ(k2, 0);
    dpf_constants_free(c);
  }
}

TEST(CApi, SolveAndTransport) {
  const int fwd[4] = {0, 6, 2, 3};
  int back[4] = {};
  int m = 0;
  ASSERT_EQ(dpf_solve_constraints(1, fwd, back, &m), DPF_OK);
  EXPECT_EQ(m, 6);
  EXPECT_EQ(back[0], 6);
  EXPECT_EQ(back[2], 10);
  EXPECT_EQ(back[3], 15);
  const int infeasible[4] = {1, 1, 2, 3};
  EXPECT_EQ(dpf_solve_constraints(1, infeasible, back, &m), DPF_ERR_INFEASIBLE);

  dpf_model* u = load("d1_smooth_U");
  char* eq = nullptr;
  ASSERT_EQ(dpf_transport_equation(u, fwd, &eq, nullptr), DPF_OK) << dpf_last_error();
  EXPECT_EQ(take(eq), "t^24 x y^5 + x^5 y + z^3 + w^2");
  const int fractional[4] = {0, 1, 2, 3};
  EXPECT_EQ(dpf_transport_equation(u, fractional, &eq, nullptr), DPF_ERR_NON_INTEGRAL);
  int integral = 1;
  ASSERT_EQ(dpf_transport_equation(u, fractional, &eq, &integral), DPF_OK);
  dpf_string_free(eq);
  EXPECT_EQ(integral, 0);
  dpf_model_free(u);
}

TEST(CApi, Smoothness) {
  dpf_model* v = load("d1_smooth_V");
  int smooth = -1;
  ASSERT_EQ(dpf_is_smooth_at(v, 'y', "0,0,1,0,0", &smooth), DPF_OK);
  EXPECT_EQ(smooth, 0);
  EXPECT_EQ(dpf_is_smooth_at(v, 'z', "0,0,0,1,0", &smooth), DPF_ERR_INVALID_CHART);
  EXPECT_EQ(dpf_is_smooth_at(v, 'q', "0,0,0,1,0", &smooth), DPF_ERR_INVALID_CHART);
  size_t count = 0;
  ASSERT_EQ(dpf_fp_singular_count(v, 5, 0, &count), DPF_OK);
  EXPECT_GT(count, 0u);
  dpf_model_free(v);

  dpf_model* u = load("d1_smooth_U");
  ASSERT_EQ(dpf_fp_singular_count(u, 7, 0, &count), DPF_OK);
  EXPECT_EQ(count, 0u);
  dpf_model_free(u);
}

TEST(CApi, ReportsMatchAcrossFormats) {
  dpf_constants* c = nullptr;
  ASSERT_EQ(dpf_constants_parse(2, "1,0,0", &c), DPF_OK);
  char* text = nullptr;
  char* json = nullptr;
  ASSERT_EQ(dpf_report_table(c, DPF_FORMAT_TEXT, &text), DPF_OK);
  ASSERT_EQ(dpf_report_table(c, DPF_FORMAT_JSON, &json), DPF_OK);
  EXPECT_NE(take(text).find("(-K)^3 = 6"), std::string::npos);
  EXPECT_NE(take(json).find("\"minus_k_cubed\": 6"), std::string::npos);
  dpf_constants_free(c);

  char* sweep = nullptr;
  ASSERT_EQ(dpf_report_sweep(2, 13, 3, 0, 1, DPF_FORMAT_TEXT, &sweep), DPF_ERR_INVALID_ARGUMENT);
  ASSERT_EQ(dpf_report_sweep(1, 2, 3, 0, 1, DPF_FORMAT_TEXT, &sweep), DPF_OK);
  EXPECT_NE(take(sweep).find("summary rows=2"), std::string::npos);
}
