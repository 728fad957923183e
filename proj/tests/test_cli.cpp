#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

#include "json.hpp"

namespace {

struct Run {
  int code = -1;
  std::string out;
};

// Runs the CLI with stderr discarded and captures stdout and the exit code.
Run cli(const std::string& args) {
  const std::string cmd = std::string(DPF_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string model(const char* name) {
  return std::string(DPF_MODELS_DIR) + "/" + name + ".model";
}

nlohmann::json parse(const Run& r) { return nlohmann::json::parse(r.out); }

}  // namespace

TEST(Cli, ClassifyExample) {
  const auto r = cli("classify --degree 1 --constants 0,2,2,2");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("non-rigid (case d1-1;", 0), 0u) << r.out;
  const auto j = parse(cli("--json classify --degree 1 --constants 0,2,2,2"));
  EXPECT_EQ(j.at("status"), "non-rigid");
  EXPECT_EQ(j.at("case_id"), "d1-1");
  EXPECT_TRUE(j.contains("citation"));
}

TEST(Cli, TableExample) {
  const auto r = cli("table --degree 2 --constants 1,0,0");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\n(-K)^3 = 6  ["), std::string::npos) << r.out;
  const auto j = parse(cli("table --json --degree 2 --constants 1,0,0"));
  EXPECT_EQ(j.at("minus_k_cubed"), 6);
  EXPECT_EQ(j.at("k2_condition"), false);
}

TEST(Cli, ValidateExamples) {
  for (const char* name : {"d1_smooth_V", "d1_smooth_U", "d2_smooth_V", "d2_smooth_U", "d1_auto_V",
                           "d1_auto_U", "d2_auto_V", "d2_auto_U"}) {
    const auto r = cli("validate " + model(name));
    EXPECT_EQ(r.code, 0) << name << "\n" << r.out;
    EXPECT_NE(r.out.find("status: valid"), std::string::npos);
  }
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(cli("").code, 2);
  EXPECT_EQ(cli("frobnicate").code, 2);
  EXPECT_EQ(cli("classify --degree 3 --constants 0,0,0").code, 2);
  EXPECT_EQ(cli("classify --degree 1").code, 2);
  EXPECT_EQ(cli("classify --degree 1 --constants 0,2,x,2").code, 2);
  EXPECT_EQ(cli("sweep --degree 2 --bound 13").code, 2);
  EXPECT_EQ(cli("smooth " + model("d1_smooth_V")).code, 2);
  EXPECT_EQ(cli("transform " + model("d1_smooth_V") + " " + model("d1_smooth_U") +
                " --forward 0,6,2")
                .code,
            2);
  // Domain rejections.
  EXPECT_EQ(cli("classify --degree 1 --constants 0,3,2,2").code, 1);
  EXPECT_EQ(cli("table --degree 2 --constants 0,2,1").code, 1);
  EXPECT_EQ(cli("smooth " + model("d1_smooth_V") + " --chart z --point 0,0,0,1,0").code, 1);
  EXPECT_EQ(cli("transform " + model("d1_smooth_V") + " " + model("d1_smooth_U") +
                " --forward 1,1,2,3")
                .code,
            1);
}

TEST(Cli, InvalidModelFile) {
  const std::string path = testing::TempDir() + "dpf_bad.model";
  FILE* f = std::fopen(path.c_str(), "w");
  ASSERT_NE(f, nullptr);
  std::fputs("degree: 1\nbase: germ\nequation: w^2 + z^3 + x^6 + y^7\n", f);
  std::fclose(f);
  const auto r = cli("validate " + path);
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("status: invalid"), std::string::npos) << r.out;
  std::remove(path.c_str());
}

TEST(Cli, TransformReport) {
  const auto j = parse(cli("--json transform " + model("d1_smooth_V") + " " +
                           model("d1_smooth_U") + " --forward 0,6,2,3"));
  EXPECT_EQ(j.at("verdict"), "forces-singularity-in-V");
  EXPECT_EQ(j.at("transported"), "t^24 x y^5 + x^5 y + z^3 + w^2");
  EXPECT_EQ(j.at("integral"), true);
  EXPECT_EQ(j.at("map").at("backward"), (std::vector<int>{6, 0, 10, 15}));
  EXPECT_EQ(j.at("singular_in_u"), nullptr);
}

TEST(Cli, SmoothModes) {
  const auto pt = cli("smooth " + model("d1_smooth_V") + " --chart y --point 0,0,1,0,0");
  EXPECT_EQ(pt.code, 0);
  EXPECT_NE(pt.out.find("smooth: false"), std::string::npos);
  EXPECT_NE(pt.out.find("hint: slice type E8"), std::string::npos);
  const auto j = parse(cli("--json smooth " + model("d1_smooth_U") + " --fp 5 --fp 7"));
  EXPECT_EQ(j.at("none_found"), true);
  EXPECT_EQ(j.at("searches").size(), 2u);
  const auto central = parse(cli("--json smooth " + model("d2_smooth_U") +
                                 " --fp 7 --t-values 0 --fiber-only"));
  EXPECT_EQ(central.at("fiber_only"), true);
  EXPECT_EQ(central.at("none_found"), false);
}

TEST(Cli, SweepExamples) {
  const auto d1 = cli("sweep --degree 1 --bound 2");
  EXPECT_EQ(d1.code, 0);
  std::size_t non_rigid = 0;
  for (std::size_t pos = 0; (pos = d1.out.find("classify=non-rigid", pos)) != std::string::npos;
       ++pos) {
    ++non_rigid;
  }
  EXPECT_EQ(non_rigid, 2u);
  const auto d2 = parse(cli("--json sweep --degree 2 --bound 3 --n-max 3"));
  for (const auto& row : d2.at("rows")) {
    if (row.at("classify") == "out-of-classification") {
      EXPECT_TRUE(row.at("agree").is_null());
    } else {
      EXPECT_EQ(row.at("agree"), true) << row;
    }
  }
  EXPECT_EQ(d2.at("disagree"), 0);
}

TEST(Cli, SeedThreadsIntoUniquenessTrials) {
  const std::string base = "--json sweep --degree 2 --bound 1 --uniqueness-trials 30 --seed ";
  EXPECT_EQ(cli(base + "7").out, cli(base + "7").out);
  const auto j = parse(cli(base + "7"));
  EXPECT_EQ(j.at("uniqueness").at("seed"), 7);
  EXPECT_EQ(j.at("uniqueness").at("violations"), 0);
}
