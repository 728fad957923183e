// Command-line front end. Links only the C interface in libdpf.

#include <cstdint>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dpf/dpf.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRejected = 1;
constexpr int kExitUsage = 2;

struct ModelDeleter {
  void operator()(dpf_model* m) const { dpf_model_free(m); }
};
struct ConstantsDeleter {
  void operator()(dpf_constants* c) const { dpf_constants_free(c); }
};
using ModelPtr = std::unique_ptr<dpf_model, ModelDeleter>;
using ConstantsPtr = std::unique_ptr<dpf_constants, ConstantsDeleter>;

// Carries a failed status from the library up to main.
struct Failure {
  dpf_status status;
};

void check(dpf_status s) {
  if (s != DPF_OK) throw Failure{s};
}

ModelPtr load(const std::string& path) {
  dpf_model* m = nullptr;
  check(dpf_model_load(path.c_str(), &m));
  return ModelPtr(m);
}

ConstantsPtr constants(int degree, const std::string& csv) {
  dpf_constants* c = nullptr;
  check(dpf_constants_parse(degree, csv.c_str(), &c));
  return ConstantsPtr(c);
}

int emit(char* body) {
  std::fputs(body, stdout);
  dpf_string_free(body);
  return kExitOk;
}

std::vector<int> parse_ints(const std::string& csv) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= csv.size()) {
    const std::size_t next = csv.find(',', pos);
    const std::string item = csv.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw CLI::ValidationError("--forward", "not an integer list: " + csv);
    }
    if (used != item.size()) throw CLI::ValidationError("--forward", "not an integer list: " + csv);
    out.push_back(v);
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Structure constants, rigidity and fiber transformations of del Pezzo fibrations"};
  app.require_subcommand(1);
  app.fallthrough();
  bool json = false;
  app.add_flag("--json", json, "machine-readable output");
  app.set_version_flag("--version", dpf_version());

  const auto fmt = [&] { return json ? DPF_FORMAT_JSON : DPF_FORMAT_TEXT; };

  int degree = 1;
  std::string csv;
  std::string model_path;
  int n_max = 6;

  auto* validate = app.add_subcommand("validate", "check a model file");
  validate->add_option("model", model_path, "model file")->required();

  auto* table = app.add_subcommand("table", "intersection table for structure constants");
  auto* classify = app.add_subcommand("classify", "rigidity verdict for structure constants");
  auto* catalog = app.add_subcommand("catalog", "alternative Mori structures and checked facts");
  for (auto* sub : {table, classify, catalog}) {
    sub->add_option("--degree", degree, "1 or 2")->required()->check(CLI::IsMember({1, 2}));
    sub->add_option("--constants", csv, "eps,n1,n2,n3 or a,n1,n2")->required();
  }

  auto* linsys = app.add_subcommand("linsys", "dimensions of |n(-K) - F|");
  linsys->add_option("--degree", degree, "1 or 2")->check(CLI::IsMember({1, 2}));
  auto* lin_constants = linsys->add_option("--constants", csv, "structure constants");
  auto* lin_model = linsys->add_option("--model", model_path, "model file");
  lin_constants->excludes(lin_model);
  linsys->add_option("--n-max", n_max, "largest multiple n")->check(CLI::Range(1, 12));

  std::string u_path;
  std::string forward_csv;
  auto* transform = app.add_subcommand("transform", "fiber transformation between two models");
  transform->add_option("v", model_path, "source model V")->required();
  transform->add_option("u", u_path, "target model U")->required();
  transform->add_option("--forward", forward_csv, "forward exponents a,b,c,d")->required();

  std::string chart = "x";
  std::string point_csv;
  std::vector<std::uint64_t> primes;
  std::vector<std::uint64_t> t_values;
  bool fiber_only = false;
  unsigned threads = 0;
  auto* smooth = app.add_subcommand("smooth", "smoothness at a point or over F_p");
  smooth->add_option("model", model_path, "model file")->required();
  auto* point_opt = smooth->add_option("--point", point_csv, "t,x,y,z,w");
  smooth->add_option("--chart", chart, "chart coordinate set to 1")
      ->check(CLI::IsMember({"x", "y", "z"}));
  auto* fp_opt = smooth->add_option("--fp", primes, "search over F_p (repeatable)");
  point_opt->excludes(fp_opt);
  smooth->add_option("--t-values", t_values, "restrict the base coordinate")->delimiter(',');
  smooth->add_flag("--fiber-only", fiber_only, "singular points of the fibers");
  smooth->add_option("--threads", threads, "worker threads, 0 for all cores");

  int bound = 3;
  int trials = 0;
  std::uint64_t seed = 0x5eed;
  auto* sweep = app.add_subcommand("sweep", "classification against the linear-system criterion");
  sweep->add_option("--degree", degree, "1 or 2")->required()->check(CLI::IsMember({1, 2}));
  sweep->add_option("--bound", bound, "largest constant")->check(CLI::Range(0, 12));
  sweep->add_option("--n-max", n_max, "largest multiple n")->check(CLI::Range(1, 12));
  sweep->add_option("--uniqueness-trials", trials, "random fiber transformations")
      ->check(CLI::NonNegativeNumber);
  sweep->add_option("--seed", seed, "random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    char* out = nullptr;
    if (validate->parsed()) {
      const auto m = load(model_path);
      int valid = 0;
      check(dpf_report_validate(m.get(), fmt(), &out, &valid));
      emit(out);
      return valid ? kExitOk : kExitRejected;
    }
    if (table->parsed()) {
      check(dpf_report_table(constants(degree, csv).get(), fmt(), &out));
      return emit(out);
    }
    if (classify->parsed()) {
      check(dpf_report_classify(constants(degree, csv).get(), fmt(), &out));
      return emit(out);
    }
    if (catalog->parsed()) {
      check(dpf_report_catalog(constants(degree, csv).get(), fmt(), &out));
      return emit(out);
    }
    if (linsys->parsed()) {
      if (lin_model->count()) {
        check(dpf_report_linsys_model(load(model_path).get(), n_max, fmt(), &out));
      } else if (lin_constants->count()) {
        check(dpf_report_linsys_constants(constants(degree, csv).get(), n_max, fmt(), &out));
      } else {
        std::fputs("linsys: one of --constants or --model is required\n", stderr);
        return kExitUsage;
      }
      return emit(out);
    }
    if (transform->parsed()) {
      const std::vector<int> fwd = parse_ints(forward_csv);
      if (fwd.size() != 4) {
        std::fputs("transform: --forward takes four exponents\n", stderr);
        return kExitUsage;
      }
      const auto v = load(model_path);
      const auto u = load(u_path);
      check(dpf_report_transform(v.get(), u.get(), fwd.data(), fmt(), &out));
      return emit(out);
    }
    if (smooth->parsed()) {
      const auto m = load(model_path);
      if (!primes.empty()) {
        check(dpf_report_smooth_fp(m.get(), primes.data(), primes.size(),
                                   t_values.empty() ? nullptr : t_values.data(), t_values.size(),
                                   fiber_only ? 1 : 0, threads, fmt(), &out));
      } else if (!point_csv.empty()) {
        check(dpf_report_smooth_point(m.get(), chart[0], point_csv.c_str(), fmt(), &out));
      } else {
        std::fputs("smooth: one of --point or --fp is required\n", stderr);
        return kExitUsage;
      }
      return emit(out);
    }
    if (sweep->parsed()) {
      check(dpf_report_sweep(degree, bound, n_max, trials, seed, fmt(), &out));
      return emit(out);
    }
  } catch (const CLI::ValidationError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const Failure& f) {
    std::fprintf(stderr, "error: %s: %s\n", dpf_status_name(f.status), dpf_last_error());
    // A malformed argument value is a usage error; everything else the
    // library rejects is a domain rejection.
    return f.status == DPF_ERR_INVALID_ARGUMENT ? kExitUsage : kExitRejected;
  }
  return kExitUsage;
}
