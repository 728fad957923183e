#include "dpf/dpf.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "dpf/error.hpp"
#include "dpf/fibertrans.hpp"
#include "dpf/intersect.hpp"
#include "dpf/linsys.hpp"
#include "dpf/model.hpp"
#include "dpf/report.hpp"
#include "dpf/rigidity.hpp"
#include "dpf/singular.hpp"

struct dpf_model {
  dpf::FibrationModel model;
};

struct dpf_constants {
  dpf::StructureConstants sc;
};

namespace {

thread_local std::string g_last_error;

dpf_status status_of(dpf::ErrorCode code) {
  return static_cast<dpf_status>(static_cast<int>(code) + 1);
}

dpf_status fail(dpf_status s, std::string msg) {
  g_last_error = std::move(msg);
  return s;
}

template <class F>
dpf_status guarded(F&& body) {
  g_last_error.clear();
  try {
    body();
    return DPF_OK;
  } catch (const dpf::Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(DPF_ERR_UNKNOWN, "out of memory");
  } catch (const std::exception& e) {
    return fail(DPF_ERR_UNKNOWN, e.what());
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

dpf::Format fmt_of(dpf_format f) {
  return f == DPF_FORMAT_JSON ? dpf::Format::kJson : dpf::Format::kText;
}

std::array<int, 4> arr4(const int* v) { return {v[0], v[1], v[2], v[3]}; }

dpf::Var chart_var(char c) {
  switch (c) {
    case 'x': return dpf::Var::x;
    case 'y': return dpf::Var::y;
    case 'z': return dpf::Var::z;
    case 'w': return dpf::Var::w;
    case 't': return dpf::Var::t;
    default: throw dpf::Error(dpf::ErrorCode::kInvalidChart, std::string("unknown chart '") + c + "'");
  }
}

#define DPF_REQUIRE(p) \
  if (!(p)) return fail(DPF_ERR_NULL_ARGUMENT, "null argument: " #p)

}  // namespace

extern "C" {

const char* dpf_version(void) { return "0.1.0"; }

const char* dpf_status_name(dpf_status status) {
  if (status == DPF_OK) return "OK";
  if (status == DPF_ERR_NULL_ARGUMENT) return "NullArgument";
  if (status > DPF_OK && status < DPF_ERR_NULL_ARGUMENT) {
    return dpf::error_code_name(static_cast<dpf::ErrorCode>(static_cast<int>(status) - 1));
  }
  return "UnknownError";
}

const char* dpf_last_error(void) { return g_last_error.c_str(); }

void dpf_string_free(char* s) { std::free(s); }

dpf_status dpf_model_load(const char* path, dpf_model** out) {
  DPF_REQUIRE(path);
  DPF_REQUIRE(out);
  return guarded([&] { *out = new dpf_model{dpf::load_model(path)}; });
}

dpf_status dpf_model_parse(const char* text, dpf_model** out) {
  DPF_REQUIRE(text);
  DPF_REQUIRE(out);
  return guarded([&] { *out = new dpf_model{dpf::parse_model(text)}; });
}

void dpf_model_free(dpf_model* model) { delete model; }

dpf_status dpf_model_degree(const dpf_model* model, int* out) {
  DPF_REQUIRE(model);
  DPF_REQUIRE(out);
  *out = model->model.degree();
  return DPF_OK;
}

dpf_status dpf_model_equation(const dpf_model* model, char** out) {
  DPF_REQUIRE(model);
  DPF_REQUIRE(out);
  return guarded([&] { *out = dup(dpf::to_text(model->model.equation)); });
}

dpf_status dpf_model_is_valid(const dpf_model* model, int* out) {
  DPF_REQUIRE(model);
  DPF_REQUIRE(out);
  return guarded([&] { *out = dpf::validate(model->model).valid() ? 1 : 0; });
}

dpf_status dpf_h0(const dpf_model* model, int n, int k, long* out) {
  DPF_REQUIRE(model);
  DPF_REQUIRE(out);
  return guarded([&] { *out = dpf::h0_bidegree(model->model, n, k); });
}

dpf_status dpf_constants_create(int degree, const int* values, size_t count,
                                dpf_constants** out) {
  DPF_REQUIRE(values);
  DPF_REQUIRE(out);
  return guarded([&] {
    dpf::StructureConstants sc;
    if (degree == 1 && count == 4) {
      sc = dpf::StructureConstants::d1(values[0], values[1], values[2], values[3]);
    } else if (degree == 2 && count == 3) {
      sc = dpf::StructureConstants::d2(values[0], values[1], values[2]);
    } else {
      throw dpf::Error(dpf::ErrorCode::kInvalidArgument,
                       "degree " + std::to_string(degree) + " takes " +
                           (degree == 1 ? "4" : degree == 2 ? "3" : "no") + " constants");
    }
    dpf::require_valid(sc);
    *out = new dpf_constants{sc};
  });
}

void dpf_constants_free(dpf_constants* c) { delete c; }

dpf_status dpf_constants_parse(int degree, const char* csv, dpf_constants** out) {
  DPF_REQUIRE(csv);
  DPF_REQUIRE(out);
  return guarded([&] { *out = new dpf_constants{dpf::parse_constants(degree, csv)}; });
}

dpf_status dpf_minus_k_cubed(const dpf_constants* c, long* out) {
  DPF_REQUIRE(c);
  DPF_REQUIRE(out);
  return guarded([&] {
    const auto v = dpf::recompute_fact(c->sc, "(-K)^3");
    *out = v.get_num().get_si();
  });
}

dpf_status dpf_k2_condition(const dpf_constants* c, int* out) {
  DPF_REQUIRE(c);
  DPF_REQUIRE(out);
  return guarded([&] { *out = dpf::k2_condition(c->sc) ? 1 : 0; });
}

dpf_status dpf_classify(const dpf_constants* c, dpf_rigidity* out) {
  DPF_REQUIRE(c);
  DPF_REQUIRE(out);
  return guarded([&] { *out = static_cast<dpf_rigidity>(dpf::classify(c->sc).status); });
}

dpf_status dpf_solve_constraints(int degree, const int forward[4], int backward[4], int* m) {
  DPF_REQUIRE(forward);
  DPF_REQUIRE(backward);
  DPF_REQUIRE(m);
  return guarded([&] {
    const auto map = dpf::solve_constraints(degree, arr4(forward));
    for (int i = 0; i < 4; ++i) backward[i] = map.backward[i];
    *m = map.m;
  });
}

dpf_status dpf_transport_equation(const dpf_model* target, const int forward[4], char** equation,
                                  int* integral) {
  DPF_REQUIRE(target);
  DPF_REQUIRE(forward);
  DPF_REQUIRE(equation);
  return guarded([&] {
    const auto map = dpf::solve_constraints(target->model.degree(), arr4(forward));
    const auto r = dpf::transport(map, target->model, integral != nullptr);
    *equation = dup(dpf::to_text(r.source.equation));
    if (integral) *integral = r.integral ? 1 : 0;
  });
}

dpf_status dpf_is_smooth_at(const dpf_model* model, char chart, const char* coords, int* smooth) {
  DPF_REQUIRE(model);
  DPF_REQUIRE(coords);
  DPF_REQUIRE(smooth);
  return guarded([&] {
    const auto pt =
        dpf::chart_point(model->model.weights, chart_var(chart), dpf::parse_point(coords));
    *smooth = dpf::is_smooth_at(model->model, pt) ? 1 : 0;
  });
}

dpf_status dpf_fp_singular_count(const dpf_model* model, uint64_t p, int fiber_only,
                                 size_t* count) {
  DPF_REQUIRE(model);
  DPF_REQUIRE(count);
  return guarded([&] {
    dpf::FpSearchOptions opt;
    opt.fiber_only = fiber_only != 0;
    *count = dpf::singular_search_fp(model->model, p, opt).size();
  });
}

dpf_status dpf_report_validate(const dpf_model* model, dpf_format fmt, char** out, int* valid) {
  DPF_REQUIRE(model);
  DPF_REQUIRE(out);
  return guarded([&] {
    const auto r = dpf::validate_report(model->model, fmt_of(fmt));
    *out = dup(r.body);
    if (valid) *valid = r.ok ? 1 : 0;
  });
}

dpf_status dpf_report_table(const dpf_constants* c, dpf_format fmt, char** out) {
  DPF_REQUIRE(c);
  DPF_REQUIRE(out);
  return guarded([&] { *out = dup(dpf::table_report(c->sc, fmt_of(fmt)).body); });
}

dpf_status dpf_report_classify(const dpf_constants* c, dpf_format fmt, char** out) {
  DPF_REQUIRE(c);
  DPF_REQUIRE(out);
  return guarded([&] { *out = dup(dpf::classify_report(c->sc, fmt_of(fmt)).body); });
}

dpf_status dpf_report_linsys_constants(const dpf_constants* c, int n_max, dpf_format fmt,
                                       char** out) {
  DPF_REQUIRE(c);
  DPF_REQUIRE(out);
  return guarded([&] { *out = dup(dpf::linsys_report(c->sc, n_max, fmt_of(fmt)).body); });
}

dpf_status dpf_report_linsys_model(const dpf_model* model, int n_max, dpf_format fmt,
                                   char** out) {
  DPF_REQUIRE(model);
  DPF_REQUIRE(out);
  return guarded([&] { *out = dup(dpf::linsys_report(model->model, n_max, fmt_of(fmt)).body); });
}

dpf_status dpf_report_catalog(const dpf_constants* c, dpf_format fmt, char** out) {
  DPF_REQUIRE(c);
  DPF_REQUIRE(out);
  return guarded([&] { *out = dup(dpf::catalog_report(c->sc, fmt_of(fmt)).body); });
}

dpf_status dpf_report_transform(const dpf_model* v, const dpf_model* u, const int forward[4],
                                dpf_format fmt, char** out) {
  DPF_REQUIRE(v);
  DPF_REQUIRE(u);
  DPF_REQUIRE(forward);
  DPF_REQUIRE(out);
  return guarded([&] {
    *out = dup(dpf::transform_report(v->model, u->model, arr4(forward), fmt_of(fmt)).body);
  });
}

dpf_status dpf_report_smooth_point(const dpf_model* model, char chart, const char* coords,
                                   dpf_format fmt, char** out) {
  DPF_REQUIRE(model);
  DPF_REQUIRE(coords);
  DPF_REQUIRE(out);
  return guarded([&] {
    const auto pt =
        dpf::chart_point(model->model.weights, chart_var(chart), dpf::parse_point(coords));
    *out = dup(dpf::smooth_point_report(model->model, pt, fmt_of(fmt)).body);
  });
}

dpf_status dpf_report_smooth_fp(const dpf_model* model, const uint64_t* primes, size_t n_primes,
                                const uint64_t* t_values, size_t n_t_values, int fiber_only,
                                unsigned threads, dpf_format fmt, char** out) {
  DPF_REQUIRE(model);
  DPF_REQUIRE(primes);
  DPF_REQUIRE(out);
  return guarded([&] {
    dpf::FpSearchOptions opt;
    if (t_values) opt.t_values = std::vector<std::uint64_t>(t_values, t_values + n_t_values);
    opt.fiber_only = fiber_only != 0;
    opt.threads = threads;
    const std::vector<std::uint64_t> ps(primes, primes + n_primes);
    *out = dup(dpf::smooth_fp_report(model->model, ps, opt, fmt_of(fmt)).body);
  });
}

dpf_status dpf_report_sweep(int degree, int bound, int n_max, int uniqueness_trials,
                            uint64_t seed, dpf_format fmt, char** out) {
  DPF_REQUIRE(out);
  return guarded([&] {
    dpf::SweepOptions opt;
    opt.degree = degree;
    opt.bound = bound;
    opt.n_max = n_max;
    opt.uniqueness_trials = uniqueness_trials;
    opt.seed = seed;
    *out = dup(dpf::sweep_report(opt, fmt_of(fmt)).body);
  });
}

}  // extern "C"
