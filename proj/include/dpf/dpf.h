#ifndef DPF_DPF_H
#define DPF_DPF_H

/* C interface to the del Pezzo fibration toolkit. Every function returns a
 * dpf_status; on failure dpf_last_error() describes the error for the
 * calling thread. Strings returned through char** are owned by the caller
 * and released with dpf_string_free. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define DPF_API __declspec(dllexport)
#else
#define DPF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dpf_status {
  DPF_OK = 0,
  DPF_ERR_PARSE,
  DPF_ERR_INVALID_MODEL,
  DPF_ERR_INVALID_CONSTANTS,
  DPF_ERR_INCONSISTENT_TWISTS,
  DPF_ERR_INFEASIBLE,
  DPF_ERR_NON_INTEGRAL,
  DPF_ERR_NOT_SINGULAR,
  DPF_ERR_INVALID_CHART,
  DPF_ERR_DENOMINATOR_NOT_INVERTIBLE,
  DPF_ERR_SEARCH_BOUND_EXCEEDED,
  DPF_ERR_INTERNAL_INCONSISTENCY,
  DPF_ERR_REDUCIBLE_EQUATION,
  DPF_ERR_INVALID_ARGUMENT,
  DPF_ERR_NULL_ARGUMENT,
  DPF_ERR_UNKNOWN
} dpf_status;

typedef enum dpf_format { DPF_FORMAT_TEXT = 0, DPF_FORMAT_JSON = 1 } dpf_format;

/* 0 rigid, 1 rigid-generic, 2 non-rigid, 3 out-of-classification */
typedef enum dpf_rigidity {
  DPF_RIGID = 0,
  DPF_RIGID_GENERIC,
  DPF_NON_RIGID,
  DPF_OUT_OF_CLASSIFICATION
} dpf_rigidity;

typedef struct dpf_model dpf_model;
typedef struct dpf_constants dpf_constants;

DPF_API const char* dpf_version(void);
DPF_API const char* dpf_status_name(dpf_status status);
DPF_API const char* dpf_last_error(void);
DPF_API void dpf_string_free(char* s);

/* models */
DPF_API dpf_status dpf_model_load(const char* path, dpf_model** out);
DPF_API dpf_status dpf_model_parse(const char* text, dpf_model** out);
DPF_API void dpf_model_free(dpf_model* model);
DPF_API dpf_status dpf_model_degree(const dpf_model* model, int* out);
DPF_API dpf_status dpf_model_equation(const dpf_model* model, char** out);
DPF_API dpf_status dpf_model_is_valid(const dpf_model* model, int* out);
DPF_API dpf_status dpf_h0(const dpf_model* model, int n, int k, long* out);

/* structure constants: 4 values (eps,n1,n2,n3) for degree 1, 3 values
 * (a,n1,n2) for degree 2 */
DPF_API dpf_status dpf_constants_create(int degree, const int* values, size_t count,
                                        dpf_constants** out);
DPF_API void dpf_constants_free(dpf_constants* c);
DPF_API dpf_status dpf_constants_parse(int degree, const char* csv, dpf_constants** out);
DPF_API dpf_status dpf_minus_k_cubed(const dpf_constants* c, long* out);
DPF_API dpf_status dpf_k2_condition(const dpf_constants* c, int* out);
DPF_API dpf_status dpf_classify(const dpf_constants* c, dpf_rigidity* out);

/* fiber transformations; when integral is NULL a transport with fractional
 * t-powers fails with DPF_ERR_NON_INTEGRAL */
DPF_API dpf_status dpf_solve_constraints(int degree, const int forward[4], int backward[4],
                                         int* m);
DPF_API dpf_status dpf_transport_equation(const dpf_model* target, const int forward[4],
                                          char** equation, int* integral);

/* singularities; coords is "t,x,y,z,w" with rational entries */
DPF_API dpf_status dpf_is_smooth_at(const dpf_model* model, char chart, const char* coords,
                                    int* smooth);
DPF_API dpf_status dpf_fp_singular_count(const dpf_model* model, uint64_t p, int fiber_only,
                                         size_t* count);

/* reports behind the command-line subcommands */
DPF_API dpf_status dpf_report_validate(const dpf_model* model, dpf_format fmt, char** out,
                                       int* valid);
DPF_API dpf_status dpf_report_table(const dpf_constants* c, dpf_format fmt, char** out);
DPF_API dpf_status dpf_report_classify(const dpf_constants* c, dpf_format fmt, char** out);
DPF_API dpf_status dpf_report_linsys_constants(const dpf_constants* c, int n_max, dpf_format fmt,
                                               char** out);
DPF_API dpf_status dpf_report_linsys_model(const dpf_model* model, int n_max, dpf_format fmt,
                                           char** out);
DPF_API dpf_status dpf_report_catalog(const dpf_constants* c, dpf_format fmt, char** out);
DPF_API dpf_status dpf_report_transform(const dpf_model* v, const dpf_model* u,
                                        const int forward[4], dpf_format fmt, char** out);
DPF_API dpf_status dpf_report_smooth_point(const dpf_model* model, char chart, const char* coords,
                                           dpf_format fmt, char** out);
/* t_values may be NULL (all of F_p); threads 0 means hardware concurrency */
DPF_API dpf_status dpf_report_smooth_fp(const dpf_model* model, const uint64_t* primes,
                                        size_t n_primes, const uint64_t* t_values,
                                        size_t n_t_values, int fiber_only, unsigned threads,
                                        dpf_format fmt, char** out);
DPF_API dpf_status dpf_report_sweep(int degree, int bound, int n_max, int uniqueness_trials,
                                    uint64_t seed, dpf_format fmt, char** out);

#ifdef __cplusplus
}
#endif

#endif /* DPF_DPF_H */
