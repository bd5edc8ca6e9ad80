#ifndef LIESYM_LIESYM_H
#define LIESYM_LIESYM_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(LIESYM_BUILDING)
#define LS_API __attribute__((visibility("default")))
#else
#define LS_API
#endif

typedef struct ls_expr ls_expr;
typedef struct ls_pde ls_pde;
typedef struct ls_algebra ls_algebra;

typedef enum ls_status {
  LS_OK = 0,
  LS_ERR_PARSE = 1,
  LS_ERR_DOMAIN = 2,
  LS_ERR_UNBOUND_SYMBOL = 3,
  LS_ERR_NOT_POLYNOMIAL = 4,
  LS_ERR_CYCLIC_BINDING = 5,
  LS_ERR_NOT_CERTIFIABLE = 6,
  LS_ERR_NOT_CLOSED = 7,
  LS_ERR_NOT_IDEAL = 8,
  LS_ERR_NO_COMPLEMENT = 9,
  LS_ERR_SELF_CHECK = 10,
  LS_ERR_INVALID_ARGUMENT = 11,
  LS_ERR_IO = 12,
  LS_ERR_INTERNAL = 13
} ls_status;

/* Message of the last failed call on this thread; "" after a success. */
LS_API const char* ls_last_error(void);
LS_API const char* ls_status_name(ls_status status);
/* Releases strings returned through char** out-parameters. */
LS_API void ls_string_free(char* s);

/* Expressions. */
LS_API ls_status ls_expr_parse(const char* text, ls_expr** out);
LS_API void ls_expr_free(ls_expr* e);
LS_API ls_status ls_expr_to_string(const ls_expr* e, char** out);
LS_API ls_status ls_expr_diff(const ls_expr* e, const char* symbol, ls_expr** out);
/* bindings_json: {"x": 0.5, "c1": 2} */
LS_API ls_status ls_expr_eval(const ls_expr* e, const char* bindings_json, double* out);
LS_API int ls_expr_equal(const ls_expr* a, const ls_expr* b);

/* PDEs: key/value fixture text or the JSON form. */
LS_API ls_status ls_pde_parse(const char* text, ls_pde** out);
LS_API ls_status ls_pde_load(const char* path, ls_pde** out);
LS_API ls_status ls_pde_born_infeld(ls_pde** out);
LS_API void ls_pde_free(ls_pde* p);
LS_API ls_status ls_pde_to_json(const ls_pde* p, char** out);

/* emit: "determining", "basis" or "all". */
LS_API ls_status ls_symmetries(const ls_pde* p, int ansatz_degree, const char* emit, char** out_json);
/* *is_symmetry is 1 when the prolonged field vanishes on solutions. */
LS_API ls_status ls_verify_symmetry(const ls_pde* p, const char* xi1, const char* xi2, const char* eta,
                                    int* is_symmetry, char** residual);

/* Lie algebras. */
LS_API ls_status ls_algebra_born_infeld(ls_algebra** out);
/* fields_json: [["1","0","0"], ["t","x","0"], ...] as (xi1, xi2, eta). */
LS_API ls_status ls_algebra_from_fields(const char* fields_json, ls_algebra** out);
LS_API void ls_algebra_free(ls_algebra* g);
LS_API int ls_algebra_dim(const ls_algebra* g);
LS_API ls_status ls_bracket_table(const ls_algebra* g, char** out_json);
LS_API ls_status ls_algebra_structure(const ls_algebra* g, char** out_json);
/* generator is 1-based. */
LS_API ls_status ls_adjoint(const ls_algebra* g, int generator, double epsilon, char** out_json);
LS_API ls_status ls_optimal_system(const ls_algebra* g, int vet, uint64_t seed, char** out_json);

/* Solutions. solution: "expr" or "implicit:expr"; params: "c1=0.4,c2=1.3"
   (may be NULL); grid: "x=-0.5:0.5:41,t=1.2:2:41". */
LS_API ls_status ls_verify_solution(const ls_pde* p, const char* solution, const char* params, const char* grid,
                                    double tol, char** out_json);
LS_API ls_status ls_reduce(const ls_pde* p, const char* generator, char** out_json);

/* Full fixture run; JSON list of {claim_id, paper_anchor, status, details}. */
LS_API ls_status ls_reproduce_paper(uint64_t seed, char** out_json);
/* Number of claims with the given status in a report produced above. */
LS_API ls_status ls_report_count(const char* report_json, const char* status, int* out);

#ifdef __cplusplus
}
#endif

#endif
