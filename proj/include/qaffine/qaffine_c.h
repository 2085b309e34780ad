#ifndef QAFFINE_C_H
#define QAFFINE_C_H

/* C interface to the qaffine library. Every function returns a qa_status;
 * on failure qa_last_error() describes the problem (thread-local, valid until
 * the next call on the same thread). Objects returned through out-pointers
 * are owned by the caller and released with the matching *_free function. */

#include <stddef.h>

#if defined(_WIN32)
#define QA_API __declspec(dllexport)
#else
#define QA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  QA_OK = 0,
  QA_VERIFICATION_FAILED = 1,
  QA_INVALID_INPUT = 2,
  QA_DEGENERATE = 3,
  QA_INTERNAL_ERROR = 4
} qa_status;

typedef struct {
  double re;
  double im;
} qa_complex;

typedef struct qa_matrix qa_matrix;
typedef struct qa_document qa_document;

typedef enum {
  QA_REFLECTION_CROSSED = 0,
  QA_REFLECTION_TWISTED = 1,
  QA_REFLECTION_INVERSE = 2
} qa_reflection;

typedef enum { QA_KMETHOD_EXPLICIT = 0, QA_KMETHOD_GENERIC = 1, QA_KMETHOD_CLOSED_FORM = 2 } qa_kmethod;

typedef enum {
  QA_CHECK_YBE = 0,
  QA_CHECK_RE = 1,
  QA_CHECK_COIDEAL = 2,
  QA_CHECK_SKLYANIN = 3,
  QA_CHECK_BCOMM = 4
} qa_check;

typedef enum { QA_SCAN_BULK = 0, QA_SCAN_BOUNDARY = 1, QA_SCAN_EXPLICIT = 2 } qa_scan_kind;

typedef enum { QA_AXIS_EPS = 0, QA_AXIS_THETA = 1 } qa_scan_axis;

QA_API const char* qa_last_error(void);

/* ---- parsing ---- */

QA_API qa_status qa_parse_complex(const char* text, qa_complex* out);
/* Comma-separated lists. *count receives the number of entries; when it
 * exceeds cap nothing is written and QA_INVALID_INPUT is returned. */
QA_API qa_status qa_parse_complex_list(const char* text, qa_complex* out, size_t cap, size_t* count);
QA_API qa_status qa_parse_real_list(const char* text, double* out, size_t cap, size_t* count);

/* ---- matrices ---- */

/* data is row-major, rows * cols entries. */
QA_API qa_status qa_matrix_create(size_t rows, size_t cols, const qa_complex* data, qa_matrix** out);
QA_API size_t qa_matrix_rows(const qa_matrix* m);
QA_API size_t qa_matrix_cols(const qa_matrix* m);
QA_API qa_status qa_matrix_get(const qa_matrix* m, size_t row, size_t col, qa_complex* out);
QA_API void qa_matrix_free(qa_matrix* m);

/* a == lambda * b up to relative deviation tol. */
QA_API qa_status qa_projective_compare(const qa_matrix* a, const qa_matrix* b, double tol, int* equal,
                                       qa_complex* lambda, double* deviation);

/* ---- computations; each produces a document ---- */

/* Defining relations on the vector representation at x and its antipode dual.
 * QA_VERIFICATION_FAILED when a residual exceeds tol. */
QA_API qa_status qa_rep_check(int n, qa_complex q, qa_complex x, double tol, qa_document** out);

typedef struct {
  int n;
  qa_complex q;
  qa_complex x1;
  qa_complex x2;
  int dual_left;
  int dual_right;
  qa_reflection reflection; /* module used for a dual leg */
  double rel_tol;
} qa_smatrix_request;

/* QA_DEGENERATE (and *out == NULL) when the solution space is not one-dimensional. */
QA_API qa_status qa_smatrix(const qa_smatrix_request* req, qa_document** out);

typedef struct {
  int n;
  qa_complex q;
  qa_complex x;
  const qa_complex* eps;
  size_t eps_count;
  qa_kmethod method;
  int has_eps_aggregate;
  qa_complex eps_aggregate; /* closed-form only */
  qa_reflection reflection; /* generic only */
  double rel_tol;
} qa_kmatrix_request;

QA_API qa_status qa_kmatrix(const qa_kmatrix_request* req, qa_document** out);

typedef struct {
  qa_check check;
  int n;
  qa_complex q;
  const double* rapidities;
  size_t rapidity_count;
  const qa_complex* eps;
  size_t eps_count;
  qa_reflection reflection;
  double tol;
  double rel_tol;
} qa_verify_request;

/* QA_OK on pass, QA_VERIFICATION_FAILED on fail (document still produced),
 * QA_DEGENERATE when an input intertwiner is not unique. */
QA_API qa_status qa_verify(const qa_verify_request* req, qa_document** out);

typedef struct {
  qa_scan_kind kind;
  qa_scan_axis axis;
  int n;
  qa_complex q;
  qa_complex x;            /* fixed spectral parameter */
  const qa_complex* eps;   /* fixed eps (theta axis, boundary kinds) */
  size_t eps_count;
  const qa_complex* values; /* eps axis: per-component value set */
  size_t value_count;
  qa_complex theta_from;   /* theta axis: segment endpoints, x = e^theta */
  qa_complex theta_to;
  size_t theta_count;
  qa_reflection reflection;
  double rel_tol;
} qa_scan_request;

QA_API qa_status qa_scan(const qa_scan_request* req, qa_document** out);

/* ---- documents ---- */

QA_API qa_status qa_document_parse(const char* bytes, size_t len, qa_document** out);
/* NUL-terminated JSON; release with qa_string_free. */
QA_API qa_status qa_document_serialize(const qa_document* doc, char** out);
QA_API void qa_string_free(char* s);
/* "smatrix", "kmatrix", "report", "scan"; valid while doc lives. */
QA_API const char* qa_document_kind(const qa_document* doc);
/* Copy of the matrix of a matrix document. */
QA_API qa_status qa_document_matrix(const qa_document* doc, qa_matrix** out);
QA_API size_t qa_document_check_count(const qa_document* doc);

typedef struct {
  const char* name; /* valid while doc lives */
  double deviation;
  qa_complex lambda;
  double tol;
  int passed;
} qa_check_info;

QA_API qa_status qa_document_check(const qa_document* doc, size_t index, qa_check_info* out);
/* Dimension recorded in the document meta, or -1. */
QA_API long qa_document_dimension(const qa_document* doc);
QA_API void qa_document_free(qa_document* doc);

#ifdef __cplusplus
}
#endif

#endif
