/*
 * C interface to libcobw.
 *
 * All objects are opaque handles owned by the caller and released with the
 * matching *_free function. Every fallible call returns a cobw_status; on
 * failure cobw_last_error() describes the problem for the calling thread.
 * Strings returned through char** out-parameters are heap-allocated and
 * must be released with cobw_string_free().
 *
 * Ring elements use the text form "x1*x3:-3;x2^2:1" (monomial:coefficient
 * terms separated by ';', "0" for zero, "1:c" for constants).
 */
#ifndef COBW_H
#define COBW_H

#include <stddef.h>
#include <stdint.h>

#if defined(COBW_BUILDING_LIBRARY)
#define COBW_API __attribute__((visibility("default")))
#else
#define COBW_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cobw_status {
    COBW_OK = 0,
    COBW_ERR_INVALID_ARGUMENT = 1,
    COBW_ERR_VERIFICATION = 2, /* a known identity failed to hold */
    COBW_ERR_OUT_OF_RANGE = 3, /* e.g. truncation too small */
    COBW_ERR_INTERNAL = 4
} cobw_status;

typedef enum cobw_format { COBW_FORMAT_JSON = 0, COBW_FORMAT_CSV = 1, COBW_FORMAT_MD = 2 } cobw_format;

typedef struct cobw_ring cobw_ring;
typedef struct cobw_element cobw_element;
typedef struct cobw_report cobw_report;

COBW_API const char* cobw_version(void);
COBW_API const char* cobw_status_message(cobw_status status);
COBW_API const char* cobw_last_error(void);
COBW_API void cobw_string_free(char* s);

/* integer arithmetic; results as decimal strings */
COBW_API cobw_status cobw_m(uint64_t k, char** out);
COBW_API cobw_status cobw_binom_gcd(uint64_t k, char** out);
COBW_API cobw_status cobw_r_coefficient(uint64_t k, char** out);
COBW_API cobw_status cobw_epsilon(uint32_t p, uint32_t n, int64_t q, char** out);
COBW_API cobw_status cobw_fermat_ck(uint64_t k, char** c, char** epsilon);

/* rings */
COBW_API cobw_status cobw_ring_w(int64_t q, cobw_ring** out);
COBW_API cobw_status cobw_ring_polynomial(const char* symbol, const uint32_t* skipped, size_t n_skipped,
                                          cobw_ring** out);
COBW_API void cobw_ring_free(cobw_ring* ring);
COBW_API cobw_status cobw_ring_graded_rank(const cobw_ring* ring, uint32_t weight, uint64_t* out);

COBW_API cobw_status cobw_element_parse(const cobw_ring* ring, const char* text, cobw_element** out);
COBW_API void cobw_element_free(cobw_element* e);
COBW_API cobw_status cobw_element_add(const cobw_element* a, const cobw_element* b, cobw_element** out);
COBW_API cobw_status cobw_element_mul(const cobw_element* a, const cobw_element* b, cobw_element** out);
COBW_API cobw_status cobw_element_to_string(const cobw_element* e, char** out);

/* Multiplication by e on (R / (gens)) (x) F_p in weights <= max_weight.
 * *injective is set to 1 or 0; on 0, *witness (if non-null) receives a
 * kernel element, otherwise it is set to NULL. */
COBW_API cobw_status cobw_mult_injective(const cobw_element* e, const cobw_element* const* gens, size_t n_gens,
                                         uint32_t p, uint32_t max_weight, int* injective, char** witness);

/* reports */
typedef struct cobw_landweber_params {
    int64_t q;
    uint32_t pmax;
    uint32_t nmax; /* 0: no limit */
    uint32_t degmax;
    uint32_t samples;
    uint64_t seed;
    int fault;
    uint32_t threads; /* 0: hardware concurrency */
} cobw_landweber_params;

COBW_API void cobw_landweber_params_default(cobw_landweber_params* params);

COBW_API cobw_status cobw_report_mktable(uint32_t kmax, cobw_report** out);
COBW_API cobw_status cobw_report_landweber(const cobw_landweber_params* params, cobw_report** out);
/* search_bound < 0 disables the integral search column */
COBW_API cobw_status cobw_report_fermat(uint64_t kmax, int64_t search_bound, cobw_report** out);
COBW_API cobw_status cobw_report_nseries(int64_t n, int64_t q, uint32_t order, cobw_report** out);
COBW_API int cobw_report_passed(const cobw_report* report);
COBW_API cobw_status cobw_report_render(const cobw_report* report, cobw_format format, int include_timing,
                                        char** out);
/* canonical JSON without timing; identical parameters give identical bytes */
COBW_API cobw_status cobw_report_payload(const cobw_report* report, char** out);
COBW_API void cobw_report_free(cobw_report* report);

#ifdef __cplusplus
}
#endif

#endif /* COBW_H */
