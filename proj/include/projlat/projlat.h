#ifndef PROJLAT_PROJLAT_H
#define PROJLAT_PROJLAT_H

/* C interface to the projection-lattice library.
 *
 * Every call returns a projlat_status. On failure the message for the
 * calling thread is available from projlat_last_error() until the next call.
 * Strings returned through char** are owned by the caller and released with
 * projlat_string_free; elements are released with projlat_element_free. */

#include <stdint.h>

#if defined(_WIN32)
#  if defined(PROJLAT_BUILDING)
#    define PROJLAT_API __declspec(dllexport)
#  else
#    define PROJLAT_API __declspec(dllimport)
#  endif
#else
#  define PROJLAT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum projlat_status {
  PROJLAT_OK = 0,
  PROJLAT_NOT_SELF_ADJOINT = 10,
  PROJLAT_NOT_A_PROJECTION = 11,
  PROJLAT_ALGEBRA_MISMATCH = 12,
  PROJLAT_NOT_IN_POSITION_P = 13,
  PROJLAT_NORM_TOO_LARGE = 14,
  PROJLAT_NONZERO_MEET = 15,
  PROJLAT_SPECTRUM_OUT_OF_RANGE = 16,
  PROJLAT_NOT_ADDITIVE = 17,
  PROJLAT_WRONG_ALGEBRA = 18,
  PROJLAT_NOT_UNITARY = 19,
  PROJLAT_TYPE_I2_PRESENT = 20,
  PROJLAT_NOT_ORTHOISO = 21,
  PROJLAT_RECONSTRUCTION_FAILED = 22,
  PROJLAT_PARSE = 40,
  PROJLAT_IO = 41,
  PROJLAT_USAGE = 42,
  PROJLAT_INVALID_ARGUMENT = 43,
  PROJLAT_INTERNAL = 99
} projlat_status;

typedef struct projlat_element projlat_element;

PROJLAT_API const char* projlat_version(void);
PROJLAT_API const char* projlat_last_error(void);
PROJLAT_API const char* projlat_status_name(projlat_status status);
PROJLAT_API void projlat_string_free(char* s);

/* Elements use the matrix instance format
 * {"block_dims": [...], "blocks": [[[re, im], ...], ...]}. */
PROJLAT_API projlat_status projlat_element_from_json(const char* json, projlat_element** out);
PROJLAT_API projlat_status projlat_element_to_json(const projlat_element* x, char** out);
PROJLAT_API void projlat_element_free(projlat_element* x);

PROJLAT_API projlat_status projlat_operator_norm(const projlat_element* x, double* out);
PROJLAT_API projlat_status projlat_range_projection(const projlat_element* x, projlat_element** out);
/* Arguments must be projections. */
PROJLAT_API projlat_status projlat_meet(const projlat_element* e, const projlat_element* f, projlat_element** out);
PROJLAT_API projlat_status projlat_join(const projlat_element* e, const projlat_element* f, projlat_element** out);
/* {"a_values": [...], "dimension_split": [...], "conjugating_unitary": matrix} */
PROJLAT_API projlat_status projlat_halmos_form(const projlat_element* e, const projlat_element* f, char** out);
PROJLAT_API projlat_status projlat_isoclinic(const projlat_element* e, const projlat_element* f,
                                             projlat_element** g, double* alpha);

/* Validates a configuration document and returns it with defaults filled
 * in. Parse errors carry "origin:line:column" in projlat_last_error(). */
PROJLAT_API projlat_status projlat_config_normalize(const char* text, const char* origin, char** out);

/* config_json holds the keys seed, algebra, suites, samples, tol_scale, out.
 * On PROJLAT_OK *report receives the report and *all_pass whether every
 * check passed. "out" is not written here. */
PROJLAT_API projlat_status projlat_run_suite(const char* config_json, char** report, int* all_pass);

/* Writes the instance files into out_dir (which must exist) and returns the
 * list of written paths as a JSON array. */
PROJLAT_API projlat_status projlat_gen_instance(uint64_t seed, const char* spec, const char* out_dir,
                                                char** written);

#ifdef __cplusplus
}
#endif

#endif
