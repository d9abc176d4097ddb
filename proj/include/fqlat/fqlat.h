#ifndef FQLAT_H
#define FQLAT_H

/* C interface to the fqlat engines. Results are JSON or markdown strings owned
 * by the caller and released with fqlat_string_free. On failure the functions
 * return a nonzero status and fqlat_last_error() describes it (per thread). */

#ifdef __cplusplus
extern "C" {
#endif

#if defined(FQLAT_BUILD)
#define FQLAT_API __attribute__((visibility("default")))
#else
#define FQLAT_API
#endif

typedef enum {
  FQLAT_OK = 0,
  FQLAT_ERR_ARGUMENT = 1,   /* null pointer or malformed selector */
  FQLAT_ERR_DOMAIN = 2,     /* mathematically invalid input */
  FQLAT_ERR_IO = 3,         /* missing or unreadable data file */
  FQLAT_ERR_CACHE = 4,      /* corrupt cache entry */
  FQLAT_ERR_TABLE_GAP = 5,  /* root discriminant table lacks a degree */
  FQLAT_ERR_INTERNAL = 9
} fqlat_status;

typedef enum { FQLAT_FORMAT_JSON = 0, FQLAT_FORMAT_MARKDOWN = 1 } fqlat_format;

typedef struct fqlat_field fqlat_field;
typedef struct fqlat_classification fqlat_classification;

FQLAT_API const char* fqlat_version(void);
FQLAT_API const char* fqlat_last_error(void);
FQLAT_API void fqlat_string_free(char* s);

/* Real quadratic field of fundamental discriminant d. */
FQLAT_API fqlat_status fqlat_field_new(long d, fqlat_field** out);
FQLAT_API void fqlat_field_free(fqlat_field* k);
FQLAT_API fqlat_status fqlat_field_info(const fqlat_field* k, char** json_out);

/* Place lists are comma separated, e.g. "2,41+"; s may be NULL or empty. */
FQLAT_API fqlat_status fqlat_chi(const fqlat_field* k, const char* ramified, const char* s, char** json_out);
FQLAT_API fqlat_status fqlat_torsion(const fqlat_field* k, const char* ramified, const char* s, char** json_out);
FQLAT_API fqlat_status fqlat_enumerate(const fqlat_field* k, char** json_out);

FQLAT_API fqlat_status fqlat_screen(long max_d, char** json_out);
FQLAT_API fqlat_status fqlat_table1(fqlat_format format, char** out);

/* discriminants: comma separated, NULL or empty for all screened fields.
 * cache_dir: NULL for the default; rebuild ignores existing entries. */
FQLAT_API fqlat_status fqlat_classify(const char* discriminants, const char* cache_dir, int rebuild, int jobs,
                                      fqlat_classification** out);
/* Takes a document previously produced by fqlat_classification_json. */
FQLAT_API fqlat_status fqlat_classification_load(const char* json, fqlat_classification** out);
FQLAT_API void fqlat_classification_free(fqlat_classification* c);
FQLAT_API int fqlat_classification_counted(const fqlat_classification* c);
FQLAT_API fqlat_status fqlat_classification_json(const fqlat_classification* c, char** out);
FQLAT_API fqlat_status fqlat_classification_report(const fqlat_classification* c, char** markdown_out);
FQLAT_API fqlat_status fqlat_classification_reconciliation(const fqlat_classification* c, char** markdown_out);

/* degree <= 0: full degree report; q <= 0: use q = 1. table_path NULL: shipped table. */
FQLAT_API fqlat_status fqlat_bounds(int degree, long q, const char* table_path, fqlat_format format, char** out);

#ifdef __cplusplus
}
#endif

#endif
