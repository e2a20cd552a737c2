/*
 * C interface to the succinct data structures library.
 *
 * Every object is an opaque handle created by a *_create / *_parse / *_build
 * function and released with the matching *_free. Functions return an
 * sds_status; on failure sds_last_error() describes the problem (per thread,
 * valid until the next call on that thread). Bits are passed as int 0/1.
 */
#ifndef SDS_SDS_H
#define SDS_SDS_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(SDS_BUILDING_LIBRARY)
#    define SDS_API __declspec(dllexport)
#  else
#    define SDS_API __declspec(dllimport)
#  endif
#else
#  define SDS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sds_status {
  SDS_OK = 0,
  SDS_ERR_NULL_ARGUMENT = 1,
  SDS_ERR_INVALID_ARGUMENT = 2,
  SDS_ERR_OUT_OF_RANGE = 3,
  SDS_ERR_PARSE = 4,
  SDS_ERR_NOT_A_NODE = 5,
  SDS_ERR_BUFFER_TOO_SMALL = 6,
  SDS_ERR_NO_MEMORY = 7,
  SDS_ERR_INTERNAL = 8
} sds_status;

SDS_API const char* sds_status_string(sds_status status);
SDS_API const char* sds_last_error(void);
/* Line/column (1-based) of the last SDS_ERR_PARSE on this thread. */
SDS_API void sds_last_parse_location(size_t* line, size_t* column);

/* ---- bit sequences ------------------------------------------------------ */

typedef struct sds_bits sds_bits;

/* '0'/'1' characters; whitespace is ignored. */
SDS_API sds_status sds_bits_parse(const char* text, sds_bits** out);
SDS_API sds_status sds_bits_from_array(const unsigned char* bits, size_t n, sds_bits** out);
SDS_API sds_status sds_bits_clone(const sds_bits* bits, sds_bits** out);
SDS_API void sds_bits_free(sds_bits* bits);
SDS_API size_t sds_bits_length(const sds_bits* bits);
SDS_API sds_status sds_bits_get(const sds_bits* bits, size_t i, int* out);
SDS_API int sds_bits_equal(const sds_bits* a, const sds_bits* b);
/* Writes a NUL-terminated '0'/'1' string. *needed receives the buffer size
 * required (including the terminator) even when cap is too small. */
SDS_API sds_status sds_bits_to_string(const sds_bits* bits, char* buf, size_t cap, size_t* needed);

SDS_API sds_status sds_rank(const sds_bits* bits, int b, size_t i, size_t* out);
SDS_API sds_status sds_select(const sds_bits* bits, int b, size_t i, size_t* out);
SDS_API sds_status sds_succ(const sds_bits* bits, int b, size_t y, size_t* out);
SDS_API sds_status sds_pred(const sds_bits* bits, int b, size_t y, size_t* out);

typedef struct sds_rank_index sds_rank_index;

SDS_API sds_status sds_rank_index_build(const sds_bits* bits, size_t block_size, sds_rank_index** out);
SDS_API void sds_rank_index_free(sds_rank_index* index);
SDS_API sds_status sds_rank_index_rank(const sds_rank_index* index, int b, size_t i, size_t* out);
SDS_API sds_status sds_rank_index_select(const sds_rank_index* index, int b, size_t i, size_t* out);

/* ---- reference semantics -------------------------------------------------
 * Naive implementations used for verification. The mutators edit the flat
 * sequence in place. */

SDS_API sds_status sds_oracle_rank(const sds_bits* bits, int b, size_t i, size_t* out);
SDS_API sds_status sds_oracle_select(const sds_bits* bits, int b, size_t i, size_t* out);
SDS_API sds_status sds_oracle_insert(sds_bits* bits, size_t i, int b);
SDS_API sds_status sds_oracle_delete(sds_bits* bits, size_t i);
SDS_API sds_status sds_oracle_update(sds_bits* bits, size_t i, int b);

/* ---- trees and LOUDS -------------------------------------------------------- */

typedef struct sds_tree sds_tree;

/* Parenthesised form, e.g. "(1 (2 (5) (6)) (3))". */
SDS_API sds_status sds_tree_parse(const char* text, sds_tree** out);
SDS_API void sds_tree_free(sds_tree* tree);
SDS_API size_t sds_tree_node_count(const sds_tree* tree);
SDS_API size_t sds_tree_height(const sds_tree* tree);
SDS_API int sds_tree_valid_position(const sds_tree* tree, const size_t* path, size_t len);
/* Child count of the node at path (pointer-structure answer). */
SDS_API sds_status sds_tree_children(const sds_tree* tree, const size_t* path, size_t len, size_t* out);
/* LOUDS encoding; with super_root != 0 the tree is first placed under an
 * extra root, giving the conventional "10" prefix. */
SDS_API sds_status sds_tree_louds(const sds_tree* tree, int super_root, sds_bits** out);
/* Bit offset of the node at path in the encoding produced with the same
 * super_root flag. */
SDS_API sds_status sds_tree_louds_position(const sds_tree* tree, const size_t* path, size_t len,
                                           int super_root, size_t* out);

typedef struct sds_louds sds_louds;

SDS_API sds_status sds_louds_create(const sds_bits* bits, sds_louds** out);
SDS_API void sds_louds_free(sds_louds* louds);
SDS_API size_t sds_louds_node_count(const sds_louds* louds);
SDS_API int sds_louds_is_node(const sds_louds* louds, size_t v);
/* Checked navigation: SDS_ERR_NOT_A_NODE when v does not start a node
 * description, SDS_ERR_OUT_OF_RANGE for a missing child or the root's
 * parent. */
SDS_API sds_status sds_louds_children(const sds_louds* louds, size_t v, size_t* out);
SDS_API sds_status sds_louds_child(const sds_louds* louds, size_t v, size_t i, size_t* out);
SDS_API sds_status sds_louds_parent(const sds_louds* louds, size_t v, size_t* out);

/* ---- dynamic bit vectors ----------------------------------------------------- */

typedef struct sds_dbv sds_dbv;

/* low == 0 && high == 0 selects the defaults (w = 64). */
SDS_API sds_status sds_dbv_create(size_t low, size_t high, sds_dbv** out);
SDS_API sds_status sds_dbv_from_bits(const sds_bits* bits, size_t low, size_t high, sds_dbv** out);
/* Adopts a tree written in the dump format, without validating it. */
SDS_API sds_status sds_dbv_parse_dump(const char* text, size_t low, size_t high, sds_dbv** out);
SDS_API sds_status sds_dbv_clone(const sds_dbv* dbv, sds_dbv** out);
SDS_API void sds_dbv_free(sds_dbv* dbv);

SDS_API size_t sds_dbv_size(const sds_dbv* dbv);
SDS_API sds_status sds_dbv_access(const sds_dbv* dbv, size_t i, int* out);
SDS_API sds_status sds_dbv_rank(const sds_dbv* dbv, size_t i, size_t* out);
SDS_API sds_status sds_dbv_select0(const sds_dbv* dbv, size_t k, size_t* out);
SDS_API sds_status sds_dbv_select1(const sds_dbv* dbv, size_t k, size_t* out);

SDS_API sds_status sds_dbv_insert(sds_dbv* dbv, size_t i, int b);
SDS_API sds_status sds_dbv_delete(sds_dbv* dbv, size_t i);
/* changed may be NULL. */
SDS_API sds_status sds_dbv_set(sds_dbv* dbv, size_t i, int* changed);
SDS_API sds_status sds_dbv_clear(sds_dbv* dbv, size_t i, int* changed);

SDS_API sds_status sds_dbv_to_bits(const sds_dbv* dbv, sds_bits** out);
SDS_API sds_status sds_dbv_dump(const sds_dbv* dbv, char* buf, size_t cap, size_t* needed);

typedef struct sds_dbv_report {
  int well_formed;      /* relaxed well-formedness with the vector's bounds */
  int red_black;        /* red-black under a red context */
  size_t black_height;  /* valid when red_black */
  size_t max_path;      /* vertices on the longest root-to-leaf path */
  size_t leaves;
} sds_dbv_report;

SDS_API sds_status sds_dbv_check(const sds_dbv* dbv, sds_dbv_report* out);

#ifdef __cplusplus
}
#endif

#endif /* SDS_SDS_H */
