#include "sds/sds.h"

#include <cstring>
#include <new>
#include <string>

#include "sds/bitvec_core.hpp"
#include "sds/dynamic_bitvec.hpp"
#include "sds/error.hpp"
#include "sds/louds.hpp"
#include "sds/reference_oracle.hpp"

struct sds_bits {
  sds::BitSeq bits;
};

struct sds_rank_index {
  sds::RankIndex index;
};

struct sds_tree {
  sds::Tree tree;
};

struct sds_louds {
  sds::Louds louds;
};

struct sds_dbv {
  sds::DynamicBitVector vec;
};

namespace {

thread_local std::string g_last_error;
thread_local std::size_t g_parse_line = 0;
thread_local std::size_t g_parse_column = 0;

sds_status fail(sds_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs f, translating exceptions into status codes.
template <class F>
sds_status guarded(F&& f) {
  try {
    f();
    g_last_error.clear();
    return SDS_OK;
  } catch (const sds::ParseError& e) {
    g_parse_line = e.line();
    g_parse_column = e.column();
    return fail(SDS_ERR_PARSE, e.what());
  } catch (const sds::NotANodeError& e) {
    return fail(SDS_ERR_NOT_A_NODE, e.what());
  } catch (const std::out_of_range& e) {
    return fail(SDS_ERR_OUT_OF_RANGE, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(SDS_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(SDS_ERR_NO_MEMORY, "out of memory");
  } catch (const std::exception& e) {
    return fail(SDS_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(SDS_ERR_INTERNAL, "unknown error");
  }
}

sds_status null_arg() { return fail(SDS_ERR_NULL_ARGUMENT, "null argument"); }

sds_status copy_string(const std::string& s, char* buf, std::size_t cap, std::size_t* needed) {
  if (needed) *needed = s.size() + 1;
  if (!buf || cap < s.size() + 1) return fail(SDS_ERR_BUFFER_TOO_SMALL, "buffer too small");
  std::memcpy(buf, s.c_str(), s.size() + 1);
  g_last_error.clear();
  return SDS_OK;
}

sds::Path to_path(const std::size_t* path, std::size_t len) {
  return len == 0 ? sds::Path{} : sds::Path(path, path + len);
}

sds::SizeBounds make_bounds(std::size_t low, std::size_t high) {
  if (low == 0 && high == 0) return sds::SizeBounds::defaults();
  sds::SizeBounds b{low, high};
  b.validate();
  return b;
}

} // namespace

extern "C" {

const char* sds_status_string(sds_status status) {
  switch (status) {
    case SDS_OK: return "ok";
    case SDS_ERR_NULL_ARGUMENT: return "null argument";
    case SDS_ERR_INVALID_ARGUMENT: return "invalid argument";
    case SDS_ERR_OUT_OF_RANGE: return "out of range";
    case SDS_ERR_PARSE: return "parse error";
    case SDS_ERR_NOT_A_NODE: return "not a node position";
    case SDS_ERR_BUFFER_TOO_SMALL: return "buffer too small";
    case SDS_ERR_NO_MEMORY: return "out of memory";
    case SDS_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* sds_last_error(void) { return g_last_error.c_str(); }

void sds_last_parse_location(size_t* line, size_t* column) {
  if (line) *line = g_parse_line;
  if (column) *column = g_parse_column;
}

// ---- bit sequences ----------------------------------------------------------

sds_status sds_bits_parse(const char* text, sds_bits** out) {
  if (!text || !out) return null_arg();
  return guarded([&] { *out = new sds_bits{sds::parse_bits(text)}; });
}

sds_status sds_bits_from_array(const unsigned char* bits, size_t n, sds_bits** out) {
  if ((!bits && n > 0) || !out) return null_arg();
  return guarded([&] {
    sds::BitSeq s(n);
    for (size_t k = 0; k < n; ++k) s[k] = bits[k] != 0;
    *out = new sds_bits{std::move(s)};
  });
}

sds_status sds_bits_clone(const sds_bits* bits, sds_bits** out) {
  if (!bits || !out) return null_arg();
  return guarded([&] { *out = new sds_bits{bits->bits}; });
}

void sds_bits_free(sds_bits* bits) { delete bits; }

size_t sds_bits_length(const sds_bits* bits) { return bits ? bits->bits.size() : 0; }

sds_status sds_bits_get(const sds_bits* bits, size_t i, int* out) {
  if (!bits || !out) return null_arg();
  if (i >= bits->bits.size()) return fail(SDS_ERR_OUT_OF_RANGE, "bit index out of range");
  *out = bits->bits[i] ? 1 : 0;
  return SDS_OK;
}

int sds_bits_equal(const sds_bits* a, const sds_bits* b) {
  return a && b && a->bits == b->bits;
}

sds_status sds_bits_to_string(const sds_bits* bits, char* buf, size_t cap, size_t* needed) {
  if (!bits) return null_arg();
  return copy_string(sds::format_bits(bits->bits), buf, cap, needed);
}

sds_status sds_rank(const sds_bits* bits, int b, size_t i, size_t* out) {
  if (!bits || !out) return null_arg();
  *out = sds::rank(b != 0, i, bits->bits);
  return SDS_OK;
}

sds_status sds_select(const sds_bits* bits, int b, size_t i, size_t* out) {
  if (!bits || !out) return null_arg();
  *out = sds::select(b != 0, i, bits->bits);
  return SDS_OK;
}

sds_status sds_succ(const sds_bits* bits, int b, size_t y, size_t* out) {
  if (!bits || !out) return null_arg();
  *out = sds::succ(b != 0, bits->bits, y);
  return SDS_OK;
}

sds_status sds_pred(const sds_bits* bits, int b, size_t y, size_t* out) {
  if (!bits || !out) return null_arg();
  *out = sds::pred(b != 0, bits->bits, y);
  return SDS_OK;
}

sds_status sds_rank_index_build(const sds_bits* bits, size_t block_size, sds_rank_index** out) {
  if (!bits || !out) return null_arg();
  return guarded([&] { *out = new sds_rank_index{sds::build_rank_index(bits->bits, block_size)}; });
}

void sds_rank_index_free(sds_rank_index* index) { delete index; }

sds_status sds_rank_index_rank(const sds_rank_index* index, int b, size_t i, size_t* out) {
  if (!index || !out) return null_arg();
  *out = index->index.rank(b != 0, i);
  return SDS_OK;
}

sds_status sds_rank_index_select(const sds_rank_index* index, int b, size_t i, size_t* out) {
  if (!index || !out) return null_arg();
  *out = index->index.select(b != 0, i);
  return SDS_OK;
}

// ---- reference semantics ---------------------------------------------------------

sds_status sds_oracle_rank(const sds_bits* bits, int b, size_t i, size_t* out) {
  if (!bits || !out) return null_arg();
  *out = sds::oracle::oracle_rank(b != 0, i, bits->bits);
  return SDS_OK;
}

sds_status sds_oracle_select(const sds_bits* bits, int b, size_t i, size_t* out) {
  if (!bits || !out) return null_arg();
  *out = sds::oracle::oracle_select(b != 0, i, bits->bits);
  return SDS_OK;
}

sds_status sds_oracle_insert(sds_bits* bits, size_t i, int b) {
  if (!bits) return null_arg();
  return guarded([&] { bits->bits = sds::oracle::insert1(bits->bits, b != 0, i); });
}

sds_status sds_oracle_delete(sds_bits* bits, size_t i) {
  if (!bits) return null_arg();
  return guarded([&] { bits->bits = sds::oracle::delete_at(bits->bits, i); });
}

sds_status sds_oracle_update(sds_bits* bits, size_t i, int b) {
  if (!bits) return null_arg();
  return guarded([&] { bits->bits = sds::oracle::update_at(bits->bits, i, b != 0); });
}

// ---- trees and LOUDS ----------------------------------------------------------------

sds_status sds_tree_parse(const char* text, sds_tree** out) {
  if (!text || !out) return null_arg();
  return guarded([&] { *out = new sds_tree{sds::parse_tree(text)}; });
}

void sds_tree_free(sds_tree* tree) { delete tree; }

size_t sds_tree_node_count(const sds_tree* tree) { return tree ? sds::number_of_nodes(tree->tree) : 0; }

size_t sds_tree_height(const sds_tree* tree) { return tree ? sds::height(tree->tree) : 0; }

int sds_tree_valid_position(const sds_tree* tree, const size_t* path, size_t len) {
  if (!tree || (!path && len > 0)) return 0;
  return sds::valid_position(tree->tree, to_path(path, len)) ? 1 : 0;
}

sds_status sds_tree_children(const sds_tree* tree, const size_t* path, size_t len, size_t* out) {
  if (!tree || (!path && len > 0) || !out) return null_arg();
  return guarded([&] { *out = sds::children(tree->tree, to_path(path, len)); });
}

sds_status sds_tree_louds(const sds_tree* tree, int super_root, sds_bits** out) {
  if (!tree || !out) return null_arg();
  return guarded([&] {
    sds::BitSeq bits = super_root ? sds::louds_encode(sds::with_super_root(tree->tree))
                                  : sds::louds_encode(tree->tree);
    *out = new sds_bits{std::move(bits)};
  });
}

sds_status sds_tree_louds_position(const sds_tree* tree, const size_t* path, size_t len, int super_root,
                                   size_t* out) {
  if (!tree || (!path && len > 0) || !out) return null_arg();
  return guarded([&] {
    sds::Path p = to_path(path, len);
    if (!sds::valid_position(tree->tree, p)) throw std::out_of_range("path is not a valid position in the tree");
    if (super_root) {
      const sds::Tree wrapped = sds::with_super_root(tree->tree);
      p.insert(p.begin(), 0);
      *out = sds::louds_position({&wrapped}, p);
    } else {
      *out = sds::louds_position({&tree->tree}, p);
    }
  });
}

sds_status sds_louds_create(const sds_bits* bits, sds_louds** out) {
  if (!bits || !out) return null_arg();
  return guarded([&] { *out = new sds_louds{sds::Louds(bits->bits)}; });
}

void sds_louds_free(sds_louds* louds) { delete louds; }

size_t sds_louds_node_count(const sds_louds* louds) { return louds ? louds->louds.node_count() : 0; }

int sds_louds_is_node(const sds_louds* louds, size_t v) { return louds && louds->louds.is_node(v) ? 1 : 0; }

sds_status sds_louds_children(const sds_louds* louds, size_t v, size_t* out) {
  if (!louds || !out) return null_arg();
  return guarded([&] { *out = louds->louds.children(v); });
}

sds_status sds_louds_child(const sds_louds* louds, size_t v, size_t i, size_t* out) {
  if (!louds || !out) return null_arg();
  return guarded([&] { *out = louds->louds.child(v, i); });
}

sds_status sds_louds_parent(const sds_louds* louds, size_t v, size_t* out) {
  if (!louds || !out) return null_arg();
  return guarded([&] { *out = louds->louds.parent(v); });
}

// ---- dynamic bit vectors ----------------------------------------------------------------

sds_status sds_dbv_create(size_t low, size_t high, sds_dbv** out) {
  if (!out) return null_arg();
  return guarded([&] { *out = new sds_dbv{sds::DynamicBitVector(make_bounds(low, high))}; });
}

sds_status sds_dbv_from_bits(const sds_bits* bits, size_t low, size_t high, sds_dbv** out) {
  if (!bits || !out) return null_arg();
  return guarded([&] { *out = new sds_dbv{sds::DynamicBitVector(bits->bits, make_bounds(low, high))}; });
}

sds_status sds_dbv_parse_dump(const char* text, size_t low, size_t high, sds_dbv** out) {
  if (!text || !out) return null_arg();
  return guarded([&] {
    *out = new sds_dbv{sds::DynamicBitVector::from_tree(sds::parse_dtree(text), make_bounds(low, high))};
  });
}

sds_status sds_dbv_clone(const sds_dbv* dbv, sds_dbv** out) {
  if (!dbv || !out) return null_arg();
  return guarded([&] { *out = new sds_dbv{dbv->vec}; });
}

void sds_dbv_free(sds_dbv* dbv) { delete dbv; }

size_t sds_dbv_size(const sds_dbv* dbv) { return dbv ? dbv->vec.size() : 0; }

sds_status sds_dbv_access(const sds_dbv* dbv, size_t i, int* out) {
  if (!dbv || !out) return null_arg();
  return guarded([&] { *out = dbv->vec.access(i) ? 1 : 0; });
}

sds_status sds_dbv_rank(const sds_dbv* dbv, size_t i, size_t* out) {
  if (!dbv || !out) return null_arg();
  return guarded([&] { *out = dbv->vec.rank1(i); });
}

sds_status sds_dbv_select0(const sds_dbv* dbv, size_t k, size_t* out) {
  if (!dbv || !out) return null_arg();
  return guarded([&] { *out = dbv->vec.select0(k); });
}

sds_status sds_dbv_select1(const sds_dbv* dbv, size_t k, size_t* out) {
  if (!dbv || !out) return null_arg();
  return guarded([&] { *out = dbv->vec.select1(k); });
}

sds_status sds_dbv_insert(sds_dbv* dbv, size_t i, int b) {
  if (!dbv) return null_arg();
  return guarded([&] { dbv->vec.insert(i, b != 0); });
}

sds_status sds_dbv_delete(sds_dbv* dbv, size_t i) {
  if (!dbv) return null_arg();
  return guarded([&] { dbv->vec.erase(i); });
}

sds_status sds_dbv_set(sds_dbv* dbv, size_t i, int* changed) {
  if (!dbv) return null_arg();
  return guarded([&] {
    const bool c = dbv->vec.set(i);
    if (changed) *changed = c ? 1 : 0;
  });
}

sds_status sds_dbv_clear(sds_dbv* dbv, size_t i, int* changed) {
  if (!dbv) return null_arg();
  return guarded([&] {
    const bool c = dbv->vec.clear(i);
    if (changed) *changed = c ? 1 : 0;
  });
}

sds_status sds_dbv_to_bits(const sds_dbv* dbv, sds_bits** out) {
  if (!dbv || !out) return null_arg();
  return guarded([&] { *out = new sds_bits{dbv->vec.to_bits()}; });
}

sds_status sds_dbv_dump(const sds_dbv* dbv, char* buf, size_t cap, size_t* needed) {
  if (!dbv) return null_arg();
  return copy_string(dbv->vec.dump(), buf, cap, needed);
}

sds_status sds_dbv_check(const sds_dbv* dbv, sds_dbv_report* out) {
  if (!dbv || !out) return null_arg();
  return guarded([&] {
    const sds::DTree& t = dbv->vec.tree();
    const auto bh = sds::redblack_check(t);
    out->well_formed = sds::wf_check(t, dbv->vec.bounds(), true) ? 1 : 0;
    out->red_black = bh ? 1 : 0;
    out->black_height = bh.value_or(0);
    out->max_path = sds::max_path_length(t);
    out->leaves = sds::leaf_count(t);
  });
}

} // extern "C"
