#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstring>
#include <random>
#include <string>
#include <vector>

#include "sds/sds.h"

// Only the public C header is used here; the binary links the shared library.

namespace {

sds_bits* bits(const char* text) {
  sds_bits* out = nullptr;
  REQUIRE(sds_bits_parse(text, &out) == SDS_OK);
  return out;
}

std::string str(const sds_bits* b) {
  std::size_t needed = 0;
  sds_bits_to_string(b, nullptr, 0, &needed);
  std::string s(needed, '\0');
  REQUIRE(sds_bits_to_string(b, s.data(), s.size(), &needed) == SDS_OK);
  s.resize(needed - 1);
  return s;
}

std::string dump(const sds_dbv* v) {
  std::size_t needed = 0;
  sds_dbv_dump(v, nullptr, 0, &needed);
  std::string s(needed, '\0');
  REQUIRE(sds_dbv_dump(v, s.data(), s.size(), &needed) == SDS_OK);
  s.resize(needed - 1);
  return s;
}

const char* kSample58 = "1001 0100 1110 0100 1101 0000 1111 0100 1001 1001 0100 0100 0101 0101 10";

} // namespace

TEST_CASE("status strings and null arguments") {
  CHECK(std::string(sds_status_string(SDS_OK)) != "");
  CHECK(std::string(sds_status_string(SDS_ERR_NOT_A_NODE)) != std::string(sds_status_string(SDS_OK)));
  CHECK(sds_bits_parse(nullptr, nullptr) == SDS_ERR_NULL_ARGUMENT);
  std::size_t out = 0;
  CHECK(sds_rank(nullptr, 1, 0, &out) == SDS_ERR_NULL_ARGUMENT);
  sds_bits_free(nullptr);
  sds_dbv_free(nullptr);
}

TEST_CASE("bit strings") {
  sds_bits* b = bits(" 10 01\n1 ");
  CHECK(sds_bits_length(b) == 5);
  int bit = -1;
  CHECK(sds_bits_get(b, 0, &bit) == SDS_OK);
  CHECK(bit == 1);
  CHECK(sds_bits_get(b, 5, &bit) == SDS_ERR_OUT_OF_RANGE);
  CHECK(str(b) == "10011");

  char small[3];
  std::size_t needed = 0;
  CHECK(sds_bits_to_string(b, small, sizeof small, &needed) == SDS_ERR_BUFFER_TOO_SMALL);
  CHECK(needed == 6);

  const unsigned char raw[] = {1, 0, 0, 1, 1};
  sds_bits* c = nullptr;
  REQUIRE(sds_bits_from_array(raw, 5, &c) == SDS_OK);
  CHECK(sds_bits_equal(b, c));
  sds_bits* d = nullptr;
  REQUIRE(sds_bits_clone(c, &d) == SDS_OK);
  CHECK(sds_oracle_update(d, 1, 1) == SDS_OK);
  CHECK_FALSE(sds_bits_equal(c, d));
  sds_bits_free(b);
  sds_bits_free(c);
  sds_bits_free(d);
}

TEST_CASE("parse errors report a location") {
  sds_bits* b = nullptr;
  CHECK(sds_bits_parse("10\n 1x", &b) == SDS_ERR_PARSE);
  CHECK(b == nullptr);
  std::size_t line = 0, column = 0;
  sds_last_parse_location(&line, &column);
  CHECK(line == 2);
  CHECK(column == 3);
  CHECK(std::strlen(sds_last_error()) > 0);
}

TEST_CASE("rank and select on the 58-bit sample") {
  sds_bits* b = bits(kSample58);
  std::size_t out = 0;
  CHECK((sds_rank(b, 1, 4, &out) == SDS_OK && out == 2));
  CHECK((sds_rank(b, 1, 36, &out) == SDS_OK && out == 17));
  CHECK((sds_rank(b, 1, 58, &out) == SDS_OK && out == 26));
  CHECK((sds_select(b, 1, 2, &out) == SDS_OK && out == 4));
  CHECK((sds_select(b, 1, 17, &out) == SDS_OK && out == 36));
  CHECK((sds_select(b, 1, 26, &out) == SDS_OK && out == 57));
  CHECK((sds_select(b, 1, 27, &out) == SDS_OK && out == 59));
  CHECK((sds_succ(b, 0, 18, &out) == SDS_OK && out == 19));
  CHECK((sds_pred(b, 0, 5, &out) == SDS_OK && out == 5));

  sds_rank_index* idx = nullptr;
  CHECK(sds_rank_index_build(b, 0, &idx) == SDS_ERR_INVALID_ARGUMENT);
  REQUIRE(sds_rank_index_build(b, 8, &idx) == SDS_OK);
  for (std::size_t i = 0; i <= 60; ++i) {
    std::size_t a = 0, o = 0;
    REQUIRE(sds_rank_index_rank(idx, 0, i, &a) == SDS_OK);
    REQUIRE(sds_oracle_rank(b, 0, i, &o) == SDS_OK);
    REQUIRE(a == o);
    REQUIRE(sds_rank_index_select(idx, 1, i, &a) == SDS_OK);
    REQUIRE(sds_oracle_select(b, 1, i, &o) == SDS_OK);
    REQUIRE(a == o);
  }
  sds_rank_index_free(idx);
  sds_bits_free(b);
}

TEST_CASE("oracle sequence edits") {
  sds_bits* b = bits("101");
  CHECK(sds_oracle_insert(b, 3, 0) == SDS_OK);
  CHECK(sds_oracle_delete(b, 0) == SDS_OK);
  CHECK(str(b) == "010");
  CHECK(sds_oracle_insert(b, 9, 0) == SDS_ERR_OUT_OF_RANGE);
  CHECK(sds_oracle_delete(b, 3) == SDS_ERR_OUT_OF_RANGE);
  sds_bits_free(b);
}

TEST_CASE("trees and LOUDS") {
  sds_tree* t = nullptr;
  REQUIRE(sds_tree_parse("(1 (2 (5) (6)) (3) (4 (7) (8 (10)) (9)))", &t) == SDS_OK);
  CHECK(sds_tree_node_count(t) == 10);
  CHECK(sds_tree_height(t) == 4);
  const std::size_t p[] = {2, 1};
  CHECK(sds_tree_valid_position(t, p, 2));
  std::size_t out = 0;
  CHECK((sds_tree_children(t, p, 2, &out) == SDS_OK && out == 1));
  CHECK((sds_tree_louds_position(t, p, 2, 1, &out) == SDS_OK && out == 17));
  const std::size_t bad[] = {7};
  CHECK(sds_tree_children(t, bad, 1, &out) == SDS_ERR_OUT_OF_RANGE);

  sds_bits* enc = nullptr;
  REQUIRE(sds_tree_louds(t, 1, &enc) == SDS_OK);
  CHECK(str(enc) == "101110110011100001000");

  sds_louds* l = nullptr;
  REQUIRE(sds_louds_create(enc, &l) == SDS_OK);
  CHECK(sds_louds_node_count(l) == 11);
  CHECK(sds_louds_is_node(l, 17));
  CHECK_FALSE(sds_louds_is_node(l, 3));
  CHECK((sds_louds_children(l, 17, &out) == SDS_OK && out == 1));
  CHECK((sds_louds_child(l, 0, 0, &out) == SDS_OK && out == 2));
  CHECK((sds_louds_parent(l, 17, &out) == SDS_OK && out == 10));
  CHECK(sds_louds_children(l, 3, &out) == SDS_ERR_NOT_A_NODE);
  CHECK(sds_louds_child(l, 17, 4, &out) == SDS_ERR_OUT_OF_RANGE);
  CHECK(sds_louds_parent(l, 0, &out) == SDS_ERR_OUT_OF_RANGE);

  sds_bits* junk = bits("11");
  sds_louds* none = nullptr;
  CHECK(sds_louds_create(junk, &none) == SDS_ERR_INVALID_ARGUMENT);
  CHECK(none == nullptr);

  sds_tree* broken = nullptr;
  CHECK(sds_tree_parse("(a (b)", &broken) == SDS_ERR_PARSE);

  sds_bits_free(junk);
  sds_louds_free(l);
  sds_bits_free(enc);
  sds_tree_free(t);
}

TEST_CASE("dynamic bit vector") {
  sds_dbv* v = nullptr;
  CHECK(sds_dbv_create(3, 5, &v) == SDS_ERR_INVALID_ARGUMENT);
  REQUIRE(sds_dbv_create(3, 8, &v) == SDS_OK);
  CHECK(sds_dbv_size(v) == 0);
  CHECK(sds_dbv_insert(v, 0, 1) == SDS_OK);
  CHECK(sds_dbv_insert(v, 1, 0) == SDS_OK);
  CHECK(sds_dbv_insert(v, 3, 0) == SDS_ERR_OUT_OF_RANGE);
  std::size_t out = 0;
  CHECK((sds_dbv_rank(v, 2, &out) == SDS_OK && out == 1));
  CHECK((sds_dbv_select0(v, 1, &out) == SDS_OK && out == 2));
  CHECK((sds_dbv_select1(v, 2, &out) == SDS_OK && out == 3));
  int changed = -1;
  CHECK((sds_dbv_set(v, 1, &changed) == SDS_OK && changed == 1));
  CHECK((sds_dbv_set(v, 1, &changed) == SDS_OK && changed == 0));
  CHECK((sds_dbv_clear(v, 0, &changed) == SDS_OK && changed == 1));
  int bit = -1;
  CHECK((sds_dbv_access(v, 1, &bit) == SDS_OK && bit == 1));
  CHECK(sds_dbv_access(v, 2, &bit) == SDS_ERR_OUT_OF_RANGE);
  CHECK(sds_dbv_delete(v, 2) == SDS_ERR_OUT_OF_RANGE);

  sds_dbv* copy = nullptr;
  REQUIRE(sds_dbv_clone(v, &copy) == SDS_OK);
  CHECK(sds_dbv_delete(v, 0) == SDS_OK);
  CHECK(sds_dbv_size(copy) == 2);
  CHECK(sds_dbv_size(v) == 1);

  sds_dbv_report r{};
  CHECK(sds_dbv_check(copy, &r) == SDS_OK);
  CHECK(r.well_formed);
  CHECK(r.red_black);
  CHECK(r.leaves == 1);
  sds_dbv_free(copy);
  sds_dbv_free(v);
}

TEST_CASE("dump round trip and the borrow case") {
  sds_dbv* v = nullptr;
  REQUIRE(sds_dbv_parse_dump("(Black [100] (Red [1011] [111]))", 3, 8, &v) == SDS_OK);
  REQUIRE(sds_dbv_delete(v, 1) == SDS_OK);
  CHECK(dump(v) == "(Black 6 4\n  (Red 3 2\n    [101]\n    [011])\n  [111])\n");
  sds_dbv* again = nullptr;
  REQUIRE(sds_dbv_parse_dump(dump(v).c_str(), 3, 8, &again) == SDS_OK);
  CHECK(dump(again) == dump(v));

  sds_dbv* corrupt = nullptr;
  REQUIRE(sds_dbv_parse_dump("(Black 2 0 [100] [111])", 3, 8, &corrupt) == SDS_OK);
  sds_dbv_report r{};
  REQUIRE(sds_dbv_check(corrupt, &r) == SDS_OK);
  CHECK_FALSE(r.well_formed);

  sds_dbv* bad = nullptr;
  CHECK(sds_dbv_parse_dump("(Black [1]", 3, 8, &bad) == SDS_ERR_PARSE);
  sds_dbv_free(corrupt);
  sds_dbv_free(again);
  sds_dbv_free(v);
}

TEST_CASE("random edits agree with the oracle") {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 100; ++round) {
    sds_dbv* v = nullptr;
    REQUIRE(sds_dbv_create(2, 6, &v) == SDS_OK);
    sds_bits* model = bits("");
    for (int k = 0; k < 200; ++k) {
      const std::size_t n = sds_dbv_size(v);
      if (n > 0 && rng() % 3 == 0) {
        const std::size_t i = rng() % n;
        REQUIRE(sds_dbv_delete(v, i) == SDS_OK);
        REQUIRE(sds_oracle_delete(model, i) == SDS_OK);
      } else {
        const std::size_t i = rng() % (n + 1);
        const int b = static_cast<int>(rng() % 2);
        REQUIRE(sds_dbv_insert(v, i, b) == SDS_OK);
        REQUIRE(sds_oracle_insert(model, i, b) == SDS_OK);
      }
      sds_bits* flat = nullptr;
      REQUIRE(sds_dbv_to_bits(v, &flat) == SDS_OK);
      REQUIRE(sds_bits_equal(flat, model));
      sds_bits_free(flat);
      sds_dbv_report r{};
      REQUIRE(sds_dbv_check(v, &r) == SDS_OK);
      REQUIRE(r.well_formed);
      REQUIRE(r.red_black);
      REQUIRE(r.max_path <= 2 * r.black_height + 1);
    }
    sds_bits_free(model);
    sds_dbv_free(v);
  }
}
