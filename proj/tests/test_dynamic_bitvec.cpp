#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sds/dynamic_bitvec.hpp"
#include "sds/error.hpp"
#include "sds/reference_oracle.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

using namespace sds;

namespace {

const DTree sample_tree = parse_dtree(fixtures::kSampleDump);

SizeBounds random_bounds(gen::Rng& rng) {
  const std::size_t low = gen::uniform(rng, 1, 6);
  return {low, gen::uniform(rng, 2 * low, 2 * low + 8)};
}

// Spot-checks every query against the oracle.
void require_queries_match(const DynamicBitVector& v, const BitSeq& model) {
  REQUIRE(v.size() == model.size());
  for (std::size_t i = 0; i <= model.size(); ++i) {
    REQUIRE(v.rank1(i) == oracle::oracle_rank(true, i, model));
  }
  const std::size_t ones = oracle::oracle_count(true, model);
  for (std::size_t k = 0; k <= ones + 1; ++k) {
    REQUIRE(v.select1(k) == oracle::oracle_select(true, k, model));
  }
  for (std::size_t k = 0; k <= model.size() - ones + 1; ++k) {
    REQUIRE(v.select0(k) == oracle::oracle_select(false, k, model));
  }
  for (std::size_t i = 0; i < model.size(); ++i) REQUIRE(v.access(i) == model[i]);
}

} // namespace

TEST_SUITE("structure") {
  TEST_CASE("sample tree reads back its bits") {
    CHECK(dflatten(sample_tree) == parse_bits(fixtures::kSampleDumpBits));
    CHECK(dsize(sample_tree) == 40);
    CHECK(dones(sample_tree) == 10);
    CHECK(leaf_count(sample_tree) == 5);
    CHECK(max_path_length(sample_tree) == 4);
  }

  TEST_CASE("sample tree is well-formed and red-black") {
    CHECK(wf_dtree(sample_tree, 8, 17));
    CHECK(wf_check(sample_tree, {8, 17}, false));
    CHECK_FALSE(wf_dtree(sample_tree, 9, 18));
    CHECK(redblack_check(sample_tree) == std::optional<std::size_t>(2));
    CHECK(is_redblack(sample_tree, Color::Red, 2));
    CHECK_FALSE(is_redblack(sample_tree, Color::Red, 1));
  }

  TEST_CASE("wrong metadata is detected") {
    const DTree bad = parse_dtree("(Black 8 3 [10000010] [00000100])");
    CHECK(dflatten(bad) == dflatten(parse_dtree("(Black [10000010] [00000100])")));
    CHECK_FALSE(wf_dtree(bad, 8, 17));
    CHECK(wf_dtree(parse_dtree("(Black [10000010] [00000100])"), 8, 17));
  }

  TEST_CASE("red-red and unbalanced trees are rejected") {
    CHECK_FALSE(redblack_check(parse_dtree("(Black (Red (Red [1] [1]) [1]) [1])")));
    CHECK_FALSE(redblack_check(parse_dtree("(Red [1] [1])")));
    CHECK_FALSE(redblack_check(parse_dtree("(Black (Black [1] [1]) [1])")));
    CHECK(redblack_check(parse_dtree("[101]")) == std::optional<std::size_t>(0));
  }

  TEST_CASE("relaxed well-formedness only admits a small root leaf") {
    const SizeBounds b{4, 8};
    CHECK(wf_check(DNode::leaf({1, 0}), b, true));
    CHECK(wf_check(DNode::leaf({}), b, true));
    CHECK_FALSE(wf_check(DNode::leaf({1, 0}), b, false));
    CHECK_FALSE(wf_check(DNode::leaf(BitSeq(8)), b, true));
    const DTree small_child = parse_dtree("(Black [10] [1111])");
    CHECK_FALSE(wf_check(small_child, b, true));
  }

  TEST_CASE("strict implies relaxed on random trees") {
    gen::Rng rng(41);
    for (int round = 0; round < 200; ++round) {
      const SizeBounds b = random_bounds(rng);
      const DTree t = gen::rb_tree(rng, gen::uniform(rng, 0, 3), Color::Red, b.low, b.high);
      REQUIRE(wf_check(t, b, false));
      REQUIRE(wf_check(t, b, true));
    }
  }
}

TEST_SUITE("queries") {
  TEST_CASE("sample values") {
    CHECK(drank(sample_tree, 20) == 3);
    CHECK(drank(sample_tree, 40) == 10);
    CHECK(drank(sample_tree, 0) == 0);
    CHECK(dselect1(sample_tree, 3) == 14);
    CHECK(dselect0(sample_tree, 0) == 0);
    CHECK(dselect0(sample_tree, 5) == 6);
    CHECK(daccess(sample_tree, 0));
    CHECK_FALSE(daccess(sample_tree, 1));
    CHECK(daccess(sample_tree, 39));
    CHECK_THROWS_AS(daccess(sample_tree, 40), std::out_of_range);
  }

  TEST_CASE("agree with the static functions") {
    const BitSeq s = dflatten(sample_tree);
    for (std::size_t i = 0; i <= s.size() + 3; ++i) {
      REQUIRE(drank(sample_tree, i) == rank(true, i, s));
      REQUIRE(dselect1(sample_tree, i) == select(true, i, s));
      REQUIRE(dselect0(sample_tree, i) == select(false, i, s));
    }
  }

  TEST_CASE("agree with the oracle on built trees") {
    gen::Rng rng(42);
    for (int round = 0; round < 200; ++round) {
      const SizeBounds b = random_bounds(rng);
      const BitSeq s = gen::bits(rng, gen::uniform(rng, 0, 300), 0.1 + 0.8 * gen::coin(rng));
      require_queries_match(DynamicBitVector(s, b), s);
    }
  }
}

TEST_SUITE("insertion") {
  TEST_CASE("leaf split produces a red node") {
    const DTree t = dins_leaf({1, 0, 1}, true, 1, 4);
    REQUIRE_FALSE(t->is_leaf());
    CHECK(t->color() == Color::Red);
    CHECK(t->left()->bits() == BitSeq{1, 1});
    CHECK(t->right()->bits() == BitSeq{0, 1});
    CHECK(t->meta() == Meta{2, 2});
    CHECK(dins_leaf({1, 0}, true, 2, 4)->bits() == BitSeq{1, 0, 1});
  }

  TEST_CASE("insert paints the root black") {
    const DTree t = dinsert(DNode::leaf({1, 0, 1}), true, 1, {2, 4});
    CHECK(t->color() == Color::Black);
    CHECK(dflatten(t) == BitSeq{1, 1, 0, 1});
    CHECK(redblack_check(t) == std::optional<std::size_t>(1));
  }

  TEST_CASE("small example") {
    DynamicBitVector v(parse_bits("10"), {3, 8});
    v.insert(1, true);
    CHECK(format_bits(v.to_bits()) == "110");
    v.push_back(false);
    CHECK(format_bits(v.to_bits()) == "1100");
    CHECK_THROWS_AS(v.insert(5, true), std::out_of_range);
  }

  TEST_CASE("insertion into the sample tree") {
    const SizeBounds b{8, 17};
    const DTree t = dinsert(sample_tree, true, 20, b);
    CHECK(dflatten(t) == oracle::insert1(dflatten(sample_tree), true, 20));
    CHECK(wf_check(t, b, false));
    CHECK(redblack_check(t));
  }

  TEST_CASE("random insertion sequences keep every invariant") {
    gen::Rng rng(43);
    for (int round = 0; round < 1000; ++round) {
      const SizeBounds b = random_bounds(rng);
      DynamicBitVector v(b);
      BitSeq model;
      const std::size_t ops = gen::uniform(rng, 1, 120);
      for (std::size_t k = 0; k < ops; ++k) {
        const std::size_t i = gen::uniform(rng, 0, model.size());
        const bool bit = gen::coin(rng);
        v.insert(i, bit);
        model = oracle::insert1(model, bit, i);
        REQUIRE(v.to_bits() == model);
        REQUIRE(wf_check(v.tree(), b, true));
        REQUIRE(redblack_check(v.tree()));
      }
      require_queries_match(v, model);
    }
  }
}

TEST_SUITE("set and clear") {
  TEST_CASE("report whether anything changed") {
    DynamicBitVector v(parse_bits("1000 0010"), {2, 8});
    CHECK(v.set(1));
    CHECK_FALSE(v.set(1));
    CHECK(v.clear(0));
    CHECK_FALSE(v.clear(0));
    CHECK(format_bits(v.to_bits()) == "01000010");
    CHECK_THROWS_AS(v.set(8), std::out_of_range);
    CHECK_THROWS_AS(v.clear(8), std::out_of_range);
  }

  TEST_CASE("unchanged updates return the same tree") {
    const UpdateResult r = dset(sample_tree, 0);
    CHECK_FALSE(r.changed);
    CHECK(r.tree == sample_tree);
  }

  TEST_CASE("random updates match the oracle") {
    gen::Rng rng(44);
    for (int round = 0; round < 500; ++round) {
      const SizeBounds b = random_bounds(rng);
      const BitSeq s = gen::bits(rng, gen::uniform(rng, 1, 200));
      const DTree t = dtree_from_bits(s, b);
      const std::size_t i = gen::uniform(rng, 0, s.size() - 1);
      const bool value = gen::coin(rng);
      const UpdateResult r = dupdate(t, i, value);
      REQUIRE(dflatten(r.tree) == oracle::update_at(s, i, value));
      REQUIRE(r.changed == (s[i] != value));
      REQUIRE(wf_check(r.tree, b, true));
      REQUIRE(redblack_check(r.tree) == redblack_check(t));
      // Idempotent.
      const UpdateResult again = dupdate(r.tree, i, value);
      REQUIRE_FALSE(again.changed);
      REQUIRE(dflatten(again.tree) == dflatten(r.tree));
      REQUIRE(dflatten(dset(t, i).tree) == oracle::update_at(s, i, true));
      REQUIRE(dflatten(dclear(t, i).tree) == oracle::update_at(s, i, false));
    }
  }
}

TEST_SUITE("deletion") {
  const SizeBounds small_bounds{3, 8};

  TEST_CASE("underflow borrows a bit from the sibling") {
    const DTree before = parse_dtree(fixtures::kBorrowBefore);
    const DTree after = ddelete(before, 1, small_bounds);
    CHECK(dump_dtree(after) == dump_dtree(parse_dtree("(Black (Red [101] [011]) [111])")));
    CHECK(after->meta() == Meta{6, 4});
    CHECK(wf_check(after, small_bounds, false));
    CHECK(redblack_check(after));
  }

  TEST_CASE("underflow merges with a minimal sibling") {
    const DTree before = parse_dtree(fixtures::kMergeBefore);
    const DTree after = ddelete(before, 1, small_bounds);
    CHECK(dump_dtree(after) == dump_dtree(parse_dtree("(Black [10101] [1111])")));
    CHECK(wf_check(after, small_bounds, false));
    CHECK(redblack_check(after));
  }

  TEST_CASE("deleting from the sample tree") {
    const SizeBounds b{4, 17};
    for (std::size_t i = 0; i < 40; ++i) {
      const DTree t = ddelete(sample_tree, i, b);
      REQUIRE(dflatten(t) == oracle::delete_at(dflatten(sample_tree), i));
      REQUIRE(wf_check(t, b, false));
      REQUIRE(redblack_check(t));
    }
    CHECK_THROWS_AS(ddelete(sample_tree, 40, b), std::out_of_range);
  }

  TEST_CASE("deleting the last bit leaves an empty leaf") {
    DynamicBitVector v(parse_bits("1"), {2, 4});
    v.erase(0);
    CHECK(v.size() == 0);
    CHECK(v.tree()->is_leaf());
    CHECK(v.well_formed());
    CHECK_THROWS_AS(v.erase(0), std::out_of_range);
  }

  TEST_CASE("ddel keeps the deleted red-black shape") {
    gen::Rng rng(45);
    for (int round = 0; round < 500; ++round) {
      const SizeBounds b = random_bounds(rng);
      const std::size_t bh = gen::uniform(rng, 1, 4);
      const DTree t = gen::rb_tree(rng, bh, Color::Red, b.low, b.high);
      const BitSeq s = dflatten(t);
      const std::size_t i = gen::uniform(rng, 0, s.size() - 1);
      const DeletedDTree d = ddel(t, i, b);
      REQUIRE(dflatten(d.tree) == oracle::delete_at(s, i));
      REQUIRE(is_deleted_redblack(d, Color::Red, bh));
      REQUIRE(d.deleted == Meta{1, s[i] ? 1u : 0u});
      REQUIRE(wf_dtree(d.tree, b.low, b.high));
    }
  }

  TEST_CASE("rebalancing after a deletion in one child") {
    gen::Rng rng(46);
    for (int round = 0; round < 1000; ++round) {
      const SizeBounds b = random_bounds(rng);
      const std::size_t bh = gen::uniform(rng, 1, 3);
      const Color c = gen::coin(rng) ? Color::Red : Color::Black;
      const DTree l = gen::rb_tree(rng, bh, c, b.low, b.high);
      const DTree r = gen::rb_tree(rng, bh, c, b.low, b.high);
      const Meta meta{dsize(l), dones(l)};
      const bool left_side = gen::coin(rng);
      const DTree& victim = left_side ? l : r;
      const std::size_t i = gen::uniform(rng, 0, dsize(victim) - 1);
      const DeletedDTree d = ddel(victim, i, b);
      REQUIRE(is_deleted_redblack(d, c, bh));

      const DeletedDTree out = left_side ? balance_left_after_delete(c, d, meta, r)
                                         : balance_right_after_delete(c, l, meta, d);
      BitSeq expected = dflatten(l);
      const BitSeq right = dflatten(r);
      expected.insert(expected.end(), right.begin(), right.end());
      const std::size_t at = left_side ? i : dsize(l) + i;
      REQUIRE(dflatten(out.tree) == oracle::delete_at(expected, at));
      REQUIRE(out.deleted == d.deleted);
      if (c == Color::Black) {
        REQUIRE(is_deleted_redblack(out, Color::Red, bh + 1));
      } else {
        REQUIRE_FALSE(out.down);
        REQUIRE(is_deleted_redblack(out, Color::Black, bh));
      }
      REQUIRE(wf_dtree(out.tree, b.low, b.high));
    }
  }

  TEST_CASE("random interleaved updates keep every invariant") {
    gen::Rng rng(47);
    for (int round = 0; round < 1000; ++round) {
      const SizeBounds b = random_bounds(rng);
      BitSeq model = gen::bits(rng, gen::uniform(rng, 0, 60));
      DynamicBitVector v(model, b);
      const std::size_t ops = gen::uniform(rng, 1, 150);
      for (std::size_t k = 0; k < ops; ++k) {
        if (!model.empty() && gen::coin(rng, 0.45)) {
          const std::size_t i = gen::uniform(rng, 0, model.size() - 1);
          v.erase(i);
          model = oracle::delete_at(model, i);
        } else {
          const std::size_t i = gen::uniform(rng, 0, model.size());
          const bool bit = gen::coin(rng);
          v.insert(i, bit);
          model = oracle::insert1(model, bit, i);
        }
        REQUIRE(v.to_bits() == model);
        REQUIRE(v.well_formed());
      }
      require_queries_match(v, model);
    }
  }
}

TEST_SUITE("construction") {
  TEST_CASE("built trees round-trip and are balanced") {
    gen::Rng rng(48);
    for (int round = 0; round < 200; ++round) {
      const SizeBounds b = random_bounds(rng);
      const BitSeq s = gen::bits(rng, gen::uniform(rng, 0, 2000));
      const DTree t = dtree_from_bits(s, b);
      REQUIRE(dflatten(t) == s);
      REQUIRE(wf_check(t, b, s.size() < b.low));
      const auto bh = redblack_check(t);
      REQUIRE(bh);
      REQUIRE(max_path_length(t) <= 2 * *bh + 1);
    }
  }

  TEST_CASE("longest path is bounded by the black height") {
    gen::Rng rng(49);
    for (int round = 0; round < 300; ++round) {
      const SizeBounds b = random_bounds(rng);
      DynamicBitVector v(b);
      for (std::size_t k = gen::uniform(rng, 1, 500); k > 0; --k) v.insert(gen::uniform(rng, 0, v.size()), true);
      const auto bh = v.black_height();
      REQUIRE(bh);
      REQUIRE(max_path_length(v.tree()) <= 2 * *bh + 1);
    }
  }

  TEST_CASE("size bounds") {
    CHECK(SizeBounds::defaults() == SizeBounds{2048, 8192});
    CHECK(SizeBounds::from_word_size(8) == SizeBounds{32, 128});
    CHECK_THROWS_AS(SizeBounds({0, 4}).validate(), std::invalid_argument);
    CHECK_THROWS_AS(SizeBounds({3, 5}).validate(), std::invalid_argument);
    CHECK_NOTHROW(SizeBounds({3, 6}).validate());
    CHECK_THROWS_AS(DynamicBitVector(SizeBounds{2, 3}), std::invalid_argument);
  }
}

TEST_SUITE("text and persistence") {
  TEST_CASE("dump round trip") {
    CHECK(dump_dtree(parse_dtree(dump_dtree(sample_tree))) == dump_dtree(sample_tree));
    CHECK(dump_dtree(DNode::leaf({1, 0})) == "[10]\n");
    gen::Rng rng(50);
    for (int round = 0; round < 100; ++round) {
      const DTree t = gen::rb_tree(rng, gen::uniform(rng, 0, 3), Color::Red, 1, 6);
      REQUIRE(dump_dtree(parse_dtree(dump_dtree(t))) == dump_dtree(t));
    }
  }

  TEST_CASE("dump parse errors") {
    CHECK_THROWS_AS(parse_dtree(""), ParseError);
    CHECK_THROWS_AS(parse_dtree("(Black [1])"), ParseError);
    CHECK_THROWS_AS(parse_dtree("(Green [1] [0])"), ParseError);
    CHECK_THROWS_AS(parse_dtree("[102]"), ParseError);
    CHECK_THROWS_AS(parse_dtree("[1] [0]"), ParseError);
  }

  TEST_CASE("old versions survive updates") {
    DynamicBitVector v(parse_bits(fixtures::kSampleDumpBits), {4, 17});
    const DynamicBitVector snapshot = v;
    const std::string before = snapshot.dump();
    v.insert(3, true);
    v.erase(30);
    v.set(1);
    CHECK(snapshot.dump() == before);
    CHECK(snapshot.to_bits() == parse_bits(fixtures::kSampleDumpBits));
    CHECK(v.to_bits() != snapshot.to_bits());
  }
}
