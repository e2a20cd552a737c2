#pragma once

// Dynamic bit vector as a red-black tree. Leaves hold flat bit arrays; every
// internal node records (num, ones): size and popcount of its left subtree.
// All updates are functional and share unchanged subtrees.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "sds/bitvec_core.hpp"

namespace sds {

enum class Color : std::uint8_t { Red, Black };

/// Size and popcount of a bit range.
struct Meta {
  std::size_t num = 0;
  std::size_t ones = 0;

  friend bool operator==(const Meta&, const Meta&) = default;
  friend Meta operator+(Meta a, Meta b) { return {a.num + b.num, a.ones + b.ones}; }
  friend Meta operator-(Meta a, Meta b) { return {a.num - b.num, a.ones - b.ones}; }
};

/// Leaf size bounds: low <= |leaf| < high, with high >= 2 * low so two
/// minimal leaves always merge into a legal one.
struct SizeBounds {
  std::size_t low = 32;
  std::size_t high = 128;

  /// low = w^2 / 2, high = 2 * w^2.
  static SizeBounds from_word_size(std::size_t w);
  static SizeBounds defaults() { return from_word_size(64); }

  /// Throws std::invalid_argument unless low >= 1 and high >= 2 * low.
  void validate() const;

  friend bool operator==(const SizeBounds&, const SizeBounds&) = default;
};

class DNode;
using DTree = std::shared_ptr<const DNode>;

class DNode {
public:
  static DTree leaf(BitSeq bits);
  static DTree node(Color c, DTree left, Meta meta, DTree right);

  bool is_leaf() const noexcept { return !left_; }
  Color color() const noexcept { return color_; }
  const DTree& left() const noexcept { return left_; }
  const DTree& right() const noexcept { return right_; }
  Meta meta() const noexcept { return meta_; }
  const BitSeq& bits() const noexcept { return bits_; }

  DNode(Color c, DTree left, Meta meta, DTree right, BitSeq bits)
      : color_(c), left_(std::move(left)), right_(std::move(right)), meta_(meta),
        bits_(std::move(bits)) {}

private:
  Color color_;
  DTree left_;
  DTree right_;
  Meta meta_;
  BitSeq bits_;
};

/// Result of a deletion step: the tree, whether its black height dropped,
/// and (1, value) of the removed bit for fixing ancestors' metadata.
struct DeletedDTree {
  DTree tree;
  bool down = false;
  Meta deleted;
};

struct UpdateResult {
  DTree tree;
  bool changed = false;
};

// --- semantics and invariants -----------------------------------------------

BitSeq dflatten(const DTree& t);
std::size_t dsize(const DTree& t);
std::size_t dones(const DTree& t);

/// Strict well-formedness: exact metadata, every leaf in [low, high).
bool wf_dtree(const DTree& t, std::size_t low, std::size_t high);
/// relaxed: a tree that is a single leaf only needs |leaf| < high.
bool wf_check(const DTree& t, SizeBounds bounds, bool relaxed);

bool is_redblack(const DTree& t, Color ctxt, std::size_t bh);
/// Black height when t is red-black under a Red context (so a red root is
/// rejected), nullopt otherwise.
std::optional<std::size_t> redblack_check(const DTree& t);
bool is_deleted_redblack(const DeletedDTree& t, Color ctxt, std::size_t bh);

/// Number of vertices (internal nodes plus the leaf) on the longest
/// root-to-leaf path.
std::size_t max_path_length(const DTree& t);
std::size_t leaf_count(const DTree& t);

// --- queries ------------------------------------------------------------------

std::size_t drank(const DTree& t, std::size_t i);
std::size_t dselect1(const DTree& t, std::size_t i);
std::size_t dselect0(const DTree& t, std::size_t i);
/// Throws std::out_of_range when i >= dsize(t).
bool daccess(const DTree& t, std::size_t i);

// --- insertion ----------------------------------------------------------------

/// Inserts into a leaf, splitting into a red node with two halves when the
/// leaf reaches `high` bits.
DTree dins_leaf(const BitSeq& s, bool b, std::size_t i, std::size_t high);

/// Okasaki rebalancing of a black node whose left (right) child may be a
/// red node with a red child. `meta` describes the left subtree as given.
DTree balance_left(Color c, DTree left, Meta meta, DTree right);
DTree balance_right(Color c, DTree left, Meta meta, DTree right);

DTree dins(const DTree& t, bool b, std::size_t i, std::size_t high);
/// dins followed by painting the root black. Throws std::out_of_range when
/// i > dsize(t).
DTree dinsert(const DTree& t, bool b, std::size_t i, SizeBounds bounds);

// --- set / clear ----------------------------------------------------------------

UpdateResult dset(const DTree& t, std::size_t i);
UpdateResult dclear(const DTree& t, std::size_t i);
UpdateResult dupdate(const DTree& t, std::size_t i, bool value);

// --- deletion -------------------------------------------------------------------

/// Rebuilds a node whose left (right) child came back from a deletion.
/// `meta` is the node's metadata before the deletion. When the child's
/// black height dropped, rotates/recolours so the result is deleted-red-black.
DeletedDTree balance_left_after_delete(Color c, const DeletedDTree& left, Meta meta, DTree right);
DeletedDTree balance_right_after_delete(Color c, DTree left, Meta meta, const DeletedDTree& right);

/// Removes bit i. Leaf underflow is repaired by borrowing one bit from the
/// sibling leaf or merging with it, after a rotation when the sibling is a
/// red node. Requires i < dsize(t).
DeletedDTree ddel(const DTree& t, std::size_t i, SizeBounds bounds);
/// ddel with the root painted black. Throws std::out_of_range when
/// i >= dsize(t).
DTree ddelete(const DTree& t, std::size_t i, SizeBounds bounds);

// --- construction and text ---------------------------------------------------------

/// Balanced red-black tree over `bits` with every leaf in [low, high)
/// (a single small leaf when bits.size() < low).
DTree dtree_from_bits(const BitSeq& bits, SizeBounds bounds);

/// Indented s-expression: `(Black <num> <ones> <left> <right>)`, leaves as
/// `[0101]`.
std::string dump_dtree(const DTree& t);

/// Reads the dump format. `num ones` may be omitted, in which case they are
/// computed; given values are kept verbatim (no validation).
DTree parse_dtree(std::string_view text);

// --- facade ---------------------------------------------------------------------

class DynamicBitVector {
public:
  explicit DynamicBitVector(SizeBounds bounds = SizeBounds::defaults());
  DynamicBitVector(const BitSeq& bits, SizeBounds bounds);

  /// Adopts an existing tree as-is; call well_formed() to check it.
  static DynamicBitVector from_tree(DTree tree, SizeBounds bounds);

  std::size_t size() const { return dsize(root_); }
  bool empty() const { return size() == 0; }
  bool access(std::size_t i) const { return daccess(root_, i); }
  bool operator[](std::size_t i) const { return access(i); }

  std::size_t rank1(std::size_t i) const { return drank(root_, i); }
  std::size_t rank0(std::size_t i) const;
  std::size_t select1(std::size_t k) const { return dselect1(root_, k); }
  std::size_t select0(std::size_t k) const { return dselect0(root_, k); }

  void insert(std::size_t i, bool b) { root_ = dinsert(root_, b, i, bounds_); }
  void push_back(bool b) { insert(size(), b); }
  void erase(std::size_t i) { root_ = ddelete(root_, i, bounds_); }
  bool set(std::size_t i);
  bool clear(std::size_t i);

  BitSeq to_bits() const { return dflatten(root_); }
  std::string dump() const { return dump_dtree(root_); }

  /// wf_dtree' plus the red-black invariant.
  bool well_formed() const;
  std::optional<std::size_t> black_height() const { return redblack_check(root_); }

  const DTree& tree() const noexcept { return root_; }
  SizeBounds bounds() const noexcept { return bounds_; }

private:
  DynamicBitVector(DTree tree, SizeBounds bounds);

  DTree root_;
  SizeBounds bounds_;
};

} // namespace sds
