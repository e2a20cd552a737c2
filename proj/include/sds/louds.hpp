#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

#include "sds/bitvec_core.hpp"

namespace sds {

/// Arbitrarily-branching tree with an opaque label. A leaf has no children.
struct Tree {
  std::string label;
  std::vector<Tree> children;

  friend bool operator==(const Tree&, const Tree&) = default;
};

/// A forest as a queue of references into trees owned elsewhere.
using Forest = std::vector<const Tree*>;

/// Child indices (0-based) taken from the root.
using Path = std::vector<std::size_t>;

/// Traversal output split by depth.
template <class T>
using LevelSeq = std::vector<std::vector<T>>;

std::size_t height(const Tree& t);
std::size_t number_of_nodes(const Tree& t);
Forest children_of_forest(const Forest& f);

/// Wraps t under an anonymous root, which reproduces the usual "10" prefix.
Tree with_super_root(Tree t);

// ---------------------------------------------------------------------------
// Traversals. f is applied to each node (const Tree&).

template <class F>
using TraversalOutput = std::decay_t<std::invoke_result_t<F, const Tree&>>;

/// Height-recursive level-order traversal: map f over the forest, then over
/// its children, height(t) times.
template <class F>
std::vector<TraversalOutput<F>> lo_traversal(F f, const Tree& t) {
  std::vector<TraversalOutput<F>> out;
  Forest s{&t};
  for (std::size_t n = height(t); n > 0; --n) {
    for (const Tree* node : s) out.push_back(f(*node));
    s = children_of_forest(s);
  }
  return out;
}

/// Pointwise concatenation of levels; the longer tail is kept unchanged.
template <class T>
LevelSeq<T> mzip(const LevelSeq<T>& l, const LevelSeq<T>& r) {
  LevelSeq<T> out;
  out.reserve(std::max(l.size(), r.size()));
  for (std::size_t k = 0; k < std::max(l.size(), r.size()); ++k) {
    std::vector<T> level;
    if (k < l.size()) level = l[k];
    if (k < r.size()) level.insert(level.end(), r[k].begin(), r[k].end());
    out.push_back(std::move(level));
  }
  return out;
}

/// Structurally recursive traversal: [f t] followed by the mzip-fold of the
/// children's level traversals.
///
/// The fold is fused: mzip-appending a child's levels one depth down is the
/// same as appending each of its nodes, in preorder, to the accumulator level
/// for its depth. That keeps the cost linear even for path-like trees, and
/// the explicit stack keeps deep trees off the call stack.
template <class F>
LevelSeq<TraversalOutput<F>> level_traversal(F f, const Tree& t) {
  LevelSeq<TraversalOutput<F>> acc;
  std::vector<std::pair<const Tree*, std::size_t>> stack{{&t, 0}};
  while (!stack.empty()) {
    const auto [node, depth] = stack.back();
    stack.pop_back();
    if (acc.size() <= depth) acc.resize(depth + 1);
    acc[depth].push_back(f(*node));
    for (auto c = node->children.rbegin(); c != node->children.rend(); ++c) stack.push_back({&*c, depth + 1});
  }
  return acc;
}

template <class F>
std::vector<TraversalOutput<F>> lo_traversal_st(F f, const Tree& t) {
  std::vector<TraversalOutput<F>> out;
  for (auto& level : level_traversal(f, t)) {
    out.insert(out.end(), std::make_move_iterator(level.begin()),
               std::make_move_iterator(level.end()));
  }
  return out;
}

std::vector<std::string> labels_in_level_order(const Tree& t);

// ---------------------------------------------------------------------------
// Traversal up to a path.
//
// The front of the queue is the node reached so far. Moving to its n-th
// child emits the whole queue plus the first n children of the front node,
// and continues with the remaining children followed by the children of
// everything just emitted (except the front node). The path need not be
// valid: an index past the last child takes all of them.

namespace detail {

struct LtStep {
  Forest emitted;
  Forest next;
};

LtStep lo_traversal_step(const Forest& s, std::size_t n);

} // namespace detail

template <class F>
std::vector<TraversalOutput<F>> lo_traversal_lt(F f, const Forest& s, const Path& p) {
  std::vector<TraversalOutput<F>> out;
  Forest queue = s;
  for (std::size_t n : p) {
    if (queue.empty()) break;
    auto step = detail::lo_traversal_step(queue, n);
    for (const Tree* node : step.emitted) out.push_back(f(*node));
    queue = std::move(step.next);
  }
  return out;
}

/// The queue left after consuming p; it generates the rest of the traversal.
Forest lo_fringe(const Forest& s, const Path& p);

/// Number of nodes preceding p's node in level order (0-based).
std::size_t lo_index(const Forest& s, const Path& p);

// ---------------------------------------------------------------------------
// Encoding.

/// k ones followed by a zero.
BitSeq node_description(std::size_t child_count);
BitSeq children_description(const Tree& t);

/// Node descriptions in level order. No super-root prefix is added.
BitSeq louds_encode(const Tree& t);

/// Encoding of the traversal up to p.
BitSeq louds_lt(const Forest& s, const Path& p);

/// Bit offset (0-based) where the description of p's node starts.
std::size_t louds_position(const Forest& s, const Path& p);

// ---------------------------------------------------------------------------
// Inductive-tree navigation.

bool valid_position(const Tree& t, const Path& p);

/// Throws std::out_of_range when p is not a valid position.
const Tree& subtree(const Tree& t, const Path& p);
std::size_t children(const Tree& t, const Path& p);

// ---------------------------------------------------------------------------
// Navigation on the encoding, written only with rank/select/succ/pred.
// These are total and mirror the formulas exactly; results are meaningful
// when v is the position of a node (and, for child, i < its child count).

std::size_t louds_children(const BitSeq& bits, std::size_t v);
std::size_t louds_child(const BitSeq& bits, std::size_t v, std::size_t i);
std::size_t louds_parent(const BitSeq& bits, std::size_t v);

/// Validity-checked navigation over an encoding, backed by a RankIndex.
/// Positions that do not start a node description raise NotANodeError.
class Louds {
public:
  static constexpr std::size_t kDefaultBlockSize = 256;

  explicit Louds(BitSeq bits, std::size_t block_size = kDefaultBlockSize);

  static Louds from_tree(const Tree& t) { return Louds(louds_encode(t)); }

  const BitSeq& bits() const noexcept { return index_.bits(); }
  std::size_t node_count() const noexcept { return nodes_; }

  bool is_node(std::size_t v) const noexcept;
  std::size_t root() const noexcept { return 0; }

  std::size_t children(std::size_t v) const;
  std::size_t child(std::size_t v, std::size_t i) const;
  std::size_t parent(std::size_t v) const;

  /// Level-order index of the node at v (0 for the root).
  std::size_t node_index(std::size_t v) const;

private:
  void require_node(std::size_t v) const;
  std::size_t succ0(std::size_t y) const;

  RankIndex index_;
  std::size_t nodes_;
};

// ---------------------------------------------------------------------------
// Text format: `(label child child ...)`, whitespace-insensitive.

Tree parse_tree(std::string_view text);
std::string format_tree(const Tree& t);

} // namespace sds
