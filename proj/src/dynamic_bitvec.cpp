#include "sds/dynamic_bitvec.hpp"

#include <algorithm>
#include <stdexcept>

namespace sds {

namespace {

Meta meta_of(const BitSeq& s) { return {s.size(), count(true, s)}; }

bool is_red(const DTree& t) { return t && !t->is_leaf() && t->color() == Color::Red; }

DTree paint(const DTree& t, Color c) {
  if (t->is_leaf() || t->color() == c) return t;
  return DNode::node(c, t->left(), t->meta(), t->right());
}

BitSeq erase_bit(const BitSeq& s, std::size_t i) {
  BitSeq out = s;
  out.erase(out.begin() + static_cast<std::ptrdiff_t>(i));
  return out;
}

} // namespace

SizeBounds SizeBounds::from_word_size(std::size_t w) {
  SizeBounds b{w * w / 2, 2 * w * w};
  b.validate();
  return b;
}

void SizeBounds::validate() const {
  if (low < 1) throw std::invalid_argument("leaf lower bound must be at least 1");
  if (high < 2 * low) throw std::invalid_argument("leaf upper bound must be at least twice the lower bound");
}

DTree DNode::leaf(BitSeq bits) {
  return std::make_shared<const DNode>(Color::Black, nullptr, Meta{}, nullptr, std::move(bits));
}

DTree DNode::node(Color c, DTree left, Meta meta, DTree right) {
  return std::make_shared<const DNode>(c, std::move(left), meta, std::move(right), BitSeq{});
}

// --- semantics and invariants -----------------------------------------------

namespace {

void flatten_into(const DTree& t, BitSeq& out) {
  if (t->is_leaf()) {
    out.insert(out.end(), t->bits().begin(), t->bits().end());
    return;
  }
  flatten_into(t->left(), out);
  flatten_into(t->right(), out);
}

// Size and popcount along the right spine, using the stored left metadata.
Meta total_meta(const DTree& t) {
  Meta m;
  const DNode* cur = t.get();
  while (!cur->is_leaf()) {
    m = m + cur->meta();
    cur = cur->right().get();
  }
  return m + meta_of(cur->bits());
}

// Actual (size, ones) of t when every node's metadata is exact and every
// leaf size lies in [low, high); nullopt otherwise.
std::optional<Meta> checked_meta(const DTree& t, std::size_t low, std::size_t high) {
  if (t->is_leaf()) {
    const std::size_t n = t->bits().size();
    if (n < low || n >= high) return std::nullopt;
    return meta_of(t->bits());
  }
  auto l = checked_meta(t->left(), low, high);
  if (!l || *l != t->meta()) return std::nullopt;
  auto r = checked_meta(t->right(), low, high);
  if (!r) return std::nullopt;
  return *l + *r;
}

std::optional<std::size_t> black_height(const DTree& t, Color ctxt) {
  if (t->is_leaf()) return 0;
  if (t->color() == Color::Red) {
    if (ctxt == Color::Red) return std::nullopt;
    auto l = black_height(t->left(), Color::Red);
    auto r = black_height(t->right(), Color::Red);
    if (!l || !r || *l != *r) return std::nullopt;
    return *l;
  }
  auto l = black_height(t->left(), Color::Black);
  auto r = black_height(t->right(), Color::Black);
  if (!l || !r || *l != *r) return std::nullopt;
  return *l + 1;
}

} // namespace

BitSeq dflatten(const DTree& t) {
  BitSeq out;
  flatten_into(t, out);
  return out;
}

std::size_t dsize(const DTree& t) { return total_meta(t).num; }
std::size_t dones(const DTree& t) { return total_meta(t).ones; }

bool wf_dtree(const DTree& t, std::size_t low, std::size_t high) {
  return checked_meta(t, low, high).has_value();
}

bool wf_check(const DTree& t, SizeBounds bounds, bool relaxed) {
  if (relaxed && t->is_leaf()) return t->bits().size() < bounds.high;
  return wf_dtree(t, bounds.low, bounds.high);
}

bool is_redblack(const DTree& t, Color ctxt, std::size_t bh) {
  if (t->is_leaf()) return bh == 0;
  if (t->color() == Color::Red) {
    if (ctxt == Color::Red) return false;
    return is_redblack(t->left(), Color::Red, bh) && is_redblack(t->right(), Color::Red, bh);
  }
  return bh > 0 && is_redblack(t->left(), Color::Black, bh - 1) &&
         is_redblack(t->right(), Color::Black, bh - 1);
}

std::optional<std::size_t> redblack_check(const DTree& t) { return black_height(t, Color::Red); }

bool is_deleted_redblack(const DeletedDTree& t, Color ctxt, std::size_t bh) {
  if (t.down) return bh > 0 && is_redblack(t.tree, Color::Red, bh - 1);
  return is_redblack(t.tree, ctxt, bh);
}

std::size_t max_path_length(const DTree& t) {
  if (t->is_leaf()) return 1;
  return 1 + std::max(max_path_length(t->left()), max_path_length(t->right()));
}

std::size_t leaf_count(const DTree& t) {
  if (t->is_leaf()) return 1;
  return leaf_count(t->left()) + leaf_count(t->right());
}

// --- queries ------------------------------------------------------------------

std::size_t drank(const DTree& t, std::size_t i) {
  if (t->is_leaf()) return rank(true, i, t->bits());
  const Meta d = t->meta();
  if (i < d.num) return drank(t->left(), i);
  return d.ones + drank(t->right(), i - d.num);
}

namespace {

std::size_t dselect(const DTree& t, bool b, std::size_t i) {
  if (i == 0) return 0;
  if (t->is_leaf()) return select(b, i, t->bits());
  const Meta d = t->meta();
  const std::size_t in_left = b ? d.ones : d.num - d.ones;
  if (i <= in_left) return dselect(t->left(), b, i);
  return d.num + dselect(t->right(), b, i - in_left);
}

} // namespace

std::size_t dselect1(const DTree& t, std::size_t i) { return dselect(t, true, i); }
std::size_t dselect0(const DTree& t, std::size_t i) { return dselect(t, false, i); }

bool daccess(const DTree& t, std::size_t i) {
  const DNode* cur = t.get();
  while (!cur->is_leaf()) {
    const Meta d = cur->meta();
    if (i < d.num) {
      cur = cur->left().get();
    } else {
      i -= d.num;
      cur = cur->right().get();
    }
  }
  if (i >= cur->bits().size()) throw std::out_of_range("bit index out of range");
  return cur->bits()[i];
}

// --- insertion ----------------------------------------------------------------

DTree dins_leaf(const BitSeq& s, bool b, std::size_t i, std::size_t high) {
  BitSeq grown = s;
  grown.insert(grown.begin() + static_cast<std::ptrdiff_t>(i), b);
  if (s.size() + 1 < high) return DNode::leaf(std::move(grown));
  const auto half = static_cast<std::ptrdiff_t>((grown.size() + 1) / 2);
  BitSeq left(grown.begin(), grown.begin() + half);
  BitSeq right(grown.begin() + half, grown.end());
  const Meta m = meta_of(left);
  return DNode::node(Color::Red, DNode::leaf(std::move(left)), m, DNode::leaf(std::move(right)));
}

// Both balance functions turn
//   B(R(R(a, b), c), d) / B(R(a, R(b, c)), d) / B(a, R(R(b, c), d)) / B(a, R(b, R(c, d)))
// into R(B(a, b), B(c, d)). Metadata of the rebuilt nodes is derived from
// the metadata already present; no subtree is re-measured.

DTree balance_left(Color c, DTree left, Meta meta, DTree right) {
  if (c == Color::Black && is_red(left)) {
    if (is_red(left->left())) {
      const DTree& ll = left->left();
      const Meta a = ll->meta();       // |a|
      const Meta ab = left->meta();    // |a| + |b|
      return DNode::node(Color::Red, DNode::node(Color::Black, ll->left(), a, ll->right()), ab,
                         DNode::node(Color::Black, left->right(), meta - ab, std::move(right)));
    }
    if (is_red(left->right())) {
      const DTree& lr = left->right();
      const Meta a = left->meta();     // |a|
      const Meta b = lr->meta();       // |b|
      return DNode::node(Color::Red, DNode::node(Color::Black, left->left(), a, lr->left()), a + b,
                         DNode::node(Color::Black, lr->right(), meta - a - b, std::move(right)));
    }
  }
  return DNode::node(c, std::move(left), meta, std::move(right));
}

DTree balance_right(Color c, DTree left, Meta meta, DTree right) {
  if (c == Color::Black && is_red(right)) {
    if (is_red(right->left())) {
      const DTree& rl = right->left();
      const Meta b = rl->meta();       // |b|
      const Meta bc = right->meta();   // |b| + |c|
      return DNode::node(Color::Red, DNode::node(Color::Black, std::move(left), meta, rl->left()), meta + b,
                         DNode::node(Color::Black, rl->right(), bc - b, right->right()));
    }
    if (is_red(right->right())) {
      const DTree& rr = right->right();
      const Meta b = right->meta();    // |b|
      const Meta c2 = rr->meta();      // |c|
      return DNode::node(Color::Red, DNode::node(Color::Black, std::move(left), meta, right->left()), meta + b,
                         DNode::node(Color::Black, rr->left(), c2, rr->right()));
    }
  }
  return DNode::node(c, std::move(left), meta, std::move(right));
}

DTree dins(const DTree& t, bool b, std::size_t i, std::size_t high) {
  if (t->is_leaf()) return dins_leaf(t->bits(), b, i, high);
  const Meta d = t->meta();
  if (i < d.num) {
    return balance_left(t->color(), dins(t->left(), b, i, high), d + Meta{1, b ? 1u : 0u}, t->right());
  }
  return balance_right(t->color(), t->left(), d, dins(t->right(), b, i - d.num, high));
}

DTree dinsert(const DTree& t, bool b, std::size_t i, SizeBounds bounds) {
  if (i > dsize(t)) throw std::out_of_range("insert position past end of bit vector");
  return paint(dins(t, b, i, bounds.high), Color::Black);
}

// --- set / clear ----------------------------------------------------------------

UpdateResult dupdate(const DTree& t, std::size_t i, bool value) {
  if (t->is_leaf()) {
    if (i >= t->bits().size()) throw std::out_of_range("bit index out of range");
    if (t->bits()[i] == value) return {t, false};
    BitSeq bits = t->bits();
    bits[i] = value;
    return {DNode::leaf(std::move(bits)), true};
  }
  Meta d = t->meta();
  if (i < d.num) {
    auto sub = dupdate(t->left(), i, value);
    if (!sub.changed) return {t, false};
    d.ones = value ? d.ones + 1 : d.ones - 1;
    return {DNode::node(t->color(), std::move(sub.tree), d, t->right()), true};
  }
  auto sub = dupdate(t->right(), i - d.num, value);
  if (!sub.changed) return {t, false};
  return {DNode::node(t->color(), t->left(), d, std::move(sub.tree)), true};
}

UpdateResult dset(const DTree& t, std::size_t i) { return dupdate(t, i, true); }
UpdateResult dclear(const DTree& t, std::size_t i) { return dupdate(t, i, false); }

// --- deletion -------------------------------------------------------------------
//
// Underflow cases. A leaf's sibling has black height 0, so in a red-black
// tree it is either a leaf or a red node over two leaves:
//
//   X(leaf*, leaf)          delete in leaf*; if it drops below low, borrow
//                           the adjacent bit of the sibling when the sibling
//                           has more than low bits, else merge the two into
//                           one leaf (black height drops iff X is black).
//   B(leaf*, R(l1, l2))     rotate to B(R(leaf*, l1), l2), then the case
//                           above applies inside the red node.
//   B(R(l1, l2), leaf*)     rotate to B(l1, R(l2, leaf*)), likewise.
//   B(leaf, R(l1*, l2)) and mirrors: the target is inside the red node.
//
// Rebalancing after a black-height drop in the left child l (sibling s),
// mirrored for the right child:
//
//   s = B(R(x, y), z)   ->  c(B(l, x), B(y, z))          height restored
//   s = B(x, R(y, z))   ->  c(B(l, x), B(y, z))          height restored
//   s = B(x, y)         ->  B(l, R(x, y))                drop propagates iff c = B
//   s = R(x, y)         ->  B(fix(R(l, x)), y)           c is necessarily black

namespace {

struct Fixed {
  DTree tree;
  bool down;
};

// `left` lost one black level; `lm` is its metadata.
Fixed fix_left_down(Color c, const DTree& left, Meta lm, const DTree& right) {
  if (right->is_leaf()) return {DNode::node(c, left, lm, right), false};
  if (right->color() == Color::Black) {
    if (is_red(right->left())) {
      const DTree& rl = right->left();
      return {DNode::node(c, DNode::node(Color::Black, left, lm, rl->left()), lm + rl->meta(),
                          DNode::node(Color::Black, rl->right(), right->meta() - rl->meta(), right->right())),
              false};
    }
    if (is_red(right->right())) {
      return {DNode::node(c, DNode::node(Color::Black, left, lm, right->left()), lm + right->meta(),
                          paint(right->right(), Color::Black)),
              false};
    }
    return {DNode::node(Color::Black, left, lm, paint(right, Color::Red)), c == Color::Black};
  }
  Fixed inner = fix_left_down(Color::Red, left, lm, right->left());
  return {DNode::node(Color::Black, std::move(inner.tree), lm + right->meta(), right->right()), false};
}

// `right` lost one black level; `meta` describes `left`.
Fixed fix_right_down(Color c, const DTree& left, Meta meta, const DTree& right) {
  if (left->is_leaf()) return {DNode::node(c, left, meta, right), false};
  if (left->color() == Color::Black) {
    if (is_red(left->right())) {
      const DTree& lr = left->right();
      return {DNode::node(c, DNode::node(Color::Black, left->left(), left->meta(), lr->left()),
                          left->meta() + lr->meta(),
                          DNode::node(Color::Black, lr->right(), meta - left->meta() - lr->meta(), right)),
              false};
    }
    if (is_red(left->left())) {
      return {DNode::node(c, paint(left->left(), Color::Black), left->meta(),
                          DNode::node(Color::Black, left->right(), meta - left->meta(), right)),
              false};
    }
    return {DNode::node(Color::Black, paint(left, Color::Red), meta, right), c == Color::Black};
  }
  Fixed inner = fix_right_down(Color::Red, left->right(), meta - left->meta(), right);
  return {DNode::node(Color::Black, left->left(), left->meta(), std::move(inner.tree)), false};
}

Meta bit_meta(bool b) { return {1, b ? 1u : 0u}; }

// Node c over two leaves; bit i of the concatenation is removed.
DeletedDTree delete_in_leaf_pair(Color c, const BitSeq& l, Meta d, const BitSeq& r, std::size_t i,
                                 std::size_t low) {
  if (i < d.num) {
    const Meta del = bit_meta(l[i]);
    BitSeq lb = erase_bit(l, i);
    if (lb.size() >= low) return {DNode::node(c, DNode::leaf(std::move(lb)), d - del, DNode::leaf(r)), false, del};
    if (r.size() > low) {
      lb.push_back(r.front());
      BitSeq rb(r.begin() + 1, r.end());
      const Meta lm = meta_of(lb);
      return {DNode::node(c, DNode::leaf(std::move(lb)), lm, DNode::leaf(std::move(rb))), false, del};
    }
    lb.insert(lb.end(), r.begin(), r.end());
    return {DNode::leaf(std::move(lb)), c == Color::Black, del};
  }
  const std::size_t j = i - d.num;
  const Meta del = bit_meta(r[j]);
  BitSeq rb = erase_bit(r, j);
  if (rb.size() >= low) return {DNode::node(c, DNode::leaf(l), d, DNode::leaf(std::move(rb))), false, del};
  if (l.size() > low) {
    rb.insert(rb.begin(), l.back());
    BitSeq lb(l.begin(), l.end() - 1);
    const Meta lm = d - bit_meta(l.back());
    return {DNode::node(c, DNode::leaf(std::move(lb)), lm, DNode::leaf(std::move(rb))), false, del};
  }
  BitSeq merged = l;
  merged.insert(merged.end(), rb.begin(), rb.end());
  return {DNode::leaf(std::move(merged)), c == Color::Black, del};
}

} // namespace

DeletedDTree balance_left_after_delete(Color c, const DeletedDTree& left, Meta meta, DTree right) {
  const Meta lm = meta - left.deleted;
  if (!left.down) return {DNode::node(c, left.tree, lm, std::move(right)), false, left.deleted};
  Fixed f = fix_left_down(c, left.tree, lm, right);
  return {std::move(f.tree), f.down, left.deleted};
}

DeletedDTree balance_right_after_delete(Color c, DTree left, Meta meta, const DeletedDTree& right) {
  if (!right.down) return {DNode::node(c, std::move(left), meta, right.tree), false, right.deleted};
  Fixed f = fix_right_down(c, left, meta, right.tree);
  return {std::move(f.tree), f.down, right.deleted};
}

DeletedDTree ddel(const DTree& t, std::size_t i, SizeBounds bounds) {
  if (t->is_leaf()) return {DNode::leaf(erase_bit(t->bits(), i)), false, bit_meta(t->bits()[i])};

  const Color c = t->color();
  const DTree& l = t->left();
  const DTree& r = t->right();
  const Meta d = t->meta();

  if (l->is_leaf() && r->is_leaf()) return delete_in_leaf_pair(c, l->bits(), d, r->bits(), i, bounds.low);

  if (i < d.num) {
    if (l->is_leaf()) {
      if (l->bits().size() <= bounds.low && is_red(r) && r->left()->is_leaf()) {
        const DTree rotated =
            DNode::node(c, DNode::node(Color::Red, l, d, r->left()), d + r->meta(), r->right());
        return ddel(rotated, i, bounds);
      }
      const Meta del = bit_meta(l->bits()[i]);
      return {DNode::node(c, DNode::leaf(erase_bit(l->bits(), i)), d - del, r), false, del};
    }
    return balance_left_after_delete(c, ddel(l, i, bounds), d, r);
  }

  const std::size_t j = i - d.num;
  if (r->is_leaf()) {
    if (r->bits().size() <= bounds.low && is_red(l) && l->right()->is_leaf()) {
      const Meta lm = l->meta();
      const DTree rotated =
          DNode::node(c, l->left(), lm, DNode::node(Color::Red, l->right(), d - lm, r));
      return ddel(rotated, i, bounds);
    }
    const Meta del = bit_meta(r->bits()[j]);
    return {DNode::node(c, l, d, DNode::leaf(erase_bit(r->bits(), j))), false, del};
  }
  return balance_right_after_delete(c, l, d, ddel(r, j, bounds));
}

DTree ddelete(const DTree& t, std::size_t i, SizeBounds bounds) {
  if (i >= dsize(t)) throw std::out_of_range("delete position past end of bit vector");
  return paint(ddel(t, i, bounds).tree, Color::Black);
}

// --- construction -----------------------------------------------------------------

namespace {

struct Built {
  DTree tree;
  Meta meta;
};

// Leaves [first, last) split in halves. Leaf depths then differ by at most
// one; internal nodes at depth `red_depth` (whose children are the deepest
// leaves) are red, everything above is black.
Built build_balanced(const std::vector<BitSeq>& leaves, std::size_t first, std::size_t last,
                     std::size_t depth, std::size_t red_depth) {
  if (last - first == 1) return {DNode::leaf(leaves[first]), meta_of(leaves[first])};
  const std::size_t mid = first + (last - first) / 2;
  Built l = build_balanced(leaves, first, mid, depth + 1, red_depth);
  Built r = build_balanced(leaves, mid, last, depth + 1, red_depth);
  const Color c = depth == red_depth ? Color::Red : Color::Black;
  return {DNode::node(c, std::move(l.tree), l.meta, std::move(r.tree)), l.meta + r.meta};
}

} // namespace

DTree dtree_from_bits(const BitSeq& bits, SizeBounds bounds) {
  bounds.validate();
  const std::size_t n = bits.size();
  // m leaves of near-equal size: sizes <= high - 1 by the choice of m, and
  // >= low whenever m >= 2 because high - 1 >= 2 * low - 1.
  const std::size_t cap = bounds.high - 1;
  const std::size_t m = std::max<std::size_t>(1, (n + cap - 1) / cap);
  std::vector<BitSeq> leaves;
  leaves.reserve(m);
  std::size_t start = 0;
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t len = n / m + (k < n % m ? 1 : 0);
    leaves.emplace_back(bits.begin() + static_cast<std::ptrdiff_t>(start),
                        bits.begin() + static_cast<std::ptrdiff_t>(start + len));
    start += len;
  }
  std::size_t floor_log2 = 0;
  while ((std::size_t{2} << floor_log2) <= m) ++floor_log2;
  return build_balanced(leaves, 0, m, 0, floor_log2).tree;
}

// --- facade ---------------------------------------------------------------------

DynamicBitVector::DynamicBitVector(SizeBounds bounds)
    : root_(DNode::leaf({})), bounds_(bounds) {
  bounds_.validate();
}

DynamicBitVector::DynamicBitVector(const BitSeq& bits, SizeBounds bounds)
    : root_(dtree_from_bits(bits, bounds)), bounds_(bounds) {}

DynamicBitVector::DynamicBitVector(DTree tree, SizeBounds bounds)
    : root_(std::move(tree)), bounds_(bounds) {}

DynamicBitVector DynamicBitVector::from_tree(DTree tree, SizeBounds bounds) {
  bounds.validate();
  if (!tree) throw std::invalid_argument("null tree");
  return DynamicBitVector(std::move(tree), bounds);
}

std::size_t DynamicBitVector::rank0(std::size_t i) const {
  return std::min(i, size()) - rank1(i);
}

bool DynamicBitVector::set(std::size_t i) {
  auto r = dset(root_, i);
  root_ = std::move(r.tree);
  return r.changed;
}

bool DynamicBitVector::clear(std::size_t i) {
  auto r = dclear(root_, i);
  root_ = std::move(r.tree);
  return r.changed;
}

bool DynamicBitVector::well_formed() const {
  return wf_check(root_, bounds_, true) && redblack_check(root_).has_value();
}

} // namespace sds
