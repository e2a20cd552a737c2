#include "sds/louds.hpp"

#include <stdexcept>

#include "sds/error.hpp"

namespace sds {

std::size_t height(const Tree& t) {
  std::size_t h = 0;
  for (const Tree& c : t.children) h = std::max(h, height(c));
  return h + 1;
}

std::size_t number_of_nodes(const Tree& t) {
  std::size_t n = 1;
  for (const Tree& c : t.children) n += number_of_nodes(c);
  return n;
}

Forest children_of_forest(const Forest& f) {
  Forest out;
  for (const Tree* t : f) {
    for (const Tree& c : t->children) out.push_back(&c);
  }
  return out;
}

Tree with_super_root(Tree t) {
  Tree root;
  root.children.push_back(std::move(t));
  return root;
}

std::vector<std::string> labels_in_level_order(const Tree& t) {
  return lo_traversal_st([](const Tree& n) { return n.label; }, t);
}

namespace detail {

LtStep lo_traversal_step(const Forest& s, std::size_t n) {
  const Tree& front = *s.front();
  const std::size_t cut = std::min(n, front.children.size());

  LtStep step;
  step.emitted = s;
  for (std::size_t k = 0; k < cut; ++k) step.emitted.push_back(&front.children[k]);

  for (std::size_t k = cut; k < front.children.size(); ++k) step.next.push_back(&front.children[k]);
  for (std::size_t k = 1; k < step.emitted.size(); ++k) {
    for (const Tree& c : step.emitted[k]->children) step.next.push_back(&c);
  }
  return step;
}

} // namespace detail

Forest lo_fringe(const Forest& s, const Path& p) {
  Forest queue = s;
  for (std::size_t n : p) {
    if (queue.empty()) break;
    queue = detail::lo_traversal_step(queue, n).next;
  }
  return queue;
}

std::size_t lo_index(const Forest& s, const Path& p) {
  return lo_traversal_lt([](const Tree&) { return 0; }, s, p).size();
}

BitSeq node_description(std::size_t child_count) {
  BitSeq out(child_count, true);
  out.push_back(false);
  return out;
}

BitSeq children_description(const Tree& t) {
  return node_description(t.children.size());
}

namespace {

BitSeq flatten_bits(const std::vector<BitSeq>& parts) {
  BitSeq out;
  for (const BitSeq& part : parts) out.insert(out.end(), part.begin(), part.end());
  return out;
}

} // namespace

BitSeq louds_encode(const Tree& t) {
  return flatten_bits(lo_traversal_st(children_description, t));
}

BitSeq louds_lt(const Forest& s, const Path& p) {
  return flatten_bits(lo_traversal_lt(children_description, s, p));
}

std::size_t louds_position(const Forest& s, const Path& p) {
  std::size_t pos = 0;
  for (std::size_t len : lo_traversal_lt([](const Tree& n) { return n.children.size() + 1; }, s, p)) {
    pos += len;
  }
  return pos;
}

bool valid_position(const Tree& t, const Path& p) {
  const Tree* cur = &t;
  for (std::size_t n : p) {
    if (n >= cur->children.size()) return false;
    cur = &cur->children[n];
  }
  return true;
}

const Tree& subtree(const Tree& t, const Path& p) {
  const Tree* cur = &t;
  for (std::size_t n : p) {
    if (n >= cur->children.size()) throw std::out_of_range("path is not a valid position in the tree");
    cur = &cur->children[n];
  }
  return *cur;
}

std::size_t children(const Tree& t, const Path& p) {
  return subtree(t, p).children.size();
}

std::size_t louds_children(const BitSeq& bits, std::size_t v) {
  return succ(false, bits, v + 1) - (v + 1);
}

std::size_t louds_child(const BitSeq& bits, std::size_t v, std::size_t i) {
  return select(false, rank(true, v + i, bits) + 1, bits);
}

std::size_t louds_parent(const BitSeq& bits, std::size_t v) {
  const std::size_t j = select(true, rank(false, v, bits), bits);
  return pred(false, bits, j);
}

// ---------------------------------------------------------------------------

Louds::Louds(BitSeq bits, std::size_t block_size)
    : index_(std::move(bits), block_size), nodes_(0) {
  const BitSeq& b = index_.bits();
  if (b.empty() || b.back()) throw std::invalid_argument("LOUDS bits must end with a 0");
  // Every description after the first must have been announced by a 1-bit
  // in an earlier description.
  std::size_t ones = 0;
  bool at_start = true;
  for (bool bit : b) {
    if (at_start && nodes_ > ones) {
      throw std::invalid_argument("LOUDS bits describe more nodes than edges allow");
    }
    at_start = false;
    if (bit) {
      ++ones;
    } else {
      ++nodes_;
      at_start = true;
    }
  }
  if (ones + 1 != nodes_) throw std::invalid_argument("LOUDS bits must hold one more 0 than 1s");
}

bool Louds::is_node(std::size_t v) const noexcept {
  const BitSeq& b = bits();
  return v < b.size() && (v == 0 || !b[v - 1]);
}

void Louds::require_node(std::size_t v) const {
  if (!is_node(v)) throw NotANodeError("bit index " + std::to_string(v) + " is not a node position");
}

std::size_t Louds::succ0(std::size_t y) const {
  return index_.select(false, index_.rank(false, y == 0 ? 0 : y - 1) + 1);
}

std::size_t Louds::children(std::size_t v) const {
  require_node(v);
  return succ0(v + 1) - (v + 1);
}

std::size_t Louds::child(std::size_t v, std::size_t i) const {
  const std::size_t k = children(v);
  if (i >= k) {
    throw std::out_of_range("child index " + std::to_string(i) + " out of range (node has " +
                            std::to_string(k) + " children)");
  }
  return index_.select(false, index_.rank(true, v + i) + 1);
}

std::size_t Louds::parent(std::size_t v) const {
  require_node(v);
  if (v == 0) throw std::out_of_range("the root has no parent");
  const std::size_t j = index_.select(true, index_.rank(false, v));
  return index_.select(false, index_.rank(false, j));
}

std::size_t Louds::node_index(std::size_t v) const {
  require_node(v);
  return index_.rank(false, v);
}

} // namespace sds
