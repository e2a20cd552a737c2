#include "sds/reference_oracle.hpp"

#include <deque>
#include <stdexcept>
#include <utility>

namespace sds::oracle {

std::size_t oracle_rank(bool b, std::size_t i, const BitSeq& s) {
  std::size_t n = 0;
  for (std::size_t k = 1; k <= s.size(); ++k) {
    if (k <= i && s[k - 1] == b) ++n;
  }
  return n;
}

std::size_t oracle_select(bool b, std::size_t i, const BitSeq& s) {
  // Scan k = 0..n tracking Rank(k) incrementally; stop at the first hit.
  std::size_t rank_k = 0;
  for (std::size_t k = 0; k <= s.size(); ++k) {
    if (k > 0 && s[k - 1] == b) ++rank_k;
    if (rank_k == i) return k;
  }
  return s.size() + 1;
}

std::size_t oracle_count(bool b, const BitSeq& s) {
  std::size_t n = 0;
  for (bool a : s) n += (a == b);
  return n;
}

BitSeq insert1(const BitSeq& s, bool b, std::size_t i) {
  if (i > s.size()) throw std::out_of_range("insert position past end of sequence");
  BitSeq out;
  out.reserve(s.size() + 1);
  for (std::size_t k = 0; k < i; ++k) out.push_back(s[k]);
  out.push_back(b);
  for (std::size_t k = i; k < s.size(); ++k) out.push_back(s[k]);
  return out;
}

BitSeq delete_at(const BitSeq& s, std::size_t i) {
  if (i >= s.size()) throw std::out_of_range("delete position past end of sequence");
  BitSeq out;
  out.reserve(s.size() - 1);
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (k != i) out.push_back(s[k]);
  }
  return out;
}

BitSeq update_at(const BitSeq& s, std::size_t i, bool b) {
  if (i >= s.size()) throw std::out_of_range("update position past end of sequence");
  BitSeq out = s;
  out[i] = b;
  return out;
}

std::vector<std::string> bfs_queue(const Tree& t) {
  std::vector<std::string> out;
  std::deque<const Tree*> queue{&t};
  while (!queue.empty()) {
    const Tree* front = queue.front();
    queue.pop_front();
    out.push_back(front->label);
    for (const Tree& c : front->children) queue.push_back(&c);
  }
  return out;
}

std::vector<std::size_t> bfs_level_widths(const Tree& t) {
  std::vector<std::size_t> widths;
  std::deque<std::pair<const Tree*, std::size_t>> queue{{&t, 0}};
  while (!queue.empty()) {
    auto [node, depth] = queue.front();
    queue.pop_front();
    if (widths.size() <= depth) widths.resize(depth + 1, 0);
    ++widths[depth];
    for (const Tree& c : node->children) queue.emplace_back(&c, depth + 1);
  }
  return widths;
}

namespace {

const Tree& walk(const Tree& t, const Path& p) {
  const Tree* cur = &t;
  for (std::size_t step : p) {
    if (step >= cur->children.size()) throw std::out_of_range("path leaves the tree");
    cur = &cur->children[step];
  }
  return *cur;
}

// Breadth-first walk yielding (node, path) pairs.
template <class Visit>
void bfs_with_paths(const Tree& t, Visit&& visit) {
  std::deque<std::pair<const Tree*, Path>> queue;
  queue.emplace_back(&t, Path{});
  while (!queue.empty()) {
    auto [node, path] = std::move(queue.front());
    queue.pop_front();
    if (!visit(*node, path)) return;
    for (std::size_t i = 0; i < node->children.size(); ++i) {
      Path child = path;
      child.push_back(i);
      queue.emplace_back(&node->children[i], std::move(child));
    }
  }
}

} // namespace

Navigation tree_navigate(const Tree& t, const Path& p) {
  const Tree& node = walk(t, p);
  Navigation nav;
  nav.children = node.children.size();
  if (!p.empty()) {
    nav.has_parent = true;
    nav.parent.assign(p.begin(), p.end() - 1);
  }
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    Path c = p;
    c.push_back(i);
    nav.child_paths.push_back(std::move(c));
  }
  return nav;
}

std::vector<Path> all_paths(const Tree& t) {
  std::vector<Path> out;
  bfs_with_paths(t, [&](const Tree&, const Path& p) {
    out.push_back(p);
    return true;
  });
  return out;
}

std::size_t bfs_index(const Tree& t, const Path& p) {
  walk(t, p);
  std::size_t index = 0;
  bfs_with_paths(t, [&](const Tree&, const Path& q) {
    if (q == p) return false;
    ++index;
    return true;
  });
  return index;
}

std::size_t bfs_bit_offset(const Tree& t, const Path& p) {
  walk(t, p);
  std::size_t offset = 0;
  bfs_with_paths(t, [&](const Tree& node, const Path& q) {
    if (q == p) return false;
    offset += node.children.size() + 1;
    return true;
  });
  return offset;
}

} // namespace sds::oracle
