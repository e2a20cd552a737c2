#pragma once

// Naive reference semantics used as ground truth by the tests and by the
// CLI's verification modes. Nothing here shares code with the optimized
// modules it checks.

#include <cstddef>
#include <string>
#include <vector>

#include "sds/bitvec_core.hpp"
#include "sds/louds.hpp"

namespace sds::oracle {

// Cardinality of { k in [1, n] | k <= i and s[k] == b }, 1-based access.
std::size_t oracle_rank(bool b, std::size_t i, const BitSeq& s);

// Minimum k <= n whose rank equals i, otherwise n + 1.
std::size_t oracle_select(bool b, std::size_t i, const BitSeq& s);

std::size_t oracle_count(bool b, const BitSeq& s);

BitSeq insert1(const BitSeq& s, bool b, std::size_t i);
BitSeq delete_at(const BitSeq& s, std::size_t i);
BitSeq update_at(const BitSeq& s, std::size_t i, bool b);

// Labels in breadth-first order, computed with an explicit FIFO queue.
std::vector<std::string> bfs_queue(const Tree& t);

// Number of nodes on each BFS level.
std::vector<std::size_t> bfs_level_widths(const Tree& t);

struct Navigation {
  std::size_t children = 0;
  Path parent;         // empty for the root
  bool has_parent = false;
  std::vector<Path> child_paths;
};

// Navigation facts about the node at p, read off the pointer structure.
// Throws std::out_of_range when p does not name a node of t.
Navigation tree_navigate(const Tree& t, const Path& p);

// Every valid path of t, in breadth-first order of the nodes they name.
std::vector<Path> all_paths(const Tree& t);

// Index of the node at p in a queue-driven breadth-first walk, and the
// bit offset of its unary degree code in that walk.
std::size_t bfs_index(const Tree& t, const Path& p);
std::size_t bfs_bit_offset(const Tree& t, const Path& p);

} // namespace sds::oracle
