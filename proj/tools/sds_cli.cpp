// sds: command-line front end over the C API.
//
//   sds louds-build TREE_FILE [--super-root]
//   sds louds-query children|child|parent BITS --pos N [--index I] [--verify TREE_FILE --path P]
//   sds dbv-run SCRIPT [--init BITS | --tree DUMP_FILE] [--bounds LOW,HIGH] [--verify] [--dump] [--time]
//   sds verify [--seed S] [--trees N] [--scripts N] [--ops N] [--bounds LOW,HIGH]
//
// Exit status: 0 success, 1 verification mismatch, 2 usage or input error.

#include <chrono>
#include <cstdio>
#include <deque>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sds/sds.h"

namespace {

constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;

struct Failure {
  int code;
  std::string message;
};

template <class T, void (*Free)(T*)>
struct Releaser {
  void operator()(T* p) const { Free(p); }
};

using Bits = std::unique_ptr<sds_bits, Releaser<sds_bits, sds_bits_free>>;
using TreeHandle = std::unique_ptr<sds_tree, Releaser<sds_tree, sds_tree_free>>;
using LoudsHandle = std::unique_ptr<sds_louds, Releaser<sds_louds, sds_louds_free>>;
using Dbv = std::unique_ptr<sds_dbv, Releaser<sds_dbv, sds_dbv_free>>;

void check(sds_status st, const std::string& what) {
  if (st == SDS_OK) return;
  const std::string msg = what + ": " + sds_last_error();
  throw Failure{kExitUsage, msg};
}

std::string read_file(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kExitUsage, "cannot open '" + path + "'"};
  return {std::istreambuf_iterator<char>(in), {}};
}

// A literal 0/1 string, or @path to read one from a file.
Bits bits_arg(const std::string& arg) {
  const std::string text = !arg.empty() && arg[0] == '@' ? read_file(arg.substr(1)) : arg;
  sds_bits* raw = nullptr;
  check(sds_bits_parse(text.c_str(), &raw), "bits");
  return Bits(raw);
}

std::string to_string(const sds_bits* b) {
  std::size_t needed = 0;
  sds_bits_to_string(b, nullptr, 0, &needed);
  std::string out(needed, '\0');
  check(sds_bits_to_string(b, out.data(), out.size(), &needed), "format");
  out.resize(needed - 1);
  return out;
}

std::string dump(const sds_dbv* v) {
  std::size_t needed = 0;
  sds_dbv_dump(v, nullptr, 0, &needed);
  std::string out(needed, '\0');
  check(sds_dbv_dump(v, out.data(), out.size(), &needed), "dump");
  out.resize(needed - 1);
  return out;
}

std::size_t parse_index(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    if (s.empty() || s[0] == '-' || s[0] == '+') throw std::invalid_argument(s);
    v = std::stoull(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw Failure{kExitUsage, "bad " + what + " '" + s + "'"};
  return static_cast<std::size_t>(v);
}

std::vector<std::size_t> parse_list(const std::string& s, const std::string& what) {
  std::vector<std::size_t> out;
  if (s.empty()) return out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(parse_index(item, what));
  return out;
}

struct Bounds {
  std::size_t low = 0;  // 0,0 selects the library defaults
  std::size_t high = 0;
};

Bounds parse_bounds(const std::string& s) {
  if (s.empty()) return {};
  const auto v = parse_list(s, "bounds");
  if (v.size() != 2) throw Failure{kExitUsage, "--bounds expects LOW,HIGH"};
  return {v[0], v[1]};
}

// --- louds-build --------------------------------------------------------------

TreeHandle load_tree(const std::string& path) {
  const std::string text = read_file(path);
  sds_tree* raw = nullptr;
  check(sds_tree_parse(text.c_str(), &raw), path);
  return TreeHandle(raw);
}

int louds_build(const std::string& file, bool super_root) {
  const TreeHandle tree = load_tree(file);
  sds_bits* raw = nullptr;
  check(sds_tree_louds(tree.get(), super_root, &raw), "encode");
  const Bits bits(raw);
  std::cout << to_string(bits.get()) << '\n';
  return 0;
}

// --- louds-query --------------------------------------------------------------

struct QueryArgs {
  std::string op;
  std::string bits;
  std::size_t pos = 0;
  std::optional<std::size_t> index;
  std::string verify_tree;
  std::string path;
  bool super_root = false;
};

std::size_t position_of(const sds_tree* t, const std::vector<std::size_t>& p, bool super_root) {
  std::size_t out = 0;
  check(sds_tree_louds_position(t, p.data(), p.size(), super_root, &out), "path");
  return out;
}

int louds_query(const QueryArgs& a) {
  const Bits bits = bits_arg(a.bits);
  sds_louds* raw = nullptr;
  check(sds_louds_create(bits.get(), &raw), "louds");
  const LoudsHandle louds(raw);

  std::size_t result = 0;
  if (a.op == "children") {
    check(sds_louds_children(louds.get(), a.pos, &result), "children");
  } else if (a.op == "child") {
    if (!a.index) throw Failure{kExitUsage, "child needs --index"};
    check(sds_louds_child(louds.get(), a.pos, *a.index, &result), "child");
  } else {
    check(sds_louds_parent(louds.get(), a.pos, &result), "parent");
  }
  std::cout << result << '\n';

  if (a.verify_tree.empty()) return 0;

  const TreeHandle tree = load_tree(a.verify_tree);
  std::vector<std::size_t> path = parse_list(a.path, "path");
  sds_bits* enc_raw = nullptr;
  check(sds_tree_louds(tree.get(), a.super_root, &enc_raw), "encode");
  const Bits encoded(enc_raw);
  if (!sds_bits_equal(encoded.get(), bits.get())) {
    std::cerr << "mismatch: bits are not the encoding of " << a.verify_tree << '\n';
    return kExitMismatch;
  }
  if (!sds_tree_valid_position(tree.get(), path.data(), path.size())) {
    throw Failure{kExitUsage, "--path is not a node of the tree"};
  }
  const std::size_t at = position_of(tree.get(), path, a.super_root);
  if (at != a.pos) {
    std::cerr << "mismatch: --path starts at bit " << at << ", not " << a.pos << '\n';
    return kExitMismatch;
  }

  std::size_t expected = 0;
  if (a.op == "children") {
    check(sds_tree_children(tree.get(), path.data(), path.size(), &expected), "path");
  } else if (a.op == "child") {
    path.push_back(*a.index);
    expected = position_of(tree.get(), path, a.super_root);
  } else if (!path.empty()) {
    path.pop_back();
    expected = position_of(tree.get(), path, a.super_root);
  } else if (!a.super_root) {
    throw Failure{kExitUsage, "the root has no parent"};
  }
  if (expected != result) {
    std::cerr << "mismatch: " << a.op << " gave " << result << ", tree says " << expected << '\n';
    return kExitMismatch;
  }
  return 0;
}

// --- dbv-run ------------------------------------------------------------------

enum class OpKind { Insert, Delete, Set, Clear, Rank, Select0, Select1, Access };

struct Op {
  OpKind kind;
  std::size_t arg = 0;
  int bit = 0;
};

std::optional<Op> parse_op(const std::string& raw, std::size_t line) {
  std::string text = raw.substr(0, raw.find('#'));
  std::istringstream in(text);
  std::string name;
  if (!(in >> name)) return std::nullopt;
  auto fail = [&](const std::string& why) {
    return Failure{kExitUsage, "line " + std::to_string(line) + ": " + why};
  };
  std::vector<std::string> args{std::istream_iterator<std::string>(in), {}};

  static const std::vector<std::pair<std::string, OpKind>> names = {
      {"insert", OpKind::Insert}, {"delete", OpKind::Delete},   {"set", OpKind::Set},
      {"clear", OpKind::Clear},   {"rank", OpKind::Rank},       {"select0", OpKind::Select0},
      {"select1", OpKind::Select1}, {"access", OpKind::Access}};
  Op op{OpKind::Insert};
  bool known = false;
  for (const auto& [n, k] : names) {
    if (n == name) {
      op.kind = k;
      known = true;
    }
  }
  if (!known) throw fail("unknown op '" + name + "'");
  const std::size_t arity = op.kind == OpKind::Insert ? 2 : 1;
  if (args.size() != arity) throw fail(name + " expects " + std::to_string(arity) + " argument(s)");
  try {
    op.arg = parse_index(args[0], "index");
    if (op.kind == OpKind::Insert) {
      if (args[1] != "0" && args[1] != "1") throw fail("bit must be 0 or 1");
      op.bit = args[1] == "1";
    }
  } catch (const Failure& f) {
    if (f.message.rfind("line ", 0) == 0) throw;
    throw fail(f.message);
  }
  return op;
}

// Runs ops against a dynamic bit vector, optionally mirrored on the flat
// oracle with invariants checked after every step.
class Runner {
public:
  Runner(Dbv vec, bool verify, std::optional<std::size_t> fault_after, std::ostream* out)
      : vec_(std::move(vec)), verify_(verify), fault_after_(fault_after), out_(out) {
    if (verify_) {
      sds_bits* raw = nullptr;
      check(sds_dbv_to_bits(vec_.get(), &raw), "bits");
      mirror_.reset(raw);
      check_state(0);
    }
  }

  const sds_dbv* vec() const { return vec_.get(); }

  // Returns 0, or kExitMismatch after reporting the divergence.
  int apply(const Op& op, std::size_t line) {
    auto where = [&](const std::string& what) {
      return "line " + std::to_string(line) + ": " + what;
    };
    auto run = [&](sds_status st, const char* name) {
      if (st != SDS_OK) throw Failure{kExitUsage, where(std::string(name) + ": " + sds_last_error())};
    };

    std::optional<std::size_t> answer;
    std::optional<std::size_t> expected;
    std::size_t value = 0;
    int flag = 0;
    switch (op.kind) {
      case OpKind::Insert:
        run(sds_dbv_insert(vec_.get(), op.arg, op.bit), "insert");
        if (verify_) run(sds_oracle_insert(mirror_.get(), op.arg, op.bit), "insert");
        break;
      case OpKind::Delete:
        run(sds_dbv_delete(vec_.get(), op.arg), "delete");
        if (verify_) run(sds_oracle_delete(mirror_.get(), op.arg), "delete");
        break;
      case OpKind::Set:
      case OpKind::Clear: {
        const int b = op.kind == OpKind::Set;
        run(b ? sds_dbv_set(vec_.get(), op.arg, &flag) : sds_dbv_clear(vec_.get(), op.arg, &flag),
            b ? "set" : "clear");
        if (verify_) run(sds_oracle_update(mirror_.get(), op.arg, b), b ? "set" : "clear");
        break;
      }
      case OpKind::Rank:
        run(sds_dbv_rank(vec_.get(), op.arg, &value), "rank");
        answer = value;
        if (verify_) run(sds_oracle_rank(mirror_.get(), 1, op.arg, &value), "rank"), expected = value;
        break;
      case OpKind::Select0:
      case OpKind::Select1: {
        const int b = op.kind == OpKind::Select1;
        run(b ? sds_dbv_select1(vec_.get(), op.arg, &value) : sds_dbv_select0(vec_.get(), op.arg, &value),
            "select");
        answer = value;
        if (verify_) run(sds_oracle_select(mirror_.get(), b, op.arg, &value), "select"), expected = value;
        break;
      }
      case OpKind::Access:
        run(sds_dbv_access(vec_.get(), op.arg, &flag), "access");
        answer = static_cast<std::size_t>(flag);
        if (verify_) run(sds_bits_get(mirror_.get(), op.arg, &flag), "access"), expected = flag;
        break;
    }
    if (answer && out_) *out_ << *answer << '\n';

    ++executed_;
    if (fault_after_ && executed_ == *fault_after_) corrupt_mirror();
    if (!verify_) return 0;
    if (answer && *answer != *expected) {
      std::cerr << where("mismatch: got " + std::to_string(*answer) + ", oracle says " +
                         std::to_string(*expected))
                << '\n';
      return kExitMismatch;
    }
    return check_state(line);
  }

private:
  int check_state(std::size_t line) {
    const std::string prefix = line ? "line " + std::to_string(line) + ": " : "initial vector: ";
    sds_bits* raw = nullptr;
    check(sds_dbv_to_bits(vec_.get(), &raw), "bits");
    const Bits flat(raw);
    if (!sds_bits_equal(flat.get(), mirror_.get())) {
      std::cerr << prefix << "mismatch: contents differ from the oracle\n";
      return kExitMismatch;
    }
    sds_dbv_report report{};
    check(sds_dbv_check(vec_.get(), &report), "check");
    if (!report.well_formed) {
      std::cerr << prefix << "tree is not well-formed\n";
      return kExitMismatch;
    }
    if (!report.red_black) {
      std::cerr << prefix << "tree violates the red-black invariant\n";
      return kExitMismatch;
    }
    return 0;
  }

  // Test hook: make the mirror diverge so --verify must notice.
  void corrupt_mirror() {
    if (!mirror_) return;
    int bit = 0;
    if (sds_bits_length(mirror_.get()) == 0) {
      sds_oracle_insert(mirror_.get(), 0, 1);
    } else {
      sds_bits_get(mirror_.get(), 0, &bit);
      sds_oracle_update(mirror_.get(), 0, !bit);
    }
  }

  Dbv vec_;
  Bits mirror_;
  bool verify_;
  std::optional<std::size_t> fault_after_;
  std::ostream* out_;
  std::size_t executed_ = 0;
};

struct RunArgs {
  std::string script;
  std::string init;
  std::string tree;
  std::string bounds;
  bool verify = false;
  bool dump = false;
  bool time = false;
  std::optional<std::size_t> fault_after;
};

int dbv_run(const RunArgs& a) {
  const Bounds b = parse_bounds(a.bounds);
  sds_dbv* raw = nullptr;
  if (!a.tree.empty()) {
    const std::string text = read_file(a.tree);
    check(sds_dbv_parse_dump(text.c_str(), b.low, b.high, &raw), a.tree);
  } else if (!a.init.empty()) {
    const Bits init = bits_arg(a.init);
    check(sds_dbv_from_bits(init.get(), b.low, b.high, &raw), "init");
  } else {
    check(sds_dbv_create(b.low, b.high, &raw), "bounds");
  }
  const std::string script = read_file(a.script);

  const auto start = std::chrono::steady_clock::now();
  Runner runner(Dbv(raw), a.verify, a.fault_after, &std::cout);
  int status = 0;
  std::istringstream lines(script);
  std::string text;
  std::size_t line = 0;
  while (status == 0 && std::getline(lines, text)) {
    ++line;
    if (const auto op = parse_op(text, line)) status = runner.apply(*op, line);
  }
  const auto elapsed = std::chrono::steady_clock::now() - start;

  if (a.dump) std::cout << dump(runner.vec());
  if (a.time) {
    std::cerr << "elapsed: "
              << std::chrono::duration_cast<std::chrono::microseconds>(elapsed).count() / 1000.0
              << " ms\n";
  }
  return status;
}

// --- verify -------------------------------------------------------------------

struct VerifyArgs {
  std::uint64_t seed = 1;
  std::size_t trees = 100;
  std::size_t max_nodes = 200;
  std::size_t scripts = 100;
  std::size_t ops = 200;
  std::string bounds = "8,32";
};

using Rng = std::mt19937_64;

std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

// Random tree as child lists; node 0 is the root.
std::vector<std::vector<std::size_t>> random_tree(Rng& rng, std::size_t n) {
  std::vector<std::vector<std::size_t>> kids(n);
  const std::size_t window = pick(rng, 0, 1) ? n : pick(rng, 1, 4);
  for (std::size_t k = 1; k < n; ++k) kids[pick(rng, k > window ? k - window : 0, k - 1)].push_back(k);
  return kids;
}

std::string tree_text(const std::vector<std::vector<std::size_t>>& kids) {
  std::string out;
  std::vector<std::pair<std::size_t, std::size_t>> stack{{0, 0}};
  out += "(0";
  while (!stack.empty()) {
    auto& [node, next] = stack.back();
    if (next < kids[node].size()) {
      const std::size_t c = kids[node][next++];
      out += " (" + std::to_string(c);
      stack.push_back({c, 0});
    } else {
      out += ')';
      stack.pop_back();
    }
  }
  return out;
}

// Checks louds navigation on one tree against offsets computed from a plain
// breadth-first walk of the child lists.
bool verify_tree(const std::vector<std::vector<std::size_t>>& kids) {
  const std::string text = tree_text(kids);
  sds_tree* traw = nullptr;
  check(sds_tree_parse(text.c_str(), &traw), "tree");
  const TreeHandle tree(traw);
  sds_bits* braw = nullptr;
  check(sds_tree_louds(tree.get(), 0, &braw), "encode");
  const Bits bits(braw);
  sds_louds* lraw = nullptr;
  check(sds_louds_create(bits.get(), &lraw), "louds");
  const LoudsHandle louds(lraw);

  const std::size_t n = kids.size();
  std::vector<std::size_t> offset(n), parent(n, 0);
  std::deque<std::size_t> queue{0};
  std::size_t at = 0;
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop_front();
    offset[v] = at;
    at += kids[v].size() + 1;
    for (std::size_t c : kids[v]) {
      parent[c] = v;
      queue.push_back(c);
    }
  }
  if (sds_bits_length(bits.get()) != 2 * n - 1) return false;
  for (std::size_t v = 0; v < n; ++v) {
    std::size_t got = 0;
    check(sds_louds_children(louds.get(), offset[v], &got), "children");
    if (got != kids[v].size()) return false;
    for (std::size_t i = 0; i < kids[v].size(); ++i) {
      check(sds_louds_child(louds.get(), offset[v], i, &got), "child");
      if (got != offset[kids[v][i]]) return false;
    }
    if (v != 0) {
      check(sds_louds_parent(louds.get(), offset[v], &got), "parent");
      if (got != offset[parent[v]]) return false;
    }
  }
  return true;
}

int verify(const VerifyArgs& a) {
  Rng rng(a.seed);
  const Bounds b = parse_bounds(a.bounds);
  std::size_t bad_trees = 0;
  for (std::size_t t = 0; t < a.trees; ++t) {
    if (!verify_tree(random_tree(rng, pick(rng, 1, std::max<std::size_t>(1, a.max_nodes))))) ++bad_trees;
  }
  std::cout << "louds: " << a.trees - bad_trees << "/" << a.trees << " trees agree\n";

  std::size_t bad_scripts = 0;
  for (std::size_t s = 0; s < a.scripts; ++s) {
    sds_dbv* raw = nullptr;
    check(sds_dbv_create(b.low, b.high, &raw), "bounds");
    Runner runner(Dbv(raw), true, std::nullopt, nullptr);
    std::size_t size = 0;
    for (std::size_t k = 0; k < a.ops; ++k) {
      Op op{OpKind::Insert};
      const std::size_t roll = pick(rng, 0, 9);
      if (size == 0 || roll < 4) {
        op = {OpKind::Insert, pick(rng, 0, size), static_cast<int>(pick(rng, 0, 1))};
      } else if (roll < 6) {
        op = {OpKind::Delete, pick(rng, 0, size - 1)};
      } else {
        static constexpr OpKind others[] = {OpKind::Set,     OpKind::Clear,   OpKind::Rank,
                                            OpKind::Select0, OpKind::Select1, OpKind::Access};
        op = {others[pick(rng, 0, 5)], pick(rng, 0, size - 1)};
        if (op.kind == OpKind::Rank) op.arg = pick(rng, 0, size);
        if (op.kind == OpKind::Select1 || op.kind == OpKind::Select0) op.arg = pick(rng, 0, size + 1);
      }
      if (runner.apply(op, k + 1) != 0) {
        ++bad_scripts;
        break;
      }
      if (op.kind == OpKind::Insert) ++size;
      if (op.kind == OpKind::Delete) --size;
    }
  }
  std::cout << "dbv: " << a.scripts - bad_scripts << "/" << a.scripts << " scripts agree\n";
  return bad_trees + bad_scripts == 0 ? 0 : kExitMismatch;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Succinct data structures: LOUDS trees and dynamic bit vectors"};
  app.require_subcommand(1, 1);

  std::string tree_file;
  bool super_root = false;
  auto* build = app.add_subcommand("louds-build", "Print the LOUDS bits of a tree file");
  build->add_option("tree", tree_file, "Tree file ('-' for stdin)")->required();
  build->add_flag("--super-root", super_root, "Wrap the tree under an extra root first");

  QueryArgs q;
  std::size_t q_index = 0;
  auto* query = app.add_subcommand("louds-query", "Navigate a LOUDS bit string");
  query->add_option("op", q.op, "children, child or parent")
      ->required()
      ->check(CLI::IsMember({"children", "child", "parent"}));
  query->add_option("bits", q.bits, "Bits, or @file")->required();
  query->add_option("--pos", q.pos, "Bit position of the node")->required();
  auto* index_opt = query->add_option("--index", q_index, "Child index (0-based)");
  auto* verify_opt = query->add_option("--verify", q.verify_tree, "Cross-check against this tree file");
  query->add_option("--path", q.path, "Comma-separated child indices of the node, from the tree's own root")->needs(verify_opt);
  query->add_flag("--super-root", q.super_root, "The bits encode the tree under a super-root");

  RunArgs r;
  std::size_t fault = 0;
  auto* run = app.add_subcommand("dbv-run", "Replay an op script on a dynamic bit vector");
  run->add_option("script", r.script, "Op script ('-' for stdin)")->required();
  auto* init_opt = run->add_option("--init", r.init, "Initial bits, or @file");
  run->add_option("--tree", r.tree, "Initial tree in dump format")->excludes(init_opt);
  run->add_option("--bounds", r.bounds, "Leaf size bounds LOW,HIGH");
  run->add_flag("--verify", r.verify, "Mirror every op on the flat oracle and check invariants");
  run->add_flag("--dump", r.dump, "Print the final tree");
  run->add_flag("--time", r.time, "Report elapsed time on stderr");
  auto* fault_opt = run->add_option("--inject-fault", fault)->group("");

  VerifyArgs v;
  auto* self = app.add_subcommand("verify", "Randomized cross-check against the oracle");
  self->add_option("--seed", v.seed, "Random seed");
  self->add_option("--trees", v.trees, "Number of random trees");
  self->add_option("--max-nodes", v.max_nodes, "Maximum tree size");
  self->add_option("--scripts", v.scripts, "Number of random op scripts");
  self->add_option("--ops", v.ops, "Ops per script");
  self->add_option("--bounds", v.bounds, "Leaf size bounds LOW,HIGH");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*build) return louds_build(tree_file, super_root);
    if (*query) {
      if (*index_opt) q.index = q_index;
      return louds_query(q);
    }
    if (*run) {
      if (*fault_opt) r.fault_after = fault;
      return dbv_run(r);
    }
    return verify(v);
  } catch (const Failure& f) {
    std::cerr << "sds: " << f.message << '\n';
    return f.code;
  }
}
