#include <cctype>

#include "sds/error.hpp"
#include "sds/louds.hpp"

namespace sds {

namespace {

class TreeParser {
public:
  explicit TreeParser(std::string_view text) : text_(text) {}

  Tree parse() {
    skip_space();
    if (at_end()) throw error("empty tree text");
    Tree t = parse_node();
    skip_space();
    if (!at_end()) throw error("unexpected text after the tree");
    return t;
  }

private:
  // Explicit stack so deep trees cannot exhaust the call stack.
  Tree parse_node() {
    std::vector<Tree> stack;
    expect_open();
    stack.push_back(Tree{read_label(), {}});
    for (;;) {
      skip_space();
      if (at_end()) throw error("unterminated node, expected ')'");
      const char c = text_[pos_];
      if (c == '(') {
        expect_open();
        stack.push_back(Tree{read_label(), {}});
      } else if (c == ')') {
        advance();
        Tree done = std::move(stack.back());
        stack.pop_back();
        if (stack.empty()) return done;
        stack.back().children.push_back(std::move(done));
      } else {
        throw error(std::string("unexpected character '") + c + "'");
      }
    }
  }

  void expect_open() {
    skip_space();
    if (at_end() || text_[pos_] != '(') throw error("expected '('");
    advance();
  }

  std::string read_label() {
    skip_space();
    std::string label;
    while (!at_end()) {
      const char c = text_[pos_];
      if (c == '(' || c == ')' || std::isspace(static_cast<unsigned char>(c))) break;
      label.push_back(c);
      advance();
    }
    return label;
  }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance();
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  bool at_end() const { return pos_ >= text_.size(); }
  ParseError error(const std::string& what) const { return ParseError(what, line_, column_); }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

void format_into(const Tree& t, std::string& out) {
  out.push_back('(');
  out += t.label;
  for (const Tree& c : t.children) {
    if (out.back() != '(') out.push_back(' ');
    format_into(c, out);
  }
  out.push_back(')');
}

} // namespace

Tree parse_tree(std::string_view text) { return TreeParser(text).parse(); }

std::string format_tree(const Tree& t) {
  std::string out;
  format_into(t, out);
  return out;
}

} // namespace sds
