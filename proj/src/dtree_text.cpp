#include <cctype>
#include <charconv>

#include "sds/dynamic_bitvec.hpp"
#include "sds/error.hpp"

namespace sds {

namespace {

void dump_into(const DTree& t, std::size_t indent, std::string& out) {
  out.append(indent, ' ');
  if (t->is_leaf()) {
    out += '[' + format_bits(t->bits()) + ']';
    return;
  }
  out += t->color() == Color::Red ? "(Red " : "(Black ";
  out += std::to_string(t->meta().num) + ' ' + std::to_string(t->meta().ones) + '\n';
  dump_into(t->left(), indent + 2, out);
  out += '\n';
  dump_into(t->right(), indent + 2, out);
  out += ')';
}

class DTreeParser {
public:
  explicit DTreeParser(std::string_view text) : text_(text) {}

  DTree parse() {
    skip_space();
    if (at_end()) throw error("empty tree dump");
    DTree t = parse_tree();
    skip_space();
    if (!at_end()) throw error("unexpected text after the tree");
    return t;
  }

private:
  DTree parse_tree() {
    skip_space();
    if (at_end()) throw error("expected '(' or '['");
    if (text_[pos_] == '[') return parse_leaf();
    if (text_[pos_] != '(') throw error("expected '(' or '['");
    advance();
    const Color c = parse_color();
    std::optional<Meta> meta;
    skip_space();
    if (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      const std::size_t num = parse_number();
      const std::size_t ones = parse_number();
      meta = Meta{num, ones};
    }
    DTree left = parse_tree();
    DTree right = parse_tree();
    skip_space();
    if (at_end() || text_[pos_] != ')') throw error("expected ')'");
    advance();
    if (!meta) meta = Meta{dsize(left), dones(left)};
    return DNode::node(c, std::move(left), *meta, std::move(right));
  }

  DTree parse_leaf() {
    advance();  // '['
    BitSeq bits;
    for (;;) {
      if (at_end()) throw error("unterminated leaf, expected ']'");
      const char ch = text_[pos_];
      if (ch == ']') break;
      if (ch == '0' || ch == '1') bits.push_back(ch == '1');
      else if (!std::isspace(static_cast<unsigned char>(ch))) throw error(std::string("unexpected character '") + ch + "' in leaf");
      advance();
    }
    advance();
    return DNode::leaf(std::move(bits));
  }

  Color parse_color() {
    skip_space();
    std::string word;
    while (!at_end() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
      word.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(text_[pos_]))));
      advance();
    }
    if (word == "red" || word == "r") return Color::Red;
    if (word == "black" || word == "b") return Color::Black;
    throw error("expected a color (Red or Black)");
  }

  std::size_t parse_number() {
    skip_space();
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) advance();
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (ec != std::errc{} || start == pos_) throw error("expected a number");
    return value;
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

} // namespace

std::string dump_dtree(const DTree& t) {
  std::string out;
  dump_into(t, 0, out);
  out += '\n';
  return out;
}

DTree parse_dtree(std::string_view text) { return DTreeParser(text).parse(); }

} // namespace sds
