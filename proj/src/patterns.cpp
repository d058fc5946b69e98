#include "avoid/patterns.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace avoid {

Pattern Pattern::from_items(std::vector<OccurrenceItem> items) {
  if (items.empty()) throw std::invalid_argument("pattern must be non-empty");
  int vars_seen = 0;
  int perms_seen = 0;
  for (const OccurrenceItem& it : items) {
    if (it.var_index < 1 || it.perm_index < 1 || it.power < 0)
      throw std::invalid_argument("occurrence item indices out of range");
    if (it.var_index > vars_seen + 1)
      throw std::invalid_argument("variable indices must be contiguous by first occurrence");
    vars_seen = std::max(vars_seen, it.var_index);
    if (it.power == 0) {
      if (it.perm_index != 1)
        throw std::invalid_argument("power-0 item must carry function index 1");
    } else {
      if (it.perm_index > perms_seen + 1)
        throw std::invalid_argument("function indices must be contiguous by first occurrence");
      perms_seen = std::max(perms_seen, it.perm_index);
    }
  }
  Pattern p;
  p.items_ = std::move(items);
  p.nr_vars_ = vars_seen;
  p.nr_perms_ = perms_seen;
  return p;
}

namespace {

struct Cursor {
  std::string_view text;
  size_t pos = 0;

  bool done() const { return pos >= text.size(); }
  char peek() const { return text[pos]; }
  bool is_digit() const { return !done() && peek() >= '0' && peek() <= '9'; }

  int read_number(const char* what) {
    if (!is_digit()) throw PatternParseError(std::string("expected ") + what, pos);
    long value = 0;
    while (is_digit()) {
      value = value * 10 + (peek() - '0');
      if (value > 1'000'000) throw PatternParseError("number too large", pos);
      ++pos;
    }
    return static_cast<int>(value);
  }
};

// Variable reference as written: either x<digits> or a bare letter.
std::string read_var_name(Cursor& c, bool inside_parens) {
  if (c.done()) throw PatternParseError("expected a variable", c.pos);
  char ch = c.peek();
  if (ch == 'p' && !inside_parens) throw PatternParseError("expected a variable", c.pos);
  if (ch == 'p' && inside_parens)
    throw PatternParseError("nested function application is not allowed", c.pos);
  if (ch == 'r') throw PatternParseError("'r' is reserved for reversal", c.pos);
  if (ch < 'a' || ch > 'z') throw PatternParseError("expected a variable", c.pos);
  ++c.pos;
  if (ch == 'x' && c.is_digit()) {
    size_t at = c.pos;
    int index = c.read_number("variable index");
    if (index < 1) throw PatternParseError("variable index must be >= 1", at);
    return "x" + std::to_string(index);
  }
  return std::string(1, ch);
}

}  // namespace

Pattern parse_pattern(std::string_view text) {
  Cursor c{text};
  std::map<std::string, int> var_ids;
  std::map<std::string, int> perm_ids;
  std::vector<OccurrenceItem> items;

  auto var_id = [&](const std::string& name) {
    auto [it, inserted] = var_ids.emplace(name, static_cast<int>(var_ids.size()) + 1);
    (void)inserted;
    return it->second;
  };

  while (!c.done()) {
    char ch = c.peek();
    if (ch == 'p') {
      size_t fn_start = c.pos;
      ++c.pos;
      std::string fn_name = "p";
      if (c.is_digit()) {
        int index = c.read_number("function index");
        if (index < 1) throw PatternParseError("function index must be >= 1", fn_start);
        fn_name += std::to_string(index);
      }
      int power = 1;
      if (!c.done() && c.peek() == '^') {
        ++c.pos;
        power = c.read_number("function power");
      }
      if (c.done() || c.peek() != '(')
        throw PatternParseError("expected '(' after function variable", c.pos);
      ++c.pos;
      std::string var = read_var_name(c, /*inside_parens=*/true);
      bool inner_rev = false;
      if (!c.done() && c.peek() == 'r') {
        inner_rev = true;
        ++c.pos;
      }
      if (c.done() || c.peek() != ')')
        throw PatternParseError("expected ')'", c.pos);
      ++c.pos;
      bool outer_rev = false;
      if (!c.done() && c.peek() == 'r') {
        outer_rev = true;
        ++c.pos;
      }
      if (inner_rev && outer_rev)
        throw PatternParseError("reversal marked both inside and outside parentheses", c.pos - 1);
      OccurrenceItem item;
      item.var_index = var_id(var);
      item.reversed = inner_rev || outer_rev;
      if (power == 0) {
        // p^0 is the identity: normalize to a plain occurrence.
        item.perm_index = 1;
        item.power = 0;
      } else {
        auto [it, inserted] = perm_ids.emplace(fn_name, static_cast<int>(perm_ids.size()) + 1);
        (void)inserted;
        item.perm_index = it->second;
        item.power = power;
      }
      items.push_back(item);
    } else {
      std::string var = read_var_name(c, /*inside_parens=*/false);
      bool rev = false;
      if (!c.done() && c.peek() == 'r') {
        rev = true;
        ++c.pos;
      }
      items.push_back(OccurrenceItem{1, 0, var_id(var), rev});
    }
  }
  if (items.empty()) throw PatternParseError("empty pattern", 0);
  return Pattern::from_items(std::move(items));
}

std::string to_text(const Pattern& p) {
  std::ostringstream os;
  for (const OccurrenceItem& it : p.items()) {
    if (it.power == 0) {
      os << 'x' << it.var_index;
      if (it.reversed) os << 'r';
    } else {
      os << 'p' << it.perm_index;
      if (it.power != 1) os << '^' << it.power;
      os << "(x" << it.var_index << ')';
      if (it.reversed) os << 'r';
    }
  }
  return os.str();
}

std::vector<int> encode_signed(const Pattern& p) {
  std::vector<int> code;
  code.reserve(p.items().size());
  for (const OccurrenceItem& it : p.items()) {
    if (it.power != 0)
      throw std::invalid_argument("signed encoding is defined for function-free patterns only");
    code.push_back(it.reversed ? -it.var_index : it.var_index);
  }
  return code;
}

Formula::Formula(std::vector<Pattern> patterns, Semantics semantics)
    : patterns_(std::move(patterns)), semantics_(semantics) {
  if (patterns_.empty()) throw std::invalid_argument("formula must contain at least one pattern");
  for (const Pattern& p : patterns_) {
    for (const OccurrenceItem& it : p.items()) {
      if (semantics_ == Semantics::Abelian && (it.reversed || it.power > 0))
        throw std::invalid_argument("abelian formulas admit neither reversals nor functions");
      if (semantics_ == Semantics::PlainWithReversal && it.power > 0)
        throw std::invalid_argument("plain formulas admit no function applications");
    }
  }
}

int Formula::max_pattern_length() const {
  int n = 0;
  for (const Pattern& p : patterns_) n = std::max(n, p.length());
  return n;
}

int Formula::max_nr_vars() const {
  int n = 0;
  for (const Pattern& p : patterns_) n = std::max(n, p.nr_vars());
  return n;
}

int Formula::max_nr_perms() const {
  int n = 0;
  for (const Pattern& p : patterns_) n = std::max(n, p.nr_perms());
  return n;
}

std::vector<std::vector<int>> padded_signed_rows(const Formula& f) {
  int width = f.max_pattern_length();
  std::vector<std::vector<int>> rows;
  rows.reserve(f.patterns().size());
  for (const Pattern& p : f.patterns()) {
    std::vector<int> row = encode_signed(p);
    row.resize(width, 0);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<std::vector<std::array<int, 4>>> padded_tuple_rows(const Formula& f) {
  int width = f.max_pattern_length();
  std::vector<std::vector<std::array<int, 4>>> rows;
  rows.reserve(f.patterns().size());
  for (const Pattern& p : f.patterns()) {
    std::vector<std::array<int, 4>> row;
    row.reserve(width);
    for (const OccurrenceItem& it : p.items())
      row.push_back({it.perm_index, it.power, it.var_index, it.reversed ? 1 : 0});
    row.resize(width, {0, 0, 0, 0});
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace avoid
