#include "pbw/monomial.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "pbw/alphabet.hpp"
#include "pbw/errors.hpp"

namespace pbw {

Rational parse_rational(const std::string& text) {
  Rational q;
  if (text.empty() || q.set_str(text, 10) != 0) throw std::invalid_argument("not a rational: " + text);
  q.canonicalize();
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
  return q;
}

Monomial Monomial::corolla(int gen, int arity) {
  Monomial m;
  m.code.push_back(vertex_token(gen, arity));
  for (int i = 1; i <= arity; ++i) m.code.push_back(static_cast<Token>(i));
  return m;
}

int Monomial::arity() const {
  return static_cast<int>(std::count_if(code.begin(), code.end(), [](Token t) { return !is_vertex(t); }));
}

int Monomial::vertex_count() const {
  return static_cast<int>(std::count_if(code.begin(), code.end(), [](Token t) { return is_vertex(t); }));
}

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (Token t : m.code) {
    h ^= static_cast<std::uint16_t>(t);
    h *= 1099511628211ull;
  }
  return h;
}

TreeView::TreeView(const Monomial& m) : tok_(m.code) {
  const std::size_t n = tok_.size();
  parent_.assign(n, -1);
  end_.assign(n, 0);
  min_.assign(n, 0);
  leaves_.assign(n, 0);
  kids_.assign(n, {});
  int max_label = 0;
  for (Token t : tok_)
    if (!is_vertex(t)) max_label = std::max<int>(max_label, t);
  leafpos_.assign(static_cast<std::size_t>(max_label) + 1, -1);

  // Iterative preorder decode: a stack of (vertex, remaining children).
  std::vector<std::pair<int, int>> stack;
  for (int i = 0; i < static_cast<int>(n); ++i) {
    if (i > 0 && stack.empty()) throw InvalidInput("monomial code has trailing tokens");
    if (!stack.empty()) {
      parent_[static_cast<std::size_t>(i)] = stack.back().first;
      kids_[static_cast<std::size_t>(stack.back().first)].push_back(i);
      --stack.back().second;
    }
    Token t = tok_[static_cast<std::size_t>(i)];
    if (is_vertex(t)) {
      stack.emplace_back(i, token_arity(t));
    } else {
      end_[static_cast<std::size_t>(i)] = i + 1;
      min_[static_cast<std::size_t>(i)] = t;
      leaves_[static_cast<std::size_t>(i)] = 1;
      if (t > 0) leafpos_[static_cast<std::size_t>(t)] = i;
    }
    while (!stack.empty() && stack.back().second == 0) {
      int v = stack.back().first;
      stack.pop_back();
      const auto& ks = kids_[static_cast<std::size_t>(v)];
      end_[static_cast<std::size_t>(v)] = end_[static_cast<std::size_t>(ks.back())];
      int mn = min_[static_cast<std::size_t>(ks.front())];
      int lc = 0;
      for (int k : ks) {
        mn = std::min(mn, min_[static_cast<std::size_t>(k)]);
        lc += leaves_[static_cast<std::size_t>(k)];
      }
      min_[static_cast<std::size_t>(v)] = mn;
      leaves_[static_cast<std::size_t>(v)] = lc;
    }
  }
  if (n == 0 || !stack.empty()) throw InvalidInput("truncated monomial code");
}

Term::Term(const Monomial& m, const Rational& c) : arity_(m.arity()) {
  if (c != 0) terms_.emplace(m, c);
}

Rational Term::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Term::add(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  if (terms_.empty() && arity_ == 0) arity_ = m.arity();
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Term& Term::operator+=(const Term& other) {
  add_scaled(other, 1);
  return *this;
}

Term& Term::operator-=(const Term& other) {
  add_scaled(other, -1);
  return *this;
}

Term& Term::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, q] : terms_) q *= c;
  return *this;
}

void Term::add_scaled(const Term& other, const Rational& c) {
  if (arity_ == 0) arity_ = other.arity_;
  for (const auto& [m, q] : other.terms_) add(m, q * c);
}

namespace {

void format_rec(const TreeView& v, int i, std::span<const std::string> names, bool variables, std::string& out) {
  Token t = v.token(i);
  if (!is_vertex(t)) {
    if (variables) out += "a";
    out += std::to_string(t);
    return;
  }
  int g = token_gen(t);
  out += g < static_cast<int>(names.size()) ? names[static_cast<std::size_t>(g)] : "g" + std::to_string(g);
  out += "(";
  bool first = true;
  for (int c : v.children(i)) {
    if (!first) out += ",";
    first = false;
    format_rec(v, c, names, variables, out);
  }
  out += ")";
}

}  // namespace

std::string format_monomial(const Monomial& m, std::span<const std::string> names, bool variables) {
  std::string out;
  TreeView v(m);
  format_rec(v, 0, names, variables, out);
  return out;
}

std::string format_term(const Term& t, std::span<const std::string> names, bool variables) {
  if (t.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : t) {
    Rational a = abs(c);
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (a != 1) out += a.get_str() + "*";
    out += format_monomial(m, names, variables);
    first = false;
  }
  return out;
}

std::string format_monomial(const Monomial& m, const Alphabet& alphabet) {
  auto names = alphabet.names();
  return format_monomial(m, names);
}

std::string format_term(const Term& t, const Alphabet& alphabet) {
  auto names = alphabet.names();
  return format_term(t, names);
}

namespace {

struct MonoParser {
  const std::string& s;
  const Alphabet& alphabet;
  std::size_t pos = 0;

  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " at offset " + std::to_string(pos) + " in '" + s + "'");
  }
  void parse(std::vector<Token>& out) {
    skip();
    if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      int v = 0;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) v = v * 10 + (s[pos++] - '0');
      if (v < 1 || v > 127) fail("leaf label out of range");
      out.push_back(static_cast<Token>(v));
      return;
    }
    std::size_t start = pos;
    while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) ++pos;
    if (start == pos) fail("expected generator or label");
    std::string name = s.substr(start, pos - start);
    auto g = alphabet.find(name);
    if (!g) fail("unknown generator '" + name + "'");
    int arity = alphabet[*g].arity;
    out.push_back(vertex_token(*g, arity));
    skip();
    if (pos >= s.size() || s[pos] != '(') fail("expected '('");
    ++pos;
    for (int i = 0; i < arity; ++i) {
      if (i > 0) {
        skip();
        if (pos >= s.size() || s[pos] != ',') fail("expected ','");
        ++pos;
      }
      parse(out);
    }
    skip();
    if (pos >= s.size() || s[pos] != ')') fail("expected ')'");
    ++pos;
  }
};

}  // namespace

Monomial parse_monomial(const std::string& text, const Alphabet& alphabet) {
  MonoParser p{text, alphabet};
  Monomial m;
  p.parse(m.code);
  p.skip();
  if (p.pos != text.size()) p.fail("trailing characters");
  return m;
}

Monomial standardize(const Monomial& m) {
  std::vector<Token> labels;
  for (Token t : m.code)
    if (!is_vertex(t)) labels.push_back(t);
  std::sort(labels.begin(), labels.end());
  Monomial out = m;
  for (Token& t : out.code)
    if (!is_vertex(t))
      t = static_cast<Token>(std::lower_bound(labels.begin(), labels.end(), t) - labels.begin() + 1);
  return out;
}

}  // namespace pbw
