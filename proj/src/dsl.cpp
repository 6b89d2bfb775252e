#include "pbw/dsl.hpp"

#include <cctype>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "pbw/errors.hpp"

namespace pbw {

namespace {

enum class Tok { Ident, Number, String, Punct, End };

struct Token_ {
  Tok kind;
  std::string text;
  int line;
  int col;
};

std::vector<Token_> lex(const std::string& s) {
  std::vector<Token_> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t k) {
    for (std::size_t j = 0; j < k; ++j) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < s.size() && s[i] != '\n') advance(1);
      continue;
    }
    const int l = line, k = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Tok::Ident, s.substr(i, j - i), l, k});
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Tok::Number, s.substr(i, j - i), l, k});
      advance(j - i);
    } else if (c == '"') {
      std::size_t j = i + 1;
      while (j < s.size() && s[j] != '"' && s[j] != '\n') ++j;
      if (j >= s.size() || s[j] != '"') throw ParseError("unterminated string", l, k);
      out.push_back({Tok::String, s.substr(i + 1, j - i - 1), l, k});
      advance(j - i + 1);
    } else if (c == '-' && i + 1 < s.size() && s[i + 1] == '>') {
      out.push_back({Tok::Punct, "->", l, k});
      advance(2);
    } else if (std::string("{}(),;:=+-*/@").find(c) != std::string::npos) {
      out.push_back({Tok::Punct, std::string(1, c), l, k});
      advance(1);
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", l, k);
    }
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

bool is_variable(const std::string& s) {
  if (s.size() < 2 || s[0] != 'a') return false;
  for (std::size_t i = 1; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return s[1] != '0';
}

class Parser {
 public:
  explicit Parser(const std::string& text) : toks_(lex(text)) {}

  const Token_& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
  const Token_& next() {
    const Token_& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  bool at(const std::string& punct) const { return peek().kind == Tok::Punct && peek().text == punct; }
  bool at_ident(const std::string& word) const { return peek().kind == Tok::Ident && peek().text == word; }
  bool at_end() const { return peek().kind == Tok::End; }

  [[noreturn]] void fail(const std::string& msg, const Token_& t) const { throw ParseError(msg, t.line, t.col); }
  [[noreturn]] void fail(const std::string& msg) const { fail(msg, peek()); }

  std::string describe(const Token_& t) const {
    if (t.kind == Tok::End) return "end of input";
    return "'" + t.text + "'";
  }
  void expect(const std::string& punct) {
    if (!at(punct)) fail("expected '" + punct + "', found " + describe(peek()));
    next();
  }
  void expect_word(const std::string& word) {
    if (!at_ident(word)) fail("expected '" + word + "', found " + describe(peek()));
    next();
  }
  std::string ident(const std::string& what) {
    if (peek().kind != Tok::Ident) fail("expected " + what + ", found " + describe(peek()));
    return next().text;
  }
  int integer(const std::string& what) {
    if (peek().kind != Tok::Number) fail("expected " + what + ", found " + describe(peek()));
    const Token_& t = next();
    if (t.text.size() > 6) fail(what + " out of range", t);
    return std::stoi(t.text);
  }
  Rational coefficient() {
    Rational q = parse_rational(next().text);
    if (at("/")) {
      next();
      if (peek().kind != Tok::Number) fail("expected denominator");
      const Token_& d = next();
      Rational den = parse_rational(d.text);
      if (den == 0) fail("zero denominator", d);
      q /= den;
    }
    return q;
  }

  // Term over the symmetric generators of `p`, with shuffle-name sugar.
  Term term(const std::vector<GeneratorSpec>& gens, const Alphabet& alphabet) {
    const Token_& start = peek();
    Term out;
    bool first = true;
    int arity = -1;
    while (true) {
      Rational sign = 1;
      if (at("+") || at("-")) {
        if (next().text == "-") sign = -1;
      } else if (!first) {
        break;
      }
      first = false;
      Rational c = 1;
      bool have_coefficient = false;
      if (peek().kind == Tok::Number) {
        c = coefficient();
        have_coefficient = true;
        if (at("*")) next();
      }
      if (have_coefficient && peek().kind != Tok::Ident) {
        if (c != 0) fail("a nonzero constant is not a term");
        continue;
      }
      const Token_& mono_start = peek();
      std::vector<Token> code;
      std::vector<int> vars;
      application(gens, alphabet, code, vars);
      std::set<int> seen;
      for (int v : vars)
        if (!seen.insert(v).second) fail("variable a" + std::to_string(v) + " used twice in a monomial", mono_start);
      const int n = static_cast<int>(vars.size());
      if (*seen.rbegin() != n) fail("variables of a monomial must be a1..a" + std::to_string(n), mono_start);
      if (arity >= 0 && arity != n) fail("arity-inhomogeneous relation", mono_start);
      arity = n;
      if (code.size() == 1) fail("a bare variable is not a term", mono_start);
      out.add(Monomial{std::move(code)}, sign * c);
    }
    if (first) fail("expected a term", start);
    if (arity < 0) return Term(0);
    if (out.is_zero()) return Term(arity);
    return out;
  }

  void application(const std::vector<GeneratorSpec>& gens, const Alphabet& alphabet, std::vector<Token>& code,
                   std::vector<int>& vars) {
    const Token_& t = peek();
    std::string name = ident("generator or variable");
    if (!at("(")) {
      if (!is_variable(name)) fail("expected a variable a1, a2, ... or an application, found '" + name + "'", t);
      const std::string digits = name.substr(1);
      if (digits.size() > 3 || std::stoi(digits) > 127) fail("variable index out of range", t);
      int v = std::stoi(digits);
      vars.push_back(v);
      code.push_back(static_cast<Token>(v));
      return;
    }
    int origin = -1;
    std::vector<int> perm;
    for (int o = 0; o < static_cast<int>(gens.size()); ++o)
      if (gens[static_cast<std::size_t>(o)].name == name) origin = o;
    if (origin >= 0) {
      perm.resize(static_cast<std::size_t>(gens[static_cast<std::size_t>(origin)].arity));
      for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i) + 1;
    } else if (auto s = alphabet.find(name)) {
      origin = alphabet[*s].origin;
      perm = alphabet[*s].perm;
    } else {
      fail("undeclared generator '" + name + "'", t);
    }
    const int k = static_cast<int>(perm.size());
    next();  // (
    std::vector<std::vector<Token>> args;
    while (true) {
      std::vector<Token> sub;
      application(gens, alphabet, sub, vars);
      args.push_back(std::move(sub));
      if (at(",")) {
        next();
        continue;
      }
      if (!at(")")) fail("expected ',' or ')', found " + describe(peek()));
      next();
      break;
    }
    if (static_cast<int>(args.size()) != k)
      fail("arity mismatch: '" + name + "' expects " + std::to_string(k) + " arguments, got " +
               std::to_string(args.size()),
           t);
    code.push_back(vertex_token(origin, k));
    for (int p : perm) {
      const auto& a = args[static_cast<std::size_t>(p - 1)];
      code.insert(code.end(), a.begin(), a.end());
    }
  }

  std::vector<GeneratorSpec> generator_list() {
    std::vector<GeneratorSpec> gens;
    if (at(";")) {
      next();
      return gens;
    }
    while (true) {
      const Token_& t = peek();
      GeneratorSpec g;
      g.name = ident("generator name");
      if (is_variable(g.name)) fail("generator name '" + g.name + "' clashes with variable syntax", t);
      expect("(");
      g.arity = integer("arity");
      expect(")");
      if (at_ident("sym") || at_ident("antisym")) g.symmetry = next().text == "sym" ? Symmetry::Symmetric : Symmetry::Antisymmetric;
      if (at("@")) {
        next();
        g.weight = integer("weight");
      }
      for (const auto& h : gens)
        if (h.name == g.name) fail("duplicate generator '" + g.name + "'", t);
      if (g.arity < 1) fail("arity must be positive", t);
      if (g.arity == 1) fail("unary generators are not supported", t);
      if (g.arity > kMaxGeneratorArity) fail("arity above " + std::to_string(kMaxGeneratorArity), t);
      if (g.symmetry != Symmetry::None && g.arity != 2) fail("symmetry declarations require arity 2", t);
      gens.push_back(g);
      if (at(",")) {
        next();
        continue;
      }
      expect(";");
      break;
    }
    return gens;
  }

  Term relation(const std::vector<GeneratorSpec>& gens, const Alphabet& alphabet) {
    const Token_& start = peek();
    Term lhs = term(gens, alphabet);
    expect("=");
    Term rhs = term(gens, alphabet);
    if (lhs.arity() > 0 && rhs.arity() > 0 && lhs.arity() != rhs.arity()) fail("arity-inhomogeneous relation", start);
    lhs -= rhs;
    return lhs;
  }

  SymmetricPresentation operad() {
    expect_word("operad");
    SymmetricPresentation p;
    p.name = ident("operad name");
    expect("{");
    expect_word("generators");
    expect(":");
    p.generators = generator_list();
    Alphabet alphabet = Alphabet::from_generators(p.generators);
    if (at_ident("relations")) {
      next();
      expect(":");
      while (!at("}")) {
        if (at(";")) {
          next();
          continue;
        }
        const Token_& t = peek();
        Term r = relation(p.generators, alphabet);
        if (r.is_zero()) fail("relation is identically zero", t);
        p.relations.push_back(std::move(r));
        if (!at("}")) expect(";");
      }
    }
    expect("}");
    return p;
  }

 private:
  std::vector<Token_> toks_;
  std::size_t pos_ = 0;
};

Alphabet sugar_alphabet(const std::vector<GeneratorSpec>& gens) {
  try {
    return Alphabet::from_generators(gens);
  } catch (const InvalidInput&) {
    return Alphabet::plain(gens);
  }
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SymmetricPresentation parse_presentation(const std::string& text) {
  Parser p(text);
  SymmetricPresentation out = p.operad();
  if (!p.at_end()) p.fail("trailing input after operad block");
  return out;
}

PresentationResolver default_resolver(const std::string& base_dir) {
  return [base_dir](const std::string& ref, bool quoted) {
    if (!quoted) return zoo(ref);
    std::filesystem::path path(ref);
    if (path.is_relative() && !base_dir.empty()) path = std::filesystem::path(base_dir) / path;
    return parse_presentation(read_file(path.string()));
  };
}

SymmetricMorphism parse_morphism(const std::string& text, const PresentationResolver& resolve) {
  Parser p(text);
  SymmetricMorphism m;
  p.expect_word("morphism");
  m.name = p.ident("morphism name");
  p.expect("{");
  auto endpoint = [&](const std::string& key) {
    p.expect_word(key);
    p.expect(":");
    const Token_& t = p.peek();
    if (t.kind != Tok::Ident && t.kind != Tok::String) p.fail("expected a zoo name or a quoted path");
    const bool quoted = t.kind == Tok::String;
    std::string ref = p.next().text;
    SymmetricPresentation out;
    try {
      out = resolve(ref, quoted);
    } catch (const ParseError& e) {
      throw ParseError(ref + ": " + e.what(), t.line, t.col);
    } catch (const InvalidInput& e) {
      throw ParseError(e.what(), t.line, t.col);
    }
    p.expect(";");
    return out;
  };
  m.source = endpoint("source");
  m.target = endpoint("target");
  p.expect_word("map");
  p.expect(":");
  const Alphabet target_alphabet = sugar_alphabet(m.target.generators);
  std::vector<bool> given(m.source.generators.size(), false);
  m.images.resize(m.source.generators.size());
  while (!p.at("}")) {
    if (p.at(";")) {
      p.next();
      continue;
    }
    const Token_& t = p.peek();
    std::string g = p.ident("source generator");
    int idx = -1;
    for (int i = 0; i < static_cast<int>(m.source.generators.size()); ++i)
      if (m.source.generators[static_cast<std::size_t>(i)].name == g) idx = i;
    if (idx < 0) p.fail("'" + g + "' is not a generator of the source", t);
    if (given[static_cast<std::size_t>(idx)]) p.fail("generator '" + g + "' mapped twice", t);
    p.expect("->");
    Term image = p.term(m.target.generators, target_alphabet);
    const int k = m.source.generators[static_cast<std::size_t>(idx)].arity;
    if (image.arity() != k) p.fail("image of '" + g + "' must have arity " + std::to_string(k), t);
    m.images[static_cast<std::size_t>(idx)] = std::move(image);
    given[static_cast<std::size_t>(idx)] = true;
    if (!p.at("}")) p.expect(";");
  }
  p.expect("}");
  if (!p.at_end()) p.fail("trailing input after morphism block");
  for (std::size_t i = 0; i < given.size(); ++i)
    if (!given[i]) throw ParseError("no image given for generator '" + m.source.generators[i].name + "'");
  return m;
}

std::pair<int, Term> parse_map_entry(const std::string& text, const SymmetricPresentation& source,
                                     const SymmetricPresentation& target) {
  Parser p(text);
  const Token_& t = p.peek();
  std::string g = p.ident("source generator");
  int idx = -1;
  for (int i = 0; i < static_cast<int>(source.generators.size()); ++i)
    if (source.generators[static_cast<std::size_t>(i)].name == g) idx = i;
  if (idx < 0) p.fail("'" + g + "' is not a generator of the source", t);
  p.expect("->");
  Term image = p.term(target.generators, sugar_alphabet(target.generators));
  if (!p.at_end()) p.fail("trailing input in map entry");
  const int k = source.generators[static_cast<std::size_t>(idx)].arity;
  if (image.arity() != k) p.fail("image of '" + g + "' must have arity " + std::to_string(k), t);
  return {idx, std::move(image)};
}

Term parse_term(const std::string& text, const SymmetricPresentation& pres) {
  Parser p(text);
  Term t = p.term(pres.generators, sugar_alphabet(pres.generators));
  if (!p.at_end()) p.fail("trailing input after term");
  return t;
}

AlgebraSource parse_algebra(const std::string& text) {
  Parser p(text);
  AlgebraSource a;
  p.expect_word("algebra");
  a.name = p.ident("algebra name");
  p.expect_word("over");
  if (p.peek().kind == Tok::String) {
    a.over_quoted = true;
    a.over = p.next().text;
  } else {
    a.over = p.ident("operad");
  }
  p.expect("{");
  p.expect_word("basis");
  p.expect(":");
  std::set<std::string> names;
  while (true) {
    const Token_& t = p.peek();
    std::string name = p.ident("basis element");
    if (!names.insert(name).second) p.fail("duplicate basis element '" + name + "'", t);
    int w = 1;
    if (p.at("@")) {
      p.next();
      w = p.integer("weight");
    }
    if (w < 1) p.fail("basis weights must be positive", t);
    a.basis.emplace_back(name, w);
    if (p.at(",")) {
      p.next();
      continue;
    }
    p.expect(";");
    break;
  }
  while (!p.at("}")) {
    if (p.at(";")) {
      p.next();
      continue;
    }
    AlgebraProduct prod;
    const Token_& t = p.peek();
    prod.line = t.line;
    p.expect_word("gamma");
    p.expect("(");
    prod.generator = p.ident("generator");
    p.expect(";");
    while (true) {
      const Token_& u = p.peek();
      std::string x = p.ident("basis element");
      if (!names.count(x)) p.fail("unknown basis element '" + x + "'", u);
      prod.arguments.push_back(x);
      if (p.at(",")) {
        p.next();
        continue;
      }
      p.expect(")");
      break;
    }
    p.expect("=");
    bool first = true;
    while (true) {
      Rational sign = 1;
      if (p.at("+") || p.at("-")) {
        if (p.next().text == "-") sign = -1;
      } else if (!first) {
        break;
      }
      first = false;
      Rational c = 1;
      bool have = false;
      if (p.peek().kind == Tok::Number) {
        c = p.coefficient();
        have = true;
        if (p.at("*")) p.next();
      }
      if (have && p.peek().kind != Tok::Ident) {
        if (c != 0) p.fail("a nonzero constant is not an algebra element");
        continue;
      }
      const Token_& u = p.peek();
      std::string x = p.ident("basis element");
      if (!names.count(x)) p.fail("unknown basis element '" + x + "'", u);
      prod.value.emplace_back(x, sign * c);
    }
    a.products.push_back(std::move(prod));
    if (!p.at("}")) p.expect(";");
  }
  p.expect("}");
  if (!p.at_end()) p.fail("trailing input after algebra block");
  return a;
}

}  // namespace pbw
