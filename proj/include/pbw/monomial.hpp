#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "pbw/rational.hpp"

namespace pbw {

class Alphabet;

// Trees are stored as their preorder token sequence. A leaf is its label
// (1..n, or 0 for an unlabelled shape slot); an internal vertex encodes its
// generator index and child count so that the sequence decodes without a
// generator table.
using Token = std::int16_t;

inline constexpr int kMaxGeneratorArity = 15;

constexpr Token vertex_token(int gen, int arity) {
  return static_cast<Token>(-(gen * 16 + arity) - 1);
}
constexpr bool is_vertex(Token t) { return t < 0; }
constexpr int token_gen(Token t) { return (-t - 1) / 16; }
constexpr int token_arity(Token t) { return (-t - 1) % 16; }

/// A tree monomial of a free (shuffle) operad, or a tree expression of a
/// free symmetric operad when leaves are variables. Ordered by its preorder
/// serialization, which is the structural canonical order used for storage
/// and for all tie-breaks.
struct Monomial {
  std::vector<Token> code;

  static Monomial identity() { return Monomial{{1}}; }
  static Monomial corolla(int gen, int arity);

  int arity() const;
  int vertex_count() const;
  bool is_identity() const { return code.size() == 1; }

  auto operator<=>(const Monomial&) const = default;
  bool operator==(const Monomial&) const = default;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept;
};

/// Decoded view of a monomial. Node i is the token at code position i.
class TreeView {
 public:
  explicit TreeView(const Monomial& m);

  int size() const { return static_cast<int>(tok_.size()); }
  Token token(int i) const { return tok_[static_cast<std::size_t>(i)]; }
  bool vertex(int i) const { return is_vertex(token(i)); }
  int parent(int i) const { return parent_[static_cast<std::size_t>(i)]; }
  /// One past the last position of the subtree rooted at i.
  int end(int i) const { return end_[static_cast<std::size_t>(i)]; }
  int min_leaf(int i) const { return min_[static_cast<std::size_t>(i)]; }
  int leaf_count(int i) const { return leaves_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& children(int i) const { return kids_[static_cast<std::size_t>(i)]; }
  /// Position of the leaf carrying label l.
  int leaf_position(int label) const { return leafpos_[static_cast<std::size_t>(label)]; }

 private:
  std::vector<Token> tok_;
  std::vector<int> parent_, end_, min_, leaves_, leafpos_;
  std::vector<std::vector<int>> kids_;
};

/// Finite linear combination of same-arity monomials with non-zero exact
/// rational coefficients.
class Term {
 public:
  using Map = std::map<Monomial, Rational>;

  Term() = default;
  explicit Term(int arity) : arity_(arity) {}
  Term(const Monomial& m, const Rational& c = 1);

  int arity() const { return arity_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const Map& terms() const { return terms_; }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }

  Rational coefficient(const Monomial& m) const;

  void add(const Monomial& m, const Rational& c);
  Term& operator+=(const Term& other);
  Term& operator-=(const Term& other);
  Term& operator*=(const Rational& c);
  void add_scaled(const Term& other, const Rational& c);

  friend Term operator+(Term a, const Term& b) { return a += b; }
  friend Term operator-(Term a, const Term& b) { return a -= b; }
  friend Term operator*(Term a, const Rational& c) { return a *= c; }
  bool operator==(const Term& other) const { return arity_ == other.arity_ && terms_ == other.terms_; }

 private:
  int arity_ = 0;
  Map terms_;
};

/// Textual monomial format, e.g. "g(h(1,3),2)". Leaves print as labels, or as
/// `a<label>` when `variables` is set (symmetric tree expressions).
std::string format_monomial(const Monomial& m, std::span<const std::string> names, bool variables = false);
std::string format_term(const Term& t, std::span<const std::string> names, bool variables = false);

std::string format_monomial(const Monomial& m, const Alphabet& alphabet);
std::string format_term(const Term& t, const Alphabet& alphabet);

/// Inverse of format_monomial for the label form.
Monomial parse_monomial(const std::string& text, const Alphabet& alphabet);

/// Renumbers leaf labels to 1..k preserving their relative order.
Monomial standardize(const Monomial& m);

}  // namespace pbw
