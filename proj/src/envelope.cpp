#include "pbw/envelope.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <tuple>

#include "pbw/errors.hpp"
#include "pbw/presentation.hpp"
#include "pbw/shuffle.hpp"

namespace pbw {

namespace {

void partitions_into(int n, int largest, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (int p = std::min(n, largest); p >= 1; --p) {
    cur.push_back(p);
    partitions_into(n - p, p, cur, out);
    cur.pop_back();
  }
}

// A permutation of cycle type lambda, as the images of 1..n.
std::vector<int> cycle_permutation(const std::vector<int>& lambda) {
  std::vector<int> perm;
  int start = 1;
  for (int len : lambda) {
    for (int i = 0; i < len; ++i) perm.push_back(start + (i + 1) % len);
    start += len;
  }
  return perm;
}

Integer factorial(int n) {
  Integer f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Size of the centralizer of a permutation of cycle type lambda.
Integer centralizer(const std::vector<int>& lambda) {
  std::map<int, int> mult;
  for (int p : lambda) ++mult[p];
  Integer z = 1;
  for (const auto& [p, m] : mult) {
    for (int i = 0; i < m; ++i) z *= p;
    z *= factorial(m);
  }
  return z;
}

// Trace of sigma on span(normal) / span(quotient rows).
Rational quotient_trace(const RightModuleData* r, const GroebnerBasis& g, const NormalTable& normal, int n,
                        const std::vector<int>& perm, const Echelon& quotient) {
  Rational tr = 0;
  for (int i = 0; i < normal.dim(n); ++i) {
    if (quotient.is_pivot(i)) continue;
    Term image = relabel(Term(normal.at(n)[static_cast<std::size_t>(i)]), perm, g.alphabet);
    image = r ? r->reduce_n(image) : reduce(image, g);
    SparseRow row = quotient.reduce(normal.coordinates(image));
    auto it = row.find(i);
    if (it != row.end()) tr += it->second;
  }
  return tr;
}

Character character(const RightModuleData* r, const GroebnerBasis& g, const NormalTable& normal, int n,
                    const Echelon& quotient) {
  Character chi;
  for (const auto& lambda : integer_partitions(n)) chi[lambda] = quotient_trace(r, g, normal, n, cycle_permutation(lambda), quotient);
  return chi;
}

// Coefficient list of a polynomial in t truncated at degree d.
using Poly = std::vector<Integer>;

Poly multiply(const Poly& a, const Poly& b, int d) {
  Poly c(static_cast<std::size_t>(d + 1), 0);
  for (int i = 0; i <= d; ++i) {
    if (a[static_cast<std::size_t>(i)] == 0) continue;
    for (int j = 0; i + j <= d; ++j) c[static_cast<std::size_t>(i + j)] += a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
  }
  return c;
}

void for_each_tuple(const std::vector<std::vector<int>>& by_weight, int length, int weight, std::vector<int>& cur,
                    const std::function<void(const std::vector<int>&)>& f) {
  if (length == 0) {
    if (weight == 0) f(cur);
    return;
  }
  for (int w = 1; w <= weight - (length - 1); ++w) {
    if (w >= static_cast<int>(by_weight.size())) break;
    for (int e : by_weight[static_cast<std::size_t>(w)]) {
      cur.push_back(e);
      for_each_tuple(by_weight, length - 1, weight - w, cur, f);
      cur.pop_back();
    }
  }
}

void all_tuples(int size, int length, std::vector<int>& cur, const std::function<void(const std::vector<int>&)>& f) {
  if (length == 0) {
    f(cur);
    return;
  }
  for (int e = 0; e < size; ++e) {
    cur.push_back(e);
    all_tuples(size, length - 1, cur, f);
    cur.pop_back();
  }
}

}  // namespace

std::vector<std::vector<int>> integer_partitions(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  partitions_into(n, n, cur, out);
  return out;
}

std::vector<Character> operad_characters(const GroebnerBasis& g, int bound) {
  g.require(bound, "characters");
  NormalTable normal(g, bound);
  std::vector<Character> out;
  Echelon none;
  for (int n = 1; n <= bound; ++n) out.push_back(character(nullptr, g, normal, n, none));
  return out;
}

std::vector<Character> generator_characters(const RightModuleData& r) {
  std::vector<Character> out;
  for (int n = 1; n <= r.bound; ++n) {
    Echelon image;
    auto it = r.action.find(n);
    if (it != r.action.end())
      for (const auto& row : it->second) image.insert(row);
    out.push_back(character(&r, r.gbN, r.normalN, n, image));
  }
  return out;
}

std::vector<Integer> evaluate(const std::vector<Character>& chars, const std::vector<int>& vdims, int d) {
  if (d < 0) throw InvalidInput("evaluate: negative weight bound");
  std::vector<Rational> total(static_cast<std::size_t>(d + 1), 0);
  const int top = std::min<int>(d, static_cast<int>(chars.size()));
  bool empty = std::all_of(vdims.begin(), vdims.end(), [](int x) { return x == 0; });
  if (!empty && d > static_cast<int>(chars.size()))
    throw ResourceError("evaluate: characters known up to arity " + std::to_string(chars.size()) + ", weight bound " +
                        std::to_string(d));
  for (int n = 1; n <= top; ++n) {
    for (const auto& [lambda, chi] : chars[static_cast<std::size_t>(n - 1)]) {
      if (chi == 0) continue;
      Poly prod(static_cast<std::size_t>(d + 1), 0);
      prod[0] = 1;
      for (int len : lambda) {
        Poly p(static_cast<std::size_t>(d + 1), 0);
        for (std::size_t w = 1; w <= vdims.size(); ++w)
          if (static_cast<int>(w) * len <= d) p[w * static_cast<std::size_t>(len)] += vdims[w - 1];
        prod = multiply(prod, p, d);
      }
      Rational scale = chi / Rational(centralizer(lambda));
      for (int w = 0; w <= d; ++w) total[static_cast<std::size_t>(w)] += scale * Rational(prod[static_cast<std::size_t>(w)]);
    }
  }
  std::vector<Integer> out;
  for (int w = 1; w <= d; ++w) {
    const Rational& q = total[static_cast<std::size_t>(w)];
    if (q.get_den() != 1 || q < 0) throw MathError("evaluate: non-integral dimension, inconsistent characters");
    out.push_back(q.get_num());
  }
  return out;
}

std::vector<Integer> evaluate(const GroebnerBasis& g, const std::vector<int>& vdims, int d) {
  bool empty = std::all_of(vdims.begin(), vdims.end(), [](int x) { return x == 0; });
  if (empty) return std::vector<Integer>(static_cast<std::size_t>(std::max(d, 0)), 0);
  return evaluate(operad_characters(g, d), vdims, d);
}

// ---------------------------------------------------------------------------

int GradedAlgebra::max_weight() const {
  int w = 0;
  for (int x : weights_) w = std::max(w, x);
  return w;
}

std::vector<int> GradedAlgebra::dims(int d) const {
  std::vector<int> out(static_cast<std::size_t>(std::max(d, 0)), 0);
  for (int w : weights_)
    if (w <= d) ++out[static_cast<std::size_t>(w - 1)];
  return out;
}

SparseRow GradedAlgebra::product(int generator, const std::vector<int>& args) const {
  const auto& table = products_.at(static_cast<std::size_t>(generator));
  auto it = table.find(args);
  return it == table.end() ? SparseRow{} : it->second;
}

SparseRow GradedAlgebra::evaluate(const Monomial& m, const std::vector<int>& args) const {
  TreeView v(m);
  std::function<SparseRow(int)> value = [&](int node) -> SparseRow {
    if (!v.vertex(node)) return SparseRow{{args.at(static_cast<std::size_t>(v.token(node) - 1)), Rational(1)}};
    std::vector<SparseRow> kids;
    for (int c : v.children(node)) {
      kids.push_back(value(c));
      if (kids.back().empty()) return {};
    }
    SparseRow out;
    std::vector<int> cur;
    std::function<void(std::size_t, const Rational&)> expand = [&](std::size_t i, const Rational& coef) {
      if (i == kids.size()) {
        axpy(out, coef, product(token_gen(v.token(node)), cur));
        return;
      }
      for (const auto& [e, q] : kids[i]) {
        cur.push_back(e);
        expand(i + 1, coef * q);
        cur.pop_back();
      }
    };
    expand(0, Rational(1));
    return out;
  };
  return value(0);
}

SparseRow GradedAlgebra::evaluate(const Term& t, const std::vector<int>& args) const {
  SparseRow out;
  for (const auto& [m, c] : t) axpy(out, c, evaluate(m, args));
  return out;
}

void GradedAlgebra::check_relations() const {
  for (std::size_t i = 0; i < operad_.relations.size(); ++i) {
    const Term& rel = operad_.relations[i];
    std::vector<int> cur;
    all_tuples(size(), rel.arity(), cur, [&](const std::vector<int>& args) {
      if (!evaluate(rel, args).empty()) {
        std::string where;
        for (int e : args) where += (where.empty() ? "" : ",") + names_[static_cast<std::size_t>(e)];
        throw InvalidInput("algebra " + name_ + ": relation " + format_term(rel, operad_.alphabet) + " fails on (" +
                           where + ")");
      }
    });
  }
}

GradedAlgebra GradedAlgebra::abelian(const SymmetricPresentation& over,
                                     const std::vector<std::pair<std::string, int>>& basis) {
  AlgebraSource s;
  s.name = "abelian";
  s.over = over.name;
  s.basis = basis;
  return from_source(s, over);
}

GradedAlgebra GradedAlgebra::from_source(const AlgebraSource& source, const SymmetricPresentation& over) {
  GradedAlgebra a;
  a.name_ = source.name;
  a.operad_ = shuffleize(over);
  std::map<std::string, int> index;
  for (const auto& [name, w] : source.basis) {
    if (w < 1) throw InvalidInput("algebra " + source.name + ": weight of '" + name + "' must be positive");
    if (!index.emplace(name, a.size()).second) throw InvalidInput("algebra " + source.name + ": duplicate '" + name + "'");
    a.names_.push_back(name);
    a.weights_.push_back(w);
  }
  const auto& gens = over.generators;
  std::vector<std::map<std::vector<int>, SparseRow>> sym(gens.size());
  auto store = [&](std::size_t g, const std::vector<int>& args, const SparseRow& value, int line) {
    auto [it, fresh] = sym[g].emplace(args, value);
    if (!fresh && it->second != value)
      throw InvalidInput("algebra " + source.name + ": line " + std::to_string(line) + ": product of " + gens[g].name +
                         " conflicts with an earlier entry or the generator's symmetry");
  };
  for (const auto& p : source.products) {
    auto gi = std::find_if(gens.begin(), gens.end(), [&](const GeneratorSpec& s) { return s.name == p.generator; });
    if (gi == gens.end()) throw InvalidInput("algebra " + source.name + ": unknown generator '" + p.generator + "'");
    const auto g = static_cast<std::size_t>(gi - gens.begin());
    if (static_cast<int>(p.arguments.size()) != gi->arity)
      throw InvalidInput("algebra " + source.name + ": line " + std::to_string(p.line) + ": " + p.generator +
                         " takes " + std::to_string(gi->arity) + " arguments");
    std::vector<int> args;
    int in_weight = 0;
    for (const auto& x : p.arguments) {
      auto it = index.find(x);
      if (it == index.end()) throw InvalidInput("algebra " + source.name + ": unknown basis element '" + x + "'");
      args.push_back(it->second);
      in_weight += a.weight(it->second);
    }
    SparseRow value;
    for (const auto& [x, c] : p.value) {
      auto it = index.find(x);
      if (it == index.end()) throw InvalidInput("algebra " + source.name + ": unknown basis element '" + x + "'");
      if (a.weight(it->second) != in_weight)
        throw InvalidInput("algebra " + source.name + ": line " + std::to_string(p.line) + ": product of weight " +
                           std::to_string(in_weight) + " has a term '" + x + "' of weight " +
                           std::to_string(a.weight(it->second)));
      axpy(value, c, SparseRow{{it->second, Rational(1)}});
    }
    store(g, args, value, p.line);
    if (gi->symmetry != Symmetry::None) {
      SparseRow swapped;
      axpy(swapped, gi->symmetry == Symmetry::Symmetric ? Rational(1) : Rational(-1), value);
      store(g, {args[1], args[0]}, swapped, p.line);
    }
  }
  const Alphabet& alpha = a.operad_.alphabet;
  a.products_.resize(static_cast<std::size_t>(alpha.size()));
  for (int s = 0; s < alpha.size(); ++s) {
    const auto& gen = alpha[s];
    for (const auto& [args, value] : sym[static_cast<std::size_t>(gen.origin)]) {
      if (value.empty()) continue;
      // s(y_1..y_k) = g(y_perm[0], ..), so g(args) = s(y) with y_{perm[i]} = args[i]
      std::vector<int> y(args.size());
      for (std::size_t i = 0; i < args.size(); ++i) y[static_cast<std::size_t>(gen.perm[i] - 1)] = args[i];
      a.products_[static_cast<std::size_t>(s)][y] = value;
    }
  }
  a.check_relations();
  return a;
}

// ---------------------------------------------------------------------------

std::vector<Integer> direct_image(const RightModuleData& r, const GradedAlgebra& a, int d) {
  if (d > r.bound) throw ResourceError("direct_image: weight bound " + std::to_string(d) + " exceeds arity bound " + std::to_string(r.bound));
  if (a.operad().alphabet.names() != r.morphism.source.alphabet.names())
    throw InvalidInput("direct_image: algebra " + a.name() + " is not over the source operad");
  std::vector<std::vector<int>> by_weight(static_cast<std::size_t>(d + 1));
  for (int e = 0; e < a.size(); ++e)
    if (a.weight(e) <= d) by_weight[static_cast<std::size_t>(a.weight(e))].push_back(e);

  const Alphabet& na = r.gbN.alphabet;
  const Alphabet& ma = r.morphism.source.alphabet;
  // Adjacent transpositions applied to normal monomials, and generator
  // images grafted into a slot, as coordinates in N.
  std::map<std::pair<int, int>, std::vector<SparseRow>> swaps;  // (n, q) -> per normal index
  auto swap_rows = [&](int n, int q) -> const std::vector<SparseRow>& {
    auto key = std::make_pair(n, q);
    auto it = swaps.find(key);
    if (it != swaps.end()) return it->second;
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 1);
    std::swap(perm[static_cast<std::size_t>(q - 1)], perm[static_cast<std::size_t>(q)]);
    std::vector<SparseRow> rows;
    for (const auto& nu : r.normalN.at(n)) rows.push_back(r.normalN.coordinates(r.reduce_n(relabel(Term(nu), perm, na))));
    return swaps.emplace(key, std::move(rows)).first->second;
  };
  std::map<std::tuple<int, int, int, int>, SparseRow> grafts;  // (p, nu, slot, s)
  auto graft = [&](int p, int nu, int j, int s) -> const SparseRow& {
    auto key = std::make_tuple(p, nu, j, s);
    auto it = grafts.find(key);
    if (it != grafts.end()) return it->second;
    const Term& image = r.morphism.images[static_cast<std::size_t>(s)];
    std::vector<int> block;
    for (int i = 0; i < image.arity(); ++i) block.push_back(j + i);
    Term t = partial_compose(Term(r.normalN.at(p)[static_cast<std::size_t>(nu)]), image, block);
    return grafts.emplace(key, r.normalN.coordinates(r.reduce_n(t))).first->second;
  };

  std::vector<Integer> out;
  for (int w = 1; w <= d; ++w) {
    std::map<std::pair<int, std::vector<int>>, int> columns;  // (arity, tuple) -> first column
    int ncols = 0;
    std::vector<int> cur;
    for (int n = 1; n <= w; ++n)
      for_each_tuple(by_weight, n, w, cur, [&](const std::vector<int>& t) {
        columns.emplace(std::make_pair(n, t), ncols);
        ncols += r.normalN.dim(n);
      });
    auto column = [&](int n, const std::vector<int>& t, int nu) {
      return columns.at(std::make_pair(n, t)) + nu;
    };
    Echelon rel;
    for (const auto& [key, base] : columns) {
      const auto& [n, t] = key;
      for (int q = 1; q < n; ++q) {
        const auto& rows = swap_rows(n, q);
        std::vector<int> t2 = t;
        std::swap(t2[static_cast<std::size_t>(q - 1)], t2[static_cast<std::size_t>(q)]);
        for (int nu = 0; nu < r.normalN.dim(n); ++nu) {
          SparseRow row;
          for (const auto& [k, c] : rows[static_cast<std::size_t>(nu)]) axpy(row, c, SparseRow{{column(n, t2, k), Rational(1)}});
          axpy(row, Rational(-1), SparseRow{{base + nu, Rational(1)}});
          if (!row.empty()) rel.insert(std::move(row));
        }
      }
    }
    for (const auto& [key, base] : columns) {
      const auto& [n, y] = key;
      for (int s = 0; s < ma.size(); ++s) {
        const int k = ma[s].arity;
        const int p = n - k + 1;
        if (p < 1) continue;
        for (int j = 1; j <= p; ++j) {
          std::vector<int> inner(y.begin() + (j - 1), y.begin() + (j - 1 + k));
          SparseRow value = a.product(s, inner);
          for (int nu = 0; nu < r.normalN.dim(p); ++nu) {
            SparseRow row;
            for (const auto& [i, c] : graft(p, nu, j, s)) axpy(row, c, SparseRow{{base + i, Rational(1)}});
            for (const auto& [e, c] : value) {
              std::vector<int> outer(y.begin(), y.begin() + (j - 1));
              outer.push_back(e);
              outer.insert(outer.end(), y.begin() + (j - 1 + k), y.end());
              axpy(row, -c, SparseRow{{column(p, outer, nu), Rational(1)}});
            }
            if (!row.empty()) rel.insert(std::move(row));
          }
        }
      }
    }
    out.push_back(Integer(ncols - rel.rank()));
  }
  return out;
}

EnvelopeReport envelope_report(const RightModuleData& r, const GradedAlgebra& a, int d) {
  EnvelopeReport rep;
  rep.bound = d;
  rep.algebra_dims = a.dims(d);
  rep.envelope = direct_image(r, a, d);
  std::vector<Character> chars = generator_characters(r);
  chars.resize(static_cast<std::size_t>(std::min<int>(d, static_cast<int>(chars.size()))));
  rep.free_prediction = evaluate(chars, rep.algebra_dims, d);
  rep.matches = rep.envelope == rep.free_prediction;
  return rep;
}

}  // namespace pbw
