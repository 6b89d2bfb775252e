#include "pbw/presentation.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "pbw/dsl.hpp"
#include "pbw/errors.hpp"
#include "pbw/linalg.hpp"
#include "pbw/shuffle.hpp"

namespace pbw {

std::vector<std::string> SymmetricPresentation::names() const {
  std::vector<std::string> out;
  for (const auto& g : generators) out.push_back(g.name);
  return out;
}

void SymmetricPresentation::validate() const {
  validate_generators(generators);
  for (const auto& r : relations) {
    int arity = -1;
    for (const auto& [m, c] : r) {
      TreeView v(m);
      std::set<int> vars;
      for (int i = 0; i < v.size(); ++i) {
        Token t = v.token(i);
        if (!is_vertex(t)) {
          if (t < 1 || !vars.insert(t).second) throw InvalidInput("variable used twice in a monomial");
          continue;
        }
        const int g = token_gen(t);
        if (g >= static_cast<int>(generators.size())) throw InvalidInput("undeclared generator in relation");
        if (generators[static_cast<std::size_t>(g)].arity != token_arity(t)) throw InvalidInput("arity mismatch");
      }
      const int n = static_cast<int>(vars.size());
      if (*vars.rbegin() != n) throw InvalidInput("relation variables must be a1..an");
      if (arity >= 0 && n != arity) throw InvalidInput("arity-inhomogeneous relation");
      arity = n;
    }
  }
}

Term to_shuffle(const Term& symmetric, const Alphabet& alphabet) {
  Term out(symmetric.arity());
  for (const auto& [m, c] : symmetric) {
    auto [s, sign] = to_shuffle(m, alphabet);
    out.add(s, c * sign);
  }
  return out;
}

Term to_symmetric(const Term& shuffle, const Alphabet& alphabet) {
  Term out(shuffle.arity());
  for (const auto& [m, c] : shuffle) out.add(to_symmetric(m, alphabet), c);
  return out;
}

std::vector<Term> shuffle_orbit(const Term& relation, const Alphabet& alphabet) {
  const int n = relation.arity();
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 1);
  std::vector<Term> out;
  do {
    Term t(n);
    for (const auto& [m, c] : relation) {
      Monomial r = m;
      for (Token& x : r.code)
        if (!is_vertex(x)) x = static_cast<Token>(perm[static_cast<std::size_t>(x - 1)]);
      auto [s, sign] = to_shuffle(r, alphabet);
      t.add(s, c * sign);
    }
    out.push_back(std::move(t));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

ShufflePresentation shuffleize(const SymmetricPresentation& p) {
  p.validate();
  ShufflePresentation out;
  out.name = p.name;
  out.alphabet = Alphabet::from_generators(p.generators);
  // Greedy independent subset of all orbit terms, arity by arity.
  std::map<int, std::vector<Term>> by_arity;
  for (const auto& r : p.relations)
    for (auto& t : shuffle_orbit(r, out.alphabet)) by_arity[r.arity()].push_back(std::move(t));
  for (auto& [n, terms] : by_arity) {
    std::map<Monomial, int> index;
    Echelon e;
    for (auto& t : terms) {
      SparseRow row;
      for (const auto& [m, c] : t) {
        auto it = index.try_emplace(m, static_cast<int>(index.size())).first;
        row[it->second] = c;
      }
      if (e.insert(std::move(row))) out.relations.push_back(std::move(t));
    }
  }
  return out;
}

Term canonicalize(const Term& symmetric, std::span<const GeneratorSpec> gens) {
  Term out(symmetric.arity());
  for (const auto& [m, c] : symmetric) {
    TreeView v(m);
    int sign = 1;
    std::function<std::vector<Token>(int, int&)> rec = [&](int node, int& mn) -> std::vector<Token> {
      Token t = v.token(node);
      if (!is_vertex(t)) {
        mn = t;
        return {t};
      }
      std::vector<std::pair<int, std::vector<Token>>> kids;
      for (int k : v.children(node)) {
        int kmn = 0;
        auto code = rec(k, kmn);
        kids.emplace_back(kmn, std::move(code));
      }
      const auto& g = gens[static_cast<std::size_t>(token_gen(t))];
      if (g.symmetry != Symmetry::None && kids[0].first > kids[1].first) {
        std::swap(kids[0], kids[1]);
        if (g.symmetry == Symmetry::Antisymmetric) sign = -sign;
      }
      mn = kids[0].first;
      for (const auto& k : kids) mn = std::min(mn, k.first);
      std::vector<Token> out{t};
      for (auto& k : kids) out.insert(out.end(), k.second.begin(), k.second.end());
      return out;
    };
    int mn = 0;
    auto code = rec(0, mn);
    out.add(Monomial{std::move(code)}, c * sign);
  }
  return out;
}

namespace {

// Signed tree expressions over the new generators equal to a given subtree.
using Expansion = std::vector<std::pair<std::vector<Token>, Rational>>;

}  // namespace

SymmetricPresentation change_generators(const SymmetricPresentation& p, const std::vector<NewGenerator>& gens) {
  p.validate();
  for (const auto& g : p.generators)
    if (g.arity != 2) throw InvalidInput("change_generators: all generators must be binary");
  const Alphabet old_alphabet = Alphabet::from_generators(p.generators);
  const int dim = old_alphabet.size();

  auto vectorize = [&](const Term& t) {
    std::vector<Rational> v(static_cast<std::size_t>(dim), 0);
    for (const auto& [m, c] : t) v[static_cast<std::size_t>(token_gen(m.code[0]))] += c;
    return v;
  };

  std::vector<GeneratorSpec> new_specs;
  // Each row: a new shuffle generator (origin index, perm) in old coordinates.
  std::vector<std::pair<int, std::vector<int>>> new_shuffle;
  DenseMatrix rows;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const auto& g = gens[i];
    if (g.definition.arity() != 2) throw InvalidInput("change_generators: definition of '" + g.name + "' must be binary");
    Term h = to_shuffle(g.definition, old_alphabet);
    Term swapped(2);
    for (const auto& [m, c] : g.definition) {
      Monomial r = m;
      for (Token& x : r.code)
        if (!is_vertex(x)) x = static_cast<Token>(3 - x);
      swapped.add(r, c);
    }
    Term hbar = to_shuffle(swapped, old_alphabet);
    GeneratorSpec spec{g.name, 2, Symmetry::None, g.weight};
    if (!h.is_zero() && hbar == h)
      spec.symmetry = Symmetry::Symmetric;
    else if (!h.is_zero() && hbar == h * Rational(-1))
      spec.symmetry = Symmetry::Antisymmetric;
    new_specs.push_back(spec);
    rows.push_back(vectorize(h));
    new_shuffle.push_back({static_cast<int>(i), {1, 2}});
    if (spec.symmetry == Symmetry::None) {
      rows.push_back(vectorize(hbar));
      new_shuffle.push_back({static_cast<int>(i), {2, 1}});
    }
  }
  validate_generators(new_specs);
  if (static_cast<int>(rows.size()) != dim) throw MathError("non-invertible substitution");
  auto inv = inverse(rows);
  if (!inv) throw MathError("non-invertible substitution");
  // rows * old = new, hence old = inv * new: old shuffle generator s equals
  // sum_j inv[s][j] * new_j.
  std::function<Expansion(const TreeView&, int)> expand = [&](const TreeView& v, int node) -> Expansion {
    Token t = v.token(node);
    if (!is_vertex(t)) return {{{t}, 1}};
    const auto& ks = v.children(node);
    Expansion left = expand(v, ks[0]);
    Expansion right = expand(v, ks[1]);
    auto [s, sign] = old_alphabet.resolve(token_gen(t), {1, 2});
    Expansion out;
    for (int j = 0; j < dim; ++j) {
      const Rational c = (*inv)[static_cast<std::size_t>(s)][static_cast<std::size_t>(j)] * sign;
      if (c == 0) continue;
      const auto& [origin, perm] = new_shuffle[static_cast<std::size_t>(j)];
      for (const auto& [lc, lq] : left)
        for (const auto& [rc, rq] : right) {
          std::vector<Token> code{vertex_token(origin, 2)};
          const auto& first = perm[0] == 1 ? lc : rc;
          const auto& second = perm[0] == 1 ? rc : lc;
          code.insert(code.end(), first.begin(), first.end());
          code.insert(code.end(), second.begin(), second.end());
          out.emplace_back(std::move(code), c * lq * rq);
        }
    }
    return out;
  };

  SymmetricPresentation out;
  out.name = p.name;
  out.generators = new_specs;
  for (const auto& r : p.relations) {
    Term t(r.arity());
    for (const auto& [m, c] : r) {
      TreeView v(m);
      for (auto& [code, q] : expand(v, 0)) t.add(Monomial{std::move(code)}, c * q);
    }
    t = canonicalize(t, out.generators);
    if (!t.is_zero()) out.relations.push_back(std::move(t));
  }
  return out;
}

std::string print_presentation(const SymmetricPresentation& p) {
  std::ostringstream os;
  os << "operad " << p.name << " {\n  generators: ";
  for (std::size_t i = 0; i < p.generators.size(); ++i) {
    const auto& g = p.generators[i];
    if (i) os << ", ";
    os << g.name << "(" << g.arity << ")";
    if (g.symmetry != Symmetry::None) os << " " << to_string(g.symmetry);
    if (g.weight != 0) os << " @" << g.weight;
  }
  os << ";\n  relations:\n";
  const auto names = p.names();
  for (const auto& r : p.relations) os << "    " << format_term(r, names, true) << " = 0;\n";
  os << "}\n";
  return os.str();
}

namespace {

const std::map<std::string, const char*>& zoo_sources() {
  static const std::map<std::string, const char*> sources = {
      {"Com", R"(operad Com {
  generators: m(2) sym;
  relations:
    m(m(a1,a2),a3) - m(a1,m(a2,a3)) = 0;
})"},
      {"Lie", R"(operad Lie {
  generators: b(2) antisym;
  relations:
    b(b(a1,a2),a3) + b(b(a2,a3),a1) + b(b(a3,a1),a2) = 0;
})"},
      {"Ass", R"(operad Ass {
  generators: m(2);
  relations:
    m(m(a1,a2),a3) - m(a1,m(a2,a3)) = 0;
})"},
      {"Poisson", R"(operad Poisson {
  generators: b(2) antisym @1, m(2) sym;
  relations:
    m(m(a1,a2),a3) - m(a1,m(a2,a3)) = 0;
    b(b(a1,a2),a3) + b(b(a2,a3),a1) + b(b(a3,a1),a2) = 0;
    b(m(a1,a2),a3) - m(b(a1,a3),a2) - m(a1,b(a2,a3)) = 0;
})"},
      {"Leib", R"(operad Leib {
  generators: b(2);
  relations:
    b(a1,b(a2,a3)) - b(b(a1,a2),a3) + b(b(a1,a3),a2) = 0;
})"},
      {"Dias", R"(operad Dias {
  generators: l(2), r(2);
  relations:
    l(l(a1,a2),a3) = l(a1,l(a2,a3));
    l(l(a1,a2),a3) = l(a1,r(a2,a3));
    l(r(a1,a2),a3) = r(a1,l(a2,a3));
    r(l(a1,a2),a3) = r(a1,r(a2,a3));
    r(r(a1,a2),a3) = r(a1,r(a2,a3));
})"},
      {"Perm", R"(operad Perm {
  generators: m(2);
  relations:
    m(m(a1,a2),a3) = m(a1,m(a2,a3));
    m(a1,m(a2,a3)) = m(a1,m(a3,a2));
})"},
      {"PreLie", R"(operad PreLie {
  generators: p(2);
  relations:
    p(p(a1,a2),a3) - p(a1,p(a2,a3)) = p(p(a1,a3),a2) - p(a1,p(a3,a2));
})"},
      {"Dend", R"(operad Dend {
  generators: prec(2), succ(2);
  relations:
    prec(prec(a1,a2),a3) = prec(a1,prec(a2,a3)) + prec(a1,succ(a2,a3));
    prec(succ(a1,a2),a3) = succ(a1,prec(a2,a3));
    succ(prec(a1,a2),a3) + succ(succ(a1,a2),a3) = succ(a1,succ(a2,a3));
})"},
      {"DendCircDot", R"(operad DendCircDot {
  generators: circ(2) @1, dot(2);
  relations:
    circ(circ(a1,a2),a3) - circ(a1,circ(a2,a3)) = circ(circ(a1,a3),a2) - circ(a1,circ(a3,a2));
    dot(dot(a1,a2),a3) = dot(a1,dot(a2,a3)) + dot(a1,dot(a3,a2)) - circ(circ(a1,a3),a2);
    circ(dot(a1,a2),a3) = dot(circ(a1,a3),a2) + dot(a1,circ(a2,a3)) - dot(a1,circ(a3,a2));
    dot(circ(a1,a2),a3) + dot(circ(a1,a3),a2) = circ(a1,dot(a2,a3)) + circ(a1,dot(a3,a2));
})"},
      {"PrePoisson", R"(operad PrePoisson {
  generators: circ(2) @1, dot(2);
  relations:
    circ(circ(a1,a2),a3) - circ(a1,circ(a2,a3)) = circ(circ(a1,a3),a2) - circ(a1,circ(a3,a2));
    dot(dot(a1,a2),a3) = dot(a1,dot(a2,a3)) + dot(a1,dot(a3,a2));
    circ(dot(a1,a2),a3) = dot(circ(a1,a3),a2) + dot(a1,circ(a2,a3)) - dot(a1,circ(a3,a2));
    dot(circ(a1,a2),a3) + dot(circ(a1,a3),a2) = circ(a1,dot(a2,a3)) + circ(a1,dot(a3,a2));
})"},
  };
  return sources;
}

}  // namespace

std::vector<std::string> zoo_names() {
  return {"Com", "Lie", "Ass", "Poisson", "Leib", "Dias", "Perm", "PreLie", "Dend", "DendCircDot", "PrePoisson"};
}

SymmetricPresentation zoo(const std::string& name) {
  const auto& sources = zoo_sources();
  auto it = sources.find(name);
  if (it == sources.end()) throw InvalidInput("unknown operad '" + name + "'");
  return parse_presentation(it->second);
}

}  // namespace pbw
