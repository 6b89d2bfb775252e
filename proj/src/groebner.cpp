#include "pbw/groebner.hpp"

#include <algorithm>
#include <cstdlib>
#include <optional>

#include "pbw/errors.hpp"
#include "pbw/shuffle.hpp"

namespace pbw {

Limits Limits::from_environment() {
  Limits l;
  auto read = [](const char* name, long fallback) {
    const char* v = std::getenv(name);
    if (!v || !*v) return fallback;
    char* end = nullptr;
    long x = std::strtol(v, &end, 10);
    if (*end != '\0' || x <= 0) throw InvalidInput(std::string(name) + " must be a positive integer");
    return x;
  };
  l.max_arity = static_cast<int>(read("PBW_MAX_ARITY", l.max_arity));
  l.max_basis = static_cast<std::size_t>(read("PBW_MAX_BASIS", static_cast<long>(l.max_basis)));
  return l;
}

void GroebnerBasis::require(int n, const std::string& what) const {
  if (n > complete_to)
    throw ResourceError(what + ": arity " + std::to_string(n) + " exceeds the certified bound " +
                        std::to_string(complete_to));
}

Monomial leading_monomial(const Term& t, OrderingCache& cache) {
  if (t.is_zero()) throw InvalidInput("leading monomial of zero");
  const Monomial* best = nullptr;
  for (const auto& [m, c] : t)
    if (!best || cache.compare(*best, m) < 0) best = &m;
  return *best;
}

namespace {

struct ByOrder {
  OrderingCache* cache;
  bool operator()(const Monomial& a, const Monomial& b) const { return cache->compare(a, b) < 0; }
};

using OrderedTerm = std::map<Monomial, Rational, ByOrder>;

class Reducer {
 public:
  explicit Reducer(const std::vector<GroebnerElement>& elements) : elements_(&elements) {
    for (std::size_t i = 0; i < elements.size(); ++i) {
      views_.emplace_back(elements[i].lead);
      by_root_[elements[i].lead.code[0]].push_back(static_cast<int>(i));
      Term tail = elements[i].term;
      tail.add(elements[i].lead, -1);
      tails_.push_back(std::move(tail));
    }
  }

  // First occurrence in preorder, first element in basis order.
  bool find(const Monomial& m, const TreeView& mv, int& element, Embedding& e) const {
    for (int p = 0; p < mv.size(); ++p) {
      if (!mv.vertex(p)) continue;
      auto it = by_root_.find(mv.token(p));
      if (it == by_root_.end()) continue;
      for (int i : it->second)
        if (embedding_at((*elements_)[static_cast<std::size_t>(i)].lead, views_[static_cast<std::size_t>(i)], mv, p, e)) {
          element = i;
          return true;
        }
    }
    (void)m;
    return false;
  }

  std::vector<std::pair<int, Embedding>> all(const TreeView& mv) const {
    std::vector<std::pair<int, Embedding>> out;
    Embedding e;
    for (int p = 0; p < mv.size(); ++p) {
      if (!mv.vertex(p)) continue;
      auto it = by_root_.find(mv.token(p));
      if (it == by_root_.end()) continue;
      for (int i : it->second)
        if (embedding_at((*elements_)[static_cast<std::size_t>(i)].lead, views_[static_cast<std::size_t>(i)], mv, p, e))
          out.emplace_back(i, e);
    }
    return out;
  }

  const Term& tail(int i) const { return tails_[static_cast<std::size_t>(i)]; }

 private:
  const std::vector<GroebnerElement>* elements_;
  std::vector<TreeView> views_;
  std::map<Token, std::vector<int>> by_root_;
  std::vector<Term> tails_;
};

void add_to(OrderedTerm& work, const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = work.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) work.erase(it);
  }
}

// m -> c * (lead - tail) is rewritten as -c * tail substituted at e.
void rewrite_into(OrderedTerm& work, const Monomial& m, const TreeView& mv, const Embedding& e, const Rational& c,
                  const Term& tail) {
  for (const auto& [r, q] : tail) add_to(work, rewrite(m, mv, e, r), -c * q);
}

}  // namespace

Term reduce(const Term& t, const std::vector<GroebnerElement>& elements, OrderingCache& cache) {
  Reducer reducer(elements);
  OrderedTerm work(ByOrder{&cache});
  for (const auto& [m, c] : t) work.emplace(m, c);
  Term out(t.arity());
  while (!work.empty()) {
    auto it = std::prev(work.end());
    Monomial m = it->first;
    Rational c = it->second;
    work.erase(it);
    TreeView mv(m);
    int i = -1;
    Embedding e;
    if (reducer.find(m, mv, i, e))
      rewrite_into(work, m, mv, e, c, reducer.tail(i));
    else
      out.add(m, c);
  }
  return out;
}

Term reduce(const Term& t, const GroebnerBasis& g) {
  OrderingCache cache(g.ordering);
  return reduce(t, g.elements, cache);
}

Term reduce_randomized(const Term& t, const GroebnerBasis& g, std::mt19937_64& rng, std::int64_t* steps) {
  Reducer reducer(g.elements);
  Term cur = t;
  std::int64_t count = 0;
  while (true) {
    std::vector<std::pair<Monomial, Rational>> reducible;
    for (const auto& [m, c] : cur) {
      TreeView mv(m);
      int i;
      Embedding e;
      if (reducer.find(m, mv, i, e)) reducible.emplace_back(m, c);
    }
    if (reducible.empty()) break;
    const auto& [m, c] = reducible[std::uniform_int_distribution<std::size_t>(0, reducible.size() - 1)(rng)];
    TreeView mv(m);
    auto sites = reducer.all(mv);
    const auto& [i, e] = sites[std::uniform_int_distribution<std::size_t>(0, sites.size() - 1)(rng)];
    Term next = cur;
    next.add(m, -c);
    for (const auto& [r, q] : reducer.tail(i)) next.add(rewrite(m, mv, e, r), -c * q);
    cur = std::move(next);
    ++count;
  }
  if (steps) *steps = count;
  return cur;
}

namespace {

// Overlays `b` with its root at position `v` of `a`; leaves become 0.
// Returns false when the decorations disagree. `vpos` receives the position
// of v in the merged code.
bool merge_shapes(const TreeView& a, int v, const TreeView& b, std::vector<Token>& out, int& vpos) {
  std::function<void(const TreeView&, int)> copy = [&](const TreeView& t, int p) {
    for (int q = p; q < t.end(p); ++q) out.push_back(t.vertex(q) ? t.token(q) : Token(0));
  };
  std::function<bool(int, int)> overlay = [&](int pa, int pb) -> bool {
    if (!b.vertex(pb)) {
      copy(a, pa);
      return true;
    }
    if (!a.vertex(pa)) {
      copy(b, pb);
      return true;
    }
    if (a.token(pa) != b.token(pb)) return false;
    out.push_back(a.token(pa));
    const auto& ka = a.children(pa);
    const auto& kb = b.children(pb);
    for (std::size_t i = 0; i < ka.size(); ++i)
      if (!overlay(ka[i], kb[i])) return false;
    return true;
  };
  std::function<bool(int)> walk = [&](int pa) -> bool {
    if (pa == v) {
      vpos = static_cast<int>(out.size());
      return overlay(pa, 0);
    }
    if (!a.vertex(pa)) {
      out.push_back(0);
      return true;
    }
    out.push_back(a.token(pa));
    for (int k : a.children(pa))
      if (!walk(k)) return false;
    return true;
  };
  return walk(0);
}

}  // namespace

std::vector<Term> critical_pairs(const std::vector<GroebnerElement>& elements, OrderingCache& cache, int n) {
  (void)cache;
  std::vector<Term> out;
  std::vector<TreeView> views;
  for (const auto& e : elements) views.emplace_back(e.lead);
  for (std::size_t i = 0; i < elements.size(); ++i) {
    const auto& li = elements[i].lead;
    const auto& vi = views[i];
    for (std::size_t j = 0; j < elements.size(); ++j) {
      const auto& lj = elements[j].lead;
      const auto& vj = views[j];
      if (li.arity() > n || lj.arity() > n) continue;
      for (int v = 0; v < vi.size(); ++v) {
        if (!vi.vertex(v) || vi.token(v) != vj.token(0)) continue;
        if (v == 0 && j <= i) continue;
        std::vector<Token> code;
        int vpos = -1;
        if (!merge_shapes(vi, v, vj, code, vpos)) continue;
        Monomial shape{std::move(code)};
        if (shape.arity() != n) continue;
        for (const auto& m : shuffle_labelings(shape)) {
          TreeView mv(m);
          Embedding ei, ej;
          if (!embedding_at(li, vi, mv, 0, ei) || !embedding_at(lj, vj, mv, vpos, ej)) continue;
          Term s = rewrite(m, ei, elements[i].term);
          s -= rewrite(m, ej, elements[j].term);
          if (!s.is_zero()) out.push_back(std::move(s));
        }
      }
    }
  }
  return out;
}

namespace {

bool is_quadratic(const std::vector<GroebnerElement>& elements) {
  for (const auto& e : elements)
    for (const auto& [m, c] : e.term)
      if (m.vertex_count() != 2) return false;
  return true;
}

void make_monic(Term& t, const Monomial& lead) {
  const Rational c = t.coefficient(lead);
  t *= Rational(1) / c;
}

}  // namespace

GroebnerBasis buchberger(const ShufflePresentation& p, const Ordering& o, int max_arity, const Limits& limits) {
  if (max_arity < 1) throw InvalidInput("buchberger: arity bound must be positive");
  if (max_arity > limits.max_arity)
    throw ResourceError("arity bound " + std::to_string(max_arity) + " exceeds the cap " +
                        std::to_string(limits.max_arity));
  GroebnerBasis g;
  g.alphabet = p.alphabet;
  g.ordering = o;
  OrderingCache cache(o);
  std::map<int, std::vector<const Term*>> inputs;
  for (const auto& r : p.relations) {
    if (r.is_zero()) continue;
    inputs[r.arity()].push_back(&r);
  }
  for (int n = 2; n <= max_arity; ++n) {
    std::vector<Term> candidates;
    for (const Term* r : inputs[n]) candidates.push_back(*r);
    auto pairs = critical_pairs(g.elements, cache, n);
    for (auto& s : pairs) candidates.push_back(std::move(s));
    for (const auto& c : candidates) {
      Term r = reduce(c, g.elements, cache);
      if (r.is_zero()) continue;
      Monomial lead = leading_monomial(r, cache);
      make_monic(r, lead);
      g.elements.push_back({std::move(lead), std::move(r)});
      if (g.elements.size() > limits.max_basis)
        throw ResourceError("Gröbner basis exceeds " + std::to_string(limits.max_basis) + " elements at arity " +
                            std::to_string(n));
    }
  }
  // Tail autoreduction.
  for (std::size_t i = 0; i < g.elements.size(); ++i) {
    auto& e = g.elements[i];
    Term tail = e.term;
    tail.add(e.lead, -1);
    if (tail.is_zero()) continue;
    std::vector<GroebnerElement> others;
    for (std::size_t j = 0; j < g.elements.size(); ++j)
      if (j != i) others.push_back(g.elements[j]);
    Term reduced = reduce(tail, others, cache);
    reduced.add(e.lead, 1);
    e.term = std::move(reduced);
  }
  g.complete_to = max_arity;
  g.quadratic = is_quadratic(g.elements);
  return g;
}

namespace {

class NormalBuilder {
 public:
  explicit NormalBuilder(const GroebnerBasis& g) : g_(g) {
    for (std::size_t i = 0; i < g.elements.size(); ++i) {
      views_.emplace_back(g.elements[i].lead);
      by_root_[g.elements[i].lead.code[0]].push_back(static_cast<int>(i));
    }
  }

  const std::vector<Monomial>& at(int n) {
    auto it = memo_.find(n);
    if (it != memo_.end()) return it->second;
    std::vector<Monomial> out;
    if (n == 1) {
      out.push_back(Monomial::identity());
    } else {
      std::vector<int> labels(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) labels[static_cast<std::size_t>(i)] = i + 1;
      for (int gen = 0; gen < g_.alphabet.size(); ++gen) {
        const int k = g_.alphabet[gen].arity;
        if (k > n) continue;
        const Monomial root = Monomial::corolla(gen, k);
        const Token rt = root.code[0];
        auto roots = by_root_.find(rt);
        std::vector<int> sizes(static_cast<std::size_t>(k), 1);
        sizes_rec(n, k, 0, sizes, [&](const std::vector<int>& sz) {
          std::vector<const std::vector<Monomial>*> lists;
          for (int s : sz) lists.push_back(&at(s));
          for (const auto& blocks : ordered_blocks(labels, sz)) {
            std::vector<Monomial> kids(static_cast<std::size_t>(k));
            std::function<void(std::size_t)> rec = [&](std::size_t j) {
              if (j == static_cast<std::size_t>(k)) {
                Monomial m = compose(root, kids, blocks);
                if (roots != by_root_.end()) {
                  TreeView mv(m);
                  Embedding e;
                  for (int i : roots->second)
                    if (embedding_at(g_.elements[static_cast<std::size_t>(i)].lead, views_[static_cast<std::size_t>(i)],
                                     mv, 0, e))
                      return;
                }
                out.push_back(std::move(m));
                return;
              }
              for (const auto& c : *lists[j]) {
                kids[j] = c;
                rec(j + 1);
              }
            };
            rec(0);
          }
        });
      }
      std::sort(out.begin(), out.end(), canonical_less);
    }
    return memo_.emplace(n, std::move(out)).first->second;
  }

 private:
  template <class F>
  void sizes_rec(int remaining, int k, std::size_t j, std::vector<int>& sizes, F&& f) {
    if (j + 1 == static_cast<std::size_t>(k)) {
      if (remaining < 1) return;
      sizes[j] = remaining;
      f(sizes);
      return;
    }
    for (int s = 1; s <= remaining - (k - static_cast<int>(j) - 1); ++s) {
      sizes[j] = s;
      sizes_rec(remaining - s, k, j + 1, sizes, f);
    }
  }

  const GroebnerBasis& g_;
  std::vector<TreeView> views_;
  std::map<Token, std::vector<int>> by_root_;
  std::map<int, std::vector<Monomial>> memo_;
};

}  // namespace

std::vector<Monomial> normal_monomials(const GroebnerBasis& g, int n) {
  g.require(n, "normal_monomials");
  if (n < 1) throw InvalidInput("normal_monomials: arity must be positive");
  NormalBuilder b(g);
  return b.at(n);
}

std::vector<std::int64_t> normal_counts(const GroebnerBasis& g, int n) {
  g.require(n, "normal_counts");
  NormalBuilder b(g);
  std::vector<std::int64_t> out;
  for (int k = 1; k <= n; ++k) out.push_back(static_cast<std::int64_t>(b.at(k).size()));
  return out;
}

const std::vector<Monomial>& NormalBasis::at(int n) {
  auto it = lists_.find(n);
  if (it != lists_.end()) return it->second;
  auto list = normal_monomials(*g_, n);
  auto& idx = index_[n];
  for (std::size_t i = 0; i < list.size(); ++i) idx.emplace(list[i], static_cast<int>(i));
  return lists_.emplace(n, std::move(list)).first->second;
}

int NormalBasis::index(const Monomial& m) {
  const int n = m.arity();
  at(n);
  auto& idx = index_[n];
  auto it = idx.find(m);
  return it == idx.end() ? -1 : it->second;
}

}  // namespace pbw
