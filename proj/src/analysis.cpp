#include "pbw/analysis.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "pbw/errors.hpp"
#include "pbw/shuffle.hpp"

namespace pbw {

namespace {

Monomial subtree(const Monomial& m, const TreeView& v, int node) {
  return Monomial{std::vector<Token>(m.code.begin() + node, m.code.begin() + v.end(node))};
}

std::vector<int> leaf_labels(const Monomial& m) {
  std::vector<int> out;
  for (Token t : m.code)
    if (!is_vertex(t)) out.push_back(t);
  std::sort(out.begin(), out.end());
  return out;
}

std::map<int, std::vector<const Term*>> by_arity(const std::vector<Term>& relations) {
  std::map<int, std::vector<const Term*>> out;
  for (const auto& r : relations) out[r.arity()].push_back(&r);
  return out;
}

// Column indices for all monomials of a family of terms, in a given order.
template <class Less>
std::map<Monomial, int, Less> columns(const std::vector<const Term*>& terms, Less less) {
  std::set<Monomial, Less> all(less);
  for (const Term* t : terms)
    for (const auto& [m, c] : *t) all.insert(m);
  std::map<Monomial, int, Less> out(less);
  int i = 0;
  for (const auto& m : all) out.emplace(m, i++);
  return out;
}

SparseRow primitive(SparseRow row) {
  if (row.empty()) return row;
  Integer l = 1, g = 0;
  for (const auto& [c, q] : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  for (auto& [c, q] : row) {
    q *= l;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), q.get_num_mpz_t());
  }
  if (row.begin()->second < 0) g = -g;
  for (auto& [c, q] : row) q /= g;
  return row;
}

}  // namespace

Term apply_morphism(const OperadMorphism& m, const Monomial& source) {
  if (source.is_identity()) return Term(Monomial::identity());
  TreeView v(source);
  const int g = token_gen(v.token(0));
  if (g >= static_cast<int>(m.images.size())) throw InvalidInput("apply_morphism: generator out of range");
  std::vector<Term> inner;
  Blocks blocks;
  for (int c : v.children(0)) {
    Monomial sub = subtree(source, v, c);
    blocks.push_back(leaf_labels(sub));
    inner.push_back(apply_morphism(m, standardize(sub)));
  }
  return compose(m.images[static_cast<std::size_t>(g)], inner, blocks);
}

Term apply_morphism(const OperadMorphism& m, const Term& source) {
  Term out(source.arity());
  for (const auto& [mono, c] : source) out.add_scaled(apply_morphism(m, mono), c);
  return out;
}

std::vector<int> FilteredPresentation::distinguished() const {
  std::vector<int> out;
  for (int g = 0; g < base.alphabet.size(); ++g)
    if (base.alphabet[g].weight > 0) out.push_back(g);
  return out;
}

void FilteredPresentation::validate() const {
  if (distinguished().empty()) throw InvalidInput("filtration: no generator has positive weight");
}

int monomial_weight(const Monomial& m, const Alphabet& alphabet) {
  int w = 0;
  for (Token t : m.code)
    if (is_vertex(t)) w += alphabet[token_gen(t)].weight;
  return w;
}

SymmetricPresentation associated_graded(const SymmetricPresentation& p) {
  auto weight = [&](const Monomial& m) {
    int w = 0;
    for (Token t : m.code)
      if (is_vertex(t)) w += p.generators[static_cast<std::size_t>(token_gen(t))].weight;
    return w;
  };
  SymmetricPresentation out;
  out.name = "gr_" + p.name;
  out.generators = p.generators;
  for (const auto& r : p.relations) {
    if (r.is_zero()) continue;
    int low = weight(r.begin()->first);
    for (const auto& [m, c] : r) low = std::min(low, weight(m));
    Term t(r.arity());
    for (const auto& [m, c] : r)
      if (weight(m) == low) t.add(m, c);
    out.relations.push_back(std::move(t));
  }
  return out;
}

ShufflePresentation associated_graded(const FilteredPresentation& f) {
  f.validate();
  const Alphabet& a = f.base.alphabet;
  ShufflePresentation out;
  out.name = "gr_" + f.base.name;
  out.alphabet = a;
  auto less = [&](const Monomial& x, const Monomial& y) {
    int wx = monomial_weight(x, a), wy = monomial_weight(y, a);
    if (wx != wy) return wx < wy;
    return canonical_less(x, y);
  };
  for (const auto& [n, terms] : by_arity(f.base.relations)) {
    auto cols = columns(terms, less);
    std::vector<Monomial> mono(cols.size());
    for (const auto& [m, i] : cols) mono[static_cast<std::size_t>(i)] = m;
    Echelon e;
    for (const Term* t : terms) {
      SparseRow row;
      for (const auto& [m, c] : *t) row[cols.at(m)] = c;
      e.insert(row);
    }
    for (const auto& [pivot, row] : e.pivots()) {
      const int low = monomial_weight(mono[static_cast<std::size_t>(pivot)], a);
      Term t(n);
      for (const auto& [c, q] : row)
        if (monomial_weight(mono[static_cast<std::size_t>(c)], a) == low) t.add(mono[static_cast<std::size_t>(c)], q);
      out.relations.push_back(std::move(t));
    }
  }
  return out;
}

bool same_relation_span(const ShufflePresentation& a, const ShufflePresentation& b) {
  auto ga = by_arity(a.relations), gb = by_arity(b.relations);
  std::set<int> arities;
  for (const auto& [n, t] : ga) arities.insert(n);
  for (const auto& [n, t] : gb) arities.insert(n);
  for (int n : arities) {
    std::vector<const Term*> all = ga[n];
    all.insert(all.end(), gb[n].begin(), gb[n].end());
    auto cols = columns(all, std::less<Monomial>());
    auto row_of = [&](const Term& t) {
      SparseRow row;
      for (const auto& [m, c] : t) row[cols.at(m)] = c;
      return row;
    };
    Echelon ea, eb;
    for (const Term* t : ga[n]) ea.insert(row_of(*t));
    for (const Term* t : gb[n]) eb.insert(row_of(*t));
    if (ea.rank() != eb.rank()) return false;
    for (const Term* t : ga[n])
      if (!eb.contains(row_of(*t))) return false;
  }
  return true;
}

DimensionComparison gr_is_isomorphic_check(const GroebnerBasis& candidate, const GroebnerBasis& base, int d) {
  DimensionComparison out;
  out.candidate = normal_counts(candidate, d);
  out.base = normal_counts(base, d);
  out.isomorphic = out.candidate == out.base;
  for (int n = 1; n <= d && out.first_difference == 0; ++n)
    if (out.candidate[static_cast<std::size_t>(n - 1)] != out.base[static_cast<std::size_t>(n - 1)]) out.first_difference = n;
  return out;
}

MorphismVerdict verify_morphism(const OperadMorphism& m, const GroebnerBasis& target) {
  MorphismVerdict v;
  const Alphabet& src = m.source.alphabet;
  if (static_cast<int>(m.images.size()) != src.size()) {
    v.valid = false;
    v.failures.push_back("image count differs from the number of source generators");
    return v;
  }
  for (int g = 0; g < src.size(); ++g) {
    const Term& img = m.images[static_cast<std::size_t>(g)];
    if (img.arity() != src[g].arity) {
      v.valid = false;
      v.failures.push_back("image of '" + src[g].name + "' has the wrong arity");
    }
  }
  if (!v.valid) return v;
  for (int g = 0; g < src.size(); ++g) {
    const auto sym = src.origins()[static_cast<std::size_t>(src[g].origin)].symmetry;
    if (sym == Symmetry::None) continue;
    const Term& img = m.images[static_cast<std::size_t>(g)];
    target.require(2, "verify_morphism");
    Term swapped = relabel(img, std::vector<int>{2, 1}, target.alphabet);
    Term diff = sym == Symmetry::Symmetric ? swapped - img : swapped + img;
    if (!reduce(diff, target).is_zero()) {
      v.valid = false;
      v.failures.push_back("image of '" + src[g].name + "' is not " +
                           (sym == Symmetry::Symmetric ? "symmetric" : "antisymmetric"));
    }
  }
  for (std::size_t i = 0; i < m.source.relations.size(); ++i) {
    const Term& r = m.source.relations[i];
    target.require(r.arity(), "verify_morphism");
    Term t = reduce(apply_morphism(m, r), target);
    if (!t.is_zero()) {
      v.valid = false;
      v.failures.push_back("relation " + std::to_string(i + 1) + " maps to " + format_term(t, target.alphabet));
    }
  }
  return v;
}

NormalTable::NormalTable(const GroebnerBasis& g, int bound) {
  g.require(bound, "normal table");
  NormalBasis nb(g);
  for (int n = 1; n <= bound; ++n) {
    lists_.push_back(nb.at(n));
    std::map<Monomial, int> idx;
    for (std::size_t i = 0; i < lists_.back().size(); ++i) idx.emplace(lists_.back()[i], static_cast<int>(i));
    index_.push_back(std::move(idx));
  }
}

int NormalTable::index(const Monomial& m) const {
  const int n = m.arity();
  if (n < 1 || n > bound()) return -1;
  const auto& idx = index_[static_cast<std::size_t>(n - 1)];
  auto it = idx.find(m);
  return it == idx.end() ? -1 : it->second;
}

SparseRow NormalTable::coordinates(const Term& reduced) const {
  SparseRow row;
  for (const auto& [m, c] : reduced) {
    int i = index(m);
    if (i < 0) throw MathError("coordinates: monomial is not normal");
    row[i] += c;
  }
  return row;
}

Term NormalTable::term(int n, const SparseRow& row) const {
  Term t(n);
  for (const auto& [i, c] : row) t.add(at(n)[static_cast<std::size_t>(i)], c);
  return t;
}

Term RightModuleData::reduce_n(const Term& t) const { return reduce(t, gbN); }
Term RightModuleData::reduce_m(const Term& t) const { return reduce(t, gbM); }

RightModuleData right_module(const OperadMorphism& m, const GroebnerBasis& gbM, const GroebnerBasis& gbN, int bound) {
  if (bound < 1) throw InvalidInput("right_module: bound must be positive");
  RightModuleData r{m, gbM, gbN, bound, NormalTable(gbM, bound), NormalTable(gbN, bound), {}};
  OrderingCache cache(r.gbN.ordering);
  const Alphabet& src = m.source.alphabet;
  for (int n = 2; n <= bound; ++n) {
    auto& rows = r.action[n];
    for (int g = 0; g < src.size(); ++g) {
      const int k = src[g].arity;
      const int p = n - k + 1;
      if (p < 1) continue;
      const Term& img = m.images[static_cast<std::size_t>(g)];
      for (const auto& nu : r.normalN.at(p))
        for (const auto& block : subsets(n, k)) {
          Term t = reduce(partial_compose(Term(nu), img, block), r.gbN.elements, cache);
          SparseRow row = r.normalN.coordinates(t);
          if (!row.empty()) rows.push_back(std::move(row));
        }
    }
  }
  return r;
}

DimTable generator_quotient(const RightModuleData& r) {
  DimTable x;
  for (int n = 1; n <= r.bound; ++n) {
    int rk = 0;
    auto it = r.action.find(n);
    if (it != r.action.end()) rk = rank(it->second);
    x.dims.emplace_back(r.normalN.dim(n) - rk);
  }
  return x;
}

FreeModel::FreeModel(const RightModuleData& r, int n) : r_(&r), n_(n) {
  if (n < 1 || n > r.bound) throw ResourceError("free model: arity " + std::to_string(n) + " beyond the bound");
  const Alphabet& na = r.gbN.alphabet;
  const Alphabet& ma = r.gbM.alphabet;
  offset_ = na.size();
  std::vector<GeneratorSpec> specs;
  std::set<std::string> taken;
  for (int g = 0; g < na.size(); ++g) {
    names_.push_back(na[g].name);
    taken.insert(na[g].name);
    specs.push_back({na[g].name, na[g].arity, Symmetry::None, 0});
  }
  for (int g = 0; g < ma.size(); ++g) {
    std::string name = taken.count(ma[g].name) ? "src_" + ma[g].name : ma[g].name;
    names_.push_back(name);
    specs.push_back({name, ma[g].arity, Symmetry::None, 0});
  }
  mixed_ = Alphabet::plain(specs);

  for (int k = 1; k <= n; ++k) {
    Echelon& e = quotient_[k];
    auto it = r.action.find(k);
    if (it != r.action.end())
      for (const auto& row : it->second) e.insert(row);
    auto& reps = reps_[k];
    for (int i = 0; i < r.normalN.dim(k); ++i)
      if (!e.is_pivot(i)) reps.push_back(i);
  }

  std::map<std::pair<int, int>, Term> phi;
  auto phi_of = [&](int arity, int idx) -> const Term& {
    auto key = std::make_pair(arity, idx);
    auto it = phi.find(key);
    if (it != phi.end()) return it->second;
    return phi.emplace(key, apply_morphism(r.morphism, r.normalM.at(arity)[static_cast<std::size_t>(idx)])).first->second;
  };

  OrderingCache cache(r.gbN.ordering);
  for (int k = 1; k <= n; ++k) {
    const auto& reps = reps_[k];
    if (reps.empty()) continue;
    for (const auto& blocks : set_partitions(n, k)) {
      std::vector<int> sizes;
      for (const auto& b : blocks) sizes.push_back(static_cast<int>(b.size()));
      std::vector<int> trees(static_cast<std::size_t>(k), 0);
      std::function<void(std::size_t)> rec = [&](std::size_t j) {
        if (j == static_cast<std::size_t>(k)) {
          for (std::size_t xi = 0; xi < reps.size(); ++xi) {
            Cell c{k, static_cast<int>(xi), blocks, trees};
            std::vector<Term> inner;
            for (std::size_t b = 0; b < trees.size(); ++b) inner.push_back(phi_of(sizes[b], trees[b]));
            const Monomial& x = r.normalN.at(k)[static_cast<std::size_t>(reps[xi])];
            Term t = reduce(compose(Term(x), inner, blocks), r.gbN.elements, cache);
            SparseRow row = r.normalN.coordinates(t);
            cell_index_.emplace(c, static_cast<int>(cells_.size()));
            cells_.push_back(std::move(c));
            echelon_.insert(row);
            images_.push_back(std::move(row));
          }
          return;
        }
        for (int i = 0; i < r.normalM.dim(sizes[j]); ++i) {
          trees[j] = i;
          rec(j + 1);
        }
      };
      rec(0);
    }
  }
}

Term FreeModel::mixed_term(const SparseRow& coordinates) const {
  Term out(n_);
  for (const auto& [i, q] : coordinates) {
    const Cell& c = cells_.at(static_cast<std::size_t>(i));
    const Monomial& x = r_->normalN.at(c.k)[static_cast<std::size_t>(reps_.at(c.k)[static_cast<std::size_t>(c.x)])];
    std::vector<Monomial> inner;
    for (std::size_t b = 0; b < c.trees.size(); ++b) {
      Monomial m = r_->normalM.at(static_cast<int>(c.blocks[b].size()))[static_cast<std::size_t>(c.trees[b])];
      for (Token& t : m.code)
        if (is_vertex(t)) t = vertex_token(token_gen(t) + offset_, token_arity(t));
      inner.push_back(std::move(m));
    }
    out.add(compose(x, inner, c.blocks), q);
  }
  return out;
}

SparseRow FreeModel::coordinates(const Term& mixed) const {
  SparseRow out;
  for (const auto& [m, q] : mixed) {
    if (m.arity() != n_) throw InvalidInput("free model: arity mismatch");
    TreeView v(m);
    // Cut the tree below its top part of target generators.
    std::vector<int> cuts;
    std::vector<Token> top;
    std::function<void(int)> walk = [&](int node) {
      Token t = v.token(node);
      if (is_vertex(t) && token_gen(t) < offset_) {
        top.push_back(t);
        for (int c : v.children(node)) walk(c);
        return;
      }
      cuts.push_back(node);
      top.push_back(static_cast<Token>(v.min_leaf(node)));
    };
    walk(0);
    const int k = static_cast<int>(cuts.size());
    Monomial x = standardize(Monomial{top});
    std::vector<std::pair<std::vector<int>, Monomial>> pieces;
    for (int node : cuts) {
      Monomial sub = subtree(m, v, node);
      std::vector<int> labels = leaf_labels(sub);
      sub = standardize(sub);
      for (Token& t : sub.code)
        if (is_vertex(t)) {
          if (token_gen(t) < offset_) throw InvalidInput("free model: target generator below a source generator");
          t = vertex_token(token_gen(t) - offset_, token_arity(t));
        }
      pieces.emplace_back(std::move(labels), std::move(sub));
    }
    std::sort(pieces.begin(), pieces.end());
    Blocks blocks;
    for (const auto& p : pieces) blocks.push_back(p.first);

    SparseRow xrow = r_->normalN.coordinates(r_->reduce_n(Term(x)));
    xrow = quotient_.at(k).reduce(xrow);
    const auto& reps = reps_.at(k);
    std::vector<SparseRow> trees;
    for (const auto& p : pieces) trees.push_back(r_->normalM.coordinates(r_->reduce_m(Term(p.second))));
    for (const auto& [col, xc] : xrow) {
      const int xi = static_cast<int>(std::lower_bound(reps.begin(), reps.end(), col) - reps.begin());
      std::vector<int> choice(pieces.size());
      std::function<void(std::size_t, const Rational&)> rec = [&](std::size_t j, const Rational& c) {
        if (j == pieces.size()) {
          auto it = cell_index_.find(Cell{k, xi, blocks, choice});
          if (it == cell_index_.end()) throw MathError("free model: missing basis cell");
          out[it->second] += c;
          if (out[it->second] == 0) out.erase(it->second);
          return;
        }
        for (const auto& [ti, tc] : trees[j]) {
          choice[j] = ti;
          rec(j + 1, c * tc);
        }
      };
      rec(0, q * xc);
    }
  }
  return out;
}

SparseRow FreeModel::evaluate(const SparseRow& coordinates) const {
  SparseRow out;
  for (const auto& [i, c] : coordinates) axpy(out, c, images_.at(static_cast<std::size_t>(i)));
  return out;
}

FreenessReport freeness_check(const RightModuleData& r) {
  FreenessReport rep;
  rep.bound = r.bound;
  rep.generator_dims = generator_quotient(r);
  for (int n = 1; n <= r.bound; ++n) {
    rep.dims_n.dims.emplace_back(r.normalN.dim(n));
    rep.dims_m.dims.emplace_back(r.normalM.dim(n));
  }
  const TruncatedEGF fx = egf_of(rep.generator_dims);
  const TruncatedEGF fm = egf_of(rep.dims_m);
  const TruncatedEGF fn = egf_of(rep.dims_n);
  int defect = 0;
  for (int n = 1; n <= r.bound; ++n) {
    ArityVerdict v;
    v.n = n;
    v.dim_n = rep.dims_n.at(n);
    Rational free = composite_count(fx, fm, n);
    v.dim_free_model = free.get_num();
    if (v.dim_free_model < v.dim_n) throw MathError("free model smaller than the module in arity " + std::to_string(n));
    v.match = v.dim_free_model == v.dim_n;
    if (!v.match && defect == 0) defect = n;
    rep.per_arity.push_back(v);
  }
  rep.free_up_to = defect == 0 ? r.bound : defect - 1;
  if (fm.order() > 0 && fm[1] != 0) {
    rep.series_quotient = egf_solve_left(fn, fm);
    rep.series_consistent = is_dimension_series(rep.series_quotient);
  }
  if (defect > 0) {
    FreeModel model(r, defect);
    if (model.rank() != r.normalN.dim(defect)) throw MathError("the map from the free model is not onto");
    const auto& ker = model.kernel();
    const SparseRow* best = nullptr;
    for (const auto& k : ker)
      if (!best || k.size() < best->size()) best = &k;
    Witness w;
    w.arity = defect;
    w.kernel_dim = static_cast<int>(ker.size());
    w.names = model.names();
    if (best) {
      w.term = model.mixed_term(primitive(*best));
      w.text = format_term(w.term, w.names);
    }
    rep.witness = std::move(w);
  }
  return rep;
}

namespace {

struct Forest {
  Blocks blocks;
  std::vector<int> trees;
  auto operator<=>(const Forest&) const = default;
};

struct BarCell {
  int nu;
  int a0;
  std::vector<Forest> levels;
  auto operator<=>(const BarCell&) const = default;
};

class BarComplex {
 public:
  BarComplex(const RightModuleData& r, int n) : r_(r), n_(n), cacheN_(r.gbN.ordering), cacheM_(r.gbM.ordering) {}

  const std::vector<Forest>& forests(int total, int blocks) {
    auto key = std::make_pair(total, blocks);
    auto it = forests_.find(key);
    if (it != forests_.end()) return it->second;
    std::vector<Forest> out;
    for (const auto& bl : set_partitions(total, blocks)) {
      std::vector<int> trees(bl.size(), 0);
      std::function<void(std::size_t)> rec = [&](std::size_t j) {
        if (j == bl.size()) {
          out.push_back({bl, trees});
          return;
        }
        for (int i = 0; i < r_.normalM.dim(static_cast<int>(bl[j].size())); ++i) {
          trees[j] = i;
          rec(j + 1);
        }
      };
      rec(0);
    }
    return forests_.emplace(key, std::move(out)).first->second;
  }

  // Cells of degree d: chains a0 < a1 < ... < ad = n.
  const std::vector<BarCell>& cells(int d) {
    auto it = cells_.find(d);
    if (it != cells_.end()) return it->second;
    std::vector<BarCell> out;
    if (d == 0) {
      for (int i = 0; i < r_.normalN.dim(n_); ++i) out.push_back({i, n_, {}});
    } else {
      std::vector<int> chain(static_cast<std::size_t>(d) + 1);
      chain.back() = n_;
      std::function<void(int, int)> pick = [&](int pos, int hi) {
        if (pos < 0) {
          emit(chain, out);
          return;
        }
        for (int a = pos + 1; a < hi; ++a) {
          chain[static_cast<std::size_t>(pos)] = a;
          pick(pos - 1, a);
        }
      };
      pick(d - 1, n_);
    }
    auto& stored = cells_.emplace(d, std::move(out)).first->second;
    auto& idx = index_[d];
    for (std::size_t i = 0; i < stored.size(); ++i) idx.emplace(stored[i], static_cast<int>(i));
    return stored;
  }

  int index(int d, const BarCell& c) {
    cells(d);
    auto it = index_[d].find(c);
    if (it == index_[d].end()) throw MathError("bar complex: missing cell");
    return it->second;
  }

  // Rank of the differential from degree d to degree d-1.
  int differential_rank(int d) {
    const auto& src = cells(d);
    cells(d - 1);
    Echelon e;
    for (const auto& c : src) e.insert(boundary(d, c));
    return e.rank();
  }

  SparseRow boundary(int d, const BarCell& c) {
    SparseRow row;
    // Face 0: act on the module.
    const Monomial& nu = r_.normalN.at(c.a0)[static_cast<std::size_t>(c.nu)];
    const Forest& f0 = c.levels.front();
    std::vector<Term> inner;
    for (std::size_t b = 0; b < f0.trees.size(); ++b) inner.push_back(phi(static_cast<int>(f0.blocks[b].size()), f0.trees[b]));
    Term acted = reduce(compose(Term(nu), inner, f0.blocks), r_.gbN.elements, cacheN_);
    const int a1 = arity(f0);
    for (const auto& [i, q] : r_.normalN.coordinates(acted)) {
      BarCell t{i, a1, std::vector<Forest>(c.levels.begin() + 1, c.levels.end())};
      add(row, index(d - 1, t), q);
    }
    // Inner faces: compose adjacent levels.
    for (int i = 1; i < d; ++i) {
      const Rational sign = i % 2 ? -1 : 1;
      for (const auto& [f, q] : compose_levels(c.levels[static_cast<std::size_t>(i - 1)], c.levels[static_cast<std::size_t>(i)])) {
        BarCell t{c.nu, c.a0, {}};
        for (int j = 0; j < d; ++j) {
          if (j == i - 1) t.levels.push_back(f);
          else if (j != i) t.levels.push_back(c.levels[static_cast<std::size_t>(j)]);
        }
        add(row, index(d - 1, t), sign * q);
      }
    }
    return row;
  }

 private:
  static int arity(const Forest& f) {
    int n = 0;
    for (const auto& b : f.blocks) n += static_cast<int>(b.size());
    return n;
  }

  static void add(SparseRow& row, int col, const Rational& q) {
    auto& v = row[col];
    v += q;
    if (v == 0) row.erase(col);
  }

  void emit(const std::vector<int>& chain, std::vector<BarCell>& out) {
    const int d = static_cast<int>(chain.size()) - 1;
    std::vector<Forest> levels(static_cast<std::size_t>(d));
    std::function<void(int)> rec = [&](int j) {
      if (j == d) {
        for (int i = 0; i < r_.normalN.dim(chain[0]); ++i) out.push_back({i, chain[0], levels});
        return;
      }
      for (const auto& f : forests(chain[static_cast<std::size_t>(j + 1)], chain[static_cast<std::size_t>(j)])) {
        levels[static_cast<std::size_t>(j)] = f;
        rec(j + 1);
      }
    };
    rec(0);
  }

  const Term& phi(int arity, int idx) {
    auto key = std::make_pair(arity, idx);
    auto it = phi_.find(key);
    if (it != phi_.end()) return it->second;
    return phi_.emplace(key, apply_morphism(r_.morphism, r_.normalM.at(arity)[static_cast<std::size_t>(idx)])).first->second;
  }

  // Normal-form coordinates of tree composed with trees in M.
  const SparseRow& compose_m(int outer_arity, int outer, const std::vector<std::pair<int, int>>& inner, const Blocks& blocks) {
    auto key = std::make_tuple(outer_arity, outer, inner, blocks);
    auto it = compose_memo_.find(key);
    if (it != compose_memo_.end()) return it->second;
    std::vector<Monomial> ms;
    for (const auto& [a, i] : inner) ms.push_back(r_.normalM.at(a)[static_cast<std::size_t>(i)]);
    Monomial m = compose(r_.normalM.at(outer_arity)[static_cast<std::size_t>(outer)], ms, blocks);
    SparseRow row = r_.normalM.coordinates(reduce(Term(m), r_.gbM.elements, cacheM_));
    return compose_memo_.emplace(key, std::move(row)).first->second;
  }

  // The composite forest f o g as a combination of forests.
  std::vector<std::pair<Forest, Rational>> compose_levels(const Forest& f, const Forest& g) {
    std::vector<Blocks::value_type> unions;
    std::vector<SparseRow> factors;
    for (std::size_t b = 0; b < f.blocks.size(); ++b) {
      std::vector<int> u;
      for (int s : f.blocks[b]) {
        const auto& gb = g.blocks[static_cast<std::size_t>(s - 1)];
        u.insert(u.end(), gb.begin(), gb.end());
      }
      std::sort(u.begin(), u.end());
      Blocks local;
      std::vector<std::pair<int, int>> inner;
      for (int s : f.blocks[b]) {
        const auto& gb = g.blocks[static_cast<std::size_t>(s - 1)];
        std::vector<int> pos;
        for (int x : gb) pos.push_back(static_cast<int>(std::lower_bound(u.begin(), u.end(), x) - u.begin()) + 1);
        local.push_back(pos);
        inner.emplace_back(static_cast<int>(gb.size()), g.trees[static_cast<std::size_t>(s - 1)]);
      }
      factors.push_back(compose_m(static_cast<int>(f.blocks[b].size()), f.trees[b], inner, local));
      unions.push_back(std::move(u));
    }
    std::vector<std::pair<Forest, Rational>> out;
    std::vector<int> choice(factors.size());
    std::function<void(std::size_t, const Rational&)> rec = [&](std::size_t j, const Rational& c) {
      if (j == factors.size()) {
        out.push_back({Forest{unions, choice}, c});
        return;
      }
      for (const auto& [i, q] : factors[j]) {
        choice[j] = i;
        rec(j + 1, c * q);
      }
    };
    rec(0, 1);
    return out;
  }

  const RightModuleData& r_;
  int n_;
  OrderingCache cacheN_, cacheM_;
  std::map<std::pair<int, int>, std::vector<Forest>> forests_;
  std::map<int, std::vector<BarCell>> cells_;
  std::map<int, std::map<BarCell, int>> index_;
  std::map<std::pair<int, int>, Term> phi_;
  std::map<std::tuple<int, int, std::vector<std::pair<int, int>>, Blocks>, SparseRow> compose_memo_;
};

}  // namespace

BarHomology bar_homology(const RightModuleData& r, int n, int max_degree) {
  if (max_degree < 0 || max_degree > 2) throw InvalidInput("bar homology: degrees above 2 are not supported");
  if (n < 1 || n > r.bound) throw ResourceError("bar homology: arity " + std::to_string(n) + " beyond the bound");
  BarComplex bar(r, n);
  BarHomology out;
  out.n = n;
  std::vector<int> ranks(static_cast<std::size_t>(max_degree) + 2, 0);
  for (int d = 0; d <= max_degree + 1; ++d) {
    const auto size = static_cast<std::int64_t>(bar.cells(d).size());
    if (d <= max_degree) out.chain_dims.push_back(size);
    if (d > 0 && size > 0) ranks[static_cast<std::size_t>(d)] = bar.differential_rank(d);
  }
  for (int d = 0; d <= max_degree; ++d)
    out.homology.push_back(out.chain_dims[static_cast<std::size_t>(d)] - ranks[static_cast<std::size_t>(d)] -
                           ranks[static_cast<std::size_t>(d) + 1]);
  return out;
}

GradedTarget graded_target(const SymmetricMorphism& m, const std::optional<NewGenerator>& complement) {
  m.validate();
  GradedTarget out;
  auto corolla = [](const Monomial& mono) {
    return mono.code.size() >= 2 && is_vertex(mono.code[0]) && mono.vertex_count() == 1;
  };
  bool single = true;
  std::vector<int> weighted;
  for (const auto& img : m.images) {
    if (img.size() != 1 || !corolla(img.begin()->first) || img.begin()->first != standardize(img.begin()->first)) {
      single = false;
      break;
    }
    const Monomial& mono = img.begin()->first;
    bool identity_order = true;
    for (std::size_t i = 1; i < mono.code.size(); ++i)
      if (mono.code[i] != static_cast<Token>(i)) identity_order = false;
    if (!identity_order) {
      single = false;
      break;
    }
    weighted.push_back(token_gen(mono.code[0]));
  }
  if (single) {
    out.filtered = m.target;
    for (auto& g : out.filtered.generators) g.weight = 0;
    for (int g : weighted) out.filtered.generators[static_cast<std::size_t>(g)].weight = 1;
    out.graded = associated_graded(out.filtered);
    out.morphism = m;
    out.morphism.target = out.graded;
    out.morphism.name = m.name + "_gr";
    return out;
  }

  std::vector<NewGenerator> gens;
  for (std::size_t i = 0; i < m.images.size(); ++i) {
    if (m.source.generators[i].arity != 2) throw InvalidInput("graded target: generator changes need binary generators");
    gens.push_back({m.source.generators[i].name, m.images[i], 1});
  }
  if (complement) {
    gens.push_back(*complement);
  } else {
    bool found = false;
    if (m.images.size() == 1 && m.images[0].size() == 2) {
      auto it = m.images[0].begin();
      const auto& [m1, c1] = *it++;
      const auto& [m2, c2] = *it;
      if (corolla(m1) && corolla(m2) && c1 == -c2) {
        const Monomial& plus = c1 > 0 ? m1 : m2;
        const Monomial& minus = c1 > 0 ? m2 : m1;
        if (plus.code[1] == 1 && minus.code[1] == 2) {
          Term dot(2);
          dot.add(plus, c1 > 0 ? c1 : c2);
          dot.add(minus, c1 > 0 ? c1 : c2);
          gens.push_back({"dot", dot, 0});
          found = true;
        }
      }
    }
    if (!found) throw InvalidInput("graded target: no default complement for these images; give one explicitly");
  }
  out.changed_generators = true;
  out.generators = gens;
  out.filtered = change_generators(m.target, gens);
  out.filtered.name = m.target.name;
  out.graded = associated_graded(out.filtered);
  out.morphism.name = m.name + "_gr";
  out.morphism.source = m.source;
  out.morphism.target = out.graded;
  for (std::size_t i = 0; i < m.images.size(); ++i)
    out.morphism.images.emplace_back(Monomial::corolla(static_cast<int>(i), 2));
  return out;
}

}  // namespace pbw
