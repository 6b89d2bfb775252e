#include "pbw/shuffle.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>

#include "pbw/errors.hpp"

namespace pbw {

namespace {

bool labels_are_permutation(const Monomial& m, int& n) {
  std::vector<int> labels;
  for (Token t : m.code)
    if (!is_vertex(t)) labels.push_back(t);
  n = static_cast<int>(labels.size());
  std::sort(labels.begin(), labels.end());
  for (int i = 0; i < n; ++i)
    if (labels[static_cast<std::size_t>(i)] != i + 1) return false;
  return true;
}

bool minima_increase(const TreeView& v) {
  for (int i = 0; i < v.size(); ++i) {
    if (!v.vertex(i)) continue;
    int prev = 0;
    for (int c : v.children(i)) {
      if (v.min_leaf(c) <= prev) return false;
      prev = v.min_leaf(c);
    }
  }
  return true;
}

// Ordered blocks over `labels` (sorted) with the given sizes and increasing
// minima: each block takes the smallest label still free plus a choice of
// the rest.
void ordered_blocks_rec(const std::vector<int>& sizes, std::size_t j, std::vector<int>& free, Blocks& cur,
                        std::vector<Blocks>& out) {
  if (j == sizes.size()) {
    out.push_back(cur);
    return;
  }
  const int need = sizes[j] - 1;
  const int first = free.front();
  std::vector<int> rest(free.begin() + 1, free.end());
  const int r = static_cast<int>(rest.size());
  if (need > r) return;
  std::vector<int> idx(static_cast<std::size_t>(need));
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    std::vector<int> block{first};
    std::vector<bool> taken(static_cast<std::size_t>(r), false);
    for (int i : idx) {
      block.push_back(rest[static_cast<std::size_t>(i)]);
      taken[static_cast<std::size_t>(i)] = true;
    }
    std::vector<int> remaining;
    for (int i = 0; i < r; ++i)
      if (!taken[static_cast<std::size_t>(i)]) remaining.push_back(rest[static_cast<std::size_t>(i)]);
    cur.push_back(block);
    if (j + 1 == sizes.size() || !remaining.empty()) ordered_blocks_rec(sizes, j + 1, remaining, cur, out);
    cur.pop_back();
    // next combination
    int p = need - 1;
    while (p >= 0 && idx[static_cast<std::size_t>(p)] == r - need + p) --p;
    if (p < 0) break;
    ++idx[static_cast<std::size_t>(p)];
    for (int q = p + 1; q < need; ++q) idx[static_cast<std::size_t>(q)] = idx[static_cast<std::size_t>(q - 1)] + 1;
  }
}


void compositions_rec(int n, int k, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (k == 0) {
    if (n == 0) out.push_back(cur);
    return;
  }
  for (int p = 1; p <= n - (k - 1); ++p) {
    cur.push_back(p);
    compositions_rec(n - p, k - 1, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<int>> compositions(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  compositions_rec(n, k, cur, out);
  return out;
}

void check_blocks(int outer_arity, std::span<const int> inner_arities, const Blocks& blocks) {
  if (static_cast<int>(blocks.size()) != outer_arity || blocks.size() != inner_arities.size())
    throw InvalidInput("composition: block count does not match outer arity");
  int n = 0;
  int prev_min = 0;
  std::vector<int> all;
  for (std::size_t j = 0; j < blocks.size(); ++j) {
    if (static_cast<int>(blocks[j].size()) != inner_arities[j])
      throw InvalidInput("composition: block size does not match inner arity");
    int mn = *std::min_element(blocks[j].begin(), blocks[j].end());
    if (mn <= prev_min) throw InvalidInput("composition: block minima must increase");
    prev_min = mn;
    n += inner_arities[j];
    all.insert(all.end(), blocks[j].begin(), blocks[j].end());
  }
  std::sort(all.begin(), all.end());
  for (int i = 0; i < n; ++i)
    if (all[static_cast<std::size_t>(i)] != i + 1) throw InvalidInput("composition: blocks do not partition 1..n");
}

}  // namespace

std::vector<Blocks> ordered_blocks(const std::vector<int>& labels, const std::vector<int>& sizes) {
  std::vector<Blocks> out;
  Blocks cur;
  if (labels.empty()) return out;
  std::vector<int> free = labels;
  ordered_blocks_rec(sizes, 0, free, cur, out);
  return out;
}

bool is_shuffle_monomial(const Monomial& m) {
  int n = 0;
  if (!labels_are_permutation(m, n)) return false;
  TreeView v(m);
  return minima_increase(v);
}

Monomial make_monomial(const Monomial& shape, std::span<const int> labels) {
  Monomial m = shape;
  std::size_t k = 0;
  for (Token& t : m.code) {
    if (is_vertex(t)) continue;
    if (k >= labels.size()) throw InvalidInput("make_monomial: fewer labels than leaves");
    t = static_cast<Token>(labels[k++]);
  }
  if (k != labels.size()) throw InvalidInput("make_monomial: more labels than leaves");
  int n = 0;
  if (!labels_are_permutation(m, n)) throw InvalidInput("make_monomial: labels are not a permutation of 1..n");
  TreeView v(m);  // validates arities
  if (!minima_increase(v)) throw InvalidInput("make_monomial: local minima condition violated");
  return m;
}

Monomial compose(const Monomial& outer, std::span<const Monomial> inner, const Blocks& blocks) {
  std::vector<int> arities;
  for (const auto& m : inner) arities.push_back(m.arity());
  check_blocks(outer.arity(), arities, blocks);
  std::vector<std::vector<int>> sorted = blocks;
  for (auto& b : sorted) std::sort(b.begin(), b.end());
  Monomial out;
  out.code.reserve(outer.code.size() + 16);
  for (Token t : outer.code) {
    if (is_vertex(t)) {
      out.code.push_back(t);
      continue;
    }
    const auto j = static_cast<std::size_t>(t - 1);
    for (Token u : inner[j].code)
      out.code.push_back(is_vertex(u) ? u : static_cast<Token>(sorted[j][static_cast<std::size_t>(u - 1)]));
  }
  return out;
}

Monomial compose(const ShuffleComposition& c) { return compose(c.outer, c.inner, c.blocks); }

Term compose(const Term& outer, std::span<const Term> inner, const Blocks& blocks) {
  int n = 0;
  for (const auto& b : blocks) n += static_cast<int>(b.size());
  Term out(n);
  std::vector<Monomial> ms(inner.size());
  // Depth-first over one monomial per slot.
  std::function<void(std::size_t, const Monomial&, const Rational&)> rec = [&](std::size_t j, const Monomial& o,
                                                                               const Rational& c) {
    if (j == inner.size()) {
      out.add(compose(o, ms, blocks), c);
      return;
    }
    for (const auto& [m, q] : inner[j]) {
      ms[j] = m;
      rec(j + 1, o, c * q);
    }
  };
  for (const auto& [o, c] : outer) rec(0, o, c);
  return out;
}

Blocks partial_blocks(int n, const std::vector<int>& block) {
  std::vector<int> b = block;
  std::sort(b.begin(), b.end());
  std::vector<bool> in(static_cast<std::size_t>(n) + 1, false);
  for (int x : b) in[static_cast<std::size_t>(x)] = true;
  Blocks out;
  for (int x = 1; x <= n; ++x) {
    if (x == b.front())
      out.push_back(b);
    else if (!in[static_cast<std::size_t>(x)])
      out.push_back({x});
  }
  return out;
}

Monomial partial_compose(const Monomial& outer, const Monomial& inner, const std::vector<int>& block) {
  const int n = outer.arity() + inner.arity() - 1;
  Blocks blocks = partial_blocks(n, block);
  const int mn = *std::min_element(block.begin(), block.end());
  std::vector<Monomial> ms;
  for (const auto& b : blocks) ms.push_back(b.front() == mn ? inner : Monomial::identity());
  return compose(outer, ms, blocks);
}

Term partial_compose(const Term& outer, const Term& inner, const std::vector<int>& block) {
  Term out(outer.arity() + inner.arity() - 1);
  for (const auto& [o, c] : outer)
    for (const auto& [i, q] : inner) out.add(partial_compose(o, i, block), c * q);
  return out;
}

bool embedding_at(const Monomial& d, const TreeView& dv, const TreeView& mv, int pos, Embedding& out) {
  const int a = d.arity();
  out.root = pos;
  out.hanging.assign(static_cast<std::size_t>(a), -1);
  // Parallel preorder walk.
  std::vector<std::pair<int, int>> stack{{0, pos}};
  while (!stack.empty()) {
    auto [dp, mp] = stack.back();
    stack.pop_back();
    Token dt = dv.token(dp);
    if (!is_vertex(dt)) {
      out.hanging[static_cast<std::size_t>(dt - 1)] = mp;
      continue;
    }
    if (mv.token(mp) != dt) return false;
    const auto& dk = dv.children(dp);
    const auto& mk = mv.children(mp);
    for (std::size_t i = 0; i < dk.size(); ++i) stack.emplace_back(dk[i], mk[i]);
  }
  int prev = 0;
  for (int h : out.hanging) {
    int mn = mv.min_leaf(h);
    if (mn <= prev) return false;
    prev = mn;
  }
  return true;
}

std::vector<Embedding> divides(const Monomial& d, const Monomial& m) {
  std::vector<Embedding> out;
  if (d.is_identity()) return out;
  TreeView dv(d);
  TreeView mv(m);
  Embedding e;
  for (int p = 0; p < mv.size(); ++p)
    if (mv.token(p) == dv.token(0) && embedding_at(d, dv, mv, p, e)) out.push_back(e);
  return out;
}

Monomial rewrite(const Monomial& m, const TreeView& mv, const Embedding& e, const Monomial& replacement) {
  Monomial out;
  out.code.reserve(m.code.size() + 8);
  out.code.insert(out.code.end(), m.code.begin(), m.code.begin() + e.root);
  for (Token t : replacement.code) {
    if (is_vertex(t)) {
      out.code.push_back(t);
      continue;
    }
    int h = e.hanging[static_cast<std::size_t>(t - 1)];
    out.code.insert(out.code.end(), m.code.begin() + h, m.code.begin() + mv.end(h));
  }
  out.code.insert(out.code.end(), m.code.begin() + mv.end(e.root), m.code.end());
  return out;
}

Term rewrite(const Monomial& m, const Embedding& e, const Term& replacement) {
  TreeView mv(m);
  Term out(m.arity());
  for (const auto& [r, c] : replacement) out.add(rewrite(m, mv, e, r), c);
  return out;
}

std::vector<Monomial> enumerate_shapes(std::span<const int> arities, int n) {
  std::vector<std::vector<Monomial>> memo(static_cast<std::size_t>(n) + 1);
  memo[1] = {Monomial{{0}}};
  for (int m = 2; m <= n; ++m) {
    auto& cur = memo[static_cast<std::size_t>(m)];
    for (int g = 0; g < static_cast<int>(arities.size()); ++g) {
      const int k = arities[static_cast<std::size_t>(g)];
      if (k > m) continue;
      for (const auto& parts : compositions(m, k)) {
        std::vector<Monomial> acc{Monomial{{vertex_token(g, k)}}};
        for (int p : parts) {
          std::vector<Monomial> next;
          for (const auto& prefix : acc)
            for (const auto& s : memo[static_cast<std::size_t>(p)]) {
              Monomial x = prefix;
              x.code.insert(x.code.end(), s.code.begin(), s.code.end());
              next.push_back(std::move(x));
            }
          acc = std::move(next);
        }
        cur.insert(cur.end(), acc.begin(), acc.end());
      }
    }
  }
  return memo[static_cast<std::size_t>(n)];
}

namespace {

void label_rec(const TreeView& v, int node, const std::vector<int>& labels, std::vector<std::vector<Token>>& out) {
  if (!v.vertex(node)) {
    out.push_back({static_cast<Token>(labels.front())});
    return;
  }
  std::vector<int> sizes;
  for (int c : v.children(node)) sizes.push_back(v.leaf_count(c));
  for (const auto& blocks : ordered_blocks(labels, sizes)) {
    std::vector<std::vector<Token>> acc{{v.token(node)}};
    for (std::size_t j = 0; j < blocks.size(); ++j) {
      std::vector<std::vector<Token>> sub;
      label_rec(v, v.children(node)[j], blocks[j], sub);
      std::vector<std::vector<Token>> next;
      for (const auto& prefix : acc)
        for (const auto& s : sub) {
          auto x = prefix;
          x.insert(x.end(), s.begin(), s.end());
          next.push_back(std::move(x));
        }
      acc = std::move(next);
    }
    out.insert(out.end(), acc.begin(), acc.end());
  }
}

std::vector<Token> generator_word(const Monomial& m) {
  std::vector<Token> w;
  for (Token t : m.code)
    if (is_vertex(t)) w.push_back(static_cast<Token>(token_gen(t)));
  return w;
}

std::vector<Token> label_word(const Monomial& m) {
  std::vector<Token> w;
  for (Token t : m.code)
    if (!is_vertex(t)) w.push_back(t);
  return w;
}

}  // namespace

std::vector<Monomial> shuffle_labelings(const Monomial& shape) {
  TreeView v(shape);
  const int n = v.leaf_count(0);
  std::vector<int> labels(static_cast<std::size_t>(n));
  std::iota(labels.begin(), labels.end(), 1);
  std::vector<std::vector<Token>> codes;
  label_rec(v, 0, labels, codes);
  std::vector<Monomial> out;
  out.reserve(codes.size());
  for (auto& c : codes) out.push_back(Monomial{std::move(c)});
  return out;
}

Monomial shape_of(const Monomial& m) {
  Monomial s = m;
  for (Token& t : s.code)
    if (!is_vertex(t)) t = 0;
  return s;
}

bool canonical_less(const Monomial& a, const Monomial& b) {
  auto wa = generator_word(a), wb = generator_word(b);
  if (wa != wb) return wa < wb;
  auto sa = shape_of(a), sb = shape_of(b);
  if (sa != sb) return sa.code < sb.code;
  return label_word(a) < label_word(b);
}

std::vector<Monomial> enumerate(const Alphabet& alphabet, int n, int cap) {
  if (n < 1) throw InvalidInput("enumerate: arity must be positive");
  if (n > cap) throw ResourceError("enumerate: arity " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
  auto arities = alphabet.arities();
  auto shapes = enumerate_shapes(arities, n);
  std::sort(shapes.begin(), shapes.end(), [](const Monomial& a, const Monomial& b) {
    auto wa = generator_word(a), wb = generator_word(b);
    if (wa != wb) return wa < wb;
    return a.code < b.code;
  });
  std::vector<Monomial> out;
  for (const auto& s : shapes) {
    auto ls = shuffle_labelings(s);
    std::sort(ls.begin(), ls.end(), [](const Monomial& a, const Monomial& b) { return label_word(a) < label_word(b); });
    out.insert(out.end(), ls.begin(), ls.end());
  }
  return out;
}

namespace {

struct Signed {
  std::vector<Token> code;
  int min;
  int sign;
};

Signed relabel_rec(const TreeView& v, int node, std::span<const int> perm, const Alphabet& alphabet,
                   bool symmetric_input) {
  Token t = v.token(node);
  if (!is_vertex(t)) {
    int l = perm.empty() ? t : perm[static_cast<std::size_t>(t - 1)];
    return {{static_cast<Token>(l)}, l, 1};
  }
  const auto& ks = v.children(node);
  std::vector<Signed> kids;
  kids.reserve(ks.size());
  for (int c : ks) kids.push_back(relabel_rec(v, c, perm, alphabet, symmetric_input));
  std::vector<int> order(kids.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return kids[static_cast<std::size_t>(a)].min < kids[static_cast<std::size_t>(b)].min; });
  std::vector<int> tau;
  for (int o : order) tau.push_back(o + 1);
  int gen = token_gen(t);
  if (symmetric_input) {
    std::vector<int> id(ks.size());
    std::iota(id.begin(), id.end(), 1);
    auto [g0, s0] = alphabet.resolve(gen, id);
    gen = g0;
  }
  auto [g, sign] = alphabet.reorder(gen, tau);
  Signed out{{vertex_token(g, static_cast<int>(ks.size()))}, kids[static_cast<std::size_t>(order[0])].min, sign};
  for (int o : order) {
    const auto& k = kids[static_cast<std::size_t>(o)];
    out.code.insert(out.code.end(), k.code.begin(), k.code.end());
    out.sign *= k.sign;
  }
  return out;
}

}  // namespace

std::pair<Monomial, int> relabel(const Monomial& m, std::span<const int> perm, const Alphabet& alphabet) {
  TreeView v(m);
  auto r = relabel_rec(v, 0, perm, alphabet, false);
  return {Monomial{std::move(r.code)}, r.sign};
}

Term relabel(const Term& t, std::span<const int> perm, const Alphabet& alphabet) {
  Term out(t.arity());
  for (const auto& [m, c] : t) {
    auto [r, s] = relabel(m, perm, alphabet);
    out.add(r, c * s);
  }
  return out;
}

std::pair<Monomial, int> to_shuffle(const Monomial& symmetric_tree, const Alphabet& alphabet) {
  TreeView v(symmetric_tree);
  auto r = relabel_rec(v, 0, {}, alphabet, true);
  return {Monomial{std::move(r.code)}, r.sign};
}

Monomial to_symmetric(const Monomial& m, const Alphabet& alphabet) {
  TreeView v(m);
  std::function<void(int, std::vector<Token>&)> rec = [&](int node, std::vector<Token>& out) {
    Token t = v.token(node);
    if (!is_vertex(t)) {
      out.push_back(t);
      return;
    }
    const auto& s = alphabet[token_gen(t)];
    out.push_back(vertex_token(s.origin, s.arity));
    const auto& ks = v.children(node);
    for (int p : s.perm) rec(ks[static_cast<std::size_t>(p - 1)], out);
  };
  Monomial out;
  rec(0, out.code);
  return out;
}

std::vector<Blocks> set_partitions(int n, int k) {
  std::vector<Blocks> out;
  Blocks cur;
  std::function<void(int)> rec = [&](int x) {
    if (x > n) {
      if (static_cast<int>(cur.size()) == k) out.push_back(cur);
      return;
    }
    if (static_cast<int>(cur.size()) + (n - x + 1) < k) return;
    for (std::size_t b = 0; b < cur.size(); ++b) {
      cur[b].push_back(x);
      rec(x + 1);
      cur[b].pop_back();
    }
    if (static_cast<int>(cur.size()) < k) {
      cur.push_back({x});
      rec(x + 1);
      cur.pop_back();
    }
  };
  rec(1);
  return out;
}

std::vector<std::vector<int>> subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > n) return out;
  std::vector<int> idx(static_cast<std::size_t>(k));
  std::iota(idx.begin(), idx.end(), 1);
  while (true) {
    out.push_back(idx);
    int p = k - 1;
    while (p >= 0 && idx[static_cast<std::size_t>(p)] == n - k + p + 1) --p;
    if (p < 0) break;
    ++idx[static_cast<std::size_t>(p)];
    for (int q = p + 1; q < k; ++q) idx[static_cast<std::size_t>(q)] = idx[static_cast<std::size_t>(q - 1)] + 1;
  }
  return out;
}

}  // namespace pbw
