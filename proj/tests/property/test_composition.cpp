#include <random>
#include <regex>

#include "doctest.h"
#include "pbw/analysis.hpp"
#include "pbw/shuffle.hpp"

using namespace pbw;

namespace {

std::vector<std::string> origin_names(const Alphabet& a) {
  std::vector<std::string> out;
  for (const auto& g : a.origins()) out.push_back(g.name);
  return out;
}

// Writes the symmetric expression of m with leaf i renamed by `leaf`.
template <class F>
std::string expression(const Monomial& m, const Alphabet& a, F leaf) {
  std::string text = format_monomial(to_symmetric(m, a), origin_names(a), true);
  static const std::regex var("([(,]|^)a([0-9]+)");
  std::string out;
  auto it = std::sregex_iterator(text.begin(), text.end(), var);
  std::size_t last = 0;
  for (; it != std::sregex_iterator(); ++it) {
    const auto& mt = *it;
    out += text.substr(last, static_cast<std::size_t>(mt.position(0)) - last);
    out += mt[1].str() + leaf(std::stoi(mt[2].str()));
    last = static_cast<std::size_t>(mt.position(0) + mt.length(0));
  }
  return out + text.substr(last);
}

// Substitution oracle: the composite as a symmetric expression, built by
// replacing each variable of the outer expression by the relabelled inner one.
std::string substituted(const Monomial& outer, const std::vector<Monomial>& inner, const Blocks& blocks,
                        const Alphabet& a) {
  return expression(outer, a, [&](int j) {
    const auto& b = blocks[static_cast<std::size_t>(j - 1)];
    return expression(inner[static_cast<std::size_t>(j - 1)], a,
                      [&](int i) { return "a" + std::to_string(b[static_cast<std::size_t>(i - 1)]); });
  });
}

std::vector<int> random_sizes(int k, int n, std::mt19937_64& rng) {
  std::vector<int> sizes(static_cast<std::size_t>(k), 1);
  for (int extra = n - k; extra > 0; --extra) ++sizes[rng() % sizes.size()];
  return sizes;
}

}  // namespace

TEST_CASE("shuffle composition agrees with substitution") {
  Alphabet a = Alphabet::from_generators({{"g", 2, Symmetry::None, 0}, {"t", 3, Symmetry::None, 0}});
  std::mt19937_64 rng(2024);
  std::vector<std::vector<Monomial>> by_arity(6);
  by_arity[1] = {Monomial::identity()};
  for (int n = 2; n <= 5; ++n) by_arity[static_cast<std::size_t>(n)] = enumerate(a, n);
  int cases = 0;
  while (cases < 10000) {
    int k = 2 + static_cast<int>(rng() % 3);
    int n = k + static_cast<int>(rng() % 4);
    auto sizes = random_sizes(k, n, rng);
    bool ok = true;
    for (int s : sizes) ok = ok && s <= 5;
    if (!ok) continue;
    const auto& outs = by_arity[static_cast<std::size_t>(k)];
    Monomial outer = outs[rng() % outs.size()];
    std::vector<Monomial> inner;
    for (int s : sizes) {
      const auto& pool = by_arity[static_cast<std::size_t>(s)];
      inner.push_back(pool[rng() % pool.size()]);
    }
    std::vector<int> labels(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) labels[static_cast<std::size_t>(i)] = i + 1;
    auto options = ordered_blocks(labels, sizes);
    if (options.empty()) continue;
    const Blocks& blocks = options[rng() % options.size()];
    Monomial c = compose(outer, inner, blocks);
    CHECK(is_shuffle_monomial(c));
    CHECK(c.arity() == n);
    CHECK(expression(c, a, [](int i) { return "a" + std::to_string(i); }) == substituted(outer, inner, blocks, a));
    ++cases;
  }
}

TEST_CASE("composition unit laws") {
  Alphabet a = Alphabet::from_generators({{"g", 2, Symmetry::None, 0}, {"t", 3, Symmetry::None, 0}});
  for (int n = 2; n <= 4; ++n)
    for (const auto& m : enumerate(a, n)) {
      std::vector<Monomial> ids(static_cast<std::size_t>(n), Monomial::identity());
      Blocks singletons;
      for (int i = 1; i <= n; ++i) singletons.push_back({i});
      CHECK(compose(m, ids, singletons) == m);
      std::vector<Monomial> one{m};
      std::vector<int> all;
      for (int i = 1; i <= n; ++i) all.push_back(i);
      CHECK(compose(Monomial::identity(), one, Blocks{all}) == m);
    }
}

TEST_CASE("partial composition is associative") {
  Alphabet a = Alphabet::from_generators({{"g", 2, Symmetry::None, 0}});
  std::mt19937_64 rng(17);
  auto twos = enumerate(a, 2);
  auto threes = enumerate(a, 3);
  for (int trial = 0; trial < 2000; ++trial) {
    // x o_B (y o_C z) == (x o_B' y) o_C' z for nested blocks
    const Monomial& x = threes[rng() % threes.size()];
    const Monomial& y = twos[rng() % twos.size()];
    const Monomial& z = twos[rng() % twos.size()];
    // y o z in arity 3 at a random block, then into x in arity 5
    auto inner_blocks = subsets(3, 2);
    const auto& cb = inner_blocks[rng() % inner_blocks.size()];
    Monomial yz = partial_compose(y, z, cb);
    auto outer_blocks = subsets(5, 3);
    const auto& ob = outer_blocks[rng() % outer_blocks.size()];
    Monomial left = partial_compose(x, yz, ob);
    // the same tree in two steps: graft y first, then z inside y's block
    std::vector<int> yblock;
    std::vector<int> zlabels{ob[static_cast<std::size_t>(cb[0] - 1)], ob[static_cast<std::size_t>(cb[1] - 1)]};
    int rest = 0;
    for (int i = 1; i <= 3; ++i)
      if (i != cb[0] && i != cb[1]) rest = ob[static_cast<std::size_t>(i - 1)];
    int zmin = std::min(zlabels[0], zlabels[1]);
    yblock = {std::min(rest, zmin), std::max(rest, zmin)};
    // standardize labels of the intermediate arity-4 tree
    std::vector<int> keep;
    for (int i = 1; i <= 5; ++i)
      if (i != std::max(zlabels[0], zlabels[1])) keep.push_back(i);
    auto rank = [&](int l) { return static_cast<int>(std::find(keep.begin(), keep.end(), l) - keep.begin()) + 1; };
    Monomial xy = partial_compose(x, y, {rank(yblock[0]), rank(yblock[1])});
    std::vector<int> zblock{std::min(zlabels[0], zlabels[1]), std::max(zlabels[0], zlabels[1])};
    Monomial right = partial_compose(xy, z, zblock);
    CHECK(left == right);
  }
}
