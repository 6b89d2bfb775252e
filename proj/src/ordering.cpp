#include "pbw/ordering.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "pbw/errors.hpp"
#include "pbw/shuffle.hpp"

namespace pbw {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

int generator_index(const Alphabet& a, const std::string& name) {
  auto g = a.find(name);
  if (!g) throw InvalidInput("ordering: unknown generator '" + name + "'");
  return *g;
}

std::vector<int> weights_from_list(const std::string& list, const Alphabet& a) {
  std::vector<int> values(static_cast<std::size_t>(a.size()), 0);
  if (list == "auto") {
    for (int g = 0; g < a.size(); ++g) values[static_cast<std::size_t>(g)] = a[g].weight;
    return values;
  }
  for (const auto& item : split(list, ',')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) throw InvalidInput("ordering: weight entries look like name=weight");
    int g = generator_index(a, item.substr(0, eq));
    try {
      values[static_cast<std::size_t>(g)] = std::stoi(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw InvalidInput("ordering: bad weight in '" + item + "'");
    }
  }
  return values;
}

std::vector<int> ranks_from_list(const std::string& list, const Alphabet& a) {
  std::vector<int> rank(static_cast<std::size_t>(a.size()), -1);
  auto names = split(list, ',');
  int r = 0;
  for (const auto& n : names) {
    if (n.empty()) continue;
    int g = generator_index(a, n);
    if (rank[static_cast<std::size_t>(g)] >= 0) throw InvalidInput("ordering: generator '" + n + "' listed twice");
    rank[static_cast<std::size_t>(g)] = r++;
  }
  for (int g = 0; g < a.size(); ++g)
    if (rank[static_cast<std::size_t>(g)] < 0) throw InvalidInput("ordering: generator '" + a[g].name + "' not ranked");
  return rank;
}

void path_key(const TreeView& v, const OrderingLayer& layer, std::vector<int>& out) {
  const int n = v.leaf_count(0);
  const bool classed = !layer.classes.empty();
  int nclasses = 0;
  for (int c : layer.classes) nclasses = std::max(nclasses, c + 1);
  std::vector<int> word;
  for (int label = 1; label <= n; ++label) {
    word.clear();
    for (int p = v.parent(v.leaf_position(label)); p >= 0; p = v.parent(p)) word.push_back(token_gen(v.token(p)));
    std::reverse(word.begin(), word.end());
    if (classed) {
      std::vector<int> counts(static_cast<std::size_t>(nclasses), 0);
      int inversions = 0;
      for (std::size_t i = 0; i < word.size(); ++i) {
        const int ci = layer.classes[static_cast<std::size_t>(word[i])];
        ++counts[static_cast<std::size_t>(ci)];
        for (std::size_t j = i + 1; j < word.size(); ++j)
          if (ci > layer.classes[static_cast<std::size_t>(word[j])]) ++inversions;
      }
      for (int c = nclasses - 1; c >= 0; --c) out.push_back(counts[static_cast<std::size_t>(c)]);
      out.push_back(inversions);
    }
    if (!layer.leaf_weights.empty()) {
      int w = 0;
      for (int g : word) w += layer.leaf_weights[static_cast<std::size_t>(g)];
      out.push_back(w);
    }
    out.push_back(static_cast<int>(word.size()));
    for (int g : word) out.push_back(layer.values[static_cast<std::size_t>(g)]);
  }
  std::vector<int> perm;
  for (int i = 0; i < v.size(); ++i)
    if (!v.vertex(i)) perm.push_back(v.token(i));
  for (int l : perm) out.push_back(layer.reverse_permutation ? -l : l);
}

}  // namespace

Ordering Ordering::default_for(const Alphabet& alphabet) {
  std::string list;
  for (int g = 0; g < alphabet.size(); ++g) list += (g ? "," : "") + alphabet[g].name;
  return parse("pathlex:" + list, alphabet);
}

const std::vector<std::pair<std::string, std::string>>& Ordering::named_presets() {
  static const std::vector<std::pair<std::string, std::string>> presets = {
      {"prepoisson", "leafweight:dot=-1,dotbar=-2;perm:forward;pathlex:dot,dotbar,circbar,circ"},
      {"prepoisson-weight", "weightfirst:circ=1,circbar=1;pathlex:dot,dotbar,circbar,circ"},
      {"dend", "pathlex:prec,precbar,succ,succbar"},
  };
  return presets;
}

Ordering Ordering::parse(const std::string& preset, const Alphabet& alphabet) {
  if (!preset.empty() && preset[0] == '@') {
    for (const auto& [name, text] : named_presets())
      if (name == preset.substr(1)) return parse(text, alphabet);
    throw InvalidInput("ordering: unknown preset '" + preset + "'");
  }
  std::vector<OrderingLayer> layers;
  std::vector<int> classes;
  std::vector<int> leaf_weights;
  bool reverse = true;
  bool have_pathlex = false;
  for (const auto& part : split(preset, ';')) {
    if (part.empty()) continue;
    auto colon = part.find(':');
    std::string kind = colon == std::string::npos ? "pathlex" : part.substr(0, colon);
    std::string arg = colon == std::string::npos ? part : part.substr(colon + 1);
    if (have_pathlex) throw InvalidInput("ordering: pathlex must be the last layer");
    if (kind == "pathlex") {
      OrderingLayer l;
      l.kind = OrderingLayer::Kind::PathLex;
      l.values = ranks_from_list(arg, alphabet);
      l.classes = classes;
      l.leaf_weights = leaf_weights;
      l.reverse_permutation = reverse;
      layers.push_back(std::move(l));
      have_pathlex = true;
    } else if (kind == "weightfirst") {
      OrderingLayer l;
      l.kind = OrderingLayer::Kind::Weight;
      l.values = weights_from_list(arg, alphabet);
      layers.push_back(std::move(l));
    } else if (kind == "rootclass") {
      classes.assign(static_cast<std::size_t>(alphabet.size()), -1);
      int c = 0;
      for (const auto& cls : split(arg, '<')) {
        for (const auto& name : split(cls, ',')) {
          if (name.empty()) continue;
          int g = generator_index(alphabet, name);
          if (classes[static_cast<std::size_t>(g)] >= 0) throw InvalidInput("ordering: '" + name + "' in two classes");
          classes[static_cast<std::size_t>(g)] = c;
        }
        ++c;
      }
      for (int g = 0; g < alphabet.size(); ++g)
        if (classes[static_cast<std::size_t>(g)] < 0)
          throw InvalidInput("ordering: generator '" + alphabet[g].name + "' has no class");
    } else if (kind == "leafweight") {
      leaf_weights = weights_from_list(arg, alphabet);
    } else if (kind == "perm") {
      if (arg != "forward" && arg != "reverse") throw InvalidInput("ordering: perm is forward or reverse");
      reverse = arg == "reverse";
    } else {
      throw InvalidInput("ordering: unknown layer '" + kind + "'");
    }
  }
  if (!have_pathlex) throw InvalidInput("ordering: preset must end with a pathlex layer");
  return Ordering(std::move(layers), preset);
}

std::vector<int> Ordering::key(const Monomial& m) const {
  std::vector<int> out;
  TreeView v(m);
  for (const auto& layer : layers_) {
    switch (layer.kind) {
      case OrderingLayer::Kind::Weight: {
        int w = 0;
        for (Token t : m.code)
          if (is_vertex(t)) w += layer.values[static_cast<std::size_t>(token_gen(t))];
        out.push_back(w);
        break;
      }
      case OrderingLayer::Kind::PathLex:
        path_key(v, layer, out);
        break;
      case OrderingLayer::Kind::Custom: {
        auto k = layer.custom(m);
        out.insert(out.end(), k.begin(), k.end());
        break;
      }
    }
  }
  return out;
}

int Ordering::compare(const Monomial& a, const Monomial& b) const {
  if (a.arity() != b.arity()) throw InvalidInput("compare: arity mismatch");
  if (a == b) return 0;
  auto ka = key(a), kb = key(b);
  if (ka != kb) return ka < kb ? -1 : 1;
  return a < b ? -1 : 1;
}

const std::vector<int>& OrderingCache::key(const Monomial& m) {
  auto it = keys_.find(m);
  if (it != keys_.end()) return it->second;
  return keys_.emplace(m, order_->key(m)).first->second;
}

int OrderingCache::compare(const Monomial& a, const Monomial& b) {
  if (a == b) return 0;
  const auto& ka = key(a);
  const auto& kb = key(b);
  if (ka != kb) return ka < kb ? -1 : 1;
  return a < b ? -1 : 1;
}

namespace {

struct Context {
  Monomial other;
  std::vector<int> block;
  bool inner;  // m is inserted into `other` (true) or `other` into m
};

Monomial apply(const Monomial& m, const Context& c) {
  return c.inner ? partial_compose(c.other, m, c.block) : partial_compose(m, c.other, c.block);
}

void record(AdmissibilityReport& r, const Monomial& a, const Monomial& b, const Monomial& ca, const Monomial& cb,
            const Alphabet& alphabet) {
  ++r.violations;
  if (r.example.empty())
    r.example = format_monomial(a, alphabet) + " < " + format_monomial(b, alphabet) + " but " +
                format_monomial(ca, alphabet) + " >= " + format_monomial(cb, alphabet);
}

}  // namespace

AdmissibilityReport check_admissibility_exhaustive(const Ordering& o, const Alphabet& alphabet, int max_arity) {
  AdmissibilityReport report;
  std::vector<std::vector<Monomial>> basis(static_cast<std::size_t>(max_arity) + 1);
  for (int n = 1; n <= max_arity; ++n) basis[static_cast<std::size_t>(n)] = enumerate(alphabet, n, max_arity);
  for (int k = 2; k <= max_arity; ++k) {
    auto sorted = basis[static_cast<std::size_t>(k)];
    std::sort(sorted.begin(), sorted.end(), [&](const Monomial& a, const Monomial& b) { return o.less(a, b); });
    // Contexts: for each other arity j with k + j - 1 <= max_arity.
    std::vector<Context> contexts;
    for (int j = 2; k + j - 1 <= max_arity; ++j) {
      const int n = k + j - 1;
      for (const auto& other : basis[static_cast<std::size_t>(j)]) {
        for (const auto& b : subsets(n, k)) contexts.push_back({other, b, true});
        for (const auto& b : subsets(n, j)) contexts.push_back({other, b, false});
      }
    }
    // Adjacent pairs suffice: order preservation is transitive.
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
      const auto& a = sorted[i];
      const auto& b = sorted[i + 1];
      for (const auto& c : contexts) {
        ++report.checked;
        Monomial ca = apply(a, c), cb = apply(b, c);
        if (o.compare(ca, cb) >= 0) record(report, a, b, ca, cb, alphabet);
      }
    }
  }
  return report;
}

AdmissibilityReport check_admissibility_random(const Ordering& o, const Alphabet& alphabet, int trials,
                                               std::uint64_t seed, int max_arity) {
  AdmissibilityReport report;
  std::mt19937_64 rng(seed);
  std::vector<std::vector<Monomial>> basis(static_cast<std::size_t>(max_arity) + 1);
  for (int n = 1; n <= max_arity; ++n) basis[static_cast<std::size_t>(n)] = enumerate(alphabet, n, max_arity);
  auto pick = [&](int n) -> const Monomial& {
    const auto& b = basis[static_cast<std::size_t>(n)];
    return b[std::uniform_int_distribution<std::size_t>(0, b.size() - 1)(rng)];
  };
  auto random_block = [&](int n, int size) {
    std::vector<int> all(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = i + 1;
    std::shuffle(all.begin(), all.end(), rng);
    std::vector<int> b(all.begin(), all.begin() + size);
    std::sort(b.begin(), b.end());
    return b;
  };
  for (int t = 0; t < trials; ++t) {
    const int k = std::uniform_int_distribution<int>(2, max_arity - 1)(rng);
    Monomial a = pick(k), b = pick(k);
    if (a == b) continue;
    if (o.less(b, a)) std::swap(a, b);
    int n = k;
    const int steps = std::uniform_int_distribution<int>(1, 3)(rng);
    for (int s = 0; s < steps && n < max_arity; ++s) {
      const int j = std::uniform_int_distribution<int>(2, max_arity - n + 1)(rng);
      const int total = n + j - 1;
      Context c{pick(j), {}, std::uniform_int_distribution<int>(0, 1)(rng) == 1};
      c.block = random_block(total, c.inner ? n : j);
      Monomial ca = apply(a, c), cb = apply(b, c);
      ++report.checked;
      if (o.compare(ca, cb) >= 0) {
        record(report, a, b, ca, cb, alphabet);
        break;
      }
      a = std::move(ca);
      b = std::move(cb);
      n = total;
    }
  }
  return report;
}

}  // namespace pbw
