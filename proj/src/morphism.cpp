#include "pbw/morphism.hpp"

#include <map>

#include "pbw/dsl.hpp"
#include "pbw/errors.hpp"
#include "pbw/shuffle.hpp"

namespace pbw {

void SymmetricMorphism::validate() const {
  source.validate();
  target.validate();
  if (images.size() != source.generators.size()) throw InvalidInput("morphism: one image per source generator required");
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (images[i].arity() != source.generators[i].arity)
      throw InvalidInput("morphism: image of '" + source.generators[i].name + "' has the wrong arity");
    SymmetricPresentation probe{target.name, target.generators, {images[i]}};
    if (!images[i].is_zero()) probe.validate();
  }
}

OperadMorphism shuffleize(const SymmetricMorphism& m) {
  m.validate();
  OperadMorphism out;
  out.name = m.name;
  out.source = shuffleize(m.source);
  out.target = shuffleize(m.target);
  const Alphabet& src = out.source.alphabet;
  for (const auto& g : src.generators()) {
    const Term& image = m.images[static_cast<std::size_t>(g.origin)];
    // g_perm(y) = g(y_perm): variable i of the image becomes y_perm[i].
    Term permuted(g.arity);
    for (const auto& [mono, c] : image) {
      Monomial r = mono;
      for (Token& x : r.code)
        if (!is_vertex(x)) x = static_cast<Token>(g.perm[static_cast<std::size_t>(x - 1)]);
      permuted.add(r, c);
    }
    out.images.push_back(to_shuffle(permuted, out.target.alphabet));
  }
  return out;
}

namespace {

struct ZooMap {
  const char* generator;
  const char* image;
};

const std::map<std::pair<std::string, std::string>, ZooMap>& zoo_maps() {
  static const std::map<std::pair<std::string, std::string>, ZooMap> maps = {
      {{"Lie", "Ass"}, {"b", "m(a1,a2) - m(a2,a1)"}},
      {{"Lie", "PreLie"}, {"b", "p(a1,a2) - p(a2,a1)"}},
      {{"Lie", "Poisson"}, {"b", "b(a1,a2)"}},
      {{"Leib", "Lie"}, {"b", "b(a1,a2)"}},
      {{"PreLie", "Dend"}, {"p", "prec(a1,a2) - succ(a2,a1)"}},
      {{"PreLie", "DendCircDot"}, {"p", "circ(a1,a2)"}},
      {{"PreLie", "PrePoisson"}, {"p", "circ(a1,a2)"}},
      {{"Leib", "Dias"}, {"b", "l(a1,a2) - r(a2,a1)"}},
      {{"Perm", "Com"}, {"m", "m(a1,a2)"}},
  };
  return maps;
}

}  // namespace

std::vector<std::pair<std::string, std::string>> zoo_morphism_names() {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [k, v] : zoo_maps()) out.push_back(k);
  return out;
}

SymmetricMorphism zoo_morphism(const std::string& source, const std::string& target) {
  SymmetricMorphism m;
  m.name = source + "_to_" + target;
  m.source = zoo(source);
  m.target = zoo(target);
  if (source == target) {
    for (std::size_t i = 0; i < m.source.generators.size(); ++i)
      m.images.push_back(Term(Monomial::corolla(static_cast<int>(i), m.source.generators[i].arity)));
    return m;
  }
  auto it = zoo_maps().find({source, target});
  if (it == zoo_maps().end()) throw InvalidInput("no built-in morphism " + source + " -> " + target + "; pass --map");
  m.images.resize(m.source.generators.size());
  auto [idx, image] = parse_map_entry(std::string(it->second.generator) + " -> " + it->second.image, m.source, m.target);
  m.images[static_cast<std::size_t>(idx)] = image;
  return m;
}

}  // namespace pbw
