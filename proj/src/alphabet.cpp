#include "pbw/alphabet.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "pbw/errors.hpp"
#include "pbw/monomial.hpp"

namespace pbw {

const char* to_string(Symmetry s) {
  switch (s) {
    case Symmetry::None: return "none";
    case Symmetry::Symmetric: return "sym";
    case Symmetry::Antisymmetric: return "antisym";
  }
  return "none";
}

void validate_generators(std::span<const GeneratorSpec> gens) {
  std::set<std::string> seen;
  for (const auto& g : gens) {
    if (g.name.empty()) throw InvalidInput("generator with empty name");
    if (g.arity < 2) throw InvalidInput("generator '" + g.name + "': unary and nullary generators are not supported");
    if (g.arity > kMaxGeneratorArity)
      throw InvalidInput("generator '" + g.name + "': arity above " + std::to_string(kMaxGeneratorArity));
    if (g.symmetry != Symmetry::None && g.arity != 2)
      throw InvalidInput("generator '" + g.name + "': symmetry declarations require arity 2");
    if (g.weight < 0) throw InvalidInput("generator '" + g.name + "': negative weight");
    if (!seen.insert(g.name).second) throw InvalidInput("duplicate generator '" + g.name + "'");
  }
}

namespace {

std::string permuted_name(const std::string& base, const std::vector<int>& perm) {
  bool id = true;
  for (std::size_t i = 0; i < perm.size(); ++i) id = id && perm[i] == static_cast<int>(i) + 1;
  if (id) return base;
  if (perm.size() == 2) return base + "bar";
  std::string s = base + "_";
  for (int p : perm) s += std::to_string(p);
  return s;
}

}  // namespace

Alphabet Alphabet::from_generators(std::vector<GeneratorSpec> gens) {
  validate_generators(gens);
  Alphabet a;
  a.origins_ = std::move(gens);
  for (int o = 0; o < static_cast<int>(a.origins_.size()); ++o) {
    const auto& g = a.origins_[static_cast<std::size_t>(o)];
    std::vector<int> perm(static_cast<std::size_t>(g.arity));
    std::iota(perm.begin(), perm.end(), 1);
    do {
      a.index_[{o, perm}] = a.size();
      a.gens_.push_back({permuted_name(g.name, perm), g.arity, o, perm, g.weight});
      if (g.symmetry != Symmetry::None) break;
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  std::set<std::string> names;
  for (const auto& s : a.gens_)
    if (!names.insert(s.name).second) throw InvalidInput("shuffle generator name clash: '" + s.name + "'");
  return a;
}

Alphabet Alphabet::plain(std::vector<GeneratorSpec> gens) {
  validate_generators(gens);
  Alphabet a;
  a.plain_ = true;
  a.origins_ = std::move(gens);
  for (int o = 0; o < static_cast<int>(a.origins_.size()); ++o) {
    const auto& g = a.origins_[static_cast<std::size_t>(o)];
    std::vector<int> perm(static_cast<std::size_t>(g.arity));
    std::iota(perm.begin(), perm.end(), 1);
    a.index_[{o, perm}] = a.size();
    a.gens_.push_back({g.name, g.arity, o, perm, g.weight});
  }
  return a;
}

std::optional<int> Alphabet::find(const std::string& name) const {
  for (int i = 0; i < size(); ++i)
    if (gens_[static_cast<std::size_t>(i)].name == name) return i;
  return std::nullopt;
}

std::optional<int> Alphabet::find_origin(const std::string& name) const {
  for (int i = 0; i < static_cast<int>(origins_.size()); ++i)
    if (origins_[static_cast<std::size_t>(i)].name == name) return i;
  return std::nullopt;
}

std::pair<int, int> Alphabet::resolve(int origin, const std::vector<int>& perm) const {
  const auto& g = origins_.at(static_cast<std::size_t>(origin));
  if (g.symmetry != Symmetry::None) {
    std::vector<int> id{1, 2};
    int gen = index_.at({origin, id});
    if (perm == id) return {gen, 1};
    return {gen, g.symmetry == Symmetry::Symmetric ? 1 : -1};
  }
  auto it = index_.find({origin, perm});
  if (it == index_.end()) throw InvalidInput("generator '" + g.name + "' has no shuffle form for this argument order");
  return {it->second, 1};
}

std::pair<int, int> Alphabet::reorder(int gen, const std::vector<int>& tau) const {
  const auto& s = gens_.at(static_cast<std::size_t>(gen));
  const std::size_t k = tau.size();
  std::vector<int> inv(k + 1);
  for (std::size_t j = 0; j < k; ++j) inv[static_cast<std::size_t>(tau[j])] = static_cast<int>(j) + 1;
  std::vector<int> perm(k);
  for (std::size_t i = 0; i < k; ++i) perm[i] = inv[static_cast<std::size_t>(s.perm[i])];
  if (plain_ && origins_[static_cast<std::size_t>(s.origin)].symmetry == Symmetry::None) {
    for (std::size_t i = 0; i < k; ++i)
      if (perm[i] != static_cast<int>(i) + 1)
        throw InvalidInput("cannot permute the arguments of plain generator '" + s.name + "'");
  }
  return resolve(s.origin, perm);
}

std::vector<int> Alphabet::arities() const {
  std::vector<int> out;
  for (const auto& g : gens_) out.push_back(g.arity);
  return out;
}

std::vector<std::string> Alphabet::names() const {
  std::vector<std::string> out;
  for (const auto& g : gens_) out.push_back(g.name);
  return out;
}

}  // namespace pbw
