#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace pbw {

enum class Symmetry { None, Symmetric, Antisymmetric };

const char* to_string(Symmetry s);

/// A generator of a symmetric operad presentation.
struct GeneratorSpec {
  std::string name;
  int arity = 2;
  Symmetry symmetry = Symmetry::None;
  int weight = 0;

  bool operator==(const GeneratorSpec&) const = default;
};

/// Checks the GeneratorSpec invariants for a whole generator list: arity in
/// [2, 15], symmetry only on binary generators, non-negative weights, unique
/// names. Throws InvalidInput.
void validate_generators(std::span<const GeneratorSpec> gens);

/// A generator of a free shuffle operad. For a symmetric generator g of arity
/// k without symmetry there are k! shuffle generators g_perm with
///   g_perm(y_1, ..., y_k) = g(y_perm[0], ..., y_perm[k-1]),
/// so the identity permutation is g itself and for k = 2 the swap is "gbar",
/// the opposite operation. A (anti)symmetric binary generator yields a single
/// shuffle generator.
struct ShuffleGenerator {
  std::string name;
  int arity = 2;
  int origin = 0;         // index into Alphabet::origins()
  std::vector<int> perm;  // 1-based
  int weight = 0;
};

/// The generating set of a free shuffle operad together with the symmetric
/// generators it was derived from.
class Alphabet {
 public:
  Alphabet() = default;

  /// Shuffle generators of the forgetful image of the free symmetric operad
  /// on `gens`.
  static Alphabet from_generators(std::vector<GeneratorSpec> gens);

  /// One shuffle generator per spec with no symmetric-group bookkeeping.
  /// Relabeling monomials over such an alphabet is only possible when every
  /// generator is declared symmetric or antisymmetric.
  static Alphabet plain(std::vector<GeneratorSpec> gens);

  int size() const { return static_cast<int>(gens_.size()); }
  const ShuffleGenerator& operator[](int i) const { return gens_[static_cast<std::size_t>(i)]; }
  std::span<const ShuffleGenerator> generators() const { return gens_; }
  std::span<const GeneratorSpec> origins() const { return origins_; }

  std::optional<int> find(const std::string& name) const;
  std::optional<int> find_origin(const std::string& name) const;

  /// The shuffle generator equal to origin generator `origin` applied with
  /// argument order `perm`, and the sign relating them:
  ///   g(y_perm[0], ..., y_perm[k-1]) = sign * s(y_1, ..., y_k).
  std::pair<int, int> resolve(int origin, const std::vector<int>& perm) const;

  /// Moving the children of a vertex labelled `gen` into the order
  /// new_child[j] = old_child[tau[j]] (1-based) changes its label to the
  /// returned generator, up to the returned sign.
  std::pair<int, int> reorder(int gen, const std::vector<int>& tau) const;

  std::vector<int> arities() const;
  std::vector<std::string> names() const;

 private:
  std::vector<GeneratorSpec> origins_;
  std::vector<ShuffleGenerator> gens_;
  std::map<std::pair<int, std::vector<int>>, int> index_;
  bool plain_ = false;
};

}  // namespace pbw
