#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "pbw/alphabet.hpp"
#include "pbw/monomial.hpp"

namespace pbw {

inline constexpr int kDefaultArityCap = 8;

/// True when every internal vertex has children whose minimal leaf labels
/// strictly increase left to right and the labels are a permutation of 1..n.
bool is_shuffle_monomial(const Monomial& m);

/// Builds a monomial from a shape whose leaf slots are 0, filling slots in
/// planar order with `labels`. Throws InvalidInput when the labels are not a
/// permutation of 1..n or violate the local minima condition.
Monomial make_monomial(const Monomial& shape, std::span<const int> labels);

/// Blocks of a shuffle composition. Block j receives the leaves of the inner
/// monomial grafted at outer leaf label j+1; minima must strictly increase.
using Blocks = std::vector<std::vector<int>>;

struct ShuffleComposition {
  Monomial outer;
  std::vector<Monomial> inner;
  Blocks blocks;
};

/// Grafts inner[j] at the outer leaf labelled j+1, sending inner label i to
/// the i-th smallest element of blocks[j].
Monomial compose(const ShuffleComposition& c);
Monomial compose(const Monomial& outer, std::span<const Monomial> inner, const Blocks& blocks);
/// Bilinear extension.
Term compose(const Term& outer, std::span<const Term> inner, const Blocks& blocks);

/// Blocks of the partial composition of an arity-p outer with an inner of
/// arity |block| inside arity n = p + |block| - 1: `block` goes to the slot
/// whose rank among all block minima is that of min(block).
Blocks partial_blocks(int n, const std::vector<int>& block);

/// The arity-n partial composition outer o_block inner.
Monomial partial_compose(const Monomial& outer, const Monomial& inner, const std::vector<int>& block);
Term partial_compose(const Term& outer, const Term& inner, const std::vector<int>& block);

/// An occurrence of a divisor d inside m: the vertex of m matched with d's
/// root, and for each leaf label l of d the position in m of the subtree
/// hanging at that leaf.
struct Embedding {
  int root = 0;
  std::vector<int> hanging;

  bool operator==(const Embedding&) const = default;
};

std::vector<Embedding> divides(const Monomial& d, const Monomial& m);
/// Occurrence of d rooted at position `pos` of m, if any.
bool embedding_at(const Monomial& d, const TreeView& dv, const TreeView& mv, int pos, Embedding& out);

/// m with the occurrence `e` of some divisor replaced by `replacement`, a
/// monomial of the divisor's arity.
Monomial rewrite(const Monomial& m, const TreeView& mv, const Embedding& e, const Monomial& replacement);
Term rewrite(const Monomial& m, const Embedding& e, const Term& replacement);

/// All shuffle monomials of arity n over the alphabet, ordered by shape
/// (preorder generator word, then shape code) and then label word. Throws
/// ResourceError for n above `cap`.
std::vector<Monomial> enumerate(const Alphabet& alphabet, int n, int cap = kDefaultArityCap);

/// Shapes (leaf slots 0) with exactly n leaves.
std::vector<Monomial> enumerate_shapes(std::span<const int> arities, int n);

/// Every labelling of a shape satisfying the local minima condition.
std::vector<Monomial> shuffle_labelings(const Monomial& shape);

/// The shape of a monomial (labels replaced by 0).
Monomial shape_of(const Monomial& m);

/// Applies the relabeling l -> perm[l-1] to the leaves and restores the local
/// minima condition by reordering children, which changes vertex labels
/// through the alphabet. Returns the shuffle monomial and a sign.
std::pair<Monomial, int> relabel(const Monomial& m, std::span<const int> perm, const Alphabet& alphabet);
Term relabel(const Term& t, std::span<const int> perm, const Alphabet& alphabet);

/// Converts a tree expression whose vertices are *symmetric* generators
/// (indices into alphabet.origins()) and whose leaves are distinct variables
/// into a signed shuffle monomial.
std::pair<Monomial, int> to_shuffle(const Monomial& symmetric_tree, const Alphabet& alphabet);

/// Inverse direction: the symmetric tree expression (origin generators, with
/// arguments ordered as the shuffle generator prescribes).
Monomial to_symmetric(const Monomial& m, const Alphabet& alphabet);

/// Ordered partitions of `labels` (sorted ascending) into blocks of the given
/// sizes whose minima increase.
std::vector<Blocks> ordered_blocks(const std::vector<int>& labels, const std::vector<int>& sizes);

/// The deterministic basis order used by enumerate: preorder generator word,
/// then shape code, then label word.
bool canonical_less(const Monomial& a, const Monomial& b);

/// Set partitions of {1..n} into exactly k blocks, blocks ordered by minima.
std::vector<Blocks> set_partitions(int n, int k);

/// k-subsets of {1..n} in lexicographic order.
std::vector<std::vector<int>> subsets(int n, int k);

}  // namespace pbw
