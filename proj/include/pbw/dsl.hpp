#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "pbw/morphism.hpp"
#include "pbw/presentation.hpp"

namespace pbw {

// Text formats.
//
//   operad NAME {
//     generators: b(2) antisym @1, m(2) sym;
//     relations:
//       m(m(a1,a2),a3) - m(a1,m(a2,a3)) = 0;
//   }
//
//   morphism NAME { source: Lie; target: "ass.operad"; map: b -> m(a1,a2) - m(a2,a1); }
//
//   algebra NAME over Lie { basis: x@1, y@1, z@2; gamma(b; x, y) = z; }
//
// Terms are rational combinations of prefix applications over a1..an.
// `gbar(x,y)` stands for g(y,x) and `g_312(x,y,z)` for g(z,x,y) when g is
// declared without symmetry. `#` starts a comment. Errors are ParseError
// with line and column.

SymmetricPresentation parse_presentation(const std::string& text);

/// Resolves the `source:` / `target:` entry of a morphism: a zoo name or a
/// quoted file path.
using PresentationResolver = std::function<SymmetricPresentation(const std::string& ref, bool quoted)>;

/// Resolver that looks names up in the zoo and reads quoted paths relative
/// to `base_dir`.
PresentationResolver default_resolver(const std::string& base_dir);

SymmetricMorphism parse_morphism(const std::string& text, const PresentationResolver& resolve);

/// One `g -> TERM` map entry, as accepted on the command line. Returns the
/// source generator index and the image.
std::pair<int, Term> parse_map_entry(const std::string& text, const SymmetricPresentation& source,
                                     const SymmetricPresentation& target);

/// A term over the given generators, e.g. "m(a1,a2) - m(a2,a1)".
Term parse_term(const std::string& text, const SymmetricPresentation& p);

struct AlgebraProduct {
  std::string generator;
  std::vector<std::string> arguments;
  std::vector<std::pair<std::string, Rational>> value;
  int line = 0;
};

struct AlgebraSource {
  std::string name;
  std::string over;
  bool over_quoted = false;
  std::vector<std::pair<std::string, int>> basis;  // name, weight
  std::vector<AlgebraProduct> products;
};

AlgebraSource parse_algebra(const std::string& text);

std::string read_file(const std::string& path);

}  // namespace pbw
