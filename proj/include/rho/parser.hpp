#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rho/cohomology.hpp"

namespace rho {

// One parsed and validated model description.
struct ModelFile {
  enum class Kind { Dga, Fd, Biquotient };
  std::string name;
  Kind kind = Kind::Dga;
  std::optional<int> top;

  std::optional<DGA> dga;
  std::optional<FDPtr> fd;
  std::optional<BiquotientData> biquotient;

  bool same_content(const ModelFile& o) const;
};

// Parses a single model/fd/biquotient block. Diagnostics: SyntaxError with
// line, column and the expected token; DuplicateGenerator; UnknownSymbol.
ModelFile parse_model(const std::string& text);

// Canonical source form; parse_model(print_model(m)) reproduces m.
std::string print_model(const ModelFile& m);

// Polynomial sub-grammar, reused by the CLI for morphism assignments and
// automorphism files: sum of `[RATIONAL] MONO` terms, MONO a '*'- or
// whitespace-joined product of IDENT['^'INT].
struct PolyTerm {
  Rational coeff;
  std::vector<std::pair<std::string, int>> factors;  // (ident, exponent)
  int line = 0, col = 0;
};
using PolyAst = std::vector<PolyTerm>;

PolyAst parse_poly(const std::string& text);

// Resolves the idents as generators of `alg`; throws UnknownSymbol.
Element resolve_poly(const PolyAst& poly, const GcaPtr& alg);

}  // namespace rho
