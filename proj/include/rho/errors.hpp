#pragma once

#include <stdexcept>
#include <string>

namespace rho {

// Base class for all domain errors raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MixedAlgebras : Error {
  using Error::Error;
};

struct DegreeMismatch : Error {
  using Error::Error;
};

// d^2 != 0 on `generator`; `residue` is the printed value of d(d(generator)).
struct D2NotZero : Error {
  D2NotZero(std::string gen, std::string res)
      : Error("d^2 != 0 on generator " + gen + ": d(d(" + gen + ")) = " + res),
        generator(std::move(gen)),
        residue(std::move(res)) {}
  std::string generator;
  std::string residue;
};

struct NotConnected : Error {
  using Error::Error;
};

struct NotAssociative : Error {
  NotAssociative(int i_, int j_, int k_, const std::string& detail)
      : Error("associativity fails on basis triple (" + std::to_string(i_) + "," +
              std::to_string(j_) + "," + std::to_string(k_) + "): " + detail),
        i(i_), j(j_), k(k_) {}
  int i, j, k;
};

struct NotGradedCommutative : Error {
  NotGradedCommutative(int i_, int j_, const std::string& detail)
      : Error("graded commutativity fails on basis pair (" + std::to_string(i_) +
              "," + std::to_string(j_) + "): " + detail),
        i(i_), j(j_) {}
  int i, j;
};

// Exporting a cohomology ring at `top` found a nonzero Betti number above it.
struct TruncationUnsound : Error {
  TruncationUnsound(int deg, int betti)
      : Error("cannot truncate at formal dimension: betti_" + std::to_string(deg) +
              " = " + std::to_string(betti)),
        degree(deg) {}
  int degree;
};

struct NotDerivation : Error {
  using Error::Error;
};

struct NotChainDerivation : Error {
  using Error::Error;
};

struct NotCartanModel : Error {
  using Error::Error;
};

struct ModelMismatch : Error {
  using Error::Error;
};

struct NonMultiplicative : Error {
  using Error::Error;
};

struct NotNormalized : Error {
  using Error::Error;
};

struct UnknownCatalogEntry : Error {
  using Error::Error;
};

// Parser diagnostics carry a position and the expectation that failed.
struct SyntaxError : Error {
  SyntaxError(int line_, int col_, std::string expected_)
      : Error("syntax error at " + std::to_string(line_) + ":" +
              std::to_string(col_) + ": expected " + expected_),
        line(line_), col(col_), expected(std::move(expected_)) {}
  int line, col;
  std::string expected;
};

struct DuplicateGenerator : Error {
  DuplicateGenerator(int line_, int col_, const std::string& name_)
      : Error("duplicate generator '" + name_ + "' at " + std::to_string(line_) +
              ":" + std::to_string(col_)),
        line(line_), col(col_), name(name_) {}
  int line, col;
  std::string name;
};

struct UnknownSymbol : Error {
  UnknownSymbol(int line_, int col_, const std::string& name_)
      : Error("unknown symbol '" + name_ + "' at " + std::to_string(line_) + ":" +
              std::to_string(col_)),
        line(line_), col(col_), name(name_) {}
  int line, col;
  std::string name;
};

}  // namespace rho
