#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rho/errors.hpp"
#include "rho/rational.hpp"

namespace rho {

struct Generator {
  std::string name;
  int degree = 0;  // >= 1; parity decides exterior vs polynomial behaviour
};

class FreeGCA;
using GcaPtr = std::shared_ptr<const FreeGCA>;

// Monomial in a fixed free graded-commutative algebra: an exponent vector in
// generator order with the total degree cached. Monomials containing the
// square of an odd generator are not representable; they normalize to zero
// at construction (FreeGCA::monomial returns nullopt).
class Monomial {
 public:
  int degree() const { return degree_; }
  const std::vector<int>& exponents() const { return exps_; }
  int exponent(int i) const { return exps_[i]; }
  bool is_one() const;

  // Canonical order: by total degree, ties broken by word order (at the first
  // differing generator the larger exponent comes first). This matches
  // reading a monomial as the word of its factors.
  bool operator<(const Monomial& o) const;
  bool operator==(const Monomial& o) const { return exps_ == o.exps_; }

 private:
  friend class FreeGCA;
  Monomial(std::vector<int> exps, int degree) : exps_(std::move(exps)), degree_(degree) {}
  std::vector<int> exps_;
  int degree_;
};

// Free graded-commutative algebra over Q on an ordered list of generators.
// Immutable; identity (shared_ptr) decides which Elements may be combined.
class FreeGCA : public std::enable_shared_from_this<FreeGCA> {
 public:
  static GcaPtr make(std::vector<Generator> gens);

  int size() const { return int(gens_.size()); }
  const Generator& gen(int i) const { return gens_[i]; }
  const std::vector<Generator>& gens() const { return gens_; }
  int index_of(std::string_view name) const;  // -1 if absent
  bool is_odd(int i) const { return gens_[i].degree % 2 != 0; }

  std::optional<Monomial> monomial(std::vector<int> exps) const;
  Monomial one() const;

  // Koszul-signed product of canonical monomials; nullopt when an odd
  // generator squares to zero.
  std::optional<std::pair<int, Monomial>> mul(const Monomial& a, const Monomial& b) const;

  // All monomials of total degree n in canonical order.
  std::vector<Monomial> basis_in_degree(int n) const;

 private:
  explicit FreeGCA(std::vector<Generator> gens) : gens_(std::move(gens)) {}
  std::vector<Generator> gens_;
};

// Sparse rational combination of monomials; the universal value type.
class Element {
 public:
  explicit Element(GcaPtr alg) : alg_(std::move(alg)) {}
  static Element zero(GcaPtr alg) { return Element(std::move(alg)); }
  static Element one(GcaPtr alg);
  static Element gen(const GcaPtr& alg, int index);
  static Element term(GcaPtr alg, const Monomial& m, Rational c);

  const GcaPtr& algebra() const { return alg_; }
  const std::map<Monomial, Rational>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  // Degree when all terms agree; nullopt for zero (which is homogeneous of
  // every degree) and for inhomogeneous elements.
  std::optional<int> homogeneous_degree() const;
  bool is_homogeneous() const;
  bool is_homogeneous_of(int n) const;

  Element& add_term(const Monomial& m, const Rational& c);

  Element operator-() const;
  Element operator+(const Element& o) const;
  Element operator-(const Element& o) const;
  Element operator*(const Element& o) const;
  Element operator*(const Rational& c) const;
  friend Element operator*(const Rational& c, const Element& x) { return x * c; }
  bool operator==(const Element& o) const;
  bool operator!=(const Element& o) const { return !(*this == o); }

  Element pow(int n) const;

  Rational coefficient(const Monomial& m) const;

  std::string str() const;  // canonical text form, parseable by the DSL

 private:
  void check_same(const Element& o) const;
  GcaPtr alg_;
  std::map<Monomial, Rational> terms_;
};

std::string monomial_str(const FreeGCA& alg, const Monomial& m);

// Degree-preserving algebra morphism given on generators.
class AlgebraMorphism {
 public:
  // images[i] must be homogeneous of gen(i)'s degree in the target algebra.
  AlgebraMorphism(GcaPtr source, GcaPtr target, std::vector<Element> images);

  static AlgebraMorphism identity(const GcaPtr& alg);

  const GcaPtr& source() const { return source_; }
  const GcaPtr& target() const { return target_; }
  const Element& image(int i) const { return images_[i]; }

  Element apply(const Element& x) const;

 private:
  GcaPtr source_, target_;
  std::vector<Element> images_;
};

}  // namespace rho
