#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rho/derivations.hpp"
#include "rho/fd_algebra.hpp"

namespace rho {

// Square-free monomial basis t_0 .. t_{2^d - 1} of H*(T^d), ordered
// degree-major and lexicographically within a degree, so t_0 = 1,
// t_j = x_j for 1 <= j <= d, and t_{d+1} is the first degree-2 monomial.
struct TorusBasis {
  int dim = 0;
  std::vector<std::vector<int>> monomials;  // sorted generator index lists (1-based)

  int count() const { return int(monomials.size()); }
  int degree(int i) const { return int(monomials[i].size()); }
  std::string name(int i) const;

  // Exterior product t_i t_j: sign and index, or nullopt when a generator
  // repeats.
  std::optional<std::pair<int, int>> mul(int i, int j) const;
};

TorusBasis torus_basis(int d);

// H*(T^d) as an FDAlgebra, basis aligned with the TorusBasis order.
FDPtr torus_ring(const TorusBasis& t);

// Automorphism of H (x) H*(T) fixing 1 (x) H*(T) pointwise, stored by its
// values on the base classes and extended multiplicatively.
class ProductAutomorphism {
 public:
  enum class Check { Full, Shape };

  // values column p holds the tensor coordinates of h(b_p (x) 1).
  // Check::Full validates multiplicativity (NonMultiplicative), degree
  // preservation and per-degree invertibility of the t_0 block.
  ProductAutomorphism(TensorAlgebra ring, TorusBasis torus, linalg::Mat values,
                      Check check = Check::Full);

  const TensorAlgebra& ring() const { return ring_; }
  const TorusBasis& torus() const { return torus_; }
  const FDPtr& base() const { return ring_.left; }

  linalg::Vec value(int p) const;                    // h(b_p (x) 1)
  linalg::Vec apply(const linalg::Vec& coords) const;  // multiplicative extension

  // The free-module coefficient maps: h(a (x) 1) = sum_i (1 (x) t_i)(dh/dt_i(a) (x) 1).
  linalg::Mat partial(int i) const;
  bool partial_t0_is_identity() const;

  bool is_multiplicative() const;
  void validate_multiplicative() const;  // throws NonMultiplicative

 private:
  TensorAlgebra ring_;
  TorusBasis torus_;
  linalg::Mat values_;  // ring.dim x base.dim
};

ProductAutomorphism identity_automorphism(const TensorAlgebra& ring, const TorusBasis& t);

// a (x) t -> a (x) t + (1 (x) t_i)(D(a) (x) t). Requires |D| = -|t_i|
// (DegreeMismatch) and D Leibniz (NotDerivation). Its inverse is the same
// formula with -D.
ProductAutomorphism derivation_automorphism(const TensorAlgebra& ring, const TorusBasis& t,
                                            const Derivation& D, int i);

ProductAutomorphism compose(const ProductAutomorphism& outer, const ProductAutomorphism& inner);

struct PeelStep {
  int torus_index = 0;
  Derivation coefficient;  // the extracted derivation at that index
};

struct PeelResult {
  std::vector<PeelStep> steps;
  bool residual_identity = false;
};

// The factorization from the derivation-vanishing argument: walk the torus
// indices in order, verify each extracted coefficient is a derivation of
// degree -|t_i| (NonMultiplicative otherwise), correct, and re-extract.
// Requires dh/dt_0 = id (NotNormalized) unless normalize_t0 is set, in which
// case h is pre-composed with (dh/dt_0)^{-1} (x) id first.
PeelResult peel(const ProductAutomorphism& h, bool normalize_t0 = false);

// Recompose h from its peel steps: (step_1)^{-1} . ... . (step_n)^{-1}.
ProductAutomorphism recompose(const TensorAlgebra& ring, const TorusBasis& t,
                              const std::vector<PeelStep>& steps);

// True iff h maps Char(H,k) (x) 1 into Char(H,k) (x) 1.
bool char_fixed(const ProductAutomorphism& h, int k);

}  // namespace rho
