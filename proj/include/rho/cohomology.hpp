#pragma once

#include <optional>
#include <vector>

#include "rho/fd_algebra.hpp"
#include "rho/gca.hpp"
#include "rho/linalg.hpp"

namespace rho {

enum class Purity {
  EvenSubalgebra,     // d(odd) lands in the subalgebra generated by even gens
  EvenGeneratorsOnly  // d(odd) is a linear combination of even generators
};

// Sullivan algebra: free graded-commutative algebra with a degree +1
// differential given on generators, d^2 = 0 validated at construction.
class DGA {
 public:
  // assignments[i] is d(gen i); nullopt means 0.
  static DGA make(GcaPtr algebra, std::vector<std::optional<Element>> assignments);

  const GcaPtr& algebra() const { return alg_; }
  const Element& d_gen(int i) const { return d_[i]; }

  // Leibniz extension: d(gh) = d(g)h + (-1)^{|g|} g d(h).
  Element d(const Element& x) const;

  bool is_pure(Purity reading = Purity::EvenSubalgebra) const;

  // Structural equality: same generator names/degrees and same differential.
  bool same_presentation(const DGA& o) const;

 private:
  DGA(GcaPtr alg, std::vector<Element> d) : alg_(std::move(alg)), d_(std::move(d)) {}
  GcaPtr alg_;
  std::vector<Element> d_;
};

struct ReduceResult {
  linalg::Vec coords;      // coordinates in the representatives of the degree
  Element exact_preimage;  // w with  z = sum coords_i rep_i + d(w)
};

// Degree-truncated cohomology with representatives and a reduction procedure.
class CohomologyResult {
 public:
  int max_degree() const { return int(degrees_.size()) - 1; }
  int betti(int n) const;
  const std::vector<Element>& representatives(int n) const;
  const std::vector<Monomial>& degree_basis(int n) const;
  const DGA& model() const { return model_; }

  // Expresses a cocycle of homogeneous degree n <= max_degree as a
  // combination of representatives plus an exact part. The one-argument form
  // infers the degree and rejects the zero element; the two-argument form
  // returns betti(n) zero coordinates for it.
  ReduceResult reduce(const Element& cocycle) const;
  ReduceResult reduce(const Element& cocycle, int n) const;

 private:
  friend CohomologyResult cohomology(const DGA&, int);
  struct Degree {
    std::vector<Monomial> basis;
    std::vector<Element> reps;
    linalg::Mat rep_rows;        // representative coordinate rows
    linalg::Mat boundary_cols;   // columns: d-images of the previous degree's basis
    std::vector<Monomial> prev_basis;
  };
  CohomologyResult(DGA m, std::vector<Degree> d) : model_(std::move(m)), degrees_(std::move(d)) {}
  DGA model_;
  std::vector<Degree> degrees_;
};

CohomologyResult cohomology(const DGA& M, int N);

// Exported cohomology ring: class i of the FD ring is represented by the
// cocycle reps[i]. Basis names are h{degree}_{index} (unit: h0_0).
struct RingExport {
  FDPtr ring;
  std::vector<Element> reps;
  int top = 0;
};

// Exports the ring on the representative classes up to degree `top`.
// Throws TruncationUnsound if a nonzero Betti number exists in
// (top, top + max generator degree].
RingExport cohomology_algebra(const DGA& M, const CohomologyResult& res, int top);

// Cartan model data of a biquotient G//H: H*(B_H) is polynomial on the
// bh generators (even), one odd generator q_i per q-degree with
// dbar(q_i) a polynomial in the bh generators.
class BiquotientData {
 public:
  // The combined algebra lists the bh generators first, then the q
  // generators; dbar has one entry per q generator.
  static BiquotientData make(GcaPtr combined, int bh_count, std::vector<Element> dbar);

  const GcaPtr& algebra() const { return alg_; }
  int bh_count() const { return bh_count_; }
  int q_count() const { return alg_->size() - bh_count_; }
  const std::vector<Element>& dbar() const { return dbar_; }

  // Formal dimension of G//H: sum |q_i| - sum (|bh_j| - 1).
  int formal_dimension() const;

 private:
  BiquotientData(GcaPtr a, int bh, std::vector<Element> d)
      : alg_(std::move(a)), bh_count_(bh), dbar_(std::move(d)) {}
  GcaPtr alg_;
  int bh_count_;
  std::vector<Element> dbar_;
};

DGA cartan_model(const BiquotientData& data);

// dims[n][k] = dim H^n_k where k is the wordlength in the q generators.
struct LowerGrading {
  std::vector<std::vector<int>> dims;
  int max_wordlength = 0;
};

LowerGrading lower_grading(const BiquotientData& data, const CohomologyResult& res);

// True iff phi . d = d . phi on every source generator.
bool check_dga_morphism(const DGA& source, const DGA& target, const AlgebraMorphism& phi);

}  // namespace rho
