#pragma once

#include <map>
#include <optional>
#include <vector>

#include "rho/cohomology.hpp"
#include "rho/fd_algebra.hpp"

namespace rho {

// Degree-n Leibniz map of an FDAlgebra: D(ab) = D(a)b + (-1)^{n|a|} a D(b).
class Derivation {
 public:
  // matrix.at(q, p) = coefficient of b_q in D(b_p).
  static Derivation make(FDPtr ambient, int degree, linalg::Mat matrix, bool validate = true);
  static Derivation zero(FDPtr ambient, int degree);

  const FDPtr& ambient() const { return ambient_; }
  int degree() const { return degree_; }
  const linalg::Mat& matrix() const { return matrix_; }

  linalg::Vec apply(const linalg::Vec& v) const;
  linalg::Vec apply_basis(int p) const { return matrix_col(p); }
  bool is_zero() const;

  Derivation operator+(const Derivation& o) const;
  Derivation operator*(const Rational& c) const;

 private:
  Derivation(FDPtr a, int n, linalg::Mat m)
      : ambient_(std::move(a)), degree_(n), matrix_(std::move(m)) {}
  linalg::Vec matrix_col(int p) const;
  FDPtr ambient_;
  int degree_;
  linalg::Mat matrix_;
};

// Canonical unknown slots for degree-n derivations: pairs (p, q) with
// deg(q) = deg(p) + n, ordered by p then q. Used to flatten derivations for
// span comparisons.
std::vector<std::pair<int, int>> derivation_slots(const FDAlgebra& H, int n);
linalg::Vec flatten_derivation(const Derivation& D, const std::vector<std::pair<int, int>>& slots);
Derivation unflatten_derivation(FDPtr H, int n, const std::vector<std::pair<int, int>>& slots,
                                const linalg::Vec& v, bool validate = true);

// Echelonized basis of Der_n(H).
std::vector<Derivation> derivation_space(const FDPtr& H, int n);

// Degree-n derivation of a DGA's underlying free algebra, given on
// generators and extended by Leibniz. When `chain` is requested the graded
// commutator with d must vanish: D.d = (-1)^n d.D.
class ChainDerivation {
 public:
  static ChainDerivation make(const DGA& model, int degree, std::vector<Element> assignments,
                              bool require_chain = true);

  const DGA& model() const { return model_; }
  int degree() const { return degree_; }
  const Element& assignment(int i) const { return assign_[i]; }

  Element apply(const Element& x) const;
  // d.D - (-1)^n D.d ... stored as the defect D(d(g)) - (-1)^n d(D(g)).
  Element chain_defect(int gen_index) const;
  bool is_chain() const;

 private:
  ChainDerivation(DGA m, int n, std::vector<Element> a)
      : model_(std::move(m)), degree_(n), assign_(std::move(a)) {}
  DGA model_;
  int degree_;
  std::vector<Element> assign_;
};

// Graded commutator [d, sigma] = d.sigma - (-1)^{|sigma|} sigma.d, always a
// chain derivation of degree |sigma| + 1.
ChainDerivation commutator_with_d(const ChainDerivation& sigma);

// Echelonized basis of the degree-n chain derivations.
std::vector<ChainDerivation> chain_derivation_space(const DGA& M, int n);

// The induced derivation [z] -> [D(z)] on the exported cohomology ring.
Derivation induced_on_cohomology(const ChainDerivation& D, const CohomologyResult& res,
                                 const RingExport& ring);

// Span of the induced derivations over a chain-derivation basis, one
// echelonized basis per degree of `degrees`.
std::map<int, std::vector<Derivation>> induced_image(const DGA& M, const CohomologyResult& res,
                                                     const RingExport& ring,
                                                     const std::vector<int>& degrees);

// Coefficient maps of D restricted to 1 (x) B against the A-basis:
// D(1 (x) b) = sum_i a_i (x) maps[i](b).
struct RestrictionComponent {
  int a_index = 0;
  int degree = 0;  // |D| - |a_i|
  linalg::Mat map_on_B;
  bool is_derivation = false;
};
std::vector<RestrictionComponent> decompose_restriction(const TensorAlgebra& T,
                                                        const Derivation& D);

enum class RigidityMode { Cohomology, Model };
enum class Verdict { Rigid, NotRigid, Indeterminate };

struct RigidityWitness {
  Derivation derivation;
  int derivation_degree;
  linalg::Vec char_element;  // b in Char(H,k)
  linalg::Vec image;         // D(b) != 0
};

struct RigidityReport {
  Verdict verdict = Verdict::Indeterminate;
  RigidityMode mode = RigidityMode::Cohomology;
  int dim_torus = 0;
  int k = 0;
  bool class_h_variant = false;
  std::vector<std::pair<int, int>> space_dims;  // (degree, dim of checked space)
  std::vector<RigidityWitness> witnesses;
};

// Splitting-rigidity verdict engine. Caches per-degree solves so that
// sweeping over (dimT, k) stays cheap.
class RigidityEngine {
 public:
  explicit RigidityEngine(FDPtr H);
  RigidityEngine(FDPtr H, DGA model);  // enables Model mode; throws ModelMismatch

  const FDPtr& ring() const { return H_; }

  RigidityReport report(int dimT, int k, RigidityMode mode) const;
  // The class-H variant: all negative degrees checked against all of H^even.
  RigidityReport class_h_report(RigidityMode mode) const;

 private:
  const std::vector<Derivation>& checked_space(int n, RigidityMode mode) const;
  RigidityReport run(int dimT, int k, RigidityMode mode, const Subspace& target,
                     bool class_h) const;
  FDPtr H_;
  std::optional<DGA> model_;
  std::optional<CohomologyResult> res_;
  std::optional<RingExport> export_;
  mutable std::map<int, std::vector<Derivation>> der_cache_;
  mutable std::map<int, std::vector<Derivation>> induced_cache_;
};

RigidityReport rigidity_report(const FDPtr& H, int dimT, int k, RigidityMode mode,
                               const DGA* model = nullptr);

}  // namespace rho
