#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "rho/errors.hpp"
#include "rho/linalg.hpp"

namespace rho {

struct FDBasisElem {
  std::string name;
  int degree = 0;
};

class FDAlgebra;
using FDPtr = std::shared_ptr<const FDAlgebra>;

// Finite-dimensional connected graded-commutative algebra given by a graded
// basis and structure constants. Validated eagerly at construction: the full
// associativity triple loop is cheap at these dimensions.
class FDAlgebra : public std::enable_shared_from_this<FDAlgebra> {
 public:
  using SparseVec = std::vector<std::pair<int, Rational>>;  // (basis index, coeff)

  // basis must be sorted by degree with the single degree-0 element (the
  // unit) first. mul[i][j] lists the nonzero structure constants of b_i b_j;
  // missing unit rows are filled in automatically.
  static FDPtr make(std::vector<FDBasisElem> basis, std::vector<std::vector<SparseVec>> mul);

  int dim() const { return int(basis_.size()); }
  const FDBasisElem& elem(int i) const { return basis_[i]; }
  int degree_of(int i) const { return basis_[i].degree; }
  int unit() const { return 0; }
  int top_degree() const { return basis_.empty() ? 0 : basis_.back().degree; }
  int index_of(const std::string& name) const;  // -1 if absent

  const std::vector<int>& indices_in_degree(int n) const;
  int dim_in_degree(int n) const { return int(indices_in_degree(n).size()); }

  const SparseVec& mul_basis(int i, int j) const { return mul_[size_t(i) * dim() + j]; }
  linalg::Vec mul(const linalg::Vec& x, const linalg::Vec& y) const;
  linalg::Vec basis_vec(int i) const;

  bool is_homogeneous(const linalg::Vec& v, int* degree_out = nullptr) const;

  std::string vec_str(const linalg::Vec& v) const;

  // Structural equality of presentations (names ignored): same degrees and
  // same structure constants.
  bool same_table(const FDAlgebra& o) const;

 private:
  FDAlgebra() = default;
  void validate() const;
  std::vector<FDBasisElem> basis_;
  std::vector<SparseVec> mul_;  // dim*dim, row-major
  std::map<int, std::vector<int>> by_degree_;
};

// Graded subspace of an FDAlgebra, kept in reduced echelon form for
// canonical equality testing.
class Subspace {
 public:
  static Subspace span(FDPtr ambient, const std::vector<linalg::Vec>& vectors);
  static Subspace of_degrees(FDPtr ambient, const std::vector<int>& degrees);
  static Subspace zero(FDPtr ambient);

  const FDPtr& ambient() const { return ambient_; }
  int dim() const { return rows_.rows(); }
  const linalg::Mat& rows() const { return rows_; }
  linalg::Vec basis_vector(int i) const { return rows_.row(i); }

  bool contains(const linalg::Vec& v) const;
  bool contains(const Subspace& other) const;
  bool operator==(const Subspace& o) const;

 private:
  Subspace(FDPtr a, linalg::Mat rows) : ambient_(std::move(a)), rows_(std::move(rows)) {}
  FDPtr ambient_;
  linalg::Mat rows_;  // RREF rows, each homogeneous
};

// Char(X,k): the graded home of the Pontrjagin and Euler classes of rank-k
// bundles. For k=2m+1 this is H^4 + H^8 + ... + H^{4m}; for k=2m it is
// H^4 + ... + H^{4(m-1)} + H^{2m}.
Subspace char_subspace(const FDPtr& H, int k);

// Smallest unital subalgebra containing S, as a graded subspace.
Subspace subalgebra_generated(const FDPtr& H, const Subspace& S);

// Tensor product with Koszul signs, together with the pair bookkeeping the
// Taylor machinery needs.
struct TensorAlgebra {
  FDPtr ring;
  FDPtr left, right;
  std::vector<std::pair<int, int>> pairs;  // ring index -> (left, right)
  std::vector<std::vector<int>> index;     // [left][right] -> ring index

  linalg::Vec embed_left(const linalg::Vec& a) const;   // a ⊗ 1
  linalg::Vec pure(int left_index, int right_index, const Rational& c = 1) const;
};

TensorAlgebra tensor(const FDPtr& A, const FDPtr& B);

bool poincare_check(const FDPtr& H, int m);
bool is_generated_in_degree(const FDPtr& H, int n);

}  // namespace rho
