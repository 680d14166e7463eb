#include "rho/fd_algebra.hpp"

#include <algorithm>
#include <sstream>

namespace rho {

using linalg::Mat;
using linalg::Vec;

FDPtr FDAlgebra::make(std::vector<FDBasisElem> basis, std::vector<std::vector<SparseVec>> mul) {
  auto alg = std::shared_ptr<FDAlgebra>(new FDAlgebra());
  alg->basis_ = std::move(basis);
  const int n = alg->dim();
  if (n == 0) throw NotConnected("empty basis");
  if (int(mul.size()) != n) throw Error("mul table must have dim rows");
  for (int i = 1; i < n; ++i) {
    if (alg->basis_[i].degree < alg->basis_[i - 1].degree)
      throw Error("basis must be sorted by degree");
  }
  for (int i = 0; i < n; ++i)
    if (alg->basis_[i].degree < 0) throw Error("negative basis degree");
  int zeros = 0;
  for (int i = 0; i < n; ++i)
    if (alg->basis_[i].degree == 0) ++zeros;
  if (zeros != 1 || alg->basis_[0].degree != 0)
    throw NotConnected("degree-0 component must be one-dimensional");

  alg->mul_.assign(size_t(n) * n, {});
  for (int i = 0; i < n; ++i) {
    if (int(mul[i].size()) != n) throw Error("mul table must be dim x dim");
    for (int j = 0; j < n; ++j) {
      SparseVec v = mul[i][j];
      std::sort(v.begin(), v.end());
      alg->mul_[size_t(i) * n + j] = std::move(v);
    }
  }
  // Unit rows may be left empty in the input.
  for (int j = 0; j < n; ++j) {
    auto& r = alg->mul_[j];       // 1 * b_j
    auto& c = alg->mul_[size_t(j) * n];  // b_j * 1
    if (r.empty()) r = {{j, Rational(1)}};
    if (c.empty()) c = {{j, Rational(1)}};
  }
  for (int i = 0; i < n; ++i) alg->by_degree_[alg->basis_[i].degree].push_back(i);
  alg->validate();
  return alg;
}

int FDAlgebra::index_of(const std::string& name) const {
  for (int i = 0; i < dim(); ++i)
    if (basis_[i].name == name) return i;
  return -1;
}

const std::vector<int>& FDAlgebra::indices_in_degree(int n) const {
  static const std::vector<int> kEmpty;
  auto it = by_degree_.find(n);
  return it == by_degree_.end() ? kEmpty : it->second;
}

Vec FDAlgebra::basis_vec(int i) const {
  Vec v(dim());
  v[i] = 1;
  return v;
}

Vec FDAlgebra::mul(const Vec& x, const Vec& y) const {
  Vec out(dim());
  for (int i = 0; i < dim(); ++i) {
    if (x[i] == 0) continue;
    for (int j = 0; j < dim(); ++j) {
      if (y[j] == 0) continue;
      Rational c = x[i] * y[j];
      for (const auto& [k, s] : mul_basis(i, j)) out[k] += c * s;
    }
  }
  return out;
}

bool FDAlgebra::is_homogeneous(const Vec& v, int* degree_out) const {
  int deg = -1;
  for (int i = 0; i < dim(); ++i) {
    if (v[i] == 0) continue;
    if (deg < 0) deg = degree_of(i);
    else if (deg != degree_of(i)) return false;
  }
  if (degree_out) *degree_out = deg;  // -1 for the zero vector
  return true;
}

std::string FDAlgebra::vec_str(const Vec& v) const {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < dim(); ++i) {
    if (v[i] == 0) continue;
    Rational a = v[i];
    if (first) {
      if (a < 0) { os << "-"; a = -a; }
    } else {
      os << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    }
    if (a != 1) os << rat_str(a) << " ";
    os << basis_[i].name;
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

bool FDAlgebra::same_table(const FDAlgebra& o) const {
  if (dim() != o.dim()) return false;
  for (int i = 0; i < dim(); ++i)
    if (degree_of(i) != o.degree_of(i)) return false;
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j)
      if (mul_basis(i, j) != o.mul_basis(i, j)) return false;
  return true;
}

void FDAlgebra::validate() const {
  const int n = dim();
  // Grading and unit laws.
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (const auto& [k, c] : mul_basis(i, j)) {
        if (c == 0) throw Error("stored zero structure constant");
        if (degree_of(k) != degree_of(i) + degree_of(j))
          throw Error("structure constant violates grading at (" + std::to_string(i) +
                      "," + std::to_string(j) + ")");
      }
    }
    if (mul_basis(0, i) != SparseVec{{i, Rational(1)}} ||
        mul_basis(i, 0) != SparseVec{{i, Rational(1)}})
      throw Error("unit law fails on basis element " + std::to_string(i));
  }
  // Graded commutativity.
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      int sign = (degree_of(i) % 2 && degree_of(j) % 2) ? -1 : 1;
      Vec lhs(n), rhs(n);
      for (const auto& [k, c] : mul_basis(i, j)) lhs[k] = c;
      for (const auto& [k, c] : mul_basis(j, i)) rhs[k] = c * sign;
      if (lhs != rhs)
        throw NotGradedCommutative(i, j, vec_str(lhs) + " vs signed " + vec_str(rhs));
    }
  }
  // Associativity on all triples.
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const auto& ij = mul_basis(i, j);
      for (int k = 0; k < n; ++k) {
        if (degree_of(i) + degree_of(j) + degree_of(k) > top_degree()) continue;
        Vec lhs(n), rhs(n);
        for (const auto& [p, c] : ij)
          for (const auto& [q, s] : mul_basis(p, k)) lhs[q] += c * s;
        for (const auto& [p, c] : mul_basis(j, k))
          for (const auto& [q, s] : mul_basis(i, p)) rhs[q] += c * s;
        if (lhs != rhs) throw NotAssociative(i, j, k, vec_str(lhs) + " vs " + vec_str(rhs));
      }
    }
  }
}

Subspace Subspace::span(FDPtr ambient, const std::vector<Vec>& vectors) {
  for (const auto& v : vectors) {
    if (int(v.size()) != ambient->dim()) throw Error("subspace vector has wrong dimension");
    if (!ambient->is_homogeneous(v))
      throw Error("subspace spanning vectors must be homogeneous");
  }
  Mat m = Mat::from_rows(vectors, ambient->dim());
  return Subspace(std::move(ambient), linalg::row_space(std::move(m)));
}

Subspace Subspace::of_degrees(FDPtr ambient, const std::vector<int>& degrees) {
  std::vector<Vec> rows;
  for (int d : degrees)
    for (int i : ambient->indices_in_degree(d)) rows.push_back(ambient->basis_vec(i));
  return span(std::move(ambient), rows);
}

Subspace Subspace::zero(FDPtr ambient) { return span(std::move(ambient), {}); }

bool Subspace::contains(const Vec& v) const { return linalg::in_span(rows_, v); }

bool Subspace::contains(const Subspace& other) const {
  if (ambient_ != other.ambient_) throw MixedAlgebras("subspaces of different algebras");
  for (int i = 0; i < other.rows_.rows(); ++i)
    if (!contains(other.rows_.row(i))) return false;
  return true;
}

bool Subspace::operator==(const Subspace& o) const {
  return ambient_ == o.ambient_ && rows_ == o.rows_;
}

Subspace char_subspace(const FDPtr& H, int k) {
  if (k < 2) throw Error("char_subspace requires k >= 2");
  std::vector<int> degrees;
  if (k % 2) {
    int m = (k - 1) / 2;
    for (int i = 1; i <= m; ++i) degrees.push_back(4 * i);
  } else {
    int m = k / 2;
    for (int i = 1; i <= m - 1; ++i) degrees.push_back(4 * i);
    degrees.push_back(2 * m);
  }
  return Subspace::of_degrees(H, degrees);
}

Subspace subalgebra_generated(const FDPtr& H, const Subspace& S) {
  if (S.ambient() != H) throw MixedAlgebras("subspace of a different algebra");
  std::vector<Vec> seed{H->basis_vec(H->unit())};
  for (int i = 0; i < S.dim(); ++i) seed.push_back(S.basis_vector(i));
  Mat cur = linalg::row_space(Mat::from_rows(seed, H->dim()));
  for (;;) {
    std::vector<Vec> products;
    for (int i = 0; i < cur.rows(); ++i)
      for (int j = i; j < cur.rows(); ++j)
        products.push_back(H->mul(cur.row(i), cur.row(j)));
    Mat next = linalg::span_union(cur, products);
    if (next.rows() == cur.rows()) break;
    cur = std::move(next);
  }
  std::vector<Vec> rows;
  for (int i = 0; i < cur.rows(); ++i) rows.push_back(cur.row(i));
  return Subspace::span(H, rows);
}

TensorAlgebra tensor(const FDPtr& A, const FDPtr& B) {
  TensorAlgebra t;
  t.left = A;
  t.right = B;
  t.index.assign(A->dim(), std::vector<int>(B->dim(), -1));
  // Basis: pairs sorted by total degree, then by factor indices.
  for (int i = 0; i < A->dim(); ++i)
    for (int j = 0; j < B->dim(); ++j) t.pairs.push_back({i, j});
  std::stable_sort(t.pairs.begin(), t.pairs.end(), [&](auto p, auto q) {
    int dp = A->degree_of(p.first) + B->degree_of(p.second);
    int dq = A->degree_of(q.first) + B->degree_of(q.second);
    if (dp != dq) return dp < dq;
    return p < q;
  });
  std::vector<FDBasisElem> basis;
  for (int r = 0; r < int(t.pairs.size()); ++r) {
    auto [i, j] = t.pairs[r];
    t.index[i][j] = r;
    std::string name;
    if (i == A->unit() && j == B->unit()) name = "1";
    else if (j == B->unit()) name = A->elem(i).name;
    else if (i == A->unit()) name = B->elem(j).name;
    else name = A->elem(i).name + "." + B->elem(j).name;
    basis.push_back({name, A->degree_of(i) + B->degree_of(j)});
  }
  const int n = int(t.pairs.size());
  std::vector<std::vector<FDAlgebra::SparseVec>> mul(n, std::vector<FDAlgebra::SparseVec>(n));
  for (int r = 0; r < n; ++r) {
    auto [i1, j1] = t.pairs[r];
    for (int s = 0; s < n; ++s) {
      auto [i2, j2] = t.pairs[s];
      // (a ⊗ t)(a' ⊗ t') = (-1)^{|t||a'|} (a a') ⊗ (t t')
      int sign = (B->degree_of(j1) % 2 && A->degree_of(i2) % 2) ? -1 : 1;
      std::map<int, Rational> acc;
      for (const auto& [ia, ca] : A->mul_basis(i1, i2))
        for (const auto& [jb, cb] : B->mul_basis(j1, j2))
          acc[t.index[ia][jb]] += ca * cb * sign;
      FDAlgebra::SparseVec out;
      for (const auto& [k, c] : acc)
        if (c != 0) out.push_back({k, c});
      mul[r][s] = std::move(out);
    }
  }
  t.ring = FDAlgebra::make(std::move(basis), std::move(mul));
  return t;
}

Vec TensorAlgebra::embed_left(const Vec& a) const {
  Vec v(ring->dim());
  for (int i = 0; i < left->dim(); ++i) v[index[i][right->unit()]] = a[i];
  return v;
}

Vec TensorAlgebra::pure(int left_index, int right_index, const Rational& c) const {
  Vec v(ring->dim());
  v[index[left_index][right_index]] = c;
  return v;
}

bool poincare_check(const FDPtr& H, int m) {
  if (H->top_degree() > m) return false;
  if (H->dim_in_degree(m) != 1) return false;
  int top = H->indices_in_degree(m)[0];
  for (int i = 0; i <= m / 2; ++i) {
    const auto& left = H->indices_in_degree(i);
    const auto& right = H->indices_in_degree(m - i);
    if (left.size() != right.size()) return false;
    Mat pairing(int(left.size()), int(right.size()));
    for (int u = 0; u < int(left.size()); ++u)
      for (int v = 0; v < int(right.size()); ++v)
        for (const auto& [k, c] : H->mul_basis(left[u], right[v]))
          if (k == top) pairing.at(u, v) = c;
    if (linalg::rank(pairing) != int(left.size())) return false;
  }
  return true;
}

bool is_generated_in_degree(const FDPtr& H, int n) {
  Subspace gen = subalgebra_generated(H, Subspace::of_degrees(H, {n}));
  return gen.dim() == H->dim();
}

}  // namespace rho
