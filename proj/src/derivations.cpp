#include "rho/derivations.hpp"

#include <algorithm>

namespace rho {

using linalg::Mat;
using linalg::Vec;

Derivation Derivation::make(FDPtr ambient, int degree, Mat matrix, bool validate) {
  const int n = ambient->dim();
  if (matrix.rows() != n || matrix.cols() != n) throw Error("derivation matrix must be dim x dim");
  Derivation D(std::move(ambient), degree, std::move(matrix));
  const FDAlgebra& H = *D.ambient_;
  for (int q = 0; q < n; ++q) {
    for (int p = 0; p < n; ++p) {
      if (D.matrix_.at(q, p) != 0 && H.degree_of(q) != H.degree_of(p) + degree)
        throw NotDerivation("derivation matrix entry violates the grading");
    }
  }
  if (validate) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        // D(b_i b_j) = D(b_i) b_j + (-1)^{n deg_i} b_i D(b_j)
        Vec lhs(n);
        for (const auto& [k, c] : H.mul_basis(i, j)) {
          Vec t = D.matrix_col(k);
          for (int q = 0; q < n; ++q) lhs[q] += c * t[q];
        }
        Vec rhs = H.mul(D.matrix_col(i), H.basis_vec(j));
        int sign = (degree % 2 != 0 && H.degree_of(i) % 2 != 0) ? -1 : 1;
        Vec t2 = H.mul(H.basis_vec(i), D.matrix_col(j));
        for (int q = 0; q < n; ++q) rhs[q] += sign * t2[q];
        if (lhs != rhs)
          throw NotDerivation("Leibniz fails on basis pair (" + std::to_string(i) + "," +
                              std::to_string(j) + ")");
      }
    }
  }
  return D;
}

Derivation Derivation::zero(FDPtr ambient, int degree) {
  int n = ambient->dim();
  return Derivation(std::move(ambient), degree, Mat(n, n));
}

Vec Derivation::matrix_col(int p) const {
  Vec v(ambient_->dim());
  for (int q = 0; q < ambient_->dim(); ++q) v[q] = matrix_.at(q, p);
  return v;
}

Vec Derivation::apply(const Vec& v) const {
  Vec out(ambient_->dim());
  for (int p = 0; p < ambient_->dim(); ++p) {
    if (v[p] == 0) continue;
    for (int q = 0; q < ambient_->dim(); ++q) out[q] += v[p] * matrix_.at(q, p);
  }
  return out;
}

bool Derivation::is_zero() const {
  for (int q = 0; q < matrix_.rows(); ++q)
    for (int p = 0; p < matrix_.cols(); ++p)
      if (matrix_.at(q, p) != 0) return false;
  return true;
}

Derivation Derivation::operator+(const Derivation& o) const {
  if (ambient_ != o.ambient_ || degree_ != o.degree_)
    throw Error("derivation sum: mismatched ambient or degree");
  Mat m = matrix_;
  for (int q = 0; q < m.rows(); ++q)
    for (int p = 0; p < m.cols(); ++p) m.at(q, p) += o.matrix_.at(q, p);
  return Derivation(ambient_, degree_, std::move(m));
}

Derivation Derivation::operator*(const Rational& c) const {
  Mat m = matrix_;
  for (int q = 0; q < m.rows(); ++q)
    for (int p = 0; p < m.cols(); ++p) m.at(q, p) *= c;
  return Derivation(ambient_, degree_, std::move(m));
}

std::vector<std::pair<int, int>> derivation_slots(const FDAlgebra& H, int n) {
  std::vector<std::pair<int, int>> slots;
  for (int p = 0; p < H.dim(); ++p)
    for (int q : H.indices_in_degree(H.degree_of(p) + n)) slots.push_back({p, q});
  return slots;
}

Vec flatten_derivation(const Derivation& D, const std::vector<std::pair<int, int>>& slots) {
  Vec v(slots.size());
  for (size_t s = 0; s < slots.size(); ++s) v[s] = D.matrix().at(slots[s].second, slots[s].first);
  return v;
}

Derivation unflatten_derivation(FDPtr H, int n, const std::vector<std::pair<int, int>>& slots,
                                const Vec& v, bool validate) {
  Mat m(H->dim(), H->dim());
  for (size_t s = 0; s < slots.size(); ++s) m.at(slots[s].second, slots[s].first) = v[s];
  return Derivation::make(std::move(H), n, std::move(m), validate);
}

std::vector<Derivation> derivation_space(const FDPtr& H, int n) {
  auto slots = derivation_slots(*H, n);
  const int U = int(slots.size());
  const int dim = H->dim();
  // Rows: one block of `dim` coordinates per basis pair (i,j); columns: slots.
  // Constraint: sum_k c_{ij}^k D(b_k) - D(b_i) b_j - (-1)^{n deg_i} b_i D(b_j) = 0.
  std::vector<Vec> rows;
  Mat A(0, U);
  std::vector<Rational> block(size_t(dim) * U);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      std::fill(block.begin(), block.end(), Rational(0));
      bool any = false;
      int sign = (n % 2 != 0 && H->degree_of(i) % 2 != 0) ? -1 : 1;
      for (int s = 0; s < U; ++s) {
        auto [p, q] = slots[s];
        // Contribution of unit unknown x_{p,q} (D(b_p) = b_q).
        for (const auto& [k, c] : H->mul_basis(i, j)) {
          if (k == p) {
            block[size_t(q) * U + s] += c;
            any = true;
          }
        }
        if (p == i) {
          for (const auto& [k, c] : H->mul_basis(q, j)) {
            block[size_t(k) * U + s] -= c;
            any = true;
          }
        }
        if (p == j) {
          for (const auto& [k, c] : H->mul_basis(i, q)) {
            block[size_t(k) * U + s] -= sign * c;
            any = true;
          }
        }
      }
      if (!any) continue;
      for (int r = 0; r < dim; ++r) {
        Vec row(block.begin() + size_t(r) * U, block.begin() + size_t(r + 1) * U);
        if (!linalg::is_zero(row)) A.append_row(row);
      }
    }
  }
  Mat K = linalg::kernel_basis(A);
  std::vector<Derivation> basis;
  for (int r = 0; r < K.rows(); ++r)
    basis.push_back(unflatten_derivation(H, n, slots, K.row(r)));
  return basis;
}

ChainDerivation ChainDerivation::make(const DGA& model, int degree,
                                      std::vector<Element> assignments, bool require_chain) {
  const GcaPtr& alg = model.algebra();
  if (int(assignments.size()) != alg->size())
    throw Error("one assignment per generator required");
  for (int i = 0; i < alg->size(); ++i) {
    if (assignments[i].algebra() != alg)
      throw MixedAlgebras("derivation assignment in a different algebra");
    if (!assignments[i].is_homogeneous_of(alg->gen(i).degree + degree))
      throw DegreeMismatch("derivation value on " + alg->gen(i).name +
                           " must be homogeneous of degree " +
                           std::to_string(alg->gen(i).degree + degree));
  }
  ChainDerivation D(model, degree, std::move(assignments));
  if (require_chain && !D.is_chain())
    throw NotChainDerivation("graded commutator with d does not vanish");
  return D;
}

Element ChainDerivation::apply(const Element& x) const {
  const GcaPtr& alg = model_.algebra();
  if (x.algebra() != alg) throw MixedAlgebras("derivation applied to foreign element");
  Element out(alg);
  for (const auto& [m, c] : x.terms()) {
    int prefix_deg = 0;
    for (int i = 0; i < alg->size(); ++i) {
      int e = m.exponent(i);
      if (e == 0) continue;
      if (!assign_[i].is_zero()) {
        for (int r = 0; r < e; ++r) {
          std::vector<int> pre(alg->size(), 0), suf(alg->size(), 0);
          for (int j = 0; j < i; ++j) pre[j] = m.exponent(j);
          pre[i] = r;
          suf[i] = e - r - 1;
          for (int j = i + 1; j < alg->size(); ++j) suf[j] = m.exponent(j);
          // D passes the prefix with the Koszul sign (-1)^{|D| |prefix|}.
          int pd = prefix_deg + r * alg->gen(i).degree;
          int sign = (degree_ % 2 != 0 && pd % 2 != 0) ? -1 : 1;
          Element t = Element::term(alg, *alg->monomial(pre), c * sign);
          t = t * assign_[i];
          t = t * Element::term(alg, *alg->monomial(suf), 1);
          out = out + t;
        }
      }
      prefix_deg += e * alg->gen(i).degree;
    }
  }
  return out;
}

Element ChainDerivation::chain_defect(int gen_index) const {
  // D(d(g)) - (-1)^n d(D(g))
  Element lhs = apply(model_.d_gen(gen_index));
  Element rhs = model_.d(assign_[gen_index]);
  if (degree_ % 2 != 0) rhs = -rhs;
  return lhs - rhs;
}

bool ChainDerivation::is_chain() const {
  for (int i = 0; i < model_.algebra()->size(); ++i)
    if (!chain_defect(i).is_zero()) return false;
  return true;
}

ChainDerivation commutator_with_d(const ChainDerivation& sigma) {
  const DGA& M = sigma.model();
  const GcaPtr& alg = M.algebra();
  std::vector<Element> assign;
  for (int i = 0; i < alg->size(); ++i) {
    Element v = M.d(sigma.assignment(i));
    Element w = sigma.apply(M.d_gen(i));
    if (sigma.degree() % 2 != 0) v = v + w; else v = v - w;
    assign.push_back(v);
  }
  return ChainDerivation::make(M, sigma.degree() + 1, std::move(assign));
}

std::vector<ChainDerivation> chain_derivation_space(const DGA& M, int n) {
  const GcaPtr& alg = M.algebra();
  // Unknowns: one coefficient per (generator, monomial of degree |g|+n).
  struct Slot { int gen; Monomial mono; };
  std::vector<Slot> slots;
  for (int i = 0; i < alg->size(); ++i)
    for (const auto& m : alg->basis_in_degree(alg->gen(i).degree + n))
      slots.push_back({i, m});
  const int U = int(slots.size());

  auto unit_assignments = [&](int s) {
    std::vector<Element> a;
    for (int i = 0; i < alg->size(); ++i) a.push_back(Element::zero(alg));
    a[slots[s].gen] = Element::term(alg, slots[s].mono, 1);
    return a;
  };

  // Constraint per generator g: D(d(g)) - (-1)^n d(D(g)) = 0, expanded over
  // the monomial basis in degree |g| + n + 1. The defect is linear in the
  // unknowns, so unit evaluations give the columns.
  Mat A(0, U);
  for (int g = 0; g < alg->size(); ++g) {
    auto target = alg->basis_in_degree(alg->gen(g).degree + n + 1);
    if (target.empty()) continue;
    std::vector<Vec> cols(U, Vec(target.size()));
    for (int s = 0; s < U; ++s) {
      ChainDerivation Du = ChainDerivation::make(M, n, unit_assignments(s),
                                                 /*require_chain=*/false);
      Element defect = Du.chain_defect(g);
      for (size_t t = 0; t < target.size(); ++t) cols[s][t] = defect.coefficient(target[t]);
    }
    for (size_t t = 0; t < target.size(); ++t) {
      Vec row(U);
      bool nonzero = false;
      for (int s = 0; s < U; ++s) {
        row[s] = cols[s][t];
        nonzero = nonzero || row[s] != 0;
      }
      if (nonzero) A.append_row(row);
    }
  }
  Mat K = linalg::kernel_basis(A);
  std::vector<ChainDerivation> basis;
  for (int r = 0; r < K.rows(); ++r) {
    std::vector<Element> assign;
    for (int i = 0; i < alg->size(); ++i) assign.push_back(Element::zero(alg));
    for (int s = 0; s < U; ++s)
      if (K.at(r, s) != 0) assign[slots[s].gen].add_term(slots[s].mono, K.at(r, s));
    basis.push_back(ChainDerivation::make(M, n, std::move(assign)));
  }
  return basis;
}

Derivation induced_on_cohomology(const ChainDerivation& D, const CohomologyResult& res,
                                 const RingExport& ring) {
  if (!D.is_chain()) throw NotChainDerivation("induced map requires [D,d] = 0");
  const FDAlgebra& H = *ring.ring;
  Mat m(H.dim(), H.dim());
  // Offsets of each degree's classes in the exported basis.
  for (int p = 0; p < H.dim(); ++p) {
    int target_deg = H.degree_of(p) + D.degree();
    if (target_deg < 0) continue;
    Element img = D.apply(ring.reps[p]);
    auto red = res.reduce(img, target_deg);
    const auto& idx = H.indices_in_degree(target_deg);
    for (size_t t = 0; t < idx.size(); ++t) m.at(idx[t], p) = red.coords[t];
  }
  return Derivation::make(ring.ring, D.degree(), std::move(m));
}

std::map<int, std::vector<Derivation>> induced_image(const DGA& M, const CohomologyResult& res,
                                                     const RingExport& ring,
                                                     const std::vector<int>& degrees) {
  std::map<int, std::vector<Derivation>> out;
  for (int n : degrees) {
    auto chains = chain_derivation_space(M, n);
    auto slots = derivation_slots(*ring.ring, n);
    Mat rows(0, int(slots.size()));
    std::vector<Derivation> induced;
    for (const auto& C : chains) induced.push_back(induced_on_cohomology(C, res, ring));
    for (const auto& D : induced) rows.append_row(flatten_derivation(D, slots));
    Mat basis = linalg::row_space(std::move(rows));
    std::vector<Derivation> span;
    for (int r = 0; r < basis.rows(); ++r)
      span.push_back(unflatten_derivation(ring.ring, n, slots, basis.row(r)));
    out[n] = std::move(span);
  }
  return out;
}

std::vector<RestrictionComponent> decompose_restriction(const TensorAlgebra& T,
                                                        const Derivation& D) {
  if (D.ambient() != T.ring) throw MixedAlgebras("derivation not on the tensor algebra");
  const FDAlgebra& A = *T.left;
  const FDAlgebra& B = *T.right;
  std::vector<RestrictionComponent> out;
  for (int i = 0; i < A.dim(); ++i) {
    RestrictionComponent comp;
    comp.a_index = i;
    comp.degree = D.degree() - A.degree_of(i);
    comp.map_on_B = Mat(B.dim(), B.dim());
    bool nonzero = false;
    for (int b = 0; b < B.dim(); ++b) {
      Vec img = D.apply(T.ring->basis_vec(T.index[A.unit()][b]));
      for (int l = 0; l < B.dim(); ++l) {
        const Rational& c = img[T.index[i][l]];
        comp.map_on_B.at(l, b) = c;
        nonzero = nonzero || c != 0;
      }
    }
    // Leibniz check for the coefficient map, at its own degree.
    comp.is_derivation = true;
    for (int b1 = 0; b1 < B.dim() && comp.is_derivation; ++b1) {
      for (int b2 = 0; b2 < B.dim(); ++b2) {
        Vec lhs(B.dim());
        for (const auto& [k, c] : B.mul_basis(b1, b2))
          for (int l = 0; l < B.dim(); ++l) lhs[l] += c * comp.map_on_B.at(l, k);
        Vec d1(B.dim()), d2(B.dim());
        for (int l = 0; l < B.dim(); ++l) {
          d1[l] = comp.map_on_B.at(l, b1);
          d2[l] = comp.map_on_B.at(l, b2);
        }
        Vec rhs = B.mul(d1, B.basis_vec(b2));
        int sign = (comp.degree % 2 != 0 && B.degree_of(b1) % 2 != 0) ? -1 : 1;
        Vec t = B.mul(B.basis_vec(b1), d2);
        for (int l = 0; l < B.dim(); ++l) rhs[l] += sign * t[l];
        if (lhs != rhs) {
          comp.is_derivation = false;
          break;
        }
      }
    }
    (void)nonzero;
    out.push_back(std::move(comp));
  }
  return out;
}

RigidityEngine::RigidityEngine(FDPtr H) : H_(std::move(H)) {}

RigidityEngine::RigidityEngine(FDPtr H, DGA model) : H_(std::move(H)), model_(std::move(model)) {
  res_ = cohomology(*model_, H_->top_degree() + 1);
  export_ = cohomology_algebra(*model_, *res_, H_->top_degree());
  if (!export_->ring->same_table(*H_))
    throw ModelMismatch("the model's exported cohomology ring does not match H");
}

const std::vector<Derivation>& RigidityEngine::checked_space(int n, RigidityMode mode) const {
  if (mode == RigidityMode::Cohomology) {
    auto it = der_cache_.find(n);
    if (it == der_cache_.end()) it = der_cache_.emplace(n, derivation_space(H_, n)).first;
    return it->second;
  }
  if (!model_) throw Error("model mode requires a DGA");
  auto it = induced_cache_.find(n);
  if (it == induced_cache_.end()) {
    auto img = induced_image(*model_, *res_, *export_, {n});
    it = induced_cache_.emplace(n, std::move(img[n])).first;
  }
  return it->second;
}

RigidityReport RigidityEngine::run(int dimT, int k, RigidityMode mode, const Subspace& target,
                                   bool class_h) const {
  RigidityReport rep;
  rep.mode = mode;
  rep.dim_torus = dimT;
  rep.k = k;
  rep.class_h_variant = class_h;
  for (int n = -1; n >= -dimT; --n) {
    const auto& space = checked_space(n, mode);
    rep.space_dims.push_back({n, int(space.size())});
    for (const auto& D : space) {
      // Witness selection: first echelon basis vector with nonzero image on
      // the target, paired with the first target basis element it misses.
      for (int t = 0; t < target.dim(); ++t) {
        Vec img = D.apply(target.basis_vector(t));
        if (!linalg::is_zero(img)) {
          rep.witnesses.push_back({D, n, target.basis_vector(t), img});
          break;
        }
      }
    }
  }
  rep.verdict = rep.witnesses.empty() ? Verdict::Rigid : Verdict::NotRigid;
  return rep;
}

RigidityReport RigidityEngine::report(int dimT, int k, RigidityMode mode) const {
  if (dimT < 1) throw Error("rigidity: torus dimension must be >= 1");
  if (k < 2) throw Error("rigidity: bundle rank must be >= 2");
  return run(dimT, k, mode, char_subspace(H_, k), false);
}

RigidityReport RigidityEngine::class_h_report(RigidityMode mode) const {
  std::vector<int> evens;
  for (int d = 2; d <= H_->top_degree(); d += 2) evens.push_back(d);
  Subspace target = Subspace::of_degrees(H_, evens);
  return run(H_->top_degree(), 0, mode, target, true);
}

RigidityReport rigidity_report(const FDPtr& H, int dimT, int k, RigidityMode mode,
                               const DGA* model) {
  if (mode == RigidityMode::Model) {
    if (!model) throw Error("model mode requires a DGA");
    return RigidityEngine(H, *model).report(dimT, k, mode);
  }
  return RigidityEngine(H).report(dimT, k, mode);
}

}  // namespace rho
