#include "rho/cohomology.hpp"

#include <algorithm>

namespace rho {

using linalg::Mat;
using linalg::Vec;

namespace {

// Coordinates of x over an explicit monomial basis (x must be supported on it).
Vec coords_of(const Element& x, const std::vector<Monomial>& basis) {
  Vec v(basis.size());
  size_t found = 0;
  for (size_t i = 0; i < basis.size(); ++i) {
    auto c = x.coefficient(basis[i]);
    if (c != 0) ++found;
    v[i] = c;
  }
  if (found != x.terms().size()) throw Error("element not supported on the given basis");
  return v;
}

Element element_of(const GcaPtr& alg, const std::vector<Monomial>& basis, const Vec& v) {
  Element x(alg);
  for (size_t i = 0; i < basis.size(); ++i) x.add_term(basis[i], v[i]);
  return x;
}

}  // namespace

DGA DGA::make(GcaPtr algebra, std::vector<std::optional<Element>> assignments) {
  if (int(assignments.size()) != algebra->size())
    throw Error("one d-assignment slot per generator required");
  std::vector<Element> d;
  for (int i = 0; i < algebra->size(); ++i) {
    if (!assignments[i]) {
      d.push_back(Element::zero(algebra));
      continue;
    }
    const Element& v = *assignments[i];
    if (v.algebra() != algebra) throw MixedAlgebras("d-value lies in a different algebra");
    if (!v.is_homogeneous_of(algebra->gen(i).degree + 1))
      throw DegreeMismatch("d(" + algebra->gen(i).name + ") must be homogeneous of degree " +
                           std::to_string(algebra->gen(i).degree + 1));
    d.push_back(v);
  }
  DGA M(algebra, std::move(d));
  for (int i = 0; i < algebra->size(); ++i) {
    Element dd = M.d(M.d_gen(i));
    if (!dd.is_zero()) throw D2NotZero(algebra->gen(i).name, dd.str());
  }
  return M;
}

Element DGA::d(const Element& x) const {
  if (x.algebra() != alg_) throw MixedAlgebras("differential applied to foreign element");
  Element out(alg_);
  for (const auto& [m, c] : x.terms()) {
    // Word expansion of the Leibniz rule over the factors of m.
    int prefix_deg = 0;
    for (int i = 0; i < alg_->size(); ++i) {
      int e = m.exponent(i);
      if (e == 0) continue;
      if (!d_[i].is_zero()) {
        for (int r = 0; r < e; ++r) {
          std::vector<int> pre(alg_->size(), 0), suf(alg_->size(), 0);
          for (int j = 0; j < i; ++j) pre[j] = m.exponent(j);
          pre[i] = r;
          suf[i] = e - r - 1;
          for (int j = i + 1; j < alg_->size(); ++j) suf[j] = m.exponent(j);
          int sign = ((prefix_deg + r * alg_->gen(i).degree) % 2) ? -1 : 1;
          Element t = Element::term(alg_, *alg_->monomial(pre), c * sign);
          t = t * d_[i];
          t = t * Element::term(alg_, *alg_->monomial(suf), 1);
          out = out + t;
        }
      }
      prefix_deg += e * alg_->gen(i).degree;
    }
  }
  return out;
}

bool DGA::is_pure(Purity reading) const {
  for (int i = 0; i < alg_->size(); ++i) {
    if (!alg_->is_odd(i)) {
      if (!d_[i].is_zero()) return false;
    }
  }
  for (int i = 0; i < alg_->size(); ++i) {
    if (!alg_->is_odd(i)) continue;
    for (const auto& [m, c] : d_[i].terms()) {
      int odd_exps = 0, total_even_factors = 0;
      for (int j = 0; j < alg_->size(); ++j) {
        if (alg_->is_odd(j)) odd_exps += m.exponent(j);
        else total_even_factors += m.exponent(j);
      }
      if (odd_exps > 0) return false;
      if (reading == Purity::EvenGeneratorsOnly && total_even_factors != 1) return false;
    }
  }
  return true;
}

bool DGA::same_presentation(const DGA& o) const {
  if (alg_->size() != o.alg_->size()) return false;
  for (int i = 0; i < alg_->size(); ++i) {
    if (alg_->gen(i).name != o.alg_->gen(i).name) return false;
    if (alg_->gen(i).degree != o.alg_->gen(i).degree) return false;
  }
  for (int i = 0; i < alg_->size(); ++i) {
    const auto& a = d_[i].terms();
    const auto& b = o.d_[i].terms();
    if (a.size() != b.size()) return false;
    auto it = a.begin();
    auto jt = b.begin();
    for (; it != a.end(); ++it, ++jt) {
      if (!(it->first == jt->first) || it->second != jt->second) return false;
    }
  }
  return true;
}

int CohomologyResult::betti(int n) const {
  if (n < 0 || n > max_degree()) throw Error("degree out of computed range");
  return int(degrees_[n].reps.size());
}

const std::vector<Element>& CohomologyResult::representatives(int n) const {
  if (n < 0 || n > max_degree()) throw Error("degree out of computed range");
  return degrees_[n].reps;
}

const std::vector<Monomial>& CohomologyResult::degree_basis(int n) const {
  if (n < 0 || n > max_degree()) throw Error("degree out of computed range");
  return degrees_[n].basis;
}

ReduceResult CohomologyResult::reduce(const Element& cocycle) const {
  auto deg = cocycle.homogeneous_degree();
  if (!deg) throw Error("reduce: cocycle must be homogeneous and nonzero");
  return reduce(cocycle, *deg);
}

ReduceResult CohomologyResult::reduce(const Element& cocycle, int n) const {
  if (cocycle.algebra() != model_.algebra())
    throw MixedAlgebras("reduce: element from a different algebra");
  if (!cocycle.is_homogeneous_of(n)) throw Error("reduce: element not homogeneous of the degree");
  if (n < 0 || n > max_degree()) throw Error("reduce: degree out of computed range");
  if (!model_.d(cocycle).is_zero()) throw Error("reduce: not a cocycle");
  const Degree& D = degrees_[n];
  if (cocycle.is_zero())
    return {Vec(D.reps.size()), Element::zero(model_.algebra())};
  Vec z = coords_of(cocycle, D.basis);
  // Solve [reps | boundaries] x = z.
  int r = int(D.reps.size());
  int s = D.boundary_cols.cols();
  Mat A(int(D.basis.size()), r + s);
  for (int i = 0; i < int(D.basis.size()); ++i) {
    for (int j = 0; j < r; ++j) A.at(i, j) = D.rep_rows.at(j, i);
    for (int j = 0; j < s; ++j) A.at(i, r + j) = D.boundary_cols.at(i, j);
  }
  auto x = linalg::solve(A, z);
  if (!x) throw Error("reduce: element is not a cocycle of the computed complex");
  Vec coords(x->begin(), x->begin() + r);
  Vec w(x->begin() + r, x->end());
  Element preimage = element_of(model_.algebra(), D.prev_basis, w);
  return {std::move(coords), std::move(preimage)};
}

CohomologyResult cohomology(const DGA& M, int N) {
  if (N < 0) throw Error("cohomology: negative truncation degree");
  const GcaPtr& alg = M.algebra();
  std::vector<std::vector<Monomial>> bases(N + 2);
  for (int n = 0; n <= N + 1; ++n) bases[n] = alg->basis_in_degree(n);

  std::vector<CohomologyResult::Degree> out(N + 1);
  // d-matrices: cols indexed by degree-n basis, rows by degree-(n+1) basis.
  std::vector<Mat> dmat(N + 1);
  for (int n = 0; n <= N; ++n) {
    const auto& B = bases[n];
    const auto& Bn = bases[n + 1];
    Mat m(int(Bn.size()), int(B.size()));
    for (int j = 0; j < int(B.size()); ++j) {
      Element img = M.d(Element::term(alg, B[j], 1));
      Vec col = coords_of(img, Bn);
      for (int i = 0; i < int(Bn.size()); ++i) m.at(i, j) = col[i];
    }
    dmat[n] = std::move(m);
  }

  for (int n = 0; n <= N; ++n) {
    auto& D = out[n];
    D.basis = bases[n];
    D.prev_basis = n > 0 ? bases[n - 1] : std::vector<Monomial>{};
    // Kernel of d_n.
    Mat ker = linalg::kernel_basis(dmat[n]);
    // Image of d_{n-1}, as canonical rows, plus the raw columns for reduce.
    Mat bcols(int(bases[n].size()), n > 0 ? int(bases[n - 1].size()) : 0);
    std::vector<Vec> imrows;
    if (n > 0) {
      for (int j = 0; j < dmat[n - 1].cols(); ++j) {
        Vec col(bases[n].size());
        for (int i = 0; i < int(bases[n].size()); ++i) {
          bcols.at(i, j) = dmat[n - 1].at(i, j);
          col[i] = dmat[n - 1].at(i, j);
        }
        if (!linalg::is_zero(col)) imrows.push_back(std::move(col));
      }
    }
    D.boundary_cols = std::move(bcols);
    Mat image = linalg::row_space(Mat::from_rows(imrows, int(bases[n].size())));
    // Echelon-form complement of the image inside the kernel.
    Mat grown = image;
    std::vector<Vec> complement;
    for (int i = 0; i < ker.rows(); ++i) {
      Vec v = linalg::reduce_against(grown, ker.row(i));
      if (!linalg::is_zero(v)) {
        complement.push_back(v);
        grown = linalg::span_union(grown, {v});
      }
    }
    D.rep_rows = linalg::row_space(Mat::from_rows(complement, int(bases[n].size())));
    for (int i = 0; i < D.rep_rows.rows(); ++i)
      D.reps.push_back(element_of(alg, D.basis, D.rep_rows.row(i)));
  }
  return CohomologyResult(M, std::move(out));
}

RingExport cohomology_algebra(const DGA& M, const CohomologyResult& res, int top) {
  if (res.max_degree() < top) throw Error("cohomology_algebra: result truncated below top");
  int max_gen = 0;
  for (int i = 0; i < M.algebra()->size(); ++i)
    max_gen = std::max(max_gen, M.algebra()->gen(i).degree);
  // Truncation is sound only when nothing lives just above the formal
  // dimension; verify the window (top, top + max generator degree].
  {
    const CohomologyResult* window = &res;
    std::optional<CohomologyResult> ext;
    if (res.max_degree() < top + max_gen) {
      ext = cohomology(M, top + max_gen);
      window = &*ext;
    }
    for (int n = top + 1; n <= top + max_gen; ++n)
      if (window->betti(n) != 0) throw TruncationUnsound(n, window->betti(n));
  }

  RingExport ex;
  ex.top = top;
  std::vector<FDBasisElem> basis;
  std::vector<std::pair<int, int>> cls;  // (degree, index within degree)
  for (int n = 0; n <= top; ++n) {
    const auto& reps = res.representatives(n);
    for (int i = 0; i < int(reps.size()); ++i) {
      basis.push_back({"h" + std::to_string(n) + "_" + std::to_string(i), n});
      cls.push_back({n, i});
      ex.reps.push_back(reps[i]);
    }
  }
  const int dim = int(basis.size());
  std::vector<std::vector<FDAlgebra::SparseVec>> mul(dim, std::vector<FDAlgebra::SparseVec>(dim));
  // Offset of each degree's first class.
  std::vector<int> offset(top + 2, 0);
  {
    int off = 0;
    for (int n = 0; n <= top; ++n) {
      offset[n] = off;
      off += res.betti(n);
    }
    offset[top + 1] = off;
  }
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      int dsum = basis[i].degree + basis[j].degree;
      if (dsum > top) continue;  // zero by the soundness check above
      Element prod = ex.reps[i] * ex.reps[j];
      auto red = res.reduce(prod, dsum);
      FDAlgebra::SparseVec v;
      for (int k = 0; k < int(red.coords.size()); ++k)
        if (red.coords[k] != 0) v.push_back({offset[dsum] + k, red.coords[k]});
      mul[i][j] = std::move(v);
    }
  }
  ex.ring = FDAlgebra::make(std::move(basis), std::move(mul));
  return ex;
}

BiquotientData BiquotientData::make(GcaPtr combined, int bh_count, std::vector<Element> dbar) {
  if (bh_count < 0 || bh_count > combined->size()) throw Error("invalid bh generator count");
  for (int i = 0; i < combined->size(); ++i) {
    bool even = combined->gen(i).degree % 2 == 0;
    if (i < bh_count && !even)
      throw DegreeMismatch("bh generator " + combined->gen(i).name + " must have even degree");
    if (i >= bh_count && even)
      throw DegreeMismatch("q generator " + combined->gen(i).name + " must have odd degree");
  }
  int q_count = combined->size() - bh_count;
  if (int(dbar.size()) != q_count) throw Error("one dbar value per q generator required");
  for (int k = 0; k < q_count; ++k) {
    const Element& v = dbar[k];
    const Generator& q = combined->gen(bh_count + k);
    if (v.algebra() != combined) throw MixedAlgebras("dbar value in the wrong algebra");
    if (!v.is_homogeneous_of(q.degree + 1))
      throw DegreeMismatch("dbar(" + q.name + ") must be homogeneous of degree " +
                           std::to_string(q.degree + 1));
    for (const auto& [m, c] : v.terms())
      for (int j = bh_count; j < combined->size(); ++j)
        if (m.exponent(j) != 0)
          throw Error("dbar(" + q.name + ") must contain only bh generators");
  }
  return BiquotientData(std::move(combined), bh_count, std::move(dbar));
}

int BiquotientData::formal_dimension() const {
  int dim = 0;
  for (int i = bh_count_; i < alg_->size(); ++i) dim += alg_->gen(i).degree;
  for (int i = 0; i < bh_count_; ++i) dim -= alg_->gen(i).degree - 1;
  return dim;
}

DGA cartan_model(const BiquotientData& data) {
  std::vector<std::optional<Element>> d(data.algebra()->size());
  for (int k = 0; k < data.q_count(); ++k) d[data.bh_count() + k] = data.dbar()[k];
  return DGA::make(data.algebra(), std::move(d));
}

LowerGrading lower_grading(const BiquotientData& data, const CohomologyResult& res) {
  DGA cartan = cartan_model(data);
  if (!res.model().same_presentation(cartan))
    throw NotCartanModel("cohomology result was not computed from cartan_model(data)");
  const GcaPtr& alg = data.algebra();
  auto wordlength = [&](const Monomial& m) {
    int w = 0;
    for (int j = data.bh_count(); j < alg->size(); ++j) w += m.exponent(j);
    return w;
  };
  LowerGrading out;
  out.max_wordlength = data.q_count();
  out.dims.assign(res.max_degree() + 1, std::vector<int>(data.q_count() + 1, 0));
  for (int n = 0; n <= res.max_degree(); ++n) {
    for (int k = 0; k <= data.q_count(); ++k) {
      // Sub-bases of wordlength k in degrees n and n+1 / n-1 (d lowers k by 1).
      auto sub = [&](int deg, int w) {
        std::vector<Monomial> v;
        for (const auto& m : alg->basis_in_degree(deg))
          if (wordlength(m) == w) v.push_back(m);
        return v;
      };
      auto Bn = sub(n, k);
      auto Bnext = sub(n + 1, k - 1);
      auto Bprev = sub(n - 1, k + 1);
      Mat dn(int(Bnext.size()), int(Bn.size()));
      for (int j = 0; j < int(Bn.size()); ++j) {
        Element img = cartan.d(Element::term(alg, Bn[j], 1));
        Vec col = coords_of(img, Bnext);
        for (int i = 0; i < int(Bnext.size()); ++i) dn.at(i, j) = col[i];
      }
      int ker = int(Bn.size()) - linalg::rank(dn);
      Mat dprev(int(Bn.size()), int(Bprev.size()));
      for (int j = 0; j < int(Bprev.size()); ++j) {
        Element img = cartan.d(Element::term(alg, Bprev[j], 1));
        Vec col = coords_of(img, Bn);
        for (int i = 0; i < int(Bn.size()); ++i) dprev.at(i, j) = col[i];
      }
      out.dims[n][k] = ker - linalg::rank(dprev);
    }
    // Consistency with the ungraded computation.
    int total = 0;
    for (int k = 0; k <= data.q_count(); ++k) total += out.dims[n][k];
    if (total != res.betti(n))
      throw Error("lower grading does not refine the Betti numbers at degree " +
                  std::to_string(n));
  }
  return out;
}

bool check_dga_morphism(const DGA& source, const DGA& target, const AlgebraMorphism& phi) {
  if (phi.source() != source.algebra() || phi.target() != target.algebra())
    throw MixedAlgebras("morphism endpoints do not match the models");
  for (int i = 0; i < source.algebra()->size(); ++i) {
    Element lhs = phi.apply(source.d_gen(i));
    Element rhs = target.d(phi.image(i));
    if (!(lhs == rhs)) return false;
  }
  return true;
}

}  // namespace rho
