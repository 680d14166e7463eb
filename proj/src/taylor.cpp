#include "rho/taylor.hpp"

#include <algorithm>

namespace rho {

using linalg::Mat;
using linalg::Vec;

std::string TorusBasis::name(int i) const {
  if (monomials[i].empty()) return "1";
  std::string s;
  for (int j : monomials[i]) {
    if (!s.empty()) s += "*";
    s += "x" + std::to_string(j);
  }
  return s;
}

std::optional<std::pair<int, int>> TorusBasis::mul(int i, int j) const {
  const auto& a = monomials[i];
  const auto& b = monomials[j];
  // Merge with inversion count; repeated generator kills the product.
  std::vector<int> merged;
  merged.reserve(a.size() + b.size());
  int sign = 1;
  size_t ia = 0, ib = 0;
  while (ia < a.size() && ib < b.size()) {
    if (a[ia] == b[ib]) return std::nullopt;
    if (a[ia] < b[ib]) {
      merged.push_back(a[ia++]);
    } else {
      // b[ib] moves past the remaining a-letters, all odd.
      if ((a.size() - ia) % 2) sign = -sign;
      merged.push_back(b[ib++]);
    }
  }
  while (ia < a.size()) merged.push_back(a[ia++]);
  while (ib < b.size()) merged.push_back(b[ib++]);
  for (int k = 0; k < int(monomials.size()); ++k)
    if (monomials[k] == merged) return std::make_pair(sign, k);
  throw Error("torus basis is not closed under products");
}

TorusBasis torus_basis(int d) {
  if (d < 1) throw Error("torus dimension must be >= 1");
  TorusBasis t;
  t.dim = d;
  for (int mask = 0; mask < (1 << d); ++mask) {
    std::vector<int> mono;
    for (int j = 0; j < d; ++j)
      if (mask & (1 << j)) mono.push_back(j + 1);
    t.monomials.push_back(std::move(mono));
  }
  std::sort(t.monomials.begin(), t.monomials.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return t;
}

FDPtr torus_ring(const TorusBasis& t) {
  std::vector<FDBasisElem> basis;
  for (int i = 0; i < t.count(); ++i) basis.push_back({t.name(i), t.degree(i)});
  std::vector<std::vector<FDAlgebra::SparseVec>> mul(t.count(),
                                                     std::vector<FDAlgebra::SparseVec>(t.count()));
  for (int i = 0; i < t.count(); ++i) {
    for (int j = 0; j < t.count(); ++j) {
      auto p = t.mul(i, j);
      if (p) mul[i][j] = {{p->second, Rational(p->first)}};
    }
  }
  return FDAlgebra::make(std::move(basis), std::move(mul));
}

ProductAutomorphism::ProductAutomorphism(TensorAlgebra ring, TorusBasis torus, Mat values,
                                         Check check)
    : ring_(std::move(ring)), torus_(std::move(torus)), values_(std::move(values)) {
  const FDAlgebra& H = *ring_.left;
  if (ring_.right->dim() != torus_.count())
    throw Error("tensor right factor must be the torus ring");
  if (values_.rows() != ring_.ring->dim() || values_.cols() != H.dim())
    throw Error("automorphism value matrix has wrong shape");
  // Degree preservation and unit fixing always hold for a well-formed map.
  for (int p = 0; p < H.dim(); ++p) {
    for (int r = 0; r < ring_.ring->dim(); ++r) {
      if (values_.at(r, p) != 0 && ring_.ring->degree_of(r) != H.degree_of(p))
        throw DegreeMismatch("automorphism does not preserve degree");
    }
  }
  Vec unit_val = value(H.unit());
  Vec unit_expected = ring_.pure(H.unit(), ring_.right->unit());
  if (unit_val != unit_expected) throw NonMultiplicative("automorphism must fix the unit");
  if (check == Check::Full) {
    validate_multiplicative();
    // Invertibility: the t_0 block per degree.
    Mat t0 = partial(0);
    for (int deg = 0; deg <= H.top_degree(); ++deg) {
      const auto& idx = H.indices_in_degree(deg);
      Mat block(int(idx.size()), int(idx.size()));
      for (size_t r = 0; r < idx.size(); ++r)
        for (size_t c = 0; c < idx.size(); ++c) block.at(int(r), int(c)) = t0.at(idx[r], idx[c]);
      if (linalg::rank(block) != int(idx.size()))
        throw Error("dh/dt_0 is singular in degree " + std::to_string(deg));
    }
  }
}

Vec ProductAutomorphism::value(int p) const {
  Vec v(ring_.ring->dim());
  for (int r = 0; r < ring_.ring->dim(); ++r) v[r] = values_.at(r, p);
  return v;
}

Vec ProductAutomorphism::apply(const Vec& coords) const {
  // h(b_q (x) t_i) = h(b_q (x) 1) (1 (x) t_i)
  Vec out(ring_.ring->dim());
  for (int r = 0; r < ring_.ring->dim(); ++r) {
    if (coords[r] == 0) continue;
    auto [q, i] = ring_.pairs[r];
    Vec v = ring_.ring->mul(value(q), ring_.pure(ring_.left->unit(), i));
    for (int s = 0; s < ring_.ring->dim(); ++s) out[s] += coords[r] * v[s];
  }
  return out;
}

Mat ProductAutomorphism::partial(int i) const {
  const FDAlgebra& H = *ring_.left;
  Mat m(H.dim(), H.dim());
  for (int p = 0; p < H.dim(); ++p) {
    // Coefficient extraction with the Koszul sign: the stored coordinate of
    // b_q (x) t_i inside (1 (x) t_i)(a (x) 1) is (-1)^{|t_i||a|} a_q.
    for (int q = 0; q < H.dim(); ++q) {
      Rational c = values_.at(ring_.index[q][i], p);
      if (torus_.degree(i) % 2 != 0 && H.degree_of(q) % 2 != 0) c = -c;
      m.at(q, p) = c;
    }
  }
  return m;
}

bool ProductAutomorphism::partial_t0_is_identity() const {
  return partial(0) == Mat::identity(ring_.left->dim());
}

bool ProductAutomorphism::is_multiplicative() const {
  const FDAlgebra& H = *ring_.left;
  for (int p = 0; p < H.dim(); ++p) {
    for (int q = 0; q < H.dim(); ++q) {
      Vec lhs(ring_.ring->dim());
      for (const auto& [k, c] : H.mul_basis(p, q)) {
        Vec v = value(k);
        for (int s = 0; s < ring_.ring->dim(); ++s) lhs[s] += c * v[s];
      }
      Vec rhs = ring_.ring->mul(value(p), value(q));
      if (lhs != rhs) return false;
    }
  }
  return true;
}

void ProductAutomorphism::validate_multiplicative() const {
  if (!is_multiplicative())
    throw NonMultiplicative("values are not multiplicative on the base classes");
}

ProductAutomorphism identity_automorphism(const TensorAlgebra& ring, const TorusBasis& t) {
  const FDAlgebra& H = *ring.left;
  Mat values(ring.ring->dim(), H.dim());
  for (int p = 0; p < H.dim(); ++p) values.at(ring.index[p][ring.right->unit()], p) = 1;
  return ProductAutomorphism(ring, t, std::move(values));
}

ProductAutomorphism derivation_automorphism(const TensorAlgebra& ring, const TorusBasis& t,
                                            const Derivation& D, int i) {
  const FDAlgebra& H = *ring.left;
  if (D.ambient() != ring.left) throw MixedAlgebras("derivation on a different ring");
  if (i <= 0 || i >= t.count()) throw Error("torus index out of range");
  if (D.degree() != -t.degree(i))
    throw DegreeMismatch("derivation degree must be -|t_i|");
  // Leibniz re-check; a non-derivation would not give an automorphism.
  Derivation::make(D.ambient(), D.degree(), D.matrix(), /*validate=*/true);
  Mat values(ring.ring->dim(), H.dim());
  Vec ti = ring.pure(H.unit(), i);
  for (int p = 0; p < H.dim(); ++p) {
    values.at(ring.index[p][ring.right->unit()], p) = 1;
    // (1 (x) t_i)(D(b_p) (x) 1), computed in the tensor ring.
    Vec img = D.apply_basis(p);
    Vec corr = ring.ring->mul(ti, ring.embed_left(img));
    for (int s = 0; s < ring.ring->dim(); ++s) values.at(s, p) += corr[s];
  }
  return ProductAutomorphism(ring, t, std::move(values));
}

ProductAutomorphism compose(const ProductAutomorphism& outer, const ProductAutomorphism& inner) {
  if (outer.ring().ring != inner.ring().ring) throw MixedAlgebras("automorphism rings differ");
  const FDAlgebra& H = *outer.ring().left;
  Mat values(outer.ring().ring->dim(), H.dim());
  for (int p = 0; p < H.dim(); ++p) {
    Vec v = outer.apply(inner.value(p));
    for (int s = 0; s < outer.ring().ring->dim(); ++s) values.at(s, p) = v[s];
  }
  // Shape check only: compositions of validated maps stay multiplicative.
  return ProductAutomorphism(outer.ring(), outer.torus(), std::move(values),
                             ProductAutomorphism::Check::Shape);
}

PeelResult peel(const ProductAutomorphism& h, bool normalize_t0) {
  const TensorAlgebra& ring = h.ring();
  const TorusBasis& t = h.torus();
  const FDAlgebra& H = *ring.left;
  ProductAutomorphism cur = h;
  if (!cur.partial_t0_is_identity()) {
    if (!normalize_t0) throw NotNormalized("dh/dt_0 is not the identity");
    // Pre-compose with (dh/dt_0)^{-1} (x) id.
    Mat t0 = cur.partial(0);
    Mat inv(H.dim(), H.dim());
    for (int deg = 0; deg <= H.top_degree(); ++deg) {
      const auto& idx = H.indices_in_degree(deg);
      int m = int(idx.size());
      Mat block(m, 2 * m);
      for (int r = 0; r < m; ++r) {
        for (int c = 0; c < m; ++c) block.at(r, c) = t0.at(idx[r], idx[c]);
        block.at(r, m + r) = 1;
      }
      linalg::rref_in_place(block);
      for (int r = 0; r < m; ++r) {
        if (block.at(r, r) != 1) throw Error("dh/dt_0 is singular in degree " + std::to_string(deg));
        for (int c = 0; c < m; ++c) inv.at(idx[r], idx[c]) = block.at(r, m + c);
      }
    }
    Mat values(ring.ring->dim(), H.dim());
    for (int p = 0; p < H.dim(); ++p) {
      Vec pre(H.dim());
      for (int q = 0; q < H.dim(); ++q) pre[q] = inv.at(q, p);
      Vec v = cur.apply(ring.embed_left(pre));
      for (int s = 0; s < ring.ring->dim(); ++s) values.at(s, p) = v[s];
    }
    cur = ProductAutomorphism(ring, t, std::move(values), ProductAutomorphism::Check::Shape);
  }
  PeelResult out;
  for (int i = 1; i < t.count(); ++i) {
    Mat coeff = cur.partial(i);
    Derivation D = [&]() {
      try {
        return Derivation::make(ring.left, -t.degree(i), coeff);
      } catch (const NotDerivation&) {
        throw NonMultiplicative("coefficient at " + t.name(i) +
                                " is not a derivation; the input is not an algebra morphism");
      }
    }();
    out.steps.push_back({i, D});
    // The correction step kills the t_i coefficient and leaves earlier ones
    // zero; later coefficients change, hence the re-extraction each round.
    ProductAutomorphism phi = derivation_automorphism(ring, t, D * Rational(-1), i);
    cur = compose(phi, cur);
  }
  out.residual_identity = true;
  for (int p = 0; p < H.dim(); ++p) {
    if (cur.value(p) != ring.pure(p, ring.right->unit())) {
      out.residual_identity = false;
      break;
    }
  }
  return out;
}

ProductAutomorphism recompose(const TensorAlgebra& ring, const TorusBasis& t,
                              const std::vector<PeelStep>& steps) {
  ProductAutomorphism acc = identity_automorphism(ring, t);
  // h = (step_1)^{-1} . ... . (step_n)^{-1}; the inverse of a correction is
  // the derivation automorphism with +D.
  for (auto it = steps.rbegin(); it != steps.rend(); ++it)
    acc = compose(derivation_automorphism(ring, t, it->coefficient, it->torus_index), acc);
  return acc;
}

bool char_fixed(const ProductAutomorphism& h, int k) {
  const TensorAlgebra& ring = h.ring();
  Subspace chr = char_subspace(ring.left, k);
  std::vector<Vec> embedded;
  for (int i = 0; i < chr.dim(); ++i) embedded.push_back(ring.embed_left(chr.basis_vector(i)));
  Mat span = linalg::row_space(Mat::from_rows(embedded, ring.ring->dim()));
  for (int i = 0; i < chr.dim(); ++i) {
    Vec img = h.apply(ring.embed_left(chr.basis_vector(i)));
    if (!linalg::in_span(span, img)) return false;
  }
  return true;
}

}  // namespace rho
