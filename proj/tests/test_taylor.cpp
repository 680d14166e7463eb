#include <doctest.h>

#include <random>

#include "rho/catalog.hpp"
#include "rho/taylor.hpp"

using namespace rho;
using linalg::Mat;
using linalg::Vec;

namespace {

FDPtr ring_of(const std::string& name) {
  ModelFile m = catalog(name);
  DGA M = m.kind == ModelFile::Kind::Biquotient ? cartan_model(*m.biquotient) : *m.dga;
  int top = m.top ? *m.top : m.biquotient->formal_dimension();
  CohomologyResult res = cohomology(M, top + 1);
  return cohomology_algebra(M, res, top).ring;
}

bool equal_on_base(const ProductAutomorphism& a, const ProductAutomorphism& b) {
  for (int p = 0; p < a.base()->dim(); ++p)
    if (a.value(p) != b.value(p)) return false;
  return true;
}

}  // namespace

TEST_CASE("torus bases are degree-major ordered") {
  TorusBasis t1 = torus_basis(1);
  REQUIRE(t1.count() == 2);
  CHECK(t1.name(0) == "1");
  CHECK(t1.name(1) == "x1");

  TorusBasis t2 = torus_basis(2);
  REQUIRE(t2.count() == 4);
  CHECK(t2.name(1) == "x1");
  CHECK(t2.name(2) == "x2");
  CHECK(t2.name(3) == "x1*x2");

  TorusBasis t3 = torus_basis(3);
  REQUIRE(t3.count() == 8);
  std::vector<int> degs;
  for (int i = 0; i < 8; ++i) degs.push_back(t3.degree(i));
  CHECK(degs == std::vector<int>{0, 1, 1, 1, 2, 2, 2, 3});
  CHECK(t3.name(7) == "x1*x2*x3");
  for (int i = 1; i < 8; ++i) CHECK_FALSE(t3.mul(i, i).has_value());
}

TEST_CASE("torus ring is the exterior algebra") {
  TorusBasis t = torus_basis(3);
  FDPtr T = torus_ring(t);
  CHECK(T->dim() == 8);
  auto p = t.mul(1, 2);
  auto q = t.mul(2, 1);
  REQUIRE(p.has_value());
  REQUIRE(q.has_value());
  CHECK(p->second == q->second);
  CHECK(p->first == -q->first);
}

TEST_CASE("identity automorphism: dt_0 = id, all other partials 0") {
  FDPtr H = ring_of("su6_su3su3");
  TorusBasis t = torus_basis(2);
  TensorAlgebra ring = tensor(H, torus_ring(t));
  ProductAutomorphism id = identity_automorphism(ring, t);
  CHECK(id.partial_t0_is_identity());
  for (int i = 1; i < t.count(); ++i) {
    Mat p = id.partial(i);
    for (int r = 0; r < H->dim(); ++r)
      for (int c = 0; c < H->dim(); ++c) CHECK(p.at(r, c) == 0);
  }
}

TEST_CASE("derivation automorphism: partials recover the derivation") {
  FDPtr H = ring_of("su6_su3su3");
  TorusBasis t = torus_basis(2);
  TensorAlgebra ring = tensor(H, torus_ring(t));
  auto ders = derivation_space(H, -2);
  REQUIRE(ders.size() >= 1);
  const Derivation& D = ders[0];
  ProductAutomorphism h = derivation_automorphism(ring, t, D, 3);  // t_3 = x1*x2
  CHECK(h.partial_t0_is_identity());
  CHECK(h.partial(3) == D.matrix());
  for (int i : {1, 2}) {
    Mat p = h.partial(i);
    for (int r = 0; r < H->dim(); ++r)
      for (int c = 0; c < H->dim(); ++c) CHECK(p.at(r, c) == 0);
  }
  CHECK(h.is_multiplicative());
}

TEST_CASE("degree mismatch between derivation and torus index is rejected") {
  FDPtr H = ring_of("su6_su3su3");
  TorusBasis t = torus_basis(2);
  TensorAlgebra ring = tensor(H, torus_ring(t));
  auto ders = derivation_space(H, -2);
  REQUIRE(!ders.empty());
  CHECK_THROWS_AS(derivation_automorphism(ring, t, ders[0], 1), DegreeMismatch);
}

TEST_CASE("derivation automorphism composed with its sign-flip is the identity") {
  FDPtr H = ring_of("su6_su3su3");
  TorusBasis t = torus_basis(2);
  TensorAlgebra ring = tensor(H, torus_ring(t));
  auto ders = derivation_space(H, -2);
  REQUIRE(!ders.empty());
  ProductAutomorphism h = derivation_automorphism(ring, t, ders[0], 3);
  ProductAutomorphism hinv = derivation_automorphism(ring, t, ders[0] * Rational(-1), 3);
  ProductAutomorphism composed = compose(hinv, h);
  CHECK(equal_on_base(composed, identity_automorphism(ring, t)));
}

TEST_CASE("free-module expansion reproduces the values") {
  FDPtr H = ring_of("su6_su3su3");
  TorusBasis t = torus_basis(2);
  TensorAlgebra ring = tensor(H, torus_ring(t));
  auto ders = derivation_space(H, -2);
  ProductAutomorphism h = derivation_automorphism(ring, t, ders[0], 3);
  for (int p = 0; p < H->dim(); ++p) {
    Vec acc(ring.ring->dim());
    for (int i = 0; i < t.count(); ++i) {
      Mat pi = h.partial(i);
      Vec base(H->dim());
      for (int q = 0; q < H->dim(); ++q) base[q] = pi.at(q, p);
      Vec term = ring.ring->mul(ring.pure(H->unit(), i), ring.embed_left(base));
      for (int s = 0; s < ring.ring->dim(); ++s) acc[s] += term[s];
    }
    CHECK(acc == h.value(p));
  }
}

TEST_CASE("su6 example: [y6] moves off H (x) 1 and Char(6) is not fixed") {
  FDPtr H = ring_of("su6_su3su3");
  TorusBasis t = torus_basis(2);
  TensorAlgebra ring = tensor(H, torus_ring(t));
  auto ders = derivation_space(H, -2);
  int y4 = H->indices_in_degree(4)[0];
  int y6 = H->indices_in_degree(6)[0];
  const Derivation* D = nullptr;
  for (const auto& cand : ders)
    if (cand.matrix().at(y4, y6) != 0) D = &cand;
  REQUIRE(D != nullptr);
  ProductAutomorphism h = derivation_automorphism(ring, t, *D, 3);
  Vec img = h.value(y6);
  CHECK(img[ring.index[y6][0]] == 1);
  CHECK(img[ring.index[y4][3]] != 0);  // the [y4] (x) x1x2 term
  CHECK_FALSE(char_fixed(h, 6));
  CHECK(char_fixed(identity_automorphism(ring, t), 6));
}

TEST_CASE("single-layer peel recovers the derivation") {
  FDPtr H = ring_of("yamaguchi14");
  TorusBasis t = torus_basis(1);
  TensorAlgebra ring = tensor(H, torus_ring(t));
  auto ders = derivation_space(H, -1);
  REQUIRE(ders.size() == 1);
  ProductAutomorphism h = derivation_automorphism(ring, t, ders[0], 1);
  PeelResult pr = peel(h);
  REQUIRE(pr.steps.size() == 1);
  CHECK(pr.residual_identity);
  CHECK(pr.steps[0].torus_index == 1);
  CHECK(pr.steps[0].coefficient.matrix() == ders[0].matrix());
  ProductAutomorphism re = recompose(ring, t, pr.steps);
  CHECK(equal_on_base(re, h));
}

TEST_CASE("su6 Der_-2 is one-dimensional: the pairing ties the two blocks") {
  // Leibniz on the (degree 6, degree 15) pair forces the [z15] -> [z13]
  // block once [y6] -> [y4] is chosen, so the space is a line.
  FDPtr H = ring_of("su6_su3su3");
  auto ders = derivation_space(H, -2);
  REQUIRE(ders.size() == 1);
  int y4 = H->indices_in_degree(4)[0], y6 = H->indices_in_degree(6)[0];
  int z13 = H->indices_in_degree(13)[0], z15 = H->indices_in_degree(15)[0];
  CHECK(ders[0].matrix().at(y4, y6) != 0);
  CHECK(ders[0].matrix().at(z13, z15) != 0);
}

TEST_CASE("two-layer peel round trip over dimT = 2") {
  // Yamaguchi has a 1-dim Der_-1; place scaled copies at x1 and x2. After
  // both corrections the x1*x2 coefficient must be a (here: zero) derivation.
  FDPtr H = ring_of("yamaguchi14");
  TorusBasis t = torus_basis(2);
  TensorAlgebra ring = tensor(H, torus_ring(t));
  auto ders = derivation_space(H, -1);
  REQUIRE(ders.size() == 1);
  ProductAutomorphism h =
      compose(derivation_automorphism(ring, t, ders[0] * Rational(-3), 2),
              derivation_automorphism(ring, t, ders[0], 1));
  PeelResult pr = peel(h);
  REQUIRE(pr.steps.size() == 3);
  CHECK(pr.residual_identity);
  CHECK(pr.steps[0].coefficient.matrix() == ders[0].matrix());
  CHECK_FALSE(pr.steps[1].coefficient.is_zero());
  ProductAutomorphism re = recompose(ring, t, pr.steps);
  CHECK(equal_on_base(re, h));

  // Same-index composition merges into a single correction.
  FDPtr H2 = ring_of("su6_su3su3");
  TensorAlgebra ring2 = tensor(H2, torus_ring(t));
  auto d2 = derivation_space(H2, -2);
  REQUIRE(!d2.empty());
  ProductAutomorphism g =
      compose(derivation_automorphism(ring2, t, d2[0] * Rational(-2), 3),
              derivation_automorphism(ring2, t, d2[0], 3));
  PeelResult pg = peel(g);
  CHECK(pg.residual_identity);
  CHECK(pg.steps[2].coefficient.matrix() ==
        (d2[0] * Rational(-1)).matrix());
  CHECK(equal_on_base(recompose(ring2, t, pg.steps), g));
}

TEST_CASE("peel rejects non-normalized and non-multiplicative inputs") {
  FDPtr H = ring_of("sphere:2");
  TorusBasis t = torus_basis(1);
  TensorAlgebra ring = tensor(H, torus_ring(t));
  // Scale the degree-2 class by 2: multiplicative, but dt_0 != id.
  Mat values(ring.ring->dim(), H->dim());
  values.at(ring.index[0][0], 0) = 1;
  values.at(ring.index[1][0], 1) = 2;
  ProductAutomorphism h(ring, t, values, ProductAutomorphism::Check::Shape);
  CHECK_THROWS_AS(peel(h), NotNormalized);
  PeelResult pr = peel(h, /*normalize_t0=*/true);
  CHECK(pr.residual_identity);
  for (const auto& s : pr.steps) CHECK(s.coefficient.is_zero());

  // Break Leibniz: on the su6 ring the t_3-coefficient [y6] -> [y4] with a
  // zero [z15] block is graded but not a derivation.
  FDPtr H2 = ring_of("su6_su3su3");
  TorusBasis t2 = torus_basis(2);
  TensorAlgebra ring2 = tensor(H2, torus_ring(t2));
  int y4 = H2->indices_in_degree(4)[0];
  int y6 = H2->indices_in_degree(6)[0];
  Mat K(H2->dim(), H2->dim());
  K.at(y4, y6) = 1;
  Mat bad(ring2.ring->dim(), H2->dim());
  for (int p = 0; p < H2->dim(); ++p) {
    bad.at(ring2.index[p][0], p) = 1;
    Vec kcol(H2->dim());
    for (int q = 0; q < H2->dim(); ++q) kcol[q] = K.at(q, p);
    Vec corr = ring2.ring->mul(ring2.pure(H2->unit(), 3), ring2.embed_left(kcol));
    for (int s = 0; s < ring2.ring->dim(); ++s) bad.at(s, p) += corr[s];
  }
  ProductAutomorphism h2(ring2, t2, bad, ProductAutomorphism::Check::Shape);
  CHECK_FALSE(h2.is_multiplicative());
  CHECK_THROWS_AS(peel(h2), NonMultiplicative);
}

TEST_CASE("compositions over rings whose derivations vanish on Char fix Char (x) 1") {
  // Eschenburg = S^2 x S^5: all negative derivations vanish on H^2 = Char(.,2).
  FDPtr H = ring_of("eschenburg");
  TorusBasis t = torus_basis(3);
  TensorAlgebra ring = tensor(H, torus_ring(t));
  auto d3 = derivation_space(H, -3);
  REQUIRE(!d3.empty());
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 5; ++trial) {
    ProductAutomorphism h = identity_automorphism(ring, t);
    for (int layer = 0; layer < 3; ++layer) {
      const Derivation& D = d3[rng() % d3.size()];
      h = compose(derivation_automorphism(ring, t, D, 7), h);  // t_7 = x1x2x3
    }
    CHECK(char_fixed(h, 2));
    PeelResult pr = peel(h);
    CHECK(pr.residual_identity);
    CHECK(equal_on_base(recompose(ring, t, pr.steps), h));
  }
}

TEST_CASE("randomized peel round trips across rings and torus dims") {
  std::mt19937_64 rng(2718281828);
  struct Setup {
    FDPtr H;
    int dimT;
  };
  std::vector<Setup> setups{{ring_of("yamaguchi14"), 1},
                            {ring_of("su6_su3su3"), 2},
                            {ring_of("eschenburg"), 3},
                            {ring_of("sphere:3"), 3}};
  for (const auto& setup : setups) {
    TorusBasis t = torus_basis(setup.dimT);
    TensorAlgebra ring = tensor(setup.H, torus_ring(t));
    std::vector<std::pair<Derivation, int>> layers;
    for (int i = 1; i < t.count(); ++i) {
      for (const auto& D : derivation_space(setup.H, -t.degree(i))) {
        layers.push_back({D, i});
        layers.push_back({D * Rational(-2), i});
      }
    }
    if (layers.empty()) continue;
    for (int trial = 0; trial < 5; ++trial) {
      ProductAutomorphism h = identity_automorphism(ring, t);
      int n_layers = 1 + int(rng() % 3);
      for (int l = 0; l < n_layers; ++l) {
        const auto& [D, i] = layers[rng() % layers.size()];
        h = compose(derivation_automorphism(ring, t, D, i), h);
      }
      PeelResult pr = peel(h);
      CHECK(pr.residual_identity);
      CHECK(equal_on_base(recompose(ring, t, pr.steps), h));
    }
  }
}

TEST_CASE("derivation_automorphism rejects non-Leibniz coefficient maps") {
  FDPtr H = ring_of("su6_su3su3");
  TorusBasis t = torus_basis(2);
  TensorAlgebra ring = tensor(H, torus_ring(t));
  int y4 = H->indices_in_degree(4)[0];
  int y6 = H->indices_in_degree(6)[0];
  Mat K(H->dim(), H->dim());
  K.at(y4, y6) = 1;  // graded but not a derivation (the z15 block is missing)
  Derivation bad = Derivation::make(H, -2, K, /*validate=*/false);
  CHECK_THROWS_AS(derivation_automorphism(ring, t, bad, 3), NotDerivation);
}
