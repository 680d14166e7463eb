#include <doctest.h>

#include <random>

#include "rho/gca.hpp"

using namespace rho;

namespace {

// The free algebra behind the SU(6)/(SU(3)xSU(3)) model.
GcaPtr su6_alg() {
  return FreeGCA::make({{"y4", 4}, {"y6", 6}, {"x7", 7}, {"x9", 9}, {"x11", 11}});
}

Element random_element(std::mt19937_64& rng, const GcaPtr& alg, int max_degree) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  Element x(alg);
  for (int deg = 0; deg <= max_degree; ++deg) {
    for (const auto& m : alg->basis_in_degree(deg)) {
      if (rng() % 3 == 0) x.add_term(m, coeff(rng));
    }
  }
  return x;
}

Element random_homogeneous(std::mt19937_64& rng, const GcaPtr& alg, int degree) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  Element x(alg);
  for (const auto& m : alg->basis_in_degree(degree)) x.add_term(m, coeff(rng));
  return x;
}

}  // namespace

TEST_CASE("products carry the Koszul sign") {
  auto alg = su6_alg();
  Element y4 = Element::gen(alg, 0);
  Element x7 = Element::gen(alg, 2);
  Element x9 = Element::gen(alg, 3);
  CHECK(y4 * x7 == x7 * y4);       // even * odd commutes
  CHECK(x7 * x9 == -(x9 * x7));    // odd * odd anticommutes
  CHECK((x7 * x9).terms().size() == 1);

  Element y6 = Element::gen(alg, 1);
  Element s = y4 + y6;
  Element sq = s * s;
  CHECK(sq == y4 * y4 + Rational(2) * (y4 * y6) + y6 * y6);
}

TEST_CASE("odd generators square to zero") {
  auto alg = su6_alg();
  for (int i : {2, 3, 4}) {
    Element g = Element::gen(alg, i);
    CHECK((g * g).is_zero());
  }
}

TEST_CASE("basis_in_degree enumerates in canonical order") {
  auto alg = su6_alg();
  auto deg8 = alg->basis_in_degree(8);
  REQUIRE(deg8.size() == 1);
  CHECK(monomial_str(*alg, deg8[0]) == "y4^2");

  auto deg11 = alg->basis_in_degree(11);
  REQUIRE(deg11.size() == 2);
  CHECK(monomial_str(*alg, deg11[0]) == "y4*x7");
  CHECK(monomial_str(*alg, deg11[1]) == "x11");

  auto deg12 = alg->basis_in_degree(12);
  REQUIRE(deg12.size() == 2);
  CHECK(monomial_str(*alg, deg12[0]) == "y4^3");
  CHECK(monomial_str(*alg, deg12[1]) == "y6^2");

  CHECK(alg->basis_in_degree(1).empty());
  CHECK(alg->basis_in_degree(0).size() == 1);
}

TEST_CASE("mixed-algebra operands are rejected") {
  auto a = su6_alg();
  auto b = su6_alg();  // structurally equal, different identity
  CHECK_THROWS_AS(Element::gen(a, 0) * Element::gen(b, 0), MixedAlgebras);
}

TEST_CASE("morphism: Bazaikin map and identities") {
  auto baz = FreeGCA::make({{"x2", 2}, {"y5", 5}, {"y9", 9}});
  Element x2 = Element::gen(baz, 0);
  Element y5 = Element::gen(baz, 1);
  Element y9 = Element::gen(baz, 2);

  auto map_for = [&](int l) {
    return AlgebraMorphism(baz, baz, {x2, y5, y9 - Rational(l) * (y5 * x2 * x2)});
  };

  // l = 2: y9 -> y9 - 2 y5 x2^2
  Element img = map_for(2).apply(y9);
  CHECK(img == y9 - Rational(2) * (y5 * x2.pow(2)));

  // identity morphism
  AlgebraMorphism id = AlgebraMorphism::identity(baz);
  std::mt19937_64 rng(7);
  for (int t = 0; t < 10; ++t) {
    Element x = random_element(rng, baz, 16);
    CHECK(id.apply(x) == x);
  }

  // l = 1 on y5*y9: the y5^2 term dies
  Element v = map_for(1).apply(y5 * y9);
  CHECK(v == y5 * y9);
}

TEST_CASE("morphism images must be homogeneous of the generator degree") {
  auto baz = FreeGCA::make({{"x2", 2}, {"y5", 5}, {"y9", 9}});
  Element x2 = Element::gen(baz, 0);
  Element y5 = Element::gen(baz, 1);
  Element y9 = Element::gen(baz, 2);
  CHECK_THROWS_AS(AlgebraMorphism(baz, baz, {x2, y5, y5}), DegreeMismatch);
}

TEST_CASE("graded commutativity on random homogeneous pairs") {
  auto alg = su6_alg();
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 40; ++t) {
    int p = 4 + int(rng() % 10);
    int q = 4 + int(rng() % 10);
    Element x = random_homogeneous(rng, alg, p);
    Element y = random_homogeneous(rng, alg, q);
    Element lhs = x * y;
    Element rhs = y * x;
    if (p % 2 && q % 2) rhs = -rhs;
    CHECK(lhs == rhs);
  }
}

TEST_CASE("associativity on random monomial triples") {
  auto alg = su6_alg();
  std::mt19937_64 rng(77);
  std::vector<Monomial> pool;
  for (int deg = 0; deg <= 13; ++deg)
    for (const auto& m : alg->basis_in_degree(deg)) pool.push_back(m);
  for (int t = 0; t < 60; ++t) {
    Element a = Element::term(alg, pool[rng() % pool.size()], Rational(int(rng() % 5) - 2));
    Element b = Element::term(alg, pool[rng() % pool.size()], 1);
    Element c = Element::term(alg, pool[rng() % pool.size()], Rational(1, 3));
    CHECK((a * b) * c == a * (b * c));
  }
}

TEST_CASE("morphisms distribute over products") {
  auto baz = FreeGCA::make({{"x2", 2}, {"y5", 5}, {"y9", 9}});
  Element x2 = Element::gen(baz, 0);
  Element y5 = Element::gen(baz, 1);
  Element y9 = Element::gen(baz, 2);
  AlgebraMorphism phi(baz, baz, {x2, y5, y9 + Rational(3) * (y5 * x2 * x2)});
  std::mt19937_64 rng(5150);
  for (int t = 0; t < 20; ++t) {
    Element x = random_element(rng, baz, 12);
    Element y = random_element(rng, baz, 12);
    CHECK(phi.apply(x * y) == phi.apply(x) * phi.apply(y));
  }
}

TEST_CASE("homogeneity queries treat zero as every degree") {
  auto alg = su6_alg();
  Element z = Element::zero(alg);
  CHECK(z.is_homogeneous_of(4));
  CHECK(z.is_homogeneous_of(11));
  CHECK_FALSE(z.homogeneous_degree().has_value());
  Element mixed = Element::gen(alg, 0) + Element::gen(alg, 1);
  CHECK_FALSE(mixed.is_homogeneous());
}
