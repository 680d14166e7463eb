#include <doctest.h>

#include <random>

#include "rho/linalg.hpp"

using namespace rho;
using namespace rho::linalg;

namespace {

Mat random_mat(std::mt19937_64& rng, int rows, int cols) {
  std::uniform_int_distribution<int> num(-4, 4);
  std::uniform_int_distribution<int> den(1, 3);
  Mat m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      Rational q(num(rng), den(rng));
      q.canonicalize();
      m.at(i, j) = q;
    }
  }
  return m;
}

}  // namespace

TEST_CASE("rref solves a small system exactly") {
  Mat m(2, 2);
  m.at(0, 0) = 1;
  m.at(0, 1) = 2;
  m.at(1, 0) = 3;
  m.at(1, 1) = Rational(1, 2);
  auto x = solve(m, {Rational(5), Rational(4)});
  REQUIRE(x.has_value());
  CHECK((*x)[0] * 1 + (*x)[1] * 2 == Rational(5));
  CHECK((*x)[0] * 3 + (*x)[1] * Rational(1, 2) == Rational(4));
}

TEST_CASE("inconsistent systems are detected") {
  Mat m(2, 1);
  m.at(0, 0) = 1;
  m.at(1, 0) = 1;
  CHECK_FALSE(solve(m, {Rational(0), Rational(1)}).has_value());
}

TEST_CASE("kernel vectors satisfy A x = 0 and rank-nullity holds") {
  std::mt19937_64 rng(12345);
  for (int trial = 0; trial < 20; ++trial) {
    int rows = 1 + int(rng() % 6), cols = 1 + int(rng() % 6);
    Mat m = random_mat(rng, rows, cols);
    Mat k = kernel_basis(m);
    CHECK(rank(m) + k.rows() == cols);
    for (int r = 0; r < k.rows(); ++r) {
      for (int i = 0; i < rows; ++i) {
        Rational acc = 0;
        for (int j = 0; j < cols; ++j) acc += m.at(i, j) * k.at(r, j);
        CHECK(acc == 0);
      }
    }
  }
}

TEST_CASE("row_space is canonical: span comparisons are equality") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    int rows = 2 + int(rng() % 4), cols = 2 + int(rng() % 4);
    Mat m = random_mat(rng, rows, cols);
    Mat shuffled(0, cols);
    // The same span written with scaled and permuted rows.
    for (int i = rows - 1; i >= 0; --i) shuffled.append_row(scale(m.row(i), Rational(3, 7)));
    shuffled.append_row(add(m.row(0), m.row(rows - 1)));
    CHECK(same_span(m, shuffled));
  }
}

TEST_CASE("reduce_against leaves residuals outside the span") {
  Mat m(1, 3);
  m.at(0, 0) = 1;
  m.at(0, 2) = 2;
  Mat rr = row_space(m);
  CHECK(in_span(rr, {Rational(2), Rational(0), Rational(4)}));
  CHECK_FALSE(in_span(rr, {Rational(2), Rational(1), Rational(4)}));
  Vec red = reduce_against(rr, {Rational(2), Rational(1), Rational(4)});
  CHECK(red[0] == 0);
  CHECK(red[1] == 1);
}
