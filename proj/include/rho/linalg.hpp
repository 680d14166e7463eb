#pragma once

#include <optional>
#include <vector>

#include "rho/rational.hpp"

namespace rho::linalg {

using Vec = std::vector<Rational>;

// Dense matrix over exact rationals. Small sizes only; the elimination kernel
// below is the workhorse behind every cohomology and derivation solve.
class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Rational& at(int i, int j) { return a_[size_t(i) * cols_ + j]; }
  const Rational& at(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

  Vec row(int i) const { return Vec(a_.begin() + size_t(i) * cols_, a_.begin() + size_t(i + 1) * cols_); }
  void set_row(int i, const Vec& v);
  void append_row(const Vec& v);

  static Mat from_rows(const std::vector<Vec>& rows, int cols);
  static Mat identity(int n);

  bool operator==(const Mat&) const = default;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Rational> a_;
};

// Reduced row echelon form, in place. Pivot choice is the first nonzero entry
// in column order, so the result is canonical for the row space.
// Returns the pivot columns.
std::vector<int> rref_in_place(Mat& m);

// RREF with zero rows dropped: the canonical basis of the row space.
Mat row_space(Mat m);

int rank(Mat m);

// Canonical (RREF) basis of {x : m x = 0}, one row per basis vector.
Mat kernel_basis(const Mat& m);

// One solution of m x = b, or nullopt if inconsistent.
std::optional<Vec> solve(const Mat& m, const Vec& b);

// The following operate on canonical row-space matrices (output of row_space).
Vec reduce_against(const Mat& rr, Vec v);
bool in_span(const Mat& rr, const Vec& v);
Mat span_union(const Mat& rr, const std::vector<Vec>& more);
bool same_span(const Mat& a, const Mat& b);

Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scale(const Vec& a, const Rational& c);
bool is_zero(const Vec& a);

}  // namespace rho::linalg
