#include "rho/linalg.hpp"

#include <cassert>
#include <stdexcept>

namespace rho::linalg {

void Mat::set_row(int i, const Vec& v) {
  assert(int(v.size()) == cols_);
  std::copy(v.begin(), v.end(), a_.begin() + size_t(i) * cols_);
}

void Mat::append_row(const Vec& v) {
  if (rows_ == 0 && cols_ == 0) cols_ = int(v.size());
  if (int(v.size()) != cols_) throw std::invalid_argument("append_row: width mismatch");
  a_.insert(a_.end(), v.begin(), v.end());
  ++rows_;
}

Mat Mat::from_rows(const std::vector<Vec>& rows, int cols) {
  Mat m(0, 0);
  m.cols_ = cols;
  for (const auto& r : rows) m.append_row(r);
  return m;
}

Mat Mat::identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

std::vector<int> rref_in_place(Mat& m) {
  std::vector<int> pivots;
  int pr = 0;
  for (int c = 0; c < m.cols() && pr < m.rows(); ++c) {
    int piv = -1;
    for (int r = pr; r < m.rows(); ++r) {
      if (m.at(r, c) != 0) { piv = r; break; }
    }
    if (piv < 0) continue;
    if (piv != pr) {
      for (int j = 0; j < m.cols(); ++j) std::swap(m.at(piv, j), m.at(pr, j));
    }
    Rational inv = m.at(pr, c);
    for (int j = c; j < m.cols(); ++j) {
      if (m.at(pr, j) != 0) m.at(pr, j) /= inv;
    }
    for (int r = 0; r < m.rows(); ++r) {
      if (r == pr || m.at(r, c) == 0) continue;
      Rational f = m.at(r, c);
      for (int j = c; j < m.cols(); ++j) {
        if (m.at(pr, j) != 0) m.at(r, j) -= f * m.at(pr, j);
      }
    }
    pivots.push_back(c);
    ++pr;
  }
  return pivots;
}

Mat row_space(Mat m) {
  auto pivots = rref_in_place(m);
  Mat res(int(pivots.size()), m.cols());
  for (int i = 0; i < int(pivots.size()); ++i)
    for (int j = 0; j < m.cols(); ++j) res.at(i, j) = m.at(i, j);
  return res;
}

int rank(Mat m) { return int(rref_in_place(m).size()); }

Mat kernel_basis(const Mat& m) {
  Mat r = m;
  auto pivots = rref_in_place(r);
  std::vector<bool> is_pivot(m.cols(), false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<Vec> rows;
  for (int f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vec v(m.cols());
    v[f] = 1;
    for (int i = 0; i < int(pivots.size()); ++i) v[pivots[i]] = -r.at(i, f);
    rows.push_back(std::move(v));
  }
  Mat k = Mat::from_rows(rows, m.cols());
  rref_in_place(k);
  return k;
}

std::optional<Vec> solve(const Mat& m, const Vec& b) {
  if (int(b.size()) != m.rows()) throw std::invalid_argument("solve: size mismatch");
  Mat aug(m.rows(), m.cols() + 1);
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols()) = b[i];
  }
  auto pivots = rref_in_place(aug);
  Vec x(m.cols());
  for (int i = 0; i < int(pivots.size()); ++i) {
    if (pivots[i] == m.cols()) return std::nullopt;  // pivot in RHS column
    x[pivots[i]] = aug.at(i, m.cols());
  }
  return x;
}

Vec reduce_against(const Mat& rr, Vec v) {
  for (int i = 0; i < rr.rows(); ++i) {
    int lead = -1;
    for (int c = 0; c < rr.cols(); ++c) {
      if (rr.at(i, c) != 0) { lead = c; break; }
    }
    if (lead < 0 || v[lead] == 0) continue;
    Rational f = v[lead];
    for (int c = lead; c < rr.cols(); ++c) {
      if (rr.at(i, c) != 0) v[c] -= f * rr.at(i, c);
    }
  }
  return v;
}

bool in_span(const Mat& rr, const Vec& v) { return is_zero(reduce_against(rr, v)); }

Mat span_union(const Mat& rr, const std::vector<Vec>& more) {
  Mat m = rr;
  for (const auto& v : more) m.append_row(v);
  return row_space(std::move(m));
}

bool same_span(const Mat& a, const Mat& b) { return row_space(a) == row_space(b); }

Vec add(const Vec& a, const Vec& b) {
  Vec r = a;
  for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

Vec sub(const Vec& a, const Vec& b) {
  Vec r = a;
  for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

Vec scale(const Vec& a, const Rational& c) {
  Vec r = a;
  for (auto& x : r) x *= c;
  return r;
}

bool is_zero(const Vec& a) {
  for (const auto& x : a)
    if (x != 0) return false;
  return true;
}

}  // namespace rho::linalg
