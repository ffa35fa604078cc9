// Copyright 2026 The dca Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dca/matrix.hpp"

#include "dca/error.hpp"

#include <numeric>
#include <utility>

namespace dca {

RationalMatrix::RationalMatrix(
    std::initializer_list<std::initializer_list<Rational>> init) {
  rows_ = init.size();
  cols_ = rows_ == 0 ? 0 : init.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : init) {
    if (r.size() != cols_)
      throw Error(ErrorCode::InvalidArgument, "ragged matrix initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

std::vector<Rational> RationalMatrix::row(std::size_t r) const {
  return {data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
          data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

RationalMatrix
RationalMatrix::submatrix(const std::vector<std::size_t>& rows,
                          const std::vector<std::size_t>& cols) const {
  RationalMatrix s(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j)
      s(i, j) = (*this)(rows[i], cols[j]);
  return s;
}

bool RationalMatrix::is_zero() const {
  for (const auto& v : data_)
    if (sgn(v) != 0) return false;
  return true;
}

bool RationalMatrix::is_antisymmetric() const {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = r; c < cols_; ++c)
      if ((*this)(r, c) != -(*this)(c, r)) return false;
  return true;
}

bool RationalMatrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = r + 1; c < cols_; ++c)
      if ((*this)(r, c) != (*this)(c, r)) return false;
  return true;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols_ != b.rows_)
    throw Error(ErrorCode::InvalidArgument, "matrix shape mismatch");
  RationalMatrix p(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Rational& aik = a(i, k);
      if (sgn(aik) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) p(i, j) += aik * b(k, j);
    }
  return p;
}

bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

RowEchelon row_echelon(const RationalMatrix& m,
                       const std::vector<std::size_t>& column_order) {
  std::vector<std::size_t> order = column_order;
  if (order.empty()) {
    order.resize(m.cols());
    std::iota(order.begin(), order.end(), std::size_t{0});
  }
  RationalMatrix a = m;
  RationalMatrix t = RationalMatrix::identity(m.rows());
  std::vector<std::size_t> pivots;
  std::size_t lead = 0;
  for (std::size_t col : order) {
    if (lead == a.rows()) break;
    std::size_t sel = lead;
    while (sel < a.rows() && sgn(a(sel, col)) == 0) ++sel;
    if (sel == a.rows()) continue;
    if (sel != lead) {
      for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(sel, c), a(lead, c));
      for (std::size_t c = 0; c < t.cols(); ++c) std::swap(t(sel, c), t(lead, c));
    }
    const Rational inv = 1 / a(lead, col);
    for (std::size_t c = 0; c < a.cols(); ++c) a(lead, c) *= inv;
    for (std::size_t c = 0; c < t.cols(); ++c) t(lead, c) *= inv;
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == lead || sgn(a(r, col)) == 0) continue;
      const Rational f = a(r, col);
      for (std::size_t c = 0; c < a.cols(); ++c) a(r, c) -= f * a(lead, c);
      for (std::size_t c = 0; c < t.cols(); ++c) t(r, c) -= f * t(lead, c);
    }
    pivots.push_back(col);
    ++lead;
  }
  return {std::move(a), std::move(pivots), std::move(t)};
}

std::size_t rank(const RationalMatrix& m) { return row_echelon(m).pivots.size(); }

Rational determinant(const RationalMatrix& m) {
  if (m.rows() != m.cols())
    throw Error(ErrorCode::InvalidArgument, "determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  // Bareiss on the cleared-denominator integer matrix.
  mpz_class scale = 1;
  std::vector<mpz_class> a(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    mpz_class l = 1;
    for (std::size_t c = 0; c < n; ++c) {
      mpz_class den = m(r, c).get_den();
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), den.get_mpz_t());
    }
    scale *= l;
    for (std::size_t c = 0; c < n; ++c) {
      Rational v = m(r, c) * Rational(l);
      a[r * n + c] = v.get_num();
    }
  }
  int sign = 1;
  mpz_class prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k * n + k] == 0) {
      std::size_t s = k + 1;
      while (s < n && a[s * n + k] == 0) ++s;
      if (s == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(a[k * n + c], a[s * n + c]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class v = a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a[i * n + j] = v;
      }
    prev = a[k * n + k];
  }
  Rational det(mpz_class(sign * a[n * n - 1]), scale);
  det.canonicalize();
  return det;
}

std::vector<std::vector<Rational>> null_space(const RationalMatrix& m) {
  const RowEchelon e = row_echelon(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(m.cols());
    v[free] = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r)
      v[e.pivots[r]] = -e.reduced(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

RationalMatrix left_null_space(const RationalMatrix& m) {
  const auto basis = null_space(m.transpose());
  RationalMatrix rows(basis.size(), m.rows());
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < m.rows(); ++j) rows(i, j) = basis[i][j];
  return row_echelon(rows).reduced;
}

std::optional<RationalMatrix> inverse(const RationalMatrix& m) {
  if (m.rows() != m.cols())
    throw Error(ErrorCode::InvalidArgument, "inverse of non-square matrix");
  RowEchelon e = row_echelon(m);
  if (e.pivots.size() != m.rows()) return std::nullopt;
  return std::move(e.transform);
}

} // namespace dca
