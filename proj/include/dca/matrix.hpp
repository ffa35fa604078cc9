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

#pragma once

#include "dca/rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <vector>

namespace dca {

/// Dense row-major matrix over exact rationals. Sizes are tiny (a handful of
/// constraints), so everything is plain Gauss-Jordan on mpq values.
class RationalMatrix {
public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  RationalMatrix(std::initializer_list<std::initializer_list<Rational>> init);

  static RationalMatrix identity(std::size_t n);

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
  [[nodiscard]] bool empty() const noexcept { return data_.empty(); }

  Rational& operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }
  const Rational& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  [[nodiscard]] std::vector<Rational> row(std::size_t r) const;
  [[nodiscard]] RationalMatrix transpose() const;
  [[nodiscard]] RationalMatrix submatrix(const std::vector<std::size_t>& rows,
                                         const std::vector<std::size_t>& cols) const;

  [[nodiscard]] bool is_zero() const;
  [[nodiscard]] bool is_antisymmetric() const;
  [[nodiscard]] bool is_symmetric() const;

  friend RationalMatrix operator*(const RationalMatrix& a,
                                  const RationalMatrix& b);
  friend bool operator==(const RationalMatrix& a, const RationalMatrix& b);

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

struct RowEchelon {
  RationalMatrix reduced;            ///< reduced row echelon form
  std::vector<std::size_t> pivots;   ///< pivot column of each nonzero row
  RationalMatrix transform;          ///< T with T * input == reduced
};

/// Reduced row echelon form. Columns are scanned in `column_order` when given
/// (so callers can prefer some variables as pivots); otherwise left to right.
RowEchelon row_echelon(const RationalMatrix& m,
                       const std::vector<std::size_t>& column_order = {});

std::size_t rank(const RationalMatrix& m);

/// Determinant by fraction-free (Bareiss) elimination.
Rational determinant(const RationalMatrix& m);

/// Basis of {v : m v = 0}, one vector per free column, in RREF order.
std::vector<std::vector<Rational>> null_space(const RationalMatrix& m);

/// Basis of {w : w^T m = 0} as the rows of an RREF matrix.
RationalMatrix left_null_space(const RationalMatrix& m);

/// Exact inverse; nullopt when singular.
std::optional<RationalMatrix> inverse(const RationalMatrix& m);

} // namespace dca
