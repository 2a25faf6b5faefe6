#include "labkit/linalg.hpp"

#include <stdexcept>
#include <utility>

namespace labkit {

ScalarMatrix identity_matrix(std::size_t n)
{
  ScalarMatrix m(n, ScalarVector(n));
  for (std::size_t i = 0; i < n; ++i)
    m[i][i] = GaussScalar(1);
  return m;
}

std::size_t rank(ScalarMatrix m)
{
  if (m.empty())
    return 0;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c].is_zero())
      ++p;
    if (p == rows)
      continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (m[i][c].is_zero())
        continue;
      GaussScalar f = m[i][c] / m[r][c];
      for (std::size_t j = c; j < cols; ++j)
        m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

std::optional<ScalarMatrix> inverse(const ScalarMatrix& m)
{
  const std::size_t n = m.size();
  ScalarMatrix a = m;
  ScalarMatrix inv = identity_matrix(n);
  for (std::size_t c = 0; c < n; ++c) {
    if (a[c].size() != n)
      throw std::invalid_argument("inverse: matrix is not square");
    std::size_t p = c;
    while (p < n && a[p][c].is_zero())
      ++p;
    if (p == n)
      return std::nullopt;
    std::swap(a[p], a[c]);
    std::swap(inv[p], inv[c]);
    GaussScalar piv = a[c][c];
    for (std::size_t j = 0; j < n; ++j) {
      a[c][j] /= piv;
      inv[c][j] /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a[i][c].is_zero())
        continue;
      GaussScalar f = a[i][c];
      for (std::size_t j = 0; j < n; ++j) {
        a[i][j] -= f * a[c][j];
        inv[i][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

RowSpan::RowSpan(const ScalarMatrix& rows) : nrows_(rows.size())
{
  echelon_ = rows;
  transform_ = identity_matrix(nrows_);
  if (rows.empty())
    return;
  const std::size_t cols = rows[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < nrows_; ++c) {
    std::size_t p = r;
    while (p < nrows_ && echelon_[p][c].is_zero())
      ++p;
    if (p == nrows_)
      continue;
    std::swap(echelon_[p], echelon_[r]);
    std::swap(transform_[p], transform_[r]);
    GaussScalar piv = echelon_[r][c];
    for (std::size_t j = 0; j < cols; ++j)
      echelon_[r][j] /= piv;
    for (auto& t : transform_[r])
      t /= piv;
    for (std::size_t i = 0; i < nrows_; ++i) {
      if (i == r || echelon_[i][c].is_zero())
        continue;
      GaussScalar f = echelon_[i][c];
      for (std::size_t j = 0; j < cols; ++j)
        echelon_[i][j] -= f * echelon_[r][j];
      for (std::size_t j = 0; j < nrows_; ++j)
        transform_[i][j] -= f * transform_[r][j];
    }
    pivots_.push_back(c);
    ++r;
  }
}

std::optional<ScalarVector> RowSpan::coordinates(const ScalarVector& v) const
{
  ScalarVector residual = v;
  ScalarVector coords(nrows_);
  for (std::size_t r = 0; r < pivots_.size(); ++r) {
    GaussScalar f = residual[pivots_[r]];
    if (f.is_zero())
      continue;
    for (std::size_t j = 0; j < residual.size(); ++j)
      residual[j] -= f * echelon_[r][j];
    for (std::size_t j = 0; j < nrows_; ++j)
      coords[j] += f * transform_[r][j];
  }
  for (const auto& x : residual)
    if (!x.is_zero())
      return std::nullopt;
  return coords;
}

} // namespace labkit
