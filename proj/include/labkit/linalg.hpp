#ifndef LABKIT_LINALG_HPP
#define LABKIT_LINALG_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "labkit/scalar.hpp"

namespace labkit {

// Small dense exact linear algebra over Q(i), row-major.
using ScalarVector = std::vector<GaussScalar>;
using ScalarMatrix = std::vector<ScalarVector>;

ScalarMatrix identity_matrix(std::size_t n);

std::size_t rank(ScalarMatrix m);

/// Inverse of a square matrix; nullopt if singular.
std::optional<ScalarMatrix> inverse(const ScalarMatrix& m);

/// Coordinates of v in the span of the given rows; nullopt if v is outside
/// the span. Rows are assumed linearly independent.
class RowSpan
{
public:
  explicit RowSpan(const ScalarMatrix& rows);

  std::size_t rank() const { return pivots_.size(); }
  bool independent() const { return pivots_.size() == nrows_; }
  std::optional<ScalarVector> coordinates(const ScalarVector& v) const;

private:
  std::size_t nrows_;
  // Reduced row echelon form of the rows, and the transform expressing each
  // echelon row in terms of the original rows.
  ScalarMatrix echelon_;
  ScalarMatrix transform_;
  std::vector<std::size_t> pivots_;
};

} // namespace labkit

#endif
