#include "labkit/charpoly.hpp"

#include <stdexcept>

namespace labkit {

std::vector<Poly> char_poly_det(const PolyMatrix& m)
{
  const std::size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n)
      throw std::invalid_argument("char_poly_det: matrix is not square");

  // v holds det(T*Id - A_r) for the leading r x r block, highest power first.
  std::vector<Poly> v{Poly(1)};
  for (std::size_t r = 1; r <= n; ++r) {
    const std::size_t last = r - 1;
    std::vector<Poly> col(r + 1);
    col[0] = Poly(1);
    col[1] = -m[last][last];

    std::vector<Poly> w(last);
    for (std::size_t i = 0; i < last; ++i)
      w[i] = m[i][last];
    for (std::size_t k = 2; k <= r; ++k) {
      PolyAccumulator acc;
      for (std::size_t j = 0; j < last; ++j)
        acc.add_product(m[last][j], w[j]);
      col[k] = -acc.take();
      if (k == r)
        break;
      std::vector<Poly> next(last);
      for (std::size_t i = 0; i < last; ++i) {
        PolyAccumulator row;
        for (std::size_t j = 0; j < last; ++j)
          row.add_product(m[i][j], w[j]);
        next[i] = row.take();
      }
      w = std::move(next);
    }

    std::vector<Poly> nv(r + 1);
    for (std::size_t i = 0; i <= r; ++i) {
      PolyAccumulator acc;
      for (std::size_t j = 0; j <= std::min(i, r - 1); ++j)
        acc.add_product(col[i - j], v[j]);
      nv[i] = acc.take();
    }
    v = std::move(nv);
  }

  std::vector<Poly> coeffs(n + 1);
  const GaussScalar sign((n % 2 == 0) ? 1 : -1);
  for (std::size_t k = 0; k <= n; ++k)
    coeffs[k] = v[n - k] * sign;
  return coeffs;
}

} // namespace labkit
