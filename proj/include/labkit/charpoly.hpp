#ifndef LABKIT_CHARPOLY_HPP
#define LABKIT_CHARPOLY_HPP

#include <vector>

#include "labkit/poly.hpp"

namespace labkit {

using PolyMatrix = std::vector<std::vector<Poly>>;

/// Coefficients of det(M - T*Id) in increasing powers of T, computed with
/// Berkowitz's division-free algorithm. Entry k is the coefficient of T^k;
/// the last one is (-1)^n. Throws std::invalid_argument for non-square input.
std::vector<Poly> char_poly_det(const PolyMatrix& m);

} // namespace labkit

#endif
