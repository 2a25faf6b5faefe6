#ifndef LABKIT_REPRESENTATION_HPP
#define LABKIT_REPRESENTATION_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "labkit/enveloping.hpp"
#include "labkit/lie_algebra.hpp"
#include "labkit/linalg.hpp"

namespace labkit {

/// Matrix representation of a Lie algebra reduced modulo modular::kPrime and
/// stored sparsely. Elements of U(g) act on vectors through their images, so a
/// nonzero image is a proof that the element is nonzero; a zero image proves
/// nothing.
class ModularRepresentation
{
public:
  using Vec = std::vector<std::uint64_t>;

  /// images[k] is the matrix of generator k. Throws std::invalid_argument on a
  /// shape mismatch or if some bracket is not respected (checked exactly).
  ModularRepresentation(const LieAlgebra& alg, const std::vector<ScalarMatrix>& images);

  static ModularRepresentation adjoint(const LieAlgebra& alg);
  /// The representation rho (x) 1 + 1 (x) sigma on the tensor product.
  static ModularRepresentation tensor(const ModularRepresentation& a,
                                      const ModularRepresentation& b);

  std::size_t dim() const { return dim_; }
  std::size_t algebra_dim() const { return gens_.size(); }

  Vec apply(std::size_t generator, const Vec& v) const;
  /// X_{w[0]} ... X_{w[n-1]} v (the last letter acts first).
  Vec apply(const Word& w, const Vec& v) const;
  Vec apply(const NCPoly& p, const Vec& v) const;
  /// Image of the symmetrization of f applied to v, without normal ordering.
  Vec apply_symmetrized(const Poly& f, const Vec& v) const;

private:
  ModularRepresentation() = default;

  struct Entry
  {
    std::uint32_t row, col;
    std::uint64_t c;
  };
  std::size_t dim_ = 0;
  std::vector<std::vector<Entry>> gens_;
};

struct RepresentationWitness
{
  std::size_t rep_dim = 0;
  std::uint64_t seed = 0;
  /// Components of [rho L(f), rho L(g)] v that are nonzero mod p.
  std::size_t nonzero_components = 0;
};

/// Evaluates [rho L(f), rho L(g)] at one seeded random vector. A result is
/// returned only when the image is nonzero, which proves [L(f), L(g)] != 0.
std::optional<RepresentationWitness> noncommutation_witness(const ModularRepresentation& rep,
                                                            const Poly& f, const Poly& g,
                                                            std::uint64_t seed = 0);

} // namespace labkit

#endif
