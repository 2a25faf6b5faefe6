#ifndef LABKIT_SCALAR_HPP
#define LABKIT_SCALAR_HPP

#include <cstdint>
#include <cstddef>
#include <string>

#include <gmpxx.h>

namespace labkit {

/// Exact element of Q(i): a reduced rational real part and a reduced rational
/// imaginary part. Zero is 0/1 + 0/1 i.
class GaussScalar
{
public:
  GaussScalar() = default;
  GaussScalar(long value) : re_(value) {}
  GaussScalar(long num, long den);
  GaussScalar(mpq_class re, mpq_class im = 0);

  static GaussScalar imaginary_unit() { return GaussScalar(mpq_class(0), mpq_class(1)); }

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  bool is_one() const { return is_real() && re_ == 1; }

  GaussScalar conj() const { return GaussScalar(re_, -im_); }

  GaussScalar& operator+=(const GaussScalar& o);
  GaussScalar& operator-=(const GaussScalar& o);
  GaussScalar& operator*=(const GaussScalar& o);
  GaussScalar& operator/=(const GaussScalar& o);

  friend GaussScalar operator+(GaussScalar a, const GaussScalar& b) { return a += b; }
  friend GaussScalar operator-(GaussScalar a, const GaussScalar& b) { return a -= b; }
  friend GaussScalar operator*(GaussScalar a, const GaussScalar& b) { return a *= b; }
  friend GaussScalar operator/(GaussScalar a, const GaussScalar& b) { return a /= b; }
  GaussScalar operator-() const { return GaussScalar(-re_, -im_); }

  friend bool operator==(const GaussScalar& a, const GaussScalar& b)
  {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  /// Accumulates a * b into *this without temporaries for the real case.
  void add_product(const GaussScalar& a, const GaussScalar& b);

  std::size_t hash() const;

private:
  mpq_class re_{0};
  mpq_class im_{0};
};

} // namespace labkit

#endif
