#include "labkit/scalar.hpp"

#include <functional>
#include <stdexcept>

namespace labkit {

GaussScalar::GaussScalar(long num, long den)
{
  if (den == 0)
    throw std::domain_error("GaussScalar: zero denominator");
  re_ = mpq_class(num, den);
  re_.canonicalize();
}

GaussScalar::GaussScalar(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im))
{
  re_.canonicalize();
  im_.canonicalize();
}

GaussScalar& GaussScalar::operator+=(const GaussScalar& o)
{
  re_ += o.re_;
  if (sgn(o.im_) != 0)
    im_ += o.im_;
  return *this;
}

GaussScalar& GaussScalar::operator-=(const GaussScalar& o)
{
  re_ -= o.re_;
  if (sgn(o.im_) != 0)
    im_ -= o.im_;
  return *this;
}

GaussScalar& GaussScalar::operator*=(const GaussScalar& o)
{
  if (is_real() && o.is_real()) {
    re_ *= o.re_;
    return *this;
  }
  mpq_class re = re_ * o.re_ - im_ * o.im_;
  mpq_class im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussScalar& GaussScalar::operator/=(const GaussScalar& o)
{
  if (o.is_zero())
    throw std::domain_error("GaussScalar: division by zero");
  if (o.is_real()) {
    re_ /= o.re_;
    if (sgn(im_) != 0)
      im_ /= o.re_;
    return *this;
  }
  mpq_class norm = o.re_ * o.re_ + o.im_ * o.im_;
  *this *= o.conj();
  re_ /= norm;
  im_ /= norm;
  return *this;
}

void GaussScalar::add_product(const GaussScalar& a, const GaussScalar& b)
{
  if (a.is_real() && b.is_real()) {
    mpq_class t = a.re_ * b.re_;
    re_ += t;
    return;
  }
  *this += a * b;
}

std::size_t GaussScalar::hash() const
{
  auto h = [](const mpq_class& q) {
    return std::hash<std::string>{}(q.get_str(16));
  };
  return h(re_) * 1000003u ^ h(im_);
}

} // namespace labkit
