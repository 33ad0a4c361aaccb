#include "fv/gaussian.hpp"

#include <ostream>

namespace fv {

Gq Gq::i_pow(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return Gq(1);
    case 1: return i();
    case 2: return Gq(-1);
    default: return -i();
  }
}

Gq& Gq::operator+=(const Gq& o) {
  re_ += o.re_;
  if (!o.im_.is_zero()) im_ += o.im_;
  return *this;
}

Gq& Gq::operator-=(const Gq& o) {
  re_ -= o.re_;
  if (!o.im_.is_zero()) im_ -= o.im_;
  return *this;
}

Gq operator*(const Gq& a, const Gq& b) {
  if (a.im_.is_zero()) {
    if (b.im_.is_zero()) return Gq(a.re_ * b.re_);
    return Gq(a.re_ * b.re_, a.re_ * b.im_);
  }
  if (b.im_.is_zero()) return Gq(a.re_ * b.re_, a.im_ * b.re_);
  return Gq(a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_);
}

Gq Gq::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero in Q(i)");
  if (im_.is_zero()) return Gq(re_.inverse());
  const Rational n = norm();
  return Gq(re_ / n, -im_ / n);
}

Gq Gq::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  Gq result(1);
  Gq base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

std::string Gq::str() const {
  auto bare = [](const Rational& r) { return r.is_integer() ? r.numerator().get_str() : r.str(); };
  if (im_.is_zero()) return bare(re_);
  std::string imag = im_.is_one() ? "i" : (-im_).is_one() ? "-i" : bare(im_) + "*i";
  if (re_.is_zero()) return imag;
  if (imag[0] != '-') imag = "+" + imag;
  return "(" + bare(re_) + imag + ")";
}

std::ostream& operator<<(std::ostream& os, const Gq& z) { return os << z.str(); }

}  // namespace fv
