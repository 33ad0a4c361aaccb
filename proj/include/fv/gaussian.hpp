#pragma once

#include <iosfwd>
#include <string>

#include "fv/rational.hpp"

namespace fv {

/// Exact element of Q(i).
class Gq {
 public:
  Gq() = default;
  Gq(Rational re) : re_(std::move(re)) {}  // NOLINT(google-explicit-constructor)
  Gq(std::int64_t n) : re_(n) {}           // NOLINT(google-explicit-constructor)
  Gq(int n) : re_(n) {}                    // NOLINT(google-explicit-constructor)
  Gq(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  static Gq i() { return Gq(Rational(0), Rational(1)); }
  /// i^k for any integer k.
  static Gq i_pow(int k);

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }
  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_one() const { return re_.is_one() && im_.is_zero(); }
  bool is_real() const { return im_.is_zero(); }

  Gq conj() const { return Gq(re_, -im_); }
  Rational norm() const { return re_ * re_ + im_ * im_; }
  Gq inverse() const;
  Gq pow(int e) const;

  Gq operator-() const { return Gq(-re_, -im_); }
  Gq& operator+=(const Gq& o);
  Gq& operator-=(const Gq& o);
  Gq& operator*=(const Gq& o) { return *this = *this * o; }
  Gq& operator/=(const Gq& o) { return *this = *this / o; }

  friend Gq operator+(Gq a, const Gq& b) { return a += b; }
  friend Gq operator-(Gq a, const Gq& b) { return a -= b; }
  friend Gq operator*(const Gq& a, const Gq& b);
  friend Gq operator/(const Gq& a, const Gq& b) { return a * b.inverse(); }
  friend bool operator==(const Gq& a, const Gq& b) = default;

  /// Total order (re first, then im) for canonical output only.
  friend bool lex_less(const Gq& a, const Gq& b) {
    if (a.re_ != b.re_) return a.re_ < b.re_;
    return a.im_ < b.im_;
  }

  std::string str() const;

 private:
  Rational re_;
  Rational im_;
};

std::ostream& operator<<(std::ostream& os, const Gq& z);

}  // namespace fv
