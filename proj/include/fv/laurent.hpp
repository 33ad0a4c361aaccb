#pragma once

#include <vector>

#include "fv/gaussian.hpp"

namespace fv {

/// Truncated Laurent series in eps with exact Q(i) coefficients.
///
/// Coefficients are known for exponents < prec(); prec() == kInf marks an exact
/// (polynomial) value.
class Laurent {
 public:
  static constexpr int kInf = 1 << 28;

  Laurent() = default;
  explicit Laurent(Gq c) : val_(0), c_{std::move(c)} {}
  Laurent(int val, std::vector<Gq> coeffs, int prec) : val_(val), prec_(prec), c_(std::move(coeffs)) {}

  /// a + eps, exact.
  static Laurent linear(Gq a) { return Laurent(0, {std::move(a), Gq(1)}, kInf); }
  /// 1/(a + eps) with `rel` known terms (or eps^{-1} exactly when a = 0).
  static Laurent inv_linear(const Gq& a, int rel);

  int val() const { return val_; }
  int prec() const { return prec_; }
  Gq coeff(int e) const;
  /// Smallest exponent with a nonzero coefficient below prec (prec if none).
  int order() const;

  Laurent operator-() const;
  friend Laurent operator+(const Laurent& a, const Laurent& b);
  friend Laurent operator-(const Laurent& a, const Laurent& b) { return a + (-b); }
  friend Laurent operator*(const Laurent& a, const Laurent& b);
  friend Laurent operator*(Laurent a, const Gq& s);
  Laurent inverse(int rel) const;

 private:
  int val_ = 0;
  int prec_ = kInf;
  std::vector<Gq> c_;
};

}  // namespace fv
