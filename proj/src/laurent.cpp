#include "fv/laurent.hpp"

#include <algorithm>
#include <stdexcept>

namespace fv {

Laurent Laurent::inv_linear(const Gq& a, int rel) {
  if (a.is_zero()) return Laurent(-1, {Gq(1)}, kInf);
  std::vector<Gq> c;
  const Gq ia = a.inverse();
  Gq t = ia;
  for (int j = 0; j < rel; ++j) {
    c.push_back(t);
    t = -t * ia;
  }
  return Laurent(0, std::move(c), rel);
}

Gq Laurent::coeff(int e) const {
  if (e >= prec_) throw std::out_of_range("Laurent: coefficient beyond known precision");
  const int i = e - val_;
  if (i < 0 || i >= static_cast<int>(c_.size())) return Gq();
  return c_[i];
}

int Laurent::order() const {
  for (int i = 0; i < static_cast<int>(c_.size()) && val_ + i < prec_; ++i) {
    if (!c_[i].is_zero()) return val_ + i;
  }
  return prec_;
}

Laurent Laurent::operator-() const {
  Laurent r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

Laurent operator+(const Laurent& a, const Laurent& b) {
  const int prec = std::min(a.prec_, b.prec_);
  const int lo = std::min(a.val_, b.val_);
  const int hi = std::min(prec, std::max(a.val_ + static_cast<int>(a.c_.size()), b.val_ + static_cast<int>(b.c_.size())));
  std::vector<Gq> c;
  for (int e = lo; e < hi; ++e) c.push_back(a.coeff(e) + b.coeff(e));
  return Laurent(lo, std::move(c), prec);
}

Laurent operator*(const Laurent& a, const Laurent& b) {
  const int prec = std::min(a.prec_ >= Laurent::kInf ? Laurent::kInf : a.prec_ + b.val_,
                            b.prec_ >= Laurent::kInf ? Laurent::kInf : b.prec_ + a.val_);
  const int val = a.val_ + b.val_;
  const int na = static_cast<int>(a.c_.size()), nb = static_cast<int>(b.c_.size());
  const int len = std::max(0, std::min(na + nb - 1, prec - val));
  std::vector<Gq> c(len);
  for (int i = 0; i < na; ++i) {
    if (a.c_[i].is_zero()) continue;
    for (int j = 0; j < nb && i + j < len; ++j) {
      if (!b.c_[j].is_zero()) c[i + j] += a.c_[i] * b.c_[j];
    }
  }
  return Laurent(val, std::move(c), prec);
}

Laurent operator*(Laurent a, const Gq& s) {
  for (auto& x : a.c_) x *= s;
  return a;
}

Laurent Laurent::inverse(int rel) const {
  const int v = order();
  if (v >= prec_) throw DivisionByZero("Laurent: inverse of series with no known nonzero term");
  const int n = std::min(rel, prec_ >= kInf ? rel : prec_ - v);
  const Gq lead_inv = coeff(v).inverse();
  // unit u = sum_i coeff(v+i) eps^i, inverse by the standard recurrence
  std::vector<Gq> r(n);
  if (n > 0) r[0] = lead_inv;
  for (int i = 1; i < n; ++i) {
    Gq s;
    for (int j = 1; j <= i; ++j) s += coeff(v + j) * r[i - j];
    r[i] = -s * lead_inv;
  }
  return Laurent(-v, std::move(r), -v + n);
}

}  // namespace fv
