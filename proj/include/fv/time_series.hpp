#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fv/gaussian.hpp"

namespace fv {

/// Monomial basis in the times x^{alpha,k} (alpha = 1, 2; 0 <= k <= k_max) of total degree <= deg.
/// Exponent vectors are packed four bits per variable.
class TimeSpace {
 public:
  TimeSpace(int k_max, int deg, int q_cut);

  int k_max() const { return k_max_; }
  int deg() const { return deg_; }
  int q_cut() const { return q_cut_; }
  int nvars() const { return 2 * (k_max_ + 1); }
  int nmono() const { return static_cast<int>(packed_.size()); }

  int var(int alpha, int k) const { return (alpha - 1) * (k_max_ + 1) + k; }
  std::pair<int, int> var_label(int v) const { return {v / (k_max_ + 1) + 1, v % (k_max_ + 1)}; }

  int degree(int mono) const { return degree_[mono]; }
  int exponent(int mono, int v) const { return static_cast<int>((packed_[mono] >> (4 * v)) & 0xF); }
  /// Index of the monomial with the given exponents, or -1 when its degree exceeds the cut.
  int index(const std::vector<int>& exps) const;
  int index_packed(std::uint64_t p) const;
  std::uint64_t packed(int mono) const { return packed_[mono]; }

  /// (j, i*j) for every j with deg(i) + deg(j) <= deg.
  const std::vector<std::pair<int, int>>& partners(int i) const { return partners_[i]; }

 private:
  int k_max_, deg_, q_cut_;
  std::vector<std::uint64_t> packed_;
  std::vector<int> degree_;
  std::unordered_map<std::uint64_t, int> lookup_;
  std::vector<std::vector<std::pair<int, int>>> partners_;
};

using TimeSpacePtr = std::shared_ptr<const TimeSpace>;

/// Truncated power series in the times with q-series coefficients (q^0 .. q^{q_cut}).
class TimeSeries {
 public:
  TimeSeries() = default;
  explicit TimeSeries(TimeSpacePtr space);
  static TimeSeries constant(TimeSpacePtr space, const Gq& c);
  static TimeSeries q_constant(TimeSpacePtr space, const std::vector<Gq>& series);
  static TimeSeries variable(TimeSpacePtr space, int alpha, int k);

  const TimeSpacePtr& space() const { return space_; }
  const Gq& at(int mono, int d) const { return c_[mono * stride_ + d]; }
  Gq& at(int mono, int d) { return c_[mono * stride_ + d]; }
  std::vector<Gq> series(int mono) const;
  /// q-series coefficient of the monomial prod x^{(alpha,k)}^power.
  std::vector<Gq> coefficient(const std::map<std::pair<int, int>, int>& times) const;

  bool is_zero() const;
  bool mono_is_zero(int mono) const;
  /// Lowest total degree with a nonzero coefficient (deg + 1 when zero).
  int order() const;

  TimeSeries operator-() const;
  TimeSeries& operator+=(const TimeSeries& o);
  TimeSeries& operator-=(const TimeSeries& o);
  TimeSeries& operator*=(const Gq& s);
  friend TimeSeries operator+(TimeSeries a, const TimeSeries& b) { return a += b; }
  friend TimeSeries operator-(TimeSeries a, const TimeSeries& b) { return a -= b; }
  friend TimeSeries operator*(const TimeSeries& a, const TimeSeries& b);
  friend TimeSeries operator*(TimeSeries a, const Gq& s) { return a *= s; }
  friend TimeSeries operator*(const Gq& s, TimeSeries a) { return a *= s; }
  friend bool operator==(const TimeSeries& a, const TimeSeries& b);

  /// Adds s * src (an axpy without temporaries).
  void add_scaled(const TimeSeries& src, const Gq& s);
  /// Multiplies by q^d.
  TimeSeries q_shift(int d) const;
  TimeSeries derivative(int alpha, int k) const;
  /// Keeps only monomials of total degree <= n.
  TimeSeries truncated_deg(int n) const;

  std::string str() const;

 private:
  TimeSpacePtr space_;
  int stride_ = 0;
  std::vector<Gq> c_;
};

/// 1/x for x with an invertible (degree 0, q^0) coefficient.
TimeSeries inverse(const TimeSeries& x);
/// exp(x) for x without a (degree 0, q^0) term.
TimeSeries exp(const TimeSeries& x);

}  // namespace fv
