#pragma once

#include <array>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "fv/coord_ring.hpp"

namespace fv {

/// Highest jet order k of a variable w^alpha_k that can be represented.
constexpr int kMaxJet = 8;

/// Exponent vector over the jet variables w^alpha_k, alpha = 1, 2, 1 <= k <= kMaxJet,
/// eight bits per variable.
using JetKey = unsigned __int128;

inline int jet_slot(int alpha, int k) { return (alpha - 1) * kMaxJet + (k - 1); }
inline int jet_exponent(JetKey key, int alpha, int k) {
  return static_cast<int>((key >> (8 * jet_slot(alpha, k))) & 0xFF);
}
inline JetKey jet_unit(int alpha, int k) { return JetKey{1} << (8 * jet_slot(alpha, k)); }
/// Total x-weight sum k * e of a jet monomial.
int jet_weight(JetKey key);
/// Total degree sum e of a jet monomial.
int jet_degree(JetKey key);
std::string jet_key_str(JetKey key, const char* name = "w");

/// Polynomial in the jets w^alpha_k (k >= 1) with coordinate-ring coefficients (the w^alpha_0 dependence).
class JetPoly {
 public:
  using Term = std::pair<JetKey, CoordRingElem>;

  JetPoly() = default;
  explicit JetPoly(int q_cut) : q_cut_(q_cut) {}
  JetPoly(const CoordRingElem& c);  // NOLINT(google-explicit-constructor)
  static JetPoly var(int alpha, int k, int q_cut);
  static JetPoly monomial(JetKey key, const CoordRingElem& c);
  /// Sorted, merged, zero-free construction.
  static JetPoly from_terms(std::vector<Term> terms, int q_cut);

  int q_cut() const { return q_cut_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  /// Coefficient of one jet monomial (zero when absent).
  CoordRingElem coefficient(JetKey key) const;
  /// Largest k with some w^alpha_k present (0 for a jet-free polynomial).
  int max_order() const;
  /// Largest exponent of w^alpha_k.
  int degree_in(int alpha, int k) const;

  JetPoly operator-() const;
  JetPoly& operator+=(const JetPoly& o);
  JetPoly& operator-=(const JetPoly& o);
  JetPoly& operator*=(const CoordRingElem& c);
  JetPoly& operator*=(const Gq& c);
  friend JetPoly operator+(JetPoly a, const JetPoly& b) { return a += b; }
  friend JetPoly operator-(JetPoly a, const JetPoly& b) { return a -= b; }
  friend JetPoly operator*(const JetPoly& a, const JetPoly& b);
  friend JetPoly operator*(JetPoly a, const CoordRingElem& c) { return a *= c; }
  friend JetPoly operator*(JetPoly a, const Gq& c) { return a *= c; }
  friend bool operator==(const JetPoly& a, const JetPoly& b);

  std::string str() const;

 private:
  std::vector<Term> terms_;
  int q_cut_ = CoordRingElem::kExact;
};

JetPoly pow(const JetPoly& x, int e);
/// Partial derivative in w^alpha_k; k = 0 differentiates the coefficients.
JetPoly partial(const JetPoly& x, int alpha, int k);
/// Derivation sum_{alpha, k >= 0} image(alpha, k) * d/dw^alpha_k.
JetPoly apply_derivation(const JetPoly& x, const std::function<const JetPoly&(int alpha, int k)>& image);
/// The total derivative d/dx with w^alpha_k -> w^alpha_{k+1}.
JetPoly total_x(const JetPoly& x);
/// Replaces every coefficient c by f(c).
JetPoly map_coefficients(const JetPoly& x, const std::function<CoordRingElem(const CoordRingElem&)>& f);
/// Substitutes w^alpha_k -> image(alpha, k) for k >= 1 and maps coefficients through coef.
JetPoly substitute(const JetPoly& x, const std::function<const JetPoly&(int alpha, int k)>& image,
                   const std::function<CoordRingElem(const CoordRingElem&)>& coef);
/// Sets w^alpha_k to constants value(alpha, k).
CoordRingElem evaluate_jets(const JetPoly& x, const std::function<Gq(int alpha, int k)>& value);

/// Base-d expansion x = sum_j r_j d^j with deg_{w^1_1} r_j <= 1, for d monic of degree 2 in w^1_1.
std::vector<JetPoly> disc_expansion(const JetPoly& x, const JetPoly& d);

/// A rational jet function num / disc^pow + log_coeff * log(disc), with a fixed discriminant.
class JetFunction {
 public:
  JetFunction() = default;
  JetFunction(std::shared_ptr<const JetPoly> disc, JetPoly num, int pow = 0, Gq log_coeff = Gq(0));

  const std::shared_ptr<const JetPoly>& disc() const { return disc_; }
  const JetPoly& num() const { return num_; }
  int pow() const { return pow_; }
  const Gq& log_coeff() const { return log_; }
  int q_cut() const { return num_.q_cut(); }

  JetFunction operator-() const;
  JetFunction& operator+=(const JetFunction& o);
  JetFunction& operator-=(const JetFunction& o);
  friend JetFunction operator+(JetFunction a, const JetFunction& b) { return a += b; }
  friend JetFunction operator-(JetFunction a, const JetFunction& b) { return a -= b; }
  /// Products are only defined for log-free factors.
  friend JetFunction operator*(const JetFunction& a, const JetFunction& b);
  friend JetFunction operator*(JetFunction a, const Gq& c);
  friend JetFunction operator*(JetFunction a, const CoordRingElem& c);

  /// Same numerator over disc^p for p >= pow.
  JetPoly num_over(int p) const;
  /// Removes disc factors from the numerator while it stays divisible.
  JetFunction reduced() const;
  /// Exact equality as rational functions plus equal log coefficients.
  friend bool same(const JetFunction& a, const JetFunction& b);
  bool is_zero() const;

  std::string str() const;

 private:
  std::shared_ptr<const JetPoly> disc_;
  JetPoly num_;
  int pow_ = 0;
  Gq log_;
};

/// Derivation of a jet function given the images of all w^alpha_k (k >= 0).
JetFunction apply_derivation(const JetFunction& f, const std::function<const JetPoly&(int alpha, int k)>& image);
/// Sets jets to constants and returns a coordinate-ring function (the discriminant must become invertible).
CoordRingElem evaluate_jets(const JetFunction& f, const std::function<Gq(int alpha, int k)>& value);

}  // namespace fv
