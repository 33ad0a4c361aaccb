#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fv/gaussian.hpp"

namespace fv {

/// Exponent tuple of (w1)^a (w2)^b e^{m w1} Q^d.
struct Mono {
  int a = 0;
  int b = 0;
  int m = 0;
  int d = 0;
  friend bool operator==(const Mono&, const Mono&) = default;
};

struct SeriesError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Truncated function on a two-dimensional Frobenius manifold with Q = q e^{w2}.
///
/// Terms are kept sorted by the packed key (d, a, b, m); no zero coefficients
/// are stored and every stored Q-degree is <= q_cut.
class CoordRingElem {
 public:
  using Key = std::uint64_t;
  using Term = std::pair<Key, Gq>;
  static constexpr int kExact = 30000;  // "no truncation" sentinel

  CoordRingElem() = default;
  CoordRingElem(Gq c, int q_cut = kExact);  // NOLINT(google-explicit-constructor)
  CoordRingElem(int c) : CoordRingElem(Gq(c)) {}  // NOLINT(google-explicit-constructor)

  static CoordRingElem monomial(const Mono& mono, Gq c = Gq(1), int q_cut = kExact);
  static CoordRingElem w1(int q_cut = kExact) { return monomial({1, 0, 0, 0}, Gq(1), q_cut); }
  static CoordRingElem w2(int q_cut = kExact) { return monomial({0, 1, 0, 0}, Gq(1), q_cut); }
  static CoordRingElem exp_w1(int m = 1, int q_cut = kExact) { return monomial({0, 0, m, 0}, Gq(1), q_cut); }
  static CoordRingElem Q(int d = 1, int q_cut = kExact) { return monomial({0, 0, 0, d}, Gq(1), q_cut); }

  static Key pack(const Mono& mono);
  static Mono unpack(Key key);

  int q_cut() const { return q_cut_; }
  bool is_exact() const { return q_cut_ >= kExact; }
  CoordRingElem truncated(int q_cut) const;
  /// Same terms with a wider (or narrower) declared cut; never invents terms.
  CoordRingElem with_cut(int q_cut) const;

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Gq coefficient(const Mono& mono) const;
  Gq constant_term() const { return coefficient({}); }
  int max_d() const;

  CoordRingElem operator-() const;
  CoordRingElem& operator+=(const CoordRingElem& o);
  CoordRingElem& operator-=(const CoordRingElem& o);
  CoordRingElem& operator*=(const CoordRingElem& o) { return *this = *this * o; }
  CoordRingElem& operator*=(const Gq& c);

  friend CoordRingElem operator+(CoordRingElem a, const CoordRingElem& b) { return a += b; }
  friend CoordRingElem operator-(CoordRingElem a, const CoordRingElem& b) { return a -= b; }
  friend CoordRingElem operator*(const CoordRingElem& a, const CoordRingElem& b);
  friend CoordRingElem operator*(CoordRingElem a, const Gq& c) { return a *= c; }
  friend CoordRingElem operator*(const Gq& c, CoordRingElem a) { return a *= c; }
  /// Equality below the smaller of the two cuts.
  friend bool operator==(const CoordRingElem& a, const CoordRingElem& b);

  /// Human-readable form, e.g. "1/2*w1^2 + Q".
  std::string str(const char* x1 = "w1", const char* x2 = "w2") const;

  /// Builds from unsorted terms; merges duplicates and applies the cut.
  static CoordRingElem from_terms(std::vector<Term> terms, int q_cut);

 private:
  void normalize();

  std::vector<Term> terms_;
  int q_cut_ = kExact;
};

CoordRingElem d_w1(const CoordRingElem& x);
CoordRingElem d_w2(const CoordRingElem& x);
/// Antiderivatives with zero constant of integration in the (a, b) polynomial part.
CoordRingElem int_w1(const CoordRingElem& x);
CoordRingElem int_w2(const CoordRingElem& x);

/// Multiplies every term by e^{m w1}.
CoordRingElem shift_exp(const CoordRingElem& x, int m);
CoordRingElem pow(const CoordRingElem& x, int e);

/// Series transcendentals; all require a finite cut when the result is an infinite series.
CoordRingElem inverse(const CoordRingElem& x);
CoordRingElem log(const CoordRingElem& x);
CoordRingElem exp(const CoordRingElem& x);
CoordRingElem q_integrate(const CoordRingElem& x);
/// Li_k(Q) = sum_{n=1}^{q_cut} Q^n / n^k.
CoordRingElem polylog(int k, int q_cut);

}  // namespace fv
