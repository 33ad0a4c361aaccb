#include "fv/rational.hpp"

#include <limits>
#include <numeric>
#include <ostream>

namespace fv {
namespace {

constexpr std::int64_t kMin = std::numeric_limits<std::int64_t>::min();
constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();

bool fits(__int128 v) { return v > static_cast<__int128>(kMin) && v <= static_cast<__int128>(kMax); }

unsigned __int128 uabs(__int128 v) { return v < 0 ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v); }

unsigned __int128 gcd128(unsigned __int128 a, unsigned __int128 b) {
  while (b != 0) {
    if ((a >> 64) == 0 && (b >> 64) == 0) {
      return std::gcd(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
    }
    unsigned __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::uint64_t uabs64(std::int64_t v) { return v < 0 ? 0 - static_cast<std::uint64_t>(v) : static_cast<std::uint64_t>(v); }

mpz_class to_mpz(std::int64_t v) {
  mpz_class z;
  std::uint64_t u = uabs64(v);
  mpz_import(z.get_mpz_t(), 1, 1, sizeof(u), 0, 0, &u);
  if (v < 0) z = -z;
  return z;
}

bool mpz_to_i64(const mpz_class& z, std::int64_t& out) {
  if (mpz_sizeinbase(z.get_mpz_t(), 2) > 63) return false;
  std::uint64_t u = 0;
  std::size_t count = 0;
  mpz_export(&u, &count, 1, sizeof(u), 0, 0, z.get_mpz_t());
  out = static_cast<std::int64_t>(u);
  if (sgn(z) < 0) out = -out;
  return true;
}

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) {
  if (d == 0) throw DivisionByZero("rational with zero denominator");
  *this = from_mpq(mpq_class(to_mpz(n), to_mpz(d)));
}

Rational::Rational(const mpq_class& q) { *this = from_mpq(q); }

Rational Rational::from_mpq(mpq_class q) {
  q.canonicalize();
  Rational r;
  std::int64_t n = 0;
  std::int64_t d = 0;
  if (mpz_to_i64(q.get_num(), n) && mpz_to_i64(q.get_den(), d)) {
    r.num_ = n;
    r.den_ = d;
  } else {
    r.big_ = std::make_shared<const mpq_class>(std::move(q));
  }
  return r;
}

Rational Rational::from_wide(__int128 n, __int128 d) {
  if (fits(n) && fits(d)) {
    Rational r;
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    return r;
  }
  auto conv = [](__int128 v) {
    unsigned __int128 u = uabs(v);
    std::uint64_t parts[2] = {static_cast<std::uint64_t>(u >> 64), static_cast<std::uint64_t>(u)};
    mpz_class z;
    mpz_import(z.get_mpz_t(), 2, 1, sizeof(std::uint64_t), 0, 0, parts);
    if (v < 0) z = -z;
    return z;
  };
  return from_mpq(mpq_class(conv(n), conv(d)));
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational: " + s);
  if (q.get_den() == 0) throw DivisionByZero("rational with zero denominator: " + s);
  return from_mpq(q);
}

bool Rational::is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }

int Rational::sign() const {
  if (big_) return sgn(*big_);
  return (num_ > 0) - (num_ < 0);
}

mpq_class Rational::to_mpq() const {
  if (big_) return *big_;
  return mpq_class(to_mpz(num_), to_mpz(den_));
}

mpz_class Rational::numerator() const { return big_ ? mpz_class(big_->get_num()) : to_mpz(num_); }
mpz_class Rational::denominator() const { return big_ ? mpz_class(big_->get_den()) : to_mpz(den_); }

std::string Rational::str() const {
  if (big_) return big_->get_num().get_str() + "/" + big_->get_den().get_str();
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator-() const {
  if (big_) return from_mpq(-*big_);
  Rational r = *this;
  r.num_ = -num_;  // num_ > kMin by construction
  return r;
}

Rational operator+(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    if (a.num_ == 0) return b;
    if (b.num_ == 0) return a;
    const std::int64_t g = std::gcd(a.den_, b.den_);
    const __int128 bd = b.den_ / g;
    const __int128 n = static_cast<__int128>(a.num_) * bd + static_cast<__int128>(b.num_) * (a.den_ / g);
    __int128 d = static_cast<__int128>(a.den_) * bd;
    if (n == 0) return Rational();
    const unsigned __int128 g2 = gcd128(uabs(n), static_cast<unsigned __int128>(g));
    if (g2 > 1) return Rational::from_wide(n / static_cast<__int128>(g2), d / static_cast<__int128>(g2));
    return Rational::from_wide(n, d);
  }
  return Rational::from_mpq(a.to_mpq() + b.to_mpq());
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    if (a.num_ == 0 || b.num_ == 0) return Rational();
    if (a.den_ == 1 && b.den_ == 1) return Rational::from_wide(static_cast<__int128>(a.num_) * b.num_, 1);
    const std::int64_t g1 = static_cast<std::int64_t>(std::gcd(uabs64(a.num_), static_cast<std::uint64_t>(b.den_)));
    const std::int64_t g2 = static_cast<std::int64_t>(std::gcd(uabs64(b.num_), static_cast<std::uint64_t>(a.den_)));
    const __int128 n = static_cast<__int128>(a.num_ / g1) * (b.num_ / g2);
    const __int128 d = static_cast<__int128>(a.den_ / g2) * (b.den_ / g1);
    return Rational::from_wide(n, d);
  }
  return Rational::from_mpq(a.to_mpq() * b.to_mpq());
}

Rational Rational::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero rational");
  if (big_) return from_mpq(1 / *big_);
  Rational r;
  r.num_ = num_ < 0 ? -den_ : den_;
  r.den_ = num_ < 0 ? -num_ : num_;
  return r;
}

Rational operator/(const Rational& a, const Rational& b) { return a * b.inverse(); }

bool operator==(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
  if (a.big_ && b.big_) return *a.big_ == *b.big_;
  return false;  // canonical: a big value never fits in the small form
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    const __int128 l = static_cast<__int128>(a.num_) * b.den_;
    const __int128 r = static_cast<__int128>(b.num_) * a.den_;
    return l <=> r;
  }
  const int c = cmp(a.to_mpq(), b.to_mpq());
  return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

Rational Rational::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  Rational result(1);
  Rational base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace fv
