#include "fv/coord_ring.hpp"

#include <algorithm>
#include <sstream>

#include "fv/special.hpp"

namespace fv {
namespace {

constexpr std::uint64_t kMBias = 32768;

int key_d(CoordRingElem::Key k) { return static_cast<int>(k >> 48); }

}  // namespace

CoordRingElem::Key CoordRingElem::pack(const Mono& mono) {
  if (mono.a < 0 || mono.b < 0 || mono.d < 0 || mono.a > 0xffff || mono.b > 0xffff || mono.d > 0xffff ||
      mono.m < -32767 || mono.m > 32767) {
    throw std::out_of_range("coordinate monomial exponent out of range");
  }
  return (static_cast<Key>(mono.d) << 48) | (static_cast<Key>(mono.a) << 32) | (static_cast<Key>(mono.b) << 16) |
         static_cast<Key>(mono.m + static_cast<int>(kMBias));
}

Mono CoordRingElem::unpack(Key key) {
  return {static_cast<int>((key >> 32) & 0xffff), static_cast<int>((key >> 16) & 0xffff),
          static_cast<int>(key & 0xffff) - static_cast<int>(kMBias), static_cast<int>(key >> 48)};
}

CoordRingElem::CoordRingElem(Gq c, int q_cut) : q_cut_(q_cut) {
  if (!c.is_zero()) terms_.emplace_back(pack({}), std::move(c));
}

CoordRingElem CoordRingElem::monomial(const Mono& mono, Gq c, int q_cut) {
  CoordRingElem r;
  r.q_cut_ = q_cut;
  if (!c.is_zero() && mono.d <= q_cut) r.terms_.emplace_back(pack(mono), std::move(c));
  return r;
}

CoordRingElem CoordRingElem::from_terms(std::vector<Term> terms, int q_cut) {
  CoordRingElem r;
  r.q_cut_ = q_cut;
  r.terms_ = std::move(terms);
  r.normalize();
  return r;
}

void CoordRingElem::normalize() {
  std::sort(terms_.begin(), terms_.end(), [](const Term& x, const Term& y) { return x.first < y.first; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < terms_.size();) {
    Key k = terms_[i].first;
    Gq c = std::move(terms_[i].second);
    std::size_t j = i + 1;
    for (; j < terms_.size() && terms_[j].first == k; ++j) c += terms_[j].second;
    if (!c.is_zero() && key_d(k) <= q_cut_) terms_[out++] = Term(k, std::move(c));
    i = j;
  }
  terms_.resize(out);
}

CoordRingElem CoordRingElem::truncated(int q_cut) const {
  CoordRingElem r;
  r.q_cut_ = std::min(q_cut, q_cut_);
  for (const auto& t : terms_) {
    if (key_d(t.first) > r.q_cut_) break;
    r.terms_.push_back(t);
  }
  return r;
}

CoordRingElem CoordRingElem::with_cut(int q_cut) const {
  CoordRingElem r = truncated(q_cut);
  r.q_cut_ = q_cut;
  return r;
}

bool CoordRingElem::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first == pack({})); }

Gq CoordRingElem::coefficient(const Mono& mono) const {
  const Key k = pack(mono);
  auto it = std::lower_bound(terms_.begin(), terms_.end(), k, [](const Term& t, Key x) { return t.first < x; });
  return (it != terms_.end() && it->first == k) ? it->second : Gq();
}

int CoordRingElem::max_d() const { return terms_.empty() ? -1 : key_d(terms_.back().first); }

CoordRingElem CoordRingElem::operator-() const {
  CoordRingElem r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

namespace {

template <bool Sub>
std::vector<CoordRingElem::Term> merge(const std::vector<CoordRingElem::Term>& x, const std::vector<CoordRingElem::Term>& y,
                                       int cut) {
  std::vector<CoordRingElem::Term> out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      if (key_d(x[i].first) <= cut) out.push_back(x[i]);
      ++i;
    } else if (i == x.size() || y[j].first < x[i].first) {
      if (key_d(y[j].first) <= cut) out.emplace_back(y[j].first, Sub ? -y[j].second : y[j].second);
      ++j;
    } else {
      Gq c = Sub ? x[i].second - y[j].second : x[i].second + y[j].second;
      if (!c.is_zero() && key_d(x[i].first) <= cut) out.emplace_back(x[i].first, std::move(c));
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

CoordRingElem& CoordRingElem::operator+=(const CoordRingElem& o) {
  q_cut_ = std::min(q_cut_, o.q_cut_);
  terms_ = merge<false>(terms_, o.terms_, q_cut_);
  return *this;
}

CoordRingElem& CoordRingElem::operator-=(const CoordRingElem& o) {
  q_cut_ = std::min(q_cut_, o.q_cut_);
  terms_ = merge<true>(terms_, o.terms_, q_cut_);
  return *this;
}

CoordRingElem& CoordRingElem::operator*=(const Gq& c) {
  if (c.is_zero()) {
    terms_.clear();
  } else if (!c.is_one()) {
    for (auto& t : terms_) t.second *= c;
  }
  return *this;
}

CoordRingElem operator*(const CoordRingElem& a, const CoordRingElem& b) {
  const int cut = std::min(a.q_cut_, b.q_cut_);
  std::vector<CoordRingElem::Term> prod;
  prod.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& [ka, ca] : a.terms_) {
    const int da = key_d(ka);
    if (da > cut) break;
    for (const auto& [kb, cb] : b.terms_) {
      if (da + key_d(kb) > cut) break;
      prod.emplace_back(ka + kb - kMBias, ca * cb);
    }
  }
  return CoordRingElem::from_terms(std::move(prod), cut);
}

bool operator==(const CoordRingElem& a, const CoordRingElem& b) {
  const int cut = std::min(a.q_cut_, b.q_cut_);
  auto ea = std::find_if(a.terms_.begin(), a.terms_.end(), [&](const auto& t) { return key_d(t.first) > cut; });
  auto eb = std::find_if(b.terms_.begin(), b.terms_.end(), [&](const auto& t) { return key_d(t.first) > cut; });
  return std::equal(a.terms_.begin(), ea, b.terms_.begin(), eb);
}

std::string CoordRingElem::str(const char* x1, const char* x2) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    const Mono mo = unpack(k);
    std::string factors;
    auto add = [&](const std::string& f) { factors += (factors.empty() ? "" : "*") + f; };
    if (mo.a) add(std::string(x1) + (mo.a > 1 ? "^" + std::to_string(mo.a) : ""));
    if (mo.b) add(std::string(x2) + (mo.b > 1 ? "^" + std::to_string(mo.b) : ""));
    if (mo.m) add("e^(" + (mo.m == 1 ? std::string() : std::to_string(mo.m) + "*") + x1 + ")");
    if (mo.d) add("Q" + (mo.d > 1 ? "^" + std::to_string(mo.d) : std::string()));
    std::string coef = c.str();
    bool neg = !coef.empty() && coef[0] == '-';
    if (neg) coef = coef.substr(1);
    if (!first) os << (neg ? " - " : " + ");
    else if (neg) os << "-";
    first = false;
    if (factors.empty()) os << coef;
    else if (coef == "1") os << factors;
    else os << coef << "*" << factors;
  }
  return os.str();
}

CoordRingElem d_w1(const CoordRingElem& x) {
  std::vector<CoordRingElem::Term> out;
  for (const auto& [k, c] : x.terms()) {
    Mono mo = CoordRingElem::unpack(k);
    if (mo.m != 0) out.emplace_back(k, c * Gq(mo.m));
    if (mo.a != 0) {
      Mono lo = mo;
      --lo.a;
      out.emplace_back(CoordRingElem::pack(lo), c * Gq(mo.a));
    }
  }
  return CoordRingElem::from_terms(std::move(out), x.q_cut());
}

CoordRingElem d_w2(const CoordRingElem& x) {
  std::vector<CoordRingElem::Term> out;
  for (const auto& [k, c] : x.terms()) {
    Mono mo = CoordRingElem::unpack(k);
    if (mo.d != 0) out.emplace_back(k, c * Gq(mo.d));
    if (mo.b != 0) {
      Mono lo = mo;
      --lo.b;
      out.emplace_back(CoordRingElem::pack(lo), c * Gq(mo.b));
    }
  }
  return CoordRingElem::from_terms(std::move(out), x.q_cut());
}

namespace {

// Antiderivative of x^p e^{s x} in x; `power` selects which exponent is x.
template <class Set>
void integrate_term(const Mono& mo, const Gq& c, int p, int s, Set set, std::vector<CoordRingElem::Term>& out) {
  if (s == 0) {
    Mono r = mo;
    set(r, p + 1);
    out.emplace_back(CoordRingElem::pack(r), c * Gq(Rational(1, p + 1)));
    return;
  }
  // e^{sx} sum_j (-1)^j p!/(p-j)! x^{p-j} / s^{j+1}
  Rational falling(1);
  for (int j = 0; j <= p; ++j) {
    Mono r = mo;
    set(r, p - j);
    Rational coef = falling / Rational(s).pow(j + 1);
    if (j % 2) coef = -coef;
    out.emplace_back(CoordRingElem::pack(r), c * Gq(coef));
    falling *= Rational(p - j);
  }
}

}  // namespace

CoordRingElem int_w1(const CoordRingElem& x) {
  std::vector<CoordRingElem::Term> out;
  for (const auto& [k, c] : x.terms()) {
    Mono mo = CoordRingElem::unpack(k);
    integrate_term(mo, c, mo.a, mo.m, [](Mono& r, int v) { r.a = v; }, out);
  }
  return CoordRingElem::from_terms(std::move(out), x.q_cut());
}

CoordRingElem int_w2(const CoordRingElem& x) {
  std::vector<CoordRingElem::Term> out;
  for (const auto& [k, c] : x.terms()) {
    Mono mo = CoordRingElem::unpack(k);
    integrate_term(mo, c, mo.b, mo.d, [](Mono& r, int v) { r.b = v; }, out);
  }
  return CoordRingElem::from_terms(std::move(out), x.q_cut());
}

CoordRingElem shift_exp(const CoordRingElem& x, int m) {
  std::vector<CoordRingElem::Term> out;
  out.reserve(x.size());
  for (const auto& [k, c] : x.terms()) {
    Mono mo = CoordRingElem::unpack(k);
    mo.m += m;
    out.emplace_back(CoordRingElem::pack(mo), c);
  }
  return CoordRingElem::from_terms(std::move(out), x.q_cut());
}

CoordRingElem pow(const CoordRingElem& x, int e) {
  if (e < 0) return pow(inverse(x), -e);
  CoordRingElem result(Gq(1), x.q_cut());
  CoordRingElem base = x;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

namespace {

// Splits x = c e^{m w1} (1 + y) with y of positive Q-order.
void split_unit(const CoordRingElem& x, Gq& c, int& m, CoordRingElem& y, const char* who) {
  std::vector<CoordRingElem::Term> lead;
  for (const auto& t : x.terms()) {
    if (key_d(t.first) > 0) break;
    lead.push_back(t);
  }
  if (lead.size() != 1) throw SeriesError(std::string(who) + ": leading part is not a unit");
  const Mono mo = CoordRingElem::unpack(lead[0].first);
  if (mo.a != 0 || mo.b != 0) throw SeriesError(std::string(who) + ": leading part is not a unit");
  c = lead[0].second;
  m = mo.m;
  y = shift_exp(x, -m) * c.inverse() - CoordRingElem(Gq(1), x.q_cut());
}

void require_cut(const CoordRingElem& y, int cut, const char* who) {
  if (!y.is_zero() && cut >= CoordRingElem::kExact) throw SeriesError(std::string(who) + ": infinite series needs a finite q_cut");
}

}  // namespace

CoordRingElem inverse(const CoordRingElem& x) {
  Gq c;
  int m = 0;
  CoordRingElem y;
  split_unit(x, c, m, y, "inverse");
  require_cut(y, x.q_cut(), "inverse");
  // 1/(1+y) = sum (-y)^n; y has Q-order >= 1 so q_cut terms suffice.
  CoordRingElem sum(Gq(1), x.q_cut());
  CoordRingElem term(Gq(1), x.q_cut());
  const CoordRingElem neg_y = -y;
  for (int n = 1; n <= x.q_cut() && !y.is_zero(); ++n) {
    term *= neg_y;
    if (term.is_zero()) break;
    sum += term;
  }
  return shift_exp(sum, -m) * c.inverse();
}

CoordRingElem log(const CoordRingElem& x) {
  Gq c;
  int m = 0;
  CoordRingElem y;
  split_unit(x, c, m, y, "log");
  if (!c.is_one()) throw SeriesError("log: leading coefficient must be 1");
  require_cut(y, x.q_cut(), "log");
  CoordRingElem sum = CoordRingElem::monomial({0, 0, 0, 0}, Gq(0), x.q_cut());
  if (m != 0) sum += CoordRingElem::monomial({1, 0, 0, 0}, Gq(m), x.q_cut());
  CoordRingElem term(Gq(1), x.q_cut());
  for (int n = 1; n <= x.q_cut() && !y.is_zero(); ++n) {
    term *= y;
    if (term.is_zero()) break;
    sum += term * Gq(Rational(n % 2 ? 1 : -1, n));
  }
  return sum;
}

CoordRingElem exp(const CoordRingElem& x) {
  // Q^0 part may only be m*w1 (integer m); the rest must have positive Q-order.
  int m = 0;
  std::vector<CoordRingElem::Term> rest;
  for (const auto& t : x.terms()) {
    if (key_d(t.first) == 0) {
      const Mono mo = CoordRingElem::unpack(t.first);
      if (mo.a == 1 && mo.b == 0 && mo.m == 0 && t.second.is_real() && t.second.re().is_integer()) {
        m = static_cast<int>(t.second.re().numerator().get_si());
        continue;
      }
      throw SeriesError("exp: leading part must be zero or an integer multiple of w1");
    }
    rest.push_back(t);
  }
  CoordRingElem y = CoordRingElem::from_terms(std::move(rest), x.q_cut());
  require_cut(y, x.q_cut(), "exp");
  CoordRingElem sum(Gq(1), x.q_cut());
  CoordRingElem term(Gq(1), x.q_cut());
  for (int n = 1; n <= x.q_cut() && !y.is_zero(); ++n) {
    term = term * y * Gq(Rational(1, n));
    if (term.is_zero()) break;
    sum += term;
  }
  return shift_exp(sum, m);
}

CoordRingElem q_integrate(const CoordRingElem& x) {
  for (const auto& t : x.terms()) {
    if (key_d(t.first) == 0) throw SeriesError("q_integrate: nonzero Q^0 part");
  }
  return int_w2(x);
}

CoordRingElem polylog(int k, int q_cut) {
  std::vector<CoordRingElem::Term> out;
  for (int n = 1; n <= q_cut; ++n) {
    out.emplace_back(CoordRingElem::pack({0, 0, 0, n}), Gq(Rational(n).pow(-k)));
  }
  return CoordRingElem::from_terms(std::move(out), q_cut);
}

}  // namespace fv
