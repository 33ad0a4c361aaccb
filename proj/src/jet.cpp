#include "fv/jet.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace fv {

namespace {

struct KeyHash {
  std::size_t operator()(JetKey k) const {
    const auto lo = static_cast<std::uint64_t>(k);
    const auto hi = static_cast<std::uint64_t>(k >> 64);
    return std::hash<std::uint64_t>()(lo * 0x9E3779B97F4A7C15ULL ^ hi);
  }
};

using Accum = std::unordered_map<JetKey, CoordRingElem, KeyHash>;

void accumulate(Accum& acc, JetKey k, const CoordRingElem& c) {
  auto [it, fresh] = acc.try_emplace(k, c);
  if (!fresh) it->second += c;
}

JetPoly from_accum(Accum&& acc, int q_cut) {
  std::vector<JetPoly::Term> t;
  t.reserve(acc.size());
  for (auto& [k, c] : acc)
    if (!c.is_zero()) t.emplace_back(k, std::move(c));
  return JetPoly::from_terms(std::move(t), q_cut);
}

CoordRingElem zero(int q_cut) { return CoordRingElem(Gq(0), q_cut); }

}  // namespace

int jet_weight(JetKey key) {
  int w = 0;
  for (int a = 1; a <= 2; ++a)
    for (int k = 1; k <= kMaxJet; ++k) w += k * jet_exponent(key, a, k);
  return w;
}

int jet_degree(JetKey key) {
  int w = 0;
  for (int a = 1; a <= 2; ++a)
    for (int k = 1; k <= kMaxJet; ++k) w += jet_exponent(key, a, k);
  return w;
}

std::string jet_key_str(JetKey key, const char* name) {
  std::ostringstream os;
  bool first = true;
  for (int a = 1; a <= 2; ++a)
    for (int k = 1; k <= kMaxJet; ++k) {
      const int e = jet_exponent(key, a, k);
      if (!e) continue;
      if (!first) os << "*";
      first = false;
      os << name << a << "_" << k;
      if (e > 1) os << "^" << e;
    }
  return first ? "1" : os.str();
}

JetPoly::JetPoly(const CoordRingElem& c) : q_cut_(c.q_cut()) {
  if (!c.is_zero()) terms_.emplace_back(JetKey{0}, c);
}

JetPoly JetPoly::var(int alpha, int k, int q_cut) {
  if (k < 1 || k > kMaxJet) throw std::out_of_range("JetPoly::var: jet order out of range");
  return monomial(jet_unit(alpha, k), CoordRingElem(Gq(1), q_cut));
}

JetPoly JetPoly::monomial(JetKey key, const CoordRingElem& c) {
  JetPoly p(c.q_cut());
  if (!c.is_zero()) p.terms_.emplace_back(key, c);
  return p;
}

JetPoly JetPoly::from_terms(std::vector<Term> terms, int q_cut) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
  JetPoly p(q_cut);
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().first == t.first) {
      p.terms_.back().second += t.second;
      if (p.terms_.back().second.is_zero()) p.terms_.pop_back();
    } else {
      CoordRingElem c = t.second.q_cut() > q_cut ? t.second.truncated(q_cut) : std::move(t.second);
      if (!c.is_zero()) p.terms_.emplace_back(t.first, std::move(c));
    }
  }
  return p;
}

CoordRingElem JetPoly::coefficient(JetKey key) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), key,
                             [](const Term& t, JetKey k) { return t.first < k; });
  return it != terms_.end() && it->first == key ? it->second : zero(q_cut_);
}

int JetPoly::max_order() const {
  int m = 0;
  for (const auto& [k, c] : terms_)
    for (int a = 1; a <= 2; ++a)
      for (int j = kMaxJet; j > m; --j)
        if (jet_exponent(k, a, j)) {
          m = j;
          break;
        }
  return m;
}

int JetPoly::degree_in(int alpha, int k) const {
  int m = 0;
  for (const auto& t : terms_) m = std::max(m, jet_exponent(t.first, alpha, k));
  return m;
}

JetPoly JetPoly::operator-() const {
  JetPoly r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

JetPoly& JetPoly::operator+=(const JetPoly& o) {
  const int cut = std::min(q_cut_, o.q_cut_);
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  auto i = terms_.begin();
  auto j = o.terms_.begin();
  while (i != terms_.end() || j != o.terms_.end()) {
    if (j == o.terms_.end() || (i != terms_.end() && i->first < j->first)) {
      out.push_back(std::move(*i++));
    } else if (i == terms_.end() || j->first < i->first) {
      out.push_back(*j++);
    } else {
      CoordRingElem c = std::move(i->second);
      c += j->second;
      if (!c.is_zero()) out.emplace_back(i->first, std::move(c));
      ++i;
      ++j;
    }
  }
  terms_ = std::move(out);
  if (cut < q_cut_) {
    q_cut_ = cut;
    *this = from_terms(std::move(terms_), cut);
  }
  return *this;
}

JetPoly& JetPoly::operator-=(const JetPoly& o) { return *this += -o; }

JetPoly& JetPoly::operator*=(const CoordRingElem& c) {
  if (c.is_zero()) {
    terms_.clear();
    q_cut_ = std::min(q_cut_, c.q_cut());
    return *this;
  }
  for (auto& t : terms_) t.second = t.second * c;
  const int cut = std::min(q_cut_, c.q_cut());
  std::erase_if(terms_, [](const Term& t) { return t.second.is_zero(); });
  q_cut_ = cut;
  return *this;
}

JetPoly& JetPoly::operator*=(const Gq& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.second *= c;
  return *this;
}

JetPoly operator*(const JetPoly& a, const JetPoly& b) {
  const int cut = std::min(a.q_cut_, b.q_cut_);
  if (a.is_zero() || b.is_zero()) return JetPoly(cut);
  if (a.size() == 1 && a.terms_[0].first == 0) return b * a.terms_[0].second;
  if (b.size() == 1 && b.terms_[0].first == 0) return a * b.terms_[0].second;
  Accum acc;
  acc.reserve(a.size() * b.size());
  for (const auto& [ka, ca] : a.terms_)
    for (const auto& [kb, cb] : b.terms_) accumulate(acc, ka + kb, ca * cb);
  return from_accum(std::move(acc), cut);
}

bool operator==(const JetPoly& a, const JetPoly& b) { return (a - b).is_zero(); }

std::string JetPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (i) os << " + ";
    os << "(" << terms_[i].second.str() << ")";
    if (terms_[i].first) os << "*" << jet_key_str(terms_[i].first);
  }
  return os.str();
}

JetPoly pow(const JetPoly& x, int e) {
  if (e < 0) throw std::invalid_argument("pow: negative exponent");
  JetPoly r(CoordRingElem(Gq(1), x.q_cut()));
  JetPoly b = x;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

JetPoly partial(const JetPoly& x, int alpha, int k) {
  std::vector<JetPoly::Term> out;
  if (k == 0) {
    for (const auto& [key, c] : x.terms()) {
      CoordRingElem d = alpha == 1 ? d_w1(c) : d_w2(c);
      if (!d.is_zero()) out.emplace_back(key, std::move(d));
    }
    return JetPoly::from_terms(std::move(out), x.q_cut());
  }
  const JetKey unit = jet_unit(alpha, k);
  for (const auto& [key, c] : x.terms()) {
    const int e = jet_exponent(key, alpha, k);
    if (e) out.emplace_back(key - unit, c * Gq(e));
  }
  return JetPoly::from_terms(std::move(out), x.q_cut());
}

JetPoly apply_derivation(const JetPoly& x, const std::function<const JetPoly&(int alpha, int k)>& image) {
  JetPoly r(x.q_cut());
  const int top = x.max_order();
  for (int a = 1; a <= 2; ++a)
    for (int k = 0; k <= top; ++k) {
      const JetPoly d = partial(x, a, k);
      if (d.is_zero()) continue;
      r += d * image(a, k);
    }
  return r;
}

JetPoly total_x(const JetPoly& x) {
  Accum acc;
  for (const auto& [key, c] : x.terms()) {
    for (int a = 1; a <= 2; ++a) {
      CoordRingElem d = a == 1 ? d_w1(c) : d_w2(c);
      if (!d.is_zero()) accumulate(acc, key + jet_unit(a, 1), d);
      for (int k = 1; k <= kMaxJet; ++k) {
        const int e = jet_exponent(key, a, k);
        if (!e) continue;
        if (k == kMaxJet) throw std::overflow_error("total_x: jet order exceeds kMaxJet");
        accumulate(acc, key - jet_unit(a, k) + jet_unit(a, k + 1), c * Gq(e));
      }
    }
  }
  return from_accum(std::move(acc), x.q_cut());
}

JetPoly map_coefficients(const JetPoly& x, const std::function<CoordRingElem(const CoordRingElem&)>& f) {
  std::vector<JetPoly::Term> out;
  int cut = x.q_cut();
  for (const auto& [key, c] : x.terms()) {
    CoordRingElem y = f(c);
    cut = std::min(cut, y.q_cut());
    out.emplace_back(key, std::move(y));
  }
  return JetPoly::from_terms(std::move(out), cut);
}

JetPoly substitute(const JetPoly& x, const std::function<const JetPoly&(int alpha, int k)>& image,
                   const std::function<CoordRingElem(const CoordRingElem&)>& coef) {
  std::map<std::pair<int, int>, std::vector<JetPoly>> powers;
  auto power = [&](int a, int k, int e) -> const JetPoly& {
    auto& v = powers[{a, k}];
    if (v.empty()) v.push_back(JetPoly(CoordRingElem(Gq(1), image(a, k).q_cut())));
    while (static_cast<int>(v.size()) <= e) v.push_back(v.back() * image(a, k));
    return v[e];
  };
  JetPoly r;
  bool first = true;
  for (const auto& [key, c] : x.terms()) {
    JetPoly t(coef(c));
    for (int a = 1; a <= 2; ++a)
      for (int k = 1; k <= kMaxJet; ++k)
        if (const int e = jet_exponent(key, a, k)) t = t * power(a, k, e);
    if (first) {
      r = std::move(t);
      first = false;
    } else {
      r += t;
    }
  }
  return first ? JetPoly(x.q_cut()) : r;
}

CoordRingElem evaluate_jets(const JetPoly& x, const std::function<Gq(int alpha, int k)>& value) {
  CoordRingElem r(Gq(0), x.q_cut());
  for (const auto& [key, c] : x.terms()) {
    Gq f(1);
    for (int a = 1; a <= 2 && !f.is_zero(); ++a)
      for (int k = 1; k <= kMaxJet; ++k)
        if (const int e = jet_exponent(key, a, k)) {
          const Gq v = value(a, k);
          for (int i = 0; i < e; ++i) f = f * v;
        }
    if (!f.is_zero()) r += c * f;
  }
  return r;
}

std::vector<JetPoly> disc_expansion(const JetPoly& x, const JetPoly& d) {
  const int cut = std::min(x.q_cut(), d.q_cut());
  // split a polynomial by its degree in w^1_1
  auto split = [&](const JetPoly& p) {
    std::vector<std::vector<JetPoly::Term>> parts(p.degree_in(1, 1) + 1);
    const JetKey u = jet_unit(1, 1);
    for (const auto& [key, c] : p.terms()) {
      const int e = jet_exponent(key, 1, 1);
      parts[e].emplace_back(key - u * e, c);
    }
    std::vector<JetPoly> out;
    for (auto& t : parts) out.push_back(JetPoly::from_terms(std::move(t), cut));
    return out;
  };
  const auto dp = split(d);
  if (dp.size() != 3 || !(dp[2] == JetPoly(CoordRingElem(Gq(1), cut))))
    throw std::invalid_argument("disc_expansion: divisor must be monic quadratic in w^1_1");
  const JetPoly w = JetPoly::var(1, 1, cut);
  std::vector<JetPoly> result;
  JetPoly cur = x;
  while (!cur.is_zero()) {
    auto c = split(cur);
    const int n = static_cast<int>(c.size()) - 1;
    std::vector<JetPoly> quot(std::max(n - 1, 1), JetPoly(cut));
    for (int k = n; k >= 2; --k) {
      if (c[k].is_zero()) continue;
      quot[k - 2] += c[k];
      c[k - 1] -= c[k] * dp[1];
      c[k - 2] -= c[k] * dp[0];
    }
    JetPoly rem = c[0];
    if (n >= 1) rem += c[1] * w;
    result.push_back(rem);
    JetPoly q(cut), wp(CoordRingElem(Gq(1), cut));
    for (const auto& qk : quot) {
      if (!qk.is_zero()) q += qk * wp;
      wp = wp * w;
    }
    cur = q;
  }
  return result;
}

// ---------------------------------------------------------------------------

namespace {

JetPoly disc_power(const std::shared_ptr<const JetPoly>& d, int p) {
  static std::mutex mu;
  static std::map<std::pair<const JetPoly*, int>, JetPoly> cache;
  if (p == 0) return JetPoly(CoordRingElem(Gq(1), d ? d->q_cut() : CoordRingElem::kExact));
  if (p == 1) return *d;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({d.get(), p});
    if (it != cache.end()) return it->second;
  }
  JetPoly r = disc_power(d, p - 1) * *d;
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(std::make_pair(d.get(), p), std::move(r)).first->second;
}

const std::shared_ptr<const JetPoly>& common(const JetFunction& a, const JetFunction& b) {
  if (a.disc() && b.disc() && a.disc() != b.disc() && !(*a.disc() == *b.disc()))
    throw std::invalid_argument("JetFunction: mismatched discriminants");
  return a.disc() ? a.disc() : b.disc();
}

}  // namespace

JetFunction::JetFunction(std::shared_ptr<const JetPoly> disc, JetPoly num, int pow, Gq log_coeff)
    : disc_(std::move(disc)), num_(std::move(num)), pow_(pow), log_(std::move(log_coeff)) {
  if (!disc_ && (pow_ != 0 || !log_.is_zero()))
    throw std::invalid_argument("JetFunction: denominator or log without a discriminant");
}

JetPoly JetFunction::num_over(int p) const {
  if (p < pow_) throw std::invalid_argument("JetFunction::num_over: power below current denominator");
  return p == pow_ ? num_ : num_ * disc_power(disc_, p - pow_);
}

JetFunction JetFunction::operator-() const { return JetFunction(disc_, -num_, pow_, -log_); }

JetFunction& JetFunction::operator+=(const JetFunction& o) {
  auto d = common(*this, o);
  const int p = std::max(pow_, o.pow_);
  JetPoly n = num_over(p) + o.num_over(p);
  *this = JetFunction(d, std::move(n), p, log_ + o.log_);
  return *this;
}

JetFunction& JetFunction::operator-=(const JetFunction& o) { return *this += -o; }

JetFunction operator*(const JetFunction& a, const JetFunction& b) {
  if (!a.log_.is_zero() || !b.log_.is_zero()) throw std::invalid_argument("JetFunction: product with a log term");
  return JetFunction(common(a, b), a.num_ * b.num_, a.pow_ + b.pow_);
}

JetFunction operator*(JetFunction a, const Gq& c) {
  a.num_ *= c;
  a.log_ = a.log_ * c;
  return a;
}

JetFunction operator*(JetFunction a, const CoordRingElem& c) {
  if (!a.log_.is_zero()) throw std::invalid_argument("JetFunction: log term times a function");
  a.num_ *= c;
  return a;
}

JetFunction JetFunction::reduced() const {
  if (!disc_ || pow_ == 0 || num_.is_zero()) return num_.is_zero() ? JetFunction(disc_, num_, 0, log_) : *this;
  auto parts = disc_expansion(num_, *disc_);
  int p = pow_;
  std::size_t drop = 0;
  while (p > 0 && drop < parts.size() && parts[drop].is_zero()) {
    ++drop;
    --p;
  }
  if (drop == 0) return *this;
  JetPoly n(num_.q_cut()), dp(CoordRingElem(Gq(1), num_.q_cut()));
  for (std::size_t j = drop; j < parts.size(); ++j) {
    n += parts[j] * dp;
    if (j + 1 < parts.size()) dp = dp * *disc_;
  }
  return JetFunction(disc_, n, p, log_);
}

bool same(const JetFunction& a, const JetFunction& b) {
  common(a, b);
  if (!(a.log_ == b.log_)) return false;
  const int p = std::max(a.pow_, b.pow_);
  return a.num_over(p) == b.num_over(p);
}

bool JetFunction::is_zero() const { return log_.is_zero() && num_.is_zero(); }

std::string JetFunction::str() const {
  std::ostringstream os;
  os << "(" << num_.str() << ")";
  if (pow_) os << " / D^" << pow_;
  if (!log_.is_zero()) os << " + (" << log_.str() << ")*log D";
  return os.str();
}

JetFunction apply_derivation(const JetFunction& f, const std::function<const JetPoly&(int alpha, int k)>& image) {
  const JetPoly xn = apply_derivation(f.num(), image);
  if (f.pow() == 0 && f.log_coeff().is_zero()) return JetFunction(f.disc(), xn, 0);
  const JetPoly xd = apply_derivation(*f.disc(), image);
  // X(N/D^p + c log D) = (X(N) D - p N X(D) + c X(D) D^p) / D^{p+1}
  JetPoly n = xn * *f.disc();
  if (f.pow()) n -= f.num() * xd * Gq(f.pow());
  if (!f.log_coeff().is_zero()) n += xd * disc_power(f.disc(), f.pow()) * f.log_coeff();
  return JetFunction(f.disc(), std::move(n), f.pow() + 1);
}

CoordRingElem evaluate_jets(const JetFunction& f, const std::function<Gq(int alpha, int k)>& value) {
  CoordRingElem n = evaluate_jets(f.num(), value);
  if (!f.disc()) return n;
  const CoordRingElem d = evaluate_jets(*f.disc(), value);
  if (f.pow()) n = n * pow(inverse(d), f.pow());
  if (!f.log_coeff().is_zero()) n += log(d) * f.log_coeff();
  return n;
}

}  // namespace fv
