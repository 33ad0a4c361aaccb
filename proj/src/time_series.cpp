#include "fv/time_series.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace fv {

TimeSpace::TimeSpace(int k_max, int deg, int q_cut) : k_max_(k_max), deg_(deg), q_cut_(q_cut) {
  if (k_max < 0 || 2 * (k_max + 1) > 16) throw std::invalid_argument("TimeSpace: k_max out of range");
  if (deg < 0 || deg > 15) throw std::invalid_argument("TimeSpace: degree cut out of range");
  if (q_cut < 0) throw std::invalid_argument("TimeSpace: negative q cut");
  const int n = nvars();
  std::vector<int> e(n, 0);
  // all exponent vectors of total degree exactly d, lexicographic in the variable order
  auto gen = [&](auto&& self, int v, int left) -> void {
    if (v == n - 1) {
      e[v] = left;
      std::uint64_t p = 0;
      for (int i = 0; i < n; ++i) p |= static_cast<std::uint64_t>(e[i]) << (4 * i);
      lookup_.emplace(p, static_cast<int>(packed_.size()));
      packed_.push_back(p);
      return;
    }
    for (int x = left; x >= 0; --x) {
      e[v] = x;
      self(self, v + 1, left - x);
    }
    e[v] = 0;
  };
  for (int d = 0; d <= deg; ++d) {
    gen(gen, 0, d);
    degree_.resize(packed_.size(), d);
  }
  partners_.resize(packed_.size());
  for (int i = 0; i < nmono(); ++i)
    for (int j = 0; j < nmono() && degree_[i] + degree_[j] <= deg; ++j)
      partners_[i].emplace_back(j, lookup_.at(packed_[i] + packed_[j]));
}

int TimeSpace::index(const std::vector<int>& exps) const {
  std::uint64_t p = 0;
  int total = 0;
  for (int v = 0; v < static_cast<int>(exps.size()); ++v) {
    if (exps[v] < 0) throw std::invalid_argument("TimeSpace: negative exponent");
    total += exps[v];
    if (total > deg_) return -1;
    p |= static_cast<std::uint64_t>(exps[v]) << (4 * v);
  }
  return index_packed(p);
}

int TimeSpace::index_packed(std::uint64_t p) const {
  auto it = lookup_.find(p);
  return it == lookup_.end() ? -1 : it->second;
}

TimeSeries::TimeSeries(TimeSpacePtr space)
    : space_(std::move(space)), stride_(space_->q_cut() + 1), c_(static_cast<std::size_t>(space_->nmono()) * stride_) {}

TimeSeries TimeSeries::constant(TimeSpacePtr space, const Gq& c) {
  TimeSeries t(std::move(space));
  t.at(0, 0) = c;
  return t;
}

TimeSeries TimeSeries::q_constant(TimeSpacePtr space, const std::vector<Gq>& series) {
  TimeSeries t(std::move(space));
  for (int d = 0; d < std::min<int>(t.stride_, series.size()); ++d) t.at(0, d) = series[d];
  return t;
}

TimeSeries TimeSeries::variable(TimeSpacePtr space, int alpha, int k) {
  TimeSeries t(space);
  if (k > space->k_max()) return t;
  std::vector<int> e(space->nvars(), 0);
  e[space->var(alpha, k)] = 1;
  const int i = space->index(e);
  if (i >= 0) t.at(i, 0) = Gq(1);
  return t;
}

std::vector<Gq> TimeSeries::series(int mono) const {
  return std::vector<Gq>(c_.begin() + mono * stride_, c_.begin() + (mono + 1) * stride_);
}

std::vector<Gq> TimeSeries::coefficient(const std::map<std::pair<int, int>, int>& times) const {
  std::vector<int> e(space_->nvars(), 0);
  for (const auto& [label, p] : times) {
    if (label.second > space_->k_max()) return std::vector<Gq>(stride_);
    e[space_->var(label.first, label.second)] = p;
  }
  const int i = space_->index(e);
  if (i < 0) throw std::out_of_range("TimeSeries: monomial beyond the degree cut");
  return series(i);
}

bool TimeSeries::mono_is_zero(int mono) const {
  for (int d = 0; d < stride_; ++d)
    if (!c_[mono * stride_ + d].is_zero()) return false;
  return true;
}

bool TimeSeries::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Gq& z) { return z.is_zero(); });
}

int TimeSeries::order() const {
  for (int i = 0; i < space_->nmono(); ++i)
    if (!mono_is_zero(i)) return space_->degree(i);
  return space_->deg() + 1;
}

TimeSeries TimeSeries::operator-() const {
  TimeSeries r = *this;
  for (auto& z : r.c_)
    if (!z.is_zero()) z = -z;
  return r;
}

TimeSeries& TimeSeries::operator+=(const TimeSeries& o) {
  if (!space_) return *this = o;
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (!o.c_[i].is_zero()) c_[i] += o.c_[i];
  return *this;
}

TimeSeries& TimeSeries::operator-=(const TimeSeries& o) {
  if (!space_) return *this = -o;
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (!o.c_[i].is_zero()) c_[i] -= o.c_[i];
  return *this;
}

TimeSeries& TimeSeries::operator*=(const Gq& s) {
  if (s.is_one()) return *this;
  for (auto& z : c_)
    if (!z.is_zero()) z = z * s;
  return *this;
}

void TimeSeries::add_scaled(const TimeSeries& src, const Gq& s) {
  if (s.is_zero()) return;
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (!src.c_[i].is_zero()) c_[i] += src.c_[i] * s;
}

TimeSeries operator*(const TimeSeries& a, const TimeSeries& b) {
  const TimeSpace& sp = *a.space_;
  TimeSeries r(a.space_);
  const int qs = a.stride_;
  std::vector<char> bnz(sp.nmono());
  for (int j = 0; j < sp.nmono(); ++j) bnz[j] = !b.mono_is_zero(j);
  for (int i = 0; i < sp.nmono(); ++i) {
    const Gq* ai = &a.c_[i * qs];
    int top = -1;
    for (int d = 0; d < qs; ++d)
      if (!ai[d].is_zero()) top = d;
    if (top < 0) continue;
    for (const auto& [j, k] : sp.partners(i)) {
      if (!bnz[j]) continue;
      const Gq* bj = &b.c_[j * qs];
      Gq* rk = &r.c_[k * qs];
      for (int da = 0; da <= top; ++da) {
        if (ai[da].is_zero()) continue;
        for (int db = 0; da + db < qs; ++db)
          if (!bj[db].is_zero()) rk[da + db] += ai[da] * bj[db];
      }
    }
  }
  return r;
}

bool operator==(const TimeSeries& a, const TimeSeries& b) { return a.c_ == b.c_; }

TimeSeries TimeSeries::q_shift(int d) const {
  TimeSeries r(space_);
  for (int i = 0; i < space_->nmono(); ++i)
    for (int e = 0; e + d < stride_; ++e) r.at(i, e + d) = at(i, e);
  return r;
}

TimeSeries TimeSeries::derivative(int alpha, int k) const {
  TimeSeries r(space_);
  if (k > space_->k_max()) return r;
  const int v = space_->var(alpha, k);
  const std::uint64_t unit = std::uint64_t{1} << (4 * v);
  for (int i = 0; i < space_->nmono(); ++i) {
    const int e = space_->exponent(i, v);
    if (e == 0 || mono_is_zero(i)) continue;
    const int t = space_->index_packed(space_->packed(i) - unit);
    for (int d = 0; d < stride_; ++d)
      if (!at(i, d).is_zero()) r.at(t, d) = at(i, d) * Gq(e);
  }
  return r;
}

TimeSeries TimeSeries::truncated_deg(int n) const {
  TimeSeries r = *this;
  for (int i = 0; i < space_->nmono(); ++i)
    if (space_->degree(i) > n)
      for (int d = 0; d < stride_; ++d) r.at(i, d) = Gq(0);
  return r;
}

std::string TimeSeries::str() const {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < space_->nmono(); ++i) {
    for (int d = 0; d < stride_; ++d) {
      if (at(i, d).is_zero()) continue;
      if (!first) os << " + ";
      first = false;
      os << "(" << at(i, d).str() << ")";
      if (d) os << "*q^" << d;
      for (int v = 0; v < space_->nvars(); ++v) {
        const int e = space_->exponent(i, v);
        if (!e) continue;
        const auto [a, k] = space_->var_label(v);
        os << "*s" << a << k;
        if (e > 1) os << "^" << e;
      }
    }
  }
  return first ? "0" : os.str();
}

TimeSeries inverse(const TimeSeries& x) {
  const Gq c = x.at(0, 0);
  if (c.is_zero()) throw DivisionByZero("inverse: series has a zero constant term");
  const Gq ci = c.inverse();
  TimeSeries y = x * ci;
  y.at(0, 0) = Gq(0);  // x = c (1 + y) with y nilpotent
  const int steps = x.space()->deg() + x.space()->q_cut();
  TimeSeries result = TimeSeries::constant(x.space(), Gq(1));
  TimeSeries term = result;
  for (int n = 1; n <= steps; ++n) {
    term = -(term * y);
    if (term.is_zero()) break;
    result += term;
  }
  return result * ci;
}

TimeSeries exp(const TimeSeries& x) {
  if (!x.at(0, 0).is_zero()) throw std::domain_error("exp: series has a nonzero constant term");
  // x is nilpotent: every term raises (time degree + q degree) by at least one
  const int steps = x.space()->deg() + x.space()->q_cut();
  TimeSeries result = TimeSeries::constant(x.space(), Gq(1));
  TimeSeries term = result;
  for (int n = 1; n <= steps; ++n) {
    term = term * x;
    term *= Gq(Rational(1, n));
    if (term.is_zero()) break;
    result += term;
  }
  return result;
}

}  // namespace fv
