#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fv/coord_ring.hpp"

namespace fv {

/// Images of the generators w1, w2, e^{w1}, e^{-w1}, Q in a target ring R.
template <class R>
struct SubstImages {
  R one;
  R w1;
  R w2;
  std::optional<R> e;
  std::optional<R> einv;
  R Q;
};

namespace detail {

template <class R>
class PowerCache {
 public:
  PowerCache(const R* base, const R& one) : base_(base) { pows_.push_back(one); }
  const R& get(int n) {
    if (n > 0 && !base_) throw std::invalid_argument("substitute: missing generator image");
    while (static_cast<int>(pows_.size()) <= n) pows_.push_back(pows_.back() * *base_);
    return pows_[n];
  }

 private:
  const R* base_;
  std::vector<R> pows_;
};

}  // namespace detail

/// Ring homomorphism induced by the generator images (up to the target truncation).
template <class R>
R substitute(const CoordRingElem& x, const SubstImages<R>& im) {
  detail::PowerCache<R> p1(&im.w1, im.one), p2(&im.w2, im.one), pq(&im.Q, im.one);
  detail::PowerCache<R> pe(im.e ? &*im.e : nullptr, im.one), pei(im.einv ? &*im.einv : nullptr, im.one);
  // group by (m, d) so that each exponential prefactor is multiplied once
  std::map<std::pair<int, int>, R> groups;
  for (const auto& [k, c] : x.terms()) {
    const Mono mo = CoordRingElem::unpack(k);
    R poly = p1.get(mo.a) * p2.get(mo.b) * c;
    auto it = groups.find({mo.m, mo.d});
    if (it == groups.end()) groups.emplace(std::make_pair(mo.m, mo.d), std::move(poly));
    else it->second += poly;
  }
  R out = im.one * Gq(0);
  for (auto& [md, poly] : groups) {
    const auto [m, d] = md;
    R pre = m >= 0 ? pe.get(m) : pei.get(-m);
    if (d) pre = pre * pq.get(d);
    out += pre * poly;
  }
  return out;
}

}  // namespace fv
