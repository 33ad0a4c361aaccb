#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include "fv/frobenius.hpp"
#include "fv/laurent.hpp"
#include "fv/special.hpp"

namespace fv {
namespace {

// Per Q-order data of theta_alpha(z0 + eps) = sum_d Q^d e^{z w1} (A_d + w2 B_d) + c(z).
struct Pieces {
  std::vector<Laurent> A;
  std::vector<Laurent> B;
  Laurent c;
};

Laurent lpow(const Laurent& x, int e) {
  Laurent r(Gq(1));
  for (int i = 0; i < e; ++i) r = r * x;
  return r;
}

Pieces make_pieces(ModelId id, int alpha, int z0, int q_cut, int W) {
  auto lin = [&](int c) { return Laurent::linear(Gq(z0 - c)); };  // z - c
  auto inv = [&](int c) { return Laurent::inv_linear(Gq(z0 - c), W); };  // 1/(z - c)
  const Laurent z = lin(0);
  const Laurent zinv = inv(0);
  const Laurent zero(0, {}, Laurent::kInf);
  Pieces p;
  p.c = zero;
  // P1 pieces start at z^{2d-1}: beyond the window they contribute nothing
  const int dmax = id == ModelId::P1 ? std::min(q_cut, W / 2 + 1) : q_cut;
  for (int d = 0; d <= dmax; ++d) {
    const Gq fact2_inv = Gq(factorial(d).pow(2).inverse());
    Laurent P(Gq(1));
    if (id == ModelId::P1) {
      P = lpow(z, 2 * d);
    } else if (id == ModelId::XDi) {
      for (int j = 0; j < d; ++j) P = P * lin(j) * lin(j);
    } else {
      for (int j = 0; j < d; ++j) P = P * lin(-j) * lin(j);
      if (d % 2) P = -P;
    }
    P = P * fact2_inv;
    if (alpha == 2) {
      p.A.push_back(P * zinv);
      p.B.push_back(zero);
      continue;
    }
    Laurent S = zero;
    if (id == ModelId::P1) {
      S = Laurent(Gq(-2 * harmonic(d)));
    } else if (id == ModelId::XDi) {
      S = zinv * Gq(2);
      for (int k = 1; k <= d; ++k) S = S - lin(-1) * inv(k - 1) * Gq(Rational(2, k));
    } else {
      for (int k = 0; k < d; ++k) {
        // (k + z^2) / ((k+1)(k^2 - z^2)), with k^2 - z^2 = -(z-k)(z+k)
        Laurent num = Laurent(Gq(k)) + z * z;
        S = S - num * inv(k) * inv(-k) * Gq(Rational(2, k + 1));
      }
    }
    p.A.push_back(P * S);
    p.B.push_back(P);
  }
  if (id == ModelId::XDi) p.c = zinv * Gq(alpha == 1 ? -2 : -1);
  else if (alpha == 2) p.c = -zinv;
  return p;
}

int min_val(const Pieces& p) {
  int v = p.c.val();
  for (const auto& a : p.A) v = std::min(v, a.val());
  for (const auto& b : p.B) v = std::min(v, b.val());
  return v;
}

int min_prec(const Pieces& p) {
  int v = p.c.prec();
  for (const auto& a : p.A) v = std::min(v, a.prec());
  for (const auto& b : p.B) v = std::min(v, b.prec());
  return v;
}

CoordRingElem coefficient_at(const Pieces& p, int z0, int e, int q_cut) {
  const int lo = min_val(p);
  std::vector<CoordRingElem::Term> terms;
  Rational jfact(1);
  for (int j = 0; e - j >= lo; ++j) {
    if (j > 0) jfact *= Rational(j);
    const Gq w = Gq(jfact.inverse());
    for (int d = 0; d < static_cast<int>(p.A.size()); ++d) {
      const Gq a = p.A[d].coeff(e - j);
      const Gq b = p.B[d].coeff(e - j);
      if (!a.is_zero()) terms.emplace_back(CoordRingElem::pack({j, 0, z0, d}), a * w);
      if (!b.is_zero()) terms.emplace_back(CoordRingElem::pack({j, 1, z0, d}), b * w);
    }
  }
  const Gq c = p.c.coeff(e);
  if (!c.is_zero()) terms.emplace_back(CoordRingElem::pack({}), c);
  return CoordRingElem::from_terms(std::move(terms), q_cut);
}

// Coefficients eps^0..eps^kmax of theta_alpha at z0, with the pole check.
std::vector<CoordRingElem> expansion(ModelId id, int alpha, int z0, int kmax, int q_cut) {
  using Key = std::tuple<int, int, int, int>;
  static std::mutex mu;
  static std::map<Key, std::vector<CoordRingElem>> cache;
  const Key key{static_cast<int>(id), alpha, z0, q_cut};
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end() && static_cast<int>(it->second.size()) > kmax) return it->second;
  }
  if (id == ModelId::P1 && z0 != 0) throw std::invalid_argument("P1 theta is expanded at z = 0 only");
  for (int W = kmax + 4;; W += 4) {
    const Pieces p = make_pieces(id, alpha, z0, q_cut, W);
    if (min_prec(p) <= kmax) continue;
    for (int e = min_val(p); e < 0; ++e) {
      if (!coefficient_at(p, z0, e, q_cut).is_zero()) {
        throw std::logic_error("theta generating function has a pole at z = " + std::to_string(z0));
      }
    }
    std::vector<CoordRingElem> out;
    for (int e = 0; e <= kmax; ++e) out.push_back(coefficient_at(p, z0, e, q_cut));
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[key];
    if (slot.size() < out.size()) slot = out;
    return out;
  }
}

}  // namespace

CoordRingElem theta(ModelId id, int alpha, int k, int q_cut) {
  if (alpha < 1 || alpha > 2 || k < 0) throw std::invalid_argument("theta: bad label");
  if (k > 60) throw std::out_of_range("theta: order beyond the supported z-truncation");
  return expansion(id, alpha, 0, k, q_cut)[k];
}

CoordRingElem theta_at_integer(ModelId id, int alpha, int z0, int deriv, int q_cut) {
  if (id == ModelId::P1) throw std::invalid_argument("theta_at_integer: X models only");
  if (z0 < 0 || deriv < 0 || deriv > 1) throw std::invalid_argument("theta_at_integer: bad argument");
  return expansion(id, alpha, z0, 1, q_cut)[deriv];
}

CoordRingElem theta_recursive(ModelId id, int alpha, int k, int q_cut) {
  using Key = std::tuple<int, int, int>;
  static std::mutex mu;
  static std::map<Key, std::vector<CoordRingElem>> cache;
  const Key key{static_cast<int>(id), alpha, q_cut};
  std::vector<CoordRingElem> seq;
  {
    std::lock_guard<std::mutex> lock(mu);
    seq = cache[key];
  }
  if (seq.empty()) {
    const Mat2q& eta = model_data(id).eta;
    seq.push_back(CoordRingElem::w1(q_cut) * eta(alpha - 1, 0) + CoordRingElem::w2(q_cut) * eta(alpha - 1, 1));
  }
  if (static_cast<int>(seq.size()) <= k) {
    const StructureConstants sc = structure_constants(id, q_cut);
    while (static_cast<int>(seq.size()) <= k) {
      const CoordRingElem& prev = seq.back();
      // d1 theta_{p+1} = theta_p fixes the w1-dependence; d2^2 theta_{p+1} = c^x_22 d_x theta_p fixes the rest.
      CoordRingElem F1 = int_w1(prev);
      CoordRingElem r = sc.upper[0][1][1] * d_w1(prev) + sc.upper[1][1][1] * d_w2(prev) - d_w2(d_w2(F1));
      if (!d_w1(r).is_zero()) throw std::logic_error("theta recursion: inconsistent w1-dependence");
      seq.push_back(F1 + int_w2(int_w2(r)));
    }
    std::lock_guard<std::mutex> lock(mu);
    if (cache[key].size() < seq.size()) cache[key] = seq;
  }
  return seq[k];
}

namespace {

Vec2c grad_theta(ModelId id, int alpha, int k, int q_cut) { return grad(theta(id, alpha, k, q_cut)); }

CoordRingElem n_coeff(ModelId id, int a, int i, int b, int j, int q_cut) {
  CoordRingElem n = pair_eta(id, grad_theta(id, a, i, q_cut), grad_theta(id, b, j, q_cut));
  if (i == 0 && j == 0) n -= CoordRingElem(model_data(id).eta(a - 1, b - 1), q_cut);
  return n;
}

}  // namespace

CoordRingElem omega(ModelId id, int a, int k, int b, int l, int q_cut) {
  if (std::tie(a, k) > std::tie(b, l)) return omega(id, b, l, a, k, q_cut);
  using Key = std::tuple<int, int, int, int, int, int>;
  static std::mutex mu;
  static std::map<Key, CoordRingElem> cache;
  const Key key{static_cast<int>(id), a, k, b, l, q_cut};
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  if (!n_coeff(id, a, 0, b, 0, q_cut).is_zero()) throw std::logic_error("omega: numerator not divisible by z + w");
  // Omega_{k,l} = sum_j (-1)^j N_{k+1+j, l-j}
  CoordRingElem res = CoordRingElem::monomial({}, Gq(0), q_cut);
  for (int j = 0; j <= l; ++j) {
    CoordRingElem n = n_coeff(id, a, k + 1 + j, b, l - j, q_cut);
    if (j % 2) res -= n;
    else res += n;
  }
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(key, res);
  return res;
}

namespace {

struct EvalTerm {
  int alpha;
  int z0;
  int deriv;
  Gq coeff;
};

std::vector<EvalTerm> eval_terms_raw(Case c, int beta, int n) {
  const Gq inv_fact(factorial(n).inverse());
  if (c == Case::Di) {
    if (beta == 1) return {{1, n, 0, inv_fact}, {2, n, 1, inv_fact * Gq(2 * n)}};
    return {{2, n + 1, 0, inv_fact}};
  }
  if (beta == 1) {
    const Gq w = inv_fact * Gq::i_pow(n - 1);
    return {{1, n, 0, w}, {2, n, 1, w * Gq(2 * n)}, {2, n, 0, w}};
  }
  return {{2, n + 1, 0, inv_fact * Gq::i_pow(n)}};
}

std::vector<EvalTerm> eval_terms(Case c, int beta, int n) {
  std::vector<EvalTerm> out;
  for (auto& t : eval_terms_raw(c, beta, n))
    if (!t.coeff.is_zero()) out.push_back(t);
  return out;
}

// d^i/dz^i d^j/dw^j Omega_{a;b}(z, w) at integers (z0, w0), i, j <= 1.
CoordRingElem omega_at(ModelId id, int a, int z0, int i, int b, int w0, int j, int q_cut) {
  const int s = z0 + w0;
  if (s == 0) {
    if (i || j) throw std::logic_error("omega_at: derivative at z = w = 0 not available");
    return omega(id, a, 0, b, 0, q_cut);
  }
  auto N = [&](int ii, int jj) {
    CoordRingElem n = pair_eta(id, grad(theta_at_integer(id, a, z0, ii, q_cut)), grad(theta_at_integer(id, b, w0, jj, q_cut)));
    if (ii == 0 && jj == 0) n -= CoordRingElem(model_data(id).eta(a - 1, b - 1), q_cut);
    return n;
  };
  // 1/(s + eps + delta) = 1/s - (eps + delta)/s^2 + 2 eps delta/s^3 + ...
  auto cinv = [&](int p, int r) {
    const Rational S(s);
    if (p == 0 && r == 0) return Gq(S.inverse());
    if (p + r == 1) return Gq(-S.pow(-2));
    return Gq(Rational(2) * S.pow(-3));
  };
  CoordRingElem out = CoordRingElem::monomial({}, Gq(0), q_cut);
  for (int ii = 0; ii <= i; ++ii)
    for (int jj = 0; jj <= j; ++jj) out += N(ii, jj) * cinv(i - ii, j - jj);
  return out;
}

}  // namespace

CoordRingElem contracted_theta(Case c, int beta, int n, int q_cut) {
  const ModelId id = x_model(c);
  CoordRingElem out = CoordRingElem::monomial({}, Gq(0), q_cut);
  for (const auto& t : eval_terms(c, beta, n)) out += theta_at_integer(id, t.alpha, t.z0, t.deriv, q_cut) * t.coeff;
  return out;
}

CoordRingElem contracted_omega(Case c, int a, int k, int b, int l, int q_cut) {
  const ModelId id = x_model(c);
  CoordRingElem out = CoordRingElem::monomial({}, Gq(0), q_cut);
  for (const auto& s : eval_terms(c, a, k))
    for (const auto& t : eval_terms(c, b, l))
      out += omega_at(id, s.alpha, s.z0, s.deriv, t.alpha, t.z0, t.deriv, q_cut) * (s.coeff * t.coeff);
  return out;
}

}  // namespace fv
