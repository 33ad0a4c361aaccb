#include <stdexcept>

#include "fv/special.hpp"
#include "fv/verify.hpp"

namespace fv {

std::vector<CoordRingElem> verify_theta_relation(Case c, int alpha, int k, int q_cut) {
  if (c == Case::Di) {
    CoordRingElem r = pull_back(Case::Di, theta(ModelId::P1, alpha, k, q_cut), q_cut) - contracted_theta(c, alpha, k, q_cut);
    if (alpha == 2) r -= CoordRingElem(Gq(factorial(k + 1).inverse()), q_cut);
    return {r};
  }
  const Vec2c gp = grad(theta(ModelId::P1, alpha, k, q_cut));
  const Vec2c gx = grad(contracted_theta(c, alpha, k, q_cut));
  const Mat2c M = m_matrix(q_cut);
  std::vector<CoordRingElem> out;
  for (int b = 0; b < 2; ++b) out.push_back(pull_back(c, gp(b), q_cut) - (M(0, b) * gx(0) + M(1, b) * gx(1)));
  return out;
}

CoordRingElem verify_omega_bilinear(Case c, int a, int k, int b, int l, int q_cut) {
  const CoordRingElem lhs = pull_back(c, omega(ModelId::P1, a, k, b, l, q_cut), q_cut);
  const CoordRingElem bb = contracted_omega(c, a, k, b, l, q_cut);
  const Gq eta = model_data(ModelId::P1).eta(a - 1, b - 1);
  Gq cst = eta * Gq(Rational(1, k + l + 1) * (factorial(k) * factorial(l)).inverse());
  if (c == Case::Di) return lhs - bb - CoordRingElem(cst, q_cut);
  return lhs + bb - CoordRingElem(cst * Gq::i_pow(k + l + 1), q_cut);
}

namespace {

CoordRingElem dd(const CoordRingElem& f, int i) { return i == 0 ? d_w1(f) : d_w2(f); }

std::string lbl(const char* what, int a, int k) { return std::string(what) + "(" + std::to_string(a) + "," + std::to_string(k) + ")"; }

}  // namespace

std::vector<Residual> verify_theta_axioms(ModelId id, int z_max, int q_cut) {
  std::vector<Residual> out;
  const StructureConstants sc = structure_constants(id, q_cut);
  const FrobeniusModel& md = model_data(id);
  const int K = z_max - 1;
  for (int a = 1; a <= 2; ++a) {
    // normalization
    out.push_back({lbl("normalization", a, 0),
                   theta(id, a, 0, q_cut) - CoordRingElem::w1(q_cut) * md.eta(a - 1, 0) - CoordRingElem::w2(q_cut) * md.eta(a - 1, 1)});
    for (int p = 0; p + 1 <= K; ++p) {
      out.push_back({lbl("normalization", a, p + 1), d_w1(theta(id, a, p + 1, q_cut)) - theta(id, a, p, q_cut)});
      // flatness recursion
      const CoordRingElem next = theta(id, a, p + 1, q_cut);
      const CoordRingElem cur = theta(id, a, p, q_cut);
      for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
          CoordRingElem r = dd(dd(next, x), y) - sc.upper[0][x][y] * d_w1(cur) - sc.upper[1][x][y] * d_w2(cur);
          out.push_back({lbl("recursion", a, p) + "[" + std::to_string(x + 1) + std::to_string(y + 1) + "]", r});
        }
    }
    for (int k = 0; k <= K; ++k) {
      const CoordRingElem h = theta(id, a, k, q_cut);
      // conserved-density PDE
      for (int rho = 0; rho < 2; ++rho)
        for (int al = 0; al < 2; ++al)
          for (int sg = al + 1; sg < 2; ++sg) {
            CoordRingElem r = CoordRingElem::monomial({}, Gq(0), q_cut);
            for (int be = 0; be < 2; ++be) r += sc.upper[be][rho][al] * dd(dd(h, be), sg) - sc.upper[be][rho][sg] * dd(dd(h, be), al);
            out.push_back({lbl("pde", a, k) + "[" + std::to_string(rho + 1) + "]", r});
          }
      if (md.has_euler) {
        // E = w1 d1 + 2 d2;  E theta_{a,k} = (k+a-1) theta_{a,k} + 2 delta_{a,1} theta_{2,k-1}
        CoordRingElem r = CoordRingElem::w1(q_cut) * d_w1(h) + d_w2(h) * Gq(2) - h * Gq(k + a - 1);
        if (a == 1 && k >= 1) r -= theta(id, 2, k - 1, q_cut) * Gq(2);
        // the k = 0 density v2 picks up the additive constant allowed by quasi-homogeneity
        if (a == 1 && k == 0) r -= CoordRingElem(Gq(2), q_cut);
        out.push_back({lbl("euler", a, k), r});
      }
    }
  }
  // orthogonality: sum_{i+j=n} (-1)^j <grad theta_{a,i}, grad theta_{b,j}> = delta_{n0} eta_ab
  for (int a = 1; a <= 2; ++a)
    for (int b = a; b <= 2; ++b)
      for (int n = 0; n <= K; ++n) {
        CoordRingElem r = CoordRingElem::monomial({}, Gq(0), q_cut);
        for (int i = 0; i <= n; ++i) {
          CoordRingElem t = pair_eta(id, grad(theta(id, a, i, q_cut)), grad(theta(id, b, n - i, q_cut)));
          if ((n - i) % 2) r -= t;
          else r += t;
        }
        if (n == 0) r -= CoordRingElem(md.eta(a - 1, b - 1), q_cut);
        out.push_back({"orthogonality(" + std::to_string(a) + "," + std::to_string(b) + ";" + std::to_string(n) + ")", r});
      }
  if (id == ModelId::XAd) {
    // pulled-back P1 densities solve Q f_11 + (1-Q) f_22 + Q (f_1 - f_2) = 0
    const CoordRingElem Q = CoordRingElem::Q(1, q_cut);
    const CoordRingElem one(Gq(1), q_cut);
    for (int a = 1; a <= 2; ++a)
      for (int k = 0; k <= K; ++k) {
        const CoordRingElem f = pull_back(Case::Ad, theta(ModelId::P1, a, k, q_cut), q_cut);
        CoordRingElem r = Q * d_w1(d_w1(f)) + (one - Q) * d_w2(d_w2(f)) + Q * (d_w1(f) - d_w2(f));
        out.push_back({lbl("ad_pde", a, k), r});
      }
  }
  return out;
}

}  // namespace fv
