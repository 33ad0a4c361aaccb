#pragma once

#include <array>
#include <string>

#include "fv/coord_ring.hpp"
#include "fv/eigen_support.hpp"

namespace fv {

enum class ModelId { P1, XDi, XAd };
enum class Case { Di, Ad };

const char* model_name(ModelId id);
const char* case_name(Case c);
inline ModelId x_model(Case c) { return c == Case::Di ? ModelId::XDi : ModelId::XAd; }

struct FrobeniusModel {
  ModelId id;
  std::string name;
  const char* x1;  // coordinate labels
  const char* x2;
  Mat2q eta;
  Mat2q eta_inv;
  Vec2q unit;
  bool has_euler = false;
  Mat2q mu;  // monodromy data (P1 only)
  Mat2q R;
};

const FrobeniusModel& model_data(ModelId id);

CoordRingElem potential(ModelId id, int q_cut);

/// c_{abg} (all lower) and c^g_{ab} = eta^{gd} c_{dab}; indices are 0-based.
struct StructureConstants {
  std::array<std::array<std::array<CoordRingElem, 2>, 2>, 2> lower;
  std::array<std::array<std::array<CoordRingElem, 2>, 2>, 2> upper;  // upper[g][a][b]
};
StructureConstants structure_constants(ModelId id, int q_cut);

/// g^{ab} of the P1 model.
Mat2c intersection_form_p1(int q_cut);

/// Gradient (d/dw1, d/dw2).
inline Vec2c grad(const CoordRingElem& f) { return Vec2c(d_w1(f), d_w2(f)); }

/// eta(grad f, grad g) = f_a eta^{ab} g_b.
CoordRingElem pair_eta(ModelId id, const Vec2c& f, const Vec2c& g);

/// theta_{alpha,k}: z^k coefficient of the closed-form generating function (alpha is 1-based).
CoordRingElem theta(ModelId id, int alpha, int k, int q_cut);

/// theta_alpha(w; z) (deriv = 0) or d/dz theta_alpha (deriv = 1) at the integer z0, X models only.
CoordRingElem theta_at_integer(ModelId id, int alpha, int z0, int deriv, int q_cut);

/// theta_{alpha,k+1} generated from theta_{alpha,0} by the flatness recursion.
CoordRingElem theta_recursive(ModelId id, int alpha, int k, int q_cut);

/// Omega_{a,k; b,l} by the (z+w)-division recursion (a, b are 1-based).
CoordRingElem omega(ModelId id, int a, int k, int b, int l, int q_cut);

/// b^{alpha,m}_{beta,n} of the di/ad correspondences with 0^0 = 1 (alpha, beta are 1-based).
Gq b_coefficient(Case c, int beta, int n, int alpha, int m);

/// v(u) images: returns (v1, v2, Q_v) as coordinate-ring elements in u.
struct CoordinateMap {
  CoordRingElem v1;
  CoordRingElem v2;
  CoordRingElem Qv;
};
CoordinateMap coordinate_map(Case c, int q_cut);

/// Pulls a function of v back along v(u).
CoordRingElem pull_back(Case c, const CoordRingElem& f, int q_cut);

/// M^g_b as the matrix (row g, column b).
Mat2c m_matrix(int q_cut);

/// Sum_m b^{sigma,m}_{beta,n} theta^X_{sigma,m}, realized through integer evaluations.
CoordRingElem contracted_theta(Case c, int beta, int n, int q_cut);

/// Sum_{m,m'} b^{.,m}_{a,k} b^{.,m'}_{b,l} Omega^X_{.,m;.,m'}, realized through integer evaluations.
CoordRingElem contracted_omega(Case c, int a, int k, int b, int l, int q_cut);

}  // namespace fv
