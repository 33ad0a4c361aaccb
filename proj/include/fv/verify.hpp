#pragma once

#include <string>
#include <vector>

#include "fv/coord_ring.hpp"
#include "fv/frobenius.hpp"

namespace fv {

/// One named exact residual; passes iff the residual is zero.
struct Residual {
  std::string id;
  CoordRingElem value;
  bool ok() const { return value.is_zero(); }
};

/// di: one scalar residual; ad: the two gradient components.
std::vector<CoordRingElem> verify_theta_relation(Case c, int alpha, int k, int q_cut);
CoordRingElem verify_omega_bilinear(Case c, int a, int k, int b, int l, int q_cut);
/// recursion, normalization, orthogonality, Euler (P1), conserved-density PDEs (and the ad PDE).
std::vector<Residual> verify_theta_axioms(ModelId id, int z_max, int q_cut);

}  // namespace fv
