#pragma once

#include <Eigen/Core>

#include "fv/coord_ring.hpp"
#include "fv/gaussian.hpp"

namespace Eigen {

template <>
struct NumTraits<fv::Gq> : GenericNumTraits<fv::Gq> {
  using Real = fv::Gq;
  using NonInteger = fv::Gq;
  using Nested = fv::Gq;
  enum { IsComplex = 0, IsInteger = 0, IsSigned = 1, RequireInitialization = 1, ReadCost = 4, AddCost = 16, MulCost = 32 };
};

template <>
struct NumTraits<fv::CoordRingElem> : GenericNumTraits<fv::CoordRingElem> {
  using Real = fv::CoordRingElem;
  using NonInteger = fv::CoordRingElem;
  using Nested = fv::CoordRingElem;
  enum { IsComplex = 0, IsInteger = 0, IsSigned = 1, RequireInitialization = 1, ReadCost = 8, AddCost = 64, MulCost = 256 };
};

}  // namespace Eigen

namespace fv {

using Mat2q = Eigen::Matrix<Gq, 2, 2>;
using Vec2q = Eigen::Matrix<Gq, 2, 1>;
using Mat2c = Eigen::Matrix<CoordRingElem, 2, 2>;
using Vec2c = Eigen::Matrix<CoordRingElem, 2, 1>;

/// Promotes a constant matrix to coordinate-ring entries.
inline Mat2c lift(const Mat2q& m, int q_cut = CoordRingElem::kExact) {
  Mat2c r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r(i, j) = CoordRingElem(m(i, j), q_cut);
  return r;
}

}  // namespace fv
