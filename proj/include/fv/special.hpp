#pragma once

#include "fv/rational.hpp"

namespace fv {

/// H_n = 1 + 1/2 + ... + 1/n, H_0 = 0.
Rational harmonic(int n);

/// Bernoulli numbers with B_1 = -1/2 (defined by sum_{k<=n} C(n+1,k) B_k = 0).
Rational bernoulli(int n);

Rational factorial(int n);
Rational binomial(int n, int k);

}  // namespace fv
