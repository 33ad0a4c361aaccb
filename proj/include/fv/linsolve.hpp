#pragma once

#include <map>
#include <utility>
#include <vector>

#include "fv/gaussian.hpp"

namespace fv {

/// Exact sparse linear system A x = b over Q(i), solved by incremental elimination.
class SparseLinearSystem {
 public:
  using Row = std::vector<std::pair<int, Gq>>;  // (column, coefficient), any order

  explicit SparseLinearSystem(int unknowns) : n_(unknowns) {}

  void add_equation(Row row, Gq rhs);
  int unknowns() const { return n_; }
  int equations() const { return static_cast<int>(pending_.size()) + added_; }

  struct Result {
    bool consistent = true;
    int rank = 0;
    int kernel_dim = 0;
    std::vector<Gq> x;  // one solution, free unknowns set to 0 (empty if inconsistent)
  };
  /// Reduces all pending equations (sparsest first) and back-substitutes.
  Result solve();

 private:
  struct Pivot {
    Row row;  // sorted, leading column first, leading coefficient 1
    Gq rhs;
  };
  bool reduce(Row row, Gq rhs);

  int n_;
  int added_ = 0;
  bool consistent_ = true;
  std::vector<std::pair<Row, Gq>> pending_;
  std::map<int, Pivot> pivots_;
};

}  // namespace fv
