#include "fv/linsolve.hpp"

#include <algorithm>
#include <stdexcept>

namespace fv {

namespace {

using Row = SparseLinearSystem::Row;

// Merges duplicate columns, drops zeros, sorts by column.
Row canonical(Row r) {
  std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  Row out;
  for (auto& [c, v] : r) {
    if (!out.empty() && out.back().first == c) out.back().second += v;
    else out.emplace_back(c, std::move(v));
  }
  std::erase_if(out, [](const auto& e) { return e.second.is_zero(); });
  return out;
}

// a - f * b for sorted rows
Row axpy(const Row& a, const Gq& f, const Row& b) {
  Row out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, -(f * b[j].second));
      ++j;
    } else {
      Gq v = a[i].second - f * b[j].second;
      if (!v.is_zero()) out.emplace_back(a[i].first, std::move(v));
      ++i, ++j;
    }
  }
  return out;
}

}  // namespace

void SparseLinearSystem::add_equation(Row row, Gq rhs) {
  for (const auto& [c, v] : row)
    if (c < 0 || c >= n_) throw std::out_of_range("SparseLinearSystem: column out of range");
  pending_.emplace_back(std::move(row), std::move(rhs));
}

bool SparseLinearSystem::reduce(Row row, Gq rhs) {
  row = canonical(std::move(row));
  while (!row.empty()) {
    auto it = pivots_.find(row.front().first);
    if (it == pivots_.end()) break;
    const Gq f = row.front().second;
    row = axpy(row, f, it->second.row);
    rhs -= f * it->second.rhs;
  }
  if (row.empty()) return rhs.is_zero();
  const Gq inv = row.front().second.inverse();
  for (auto& e : row) e.second *= inv;
  rhs *= inv;
  const int lead = row.front().first;
  pivots_.emplace(lead, Pivot{std::move(row), std::move(rhs)});
  return true;
}

SparseLinearSystem::Result SparseLinearSystem::solve() {
  std::stable_sort(pending_.begin(), pending_.end(),
                   [](const auto& a, const auto& b) { return a.first.size() < b.first.size(); });
  for (auto& [row, rhs] : pending_) {
    if (!reduce(std::move(row), std::move(rhs))) consistent_ = false;
    ++added_;
  }
  pending_.clear();

  Result r;
  r.consistent = consistent_;
  r.rank = static_cast<int>(pivots_.size());
  r.kernel_dim = n_ - r.rank;
  if (!consistent_) return r;
  r.x.assign(n_, Gq(0));
  for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
    Gq v = it->second.rhs;
    for (std::size_t k = 1; k < it->second.row.size(); ++k) v -= it->second.row[k].second * r.x[it->second.row[k].first];
    r.x[it->first] = v;
  }
  return r;
}

}  // namespace fv
