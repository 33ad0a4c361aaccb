#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "fv/report.hpp"

namespace fv {

namespace detail {

using Task = std::function<Check()>;

/// Calls fn(0..n-1) on up to `jobs` threads; rethrows the first exception.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn);
/// Results keep task order regardless of scheduling.
std::vector<Check> run_tasks(std::vector<Task> tasks, int jobs);

Check make_check(std::string id, std::string anchor, Json params);
void set_residual(Check& c, const CoordRingElem& r);
void set_residual(Check& c, const JetFunction& r);
std::string series_mismatch(const std::vector<Gq>& got, const std::vector<Gq>& want);

}  // namespace detail

std::vector<detail::Task> genus0_side_tasks(const std::string& name, const SuiteParams& p);
std::vector<detail::Task> genus12_tasks(const std::string& name, const SuiteParams& p, Genus2Context* ctx);
/// Sections needing Genus2Context.
bool needs_genus2(const std::string& name);

}  // namespace fv
