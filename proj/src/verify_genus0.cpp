#include <sstream>

#include "fv/hierarchy.hpp"

namespace fv {

namespace {

std::string describe(const TimeSeries& r) {
  if (r.is_zero()) return "0";
  const auto t = nonzero_terms(r);
  std::ostringstream os;
  os << t.size() << " nonzero monomials, lowest degree " << r.order();
  return os.str();
}

}  // namespace

std::vector<Genus0Report> verify_genus0(Case c, int k_max, int deg, int q_cut) {
  const Gq base = c == Case::Di ? Gq(1) : Gq::i();
  TimeConfig p1{SolutionKind::Plain, ModelId::P1, c, base, k_max, deg, q_cut};
  TimeConfig xc{SolutionKind::Composed, x_model(c), c, base, k_max, deg, q_cut};
  const TopologicalSolution vs = topological_solution(p1);
  const TopologicalSolution us = topological_solution(xc);
  // both solutions must live on the same monomial table
  const TimeSpacePtr& space = vs.space;
  auto rebase = [&](const TimeSeries& x) {
    TimeSeries y(space);
    for (int i = 0; i < space->nmono(); ++i)
      for (int d = 0; d <= q_cut; ++d) y.at(i, d) = x.at(i, d);
    return y;
  };
  const std::array<TimeSeries, 2> u{rebase(us.w[0]), rebase(us.w[1])};

  std::vector<Genus0Report> out;
  const std::string tag = std::string(case_name(c)) + ".";
  auto add = [&](const std::string& id, const TimeSeries& r) { out.push_back({tag + id, r.is_zero(), describe(r)}); };

  const auto rv = el_residual(vs);
  const auto ru = el_residual(us);
  add("el_residual.p1", rv[0] + rv[1]);
  add("el_residual.composed", ru[0] + ru[1]);

  PointEvaluator pe(u[0], u[1]);
  const CoordinateMap map = coordinate_map(c, q_cut);
  add("topsol_map.v1", vs.w[0] - pe.eval(map.v1));
  add("topsol_map.v2", vs.w[1] - pe.eval(map.v2));

  const TimeSeries f_p1 = genus0_free_energy(vs);
  const TimeSeries f_x = rebase(genus0_free_energy(us));
  const TimeSeries a = a_shift(c, p1, space);
  add("free_energy", c == Case::Di ? f_p1 - f_x - a : f_p1 + f_x - a);
  return out;
}

}  // namespace fv
