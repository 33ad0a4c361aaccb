#pragma once

#include <array>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "fv/coord_ring.hpp"
#include "fv/frobenius.hpp"
#include "fv/time_series.hpp"

namespace fv {

/// Evaluates coordinate-ring functions at a point (w1, w2) = (U1, U2) given by time series,
/// with e^{m w1} -> exp(U1)^m and Q -> q exp(U2).  Power tables are cached per point.
class PointEvaluator {
 public:
  PointEvaluator(TimeSeries u1, TimeSeries u2);

  TimeSeries eval(const CoordRingElem& f);
  /// sum_i mult_i * f_i(U), grouping the exponential prefactors across all f_i.
  TimeSeries eval_combination(const std::vector<std::pair<TimeSeries, CoordRingElem>>& terms);

 private:
  const TimeSeries& poly(int a, int b);
  const TimeSeries& prefactor(int m, int d);

  TimeSpacePtr space_;
  TimeSeries u1_, u2_;
  std::map<std::pair<int, int>, TimeSeries> poly_;
  std::map<std::pair<int, int>, TimeSeries> pre_;
};

/// Which side of the correspondence a solution lives on.
enum class SolutionKind { Plain, Composed };

/// Time configuration: the times s^{alpha,k}, k <= k_max, with s^{1,0} = base + x^{1,0}.
struct TimeConfig {
  SolutionKind kind = SolutionKind::Plain;
  ModelId model = ModelId::P1;  // plain solutions
  Case composed = Case::Di;     // composed solutions (b-contracted X data)
  Gq base;                      // value of s^{1,0} at the expansion point
  int k_max = 5;
  int deg = 4;
  int q_cut = 5;
};

/// Shifted time s~^{alpha,k} = s^{alpha,k} - delta^{alpha,1} delta^{k,1} including the base shift.
TimeSeries shifted_time(const TimeConfig& cfg, const TimeSpacePtr& space, int alpha, int k);

/// Generators of the Euler-Lagrange system: theta_{alpha,k} (plain) or the contracted thetas (composed).
CoordRingElem el_function(const TimeConfig& cfg, int alpha, int k);
/// Two-point function paired with s~ s~ in the genus-zero free energy.
CoordRingElem el_omega(const TimeConfig& cfg, int a, int k, int b, int l);

struct TopologicalSolution {
  TimeConfig cfg;
  TimeSpacePtr space;
  std::array<TimeSeries, 2> w;   // w_top
  std::vector<Gq> base[2];       // q-series of the base point
  int iterations = 0;
};

/// Order-by-order solution of sum s~^{alpha,k} d theta_{alpha,k}/d w^beta (w) = 0.
TopologicalSolution topological_solution(const TimeConfig& cfg);
/// The Euler-Lagrange residual (both components) of a solution; zero for a true solution.
std::array<TimeSeries, 2> el_residual(const TopologicalSolution& sol);

/// F_0 = 1/2 sum s~ s~ Omega(w_top).
TimeSeries genus0_free_energy(const TopologicalSolution& sol);
/// A_di or A_ad evaluated on the configuration's times (unshifted s).
TimeSeries a_shift(Case c, const TimeConfig& cfg, const TimeSpacePtr& space);

/// Right-hand sides of the flows d w^alpha / d s^{beta,p} = eta^{alpha gamma} d_x (d theta_{beta,p+1} / d w^gamma),
/// as the matrices A^alpha_gamma with d w^alpha / d s^{beta,p} = A^alpha_gamma w^gamma_x.
Mat2c flow_matrix(ModelId id, int beta, int p, int q_cut);

struct Genus0Report {
  std::string id;
  bool ok = false;
  std::string detail;
};

/// (a) v_top = v(u_top) and (b) F0^{P1} - sign F0^X - A = 0 for one case.
std::vector<Genus0Report> verify_genus0(Case c, int k_max, int deg, int q_cut);

/// Times monomial table of a solution component for reports.
std::vector<std::pair<std::map<std::pair<int, int>, int>, std::vector<Gq>>> nonzero_terms(const TimeSeries& x);

}  // namespace fv
