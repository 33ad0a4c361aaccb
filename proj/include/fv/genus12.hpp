#pragma once

#include <array>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fv/frobenius.hpp"
#include "fv/jet.hpp"
#include "fv/oracle.hpp"

namespace fv {

/// Frobenius data of one model in jet form, shared by every genus-1/2 computation.
struct JetModel {
  ModelId id = ModelId::P1;
  int q_cut = 0;
  Mat2q eta, eta_inv;
  std::shared_ptr<const JetPoly> disc;  // genus-one discriminant, monic in (w^1_1)^2
  std::array<std::array<CoordRingElem, 2>, 2> hess;                   // d_a d_b F
  std::array<std::array<std::array<CoordRingElem, 2>, 2>, 2> c_up;    // c^a_{bc}
  std::array<std::array<JetPoly, 2>, 2> u_mat;  // U^b_a = eta^{bc} d_a d_c F  (indexed [b][a])
  std::array<std::array<JetPoly, 2>, 2> v_mat;  // V^b_a = d_x U^b_a = c^b_{ae} w^e_1
};

/// Cached per (model, cut); the discriminant pointer is stable for the life of the program.
std::shared_ptr<const JetModel> jet_model(ModelId id, int q_cut);

/// Images of w^alpha_k under a vector field commuting with d/dx, extended lazily from k = 0.
class JetFlow {
 public:
  JetFlow(JetPoly y1, JetPoly y2);
  const JetPoly& image(int alpha, int k);
  std::function<const JetPoly&(int, int)> fn() {
    return [this](int a, int k) -> const JetPoly& { return image(a, k); };
  }

 private:
  std::array<std::vector<JetPoly>, 2> img_;
};

/// d/dt^{alpha,p}: w^b -> eta^{bc} d_x (d_c theta_{alpha,p+1}).
JetFlow time_flow(const JetModel& m, int alpha, int p);

/// Reading of the generating series that defines the TRR derivations D_{alpha,m}.
enum class OperatorReading {
  Literal,   // sum_p [z^m] ((d_x + z U)^p U)^b_a d/dw^b_p
  Derived,   // sum_p [z^m] ((d_x + z V)^p V)^b_a d/dw^b_p with V = d_x U (from the genus-0 TRR)
};
const char* reading_name(OperatorReading r);

/// The derivation D_{alpha,m}; images are built on demand.
class TrrOperator {
 public:
  TrrOperator(std::shared_ptr<const JetModel> m, int alpha, int order, OperatorReading reading);
  const JetPoly& image(int beta, int p);
  std::function<const JetPoly&(int, int)> fn() {
    return [this](int b, int p) -> const JetPoly& { return image(b, p); };
  }
  JetFunction apply(const JetFunction& f) { return apply_derivation(f, fn()); }

 private:
  using Mat = std::array<std::array<JetPoly, 2>, 2>;
  std::shared_ptr<const JetModel> m_;
  int alpha_, order_;
  OperatorReading reading_;
  std::vector<std::vector<Mat>> g_;  // g_[p][j] = [z^j] of the p-th series term
  JetPoly zero_;
};

/// tau_p(phi_alpha).
struct Insertion {
  int alpha = 1;
  int p = 0;
  friend auto operator<=>(const Insertion&, const Insertion&) = default;
};

/// Full-descendant correlators <<tau_{p1}(phi_{a1}) ...>>_g as jet functions, built by flows from
/// Omega (genus 0, at least two insertions), F_1 and F_2.  Results are cached.
class Correlators {
 public:
  Correlators(std::shared_ptr<const JetModel> m, JetFunction f1, std::optional<JetFunction> f2 = std::nullopt);

  const JetModel& model() const { return *m_; }
  const std::shared_ptr<const JetModel>& model_ptr() const { return m_; }
  const JetFunction& f1() const { return f1_; }
  bool has_f2() const { return f2_.has_value(); }
  const JetFunction& f2() const { return f2_.value(); }

  /// The jet function of a correlator (insertion order is irrelevant).
  JetFunction get(int genus, std::vector<Insertion> ins);
  /// The same correlator restricted to the primary point jets (w_1 = (1,0), w_k = 0 for k >= 2),
  /// computed with terms pruned that cannot survive the restriction.
  CoordRingElem at_primary(int genus, std::vector<Insertion> ins);

 private:
  JetFunction base(int genus, const std::vector<Insertion>& ins) const;
  JetFlow& flow(const Insertion& x);
  JetFunction build(int genus, const std::vector<Insertion>& ins, int prune);

  std::shared_ptr<const JetModel> m_;
  JetFunction f1_;
  std::optional<JetFunction> f2_;
  std::map<Insertion, std::unique_ptr<JetFlow>> flows_;
  std::map<std::tuple<int, std::vector<Insertion>, int>, JetFunction> cache_;
  std::recursive_mutex mu_;
};

/// Drops terms whose count of jets vanishing at the primary point exceeds `budget`.
JetFunction prune_for_primary(const JetFunction& f, int budget);
/// Jet values on the primary slice: w^1_1 = 1, everything else 0.
Gq primary_jet(int alpha, int k);

// ---------------------------------------------------------------------------
// Topological recursion relations

/// Sum of products of tau_0 correlators with contracted index pairs.  A factor is written
/// "g:slots": 'a' and 'b' are the external indices, any other lowercase letter is a lower index
/// and its uppercase partner the raised one; each pair is contracted with eta^{-1}.
struct CorrelatorTerm {
  Rational coeff;
  std::string factors;  // e.g. "0:apg 1:P 1:G"
};
JetFunction evaluate_terms(Correlators& c, const std::vector<CorrelatorTerm>& terms, int alpha, int beta = 1);

const std::vector<CorrelatorTerm>& r_terms(int k);   // R_{alpha,k}; empty for k > 4
const std::vector<CorrelatorTerm>& r11_terms();      // R_{alpha,1;beta,1}

/// D_{alpha,k} F_1 minus its prescribed value ((1/24) d/dt^{alpha,0} Tr U for k = 1, else 0).
JetFunction trr1_residual(Correlators& c, int alpha, int k, OperatorReading r);
/// D_{alpha,k} F_2 - R_{alpha,k}, k >= 2.
JetFunction trr2_residual(Correlators& c, int alpha, int k, OperatorReading r);
/// (D_{alpha,1} D_{beta,1} - 3 <<phi_alpha phi_beta phi^gamma>>_0 D_{gamma,1}) F_2 - R_{alpha,1;beta,1}.
JetFunction trr3_residual(Correlators& c, int alpha, int beta, OperatorReading r);

/// The first reading (literal, then derived) for which TRR1 holds exactly for P^1 (alpha = 1, 2;
/// k = 1..max_k).  Throws if neither does.
struct Calibration {
  OperatorReading reading;
  std::vector<std::string> log;  // one line per tried reading
};
Calibration calibrate_reading(int max_k = 3);

// ---------------------------------------------------------------------------
// Partial correlation functions and the Belorousski-Pandharipande relation

/// <<tau_{p_1}(phi_{a_1}) ...>>_g restricted to the primary slice, as a function of (w1, w2) = (t1, t2).
/// Genus zero uses the two-point functions (one point: t^b Omega_{a p; b 0} - Omega_{a p; 1 1}).
CoordRingElem correlation(Correlators& c, int genus, std::vector<Insertion> ins);

/// Confirms from the topological solution that on the primary slice w = (t^{1,0}, t^{2,0}), hence
/// w_x = (1, 0) and all higher jets vanish.
struct PrimaryJetCheck {
  bool ok = false;
  std::string detail;
};
PrimaryJetCheck check_primary_jets(ModelId id, int q_cut);

/// BP combination summed over the permutations of the three insertions (k_i <= 1), evaluated on the
/// primary slice; zero when the relation holds.
CoordRingElem bp_residual(Correlators& c, const std::array<Insertion, 3>& ext);

// ---------------------------------------------------------------------------
// Genus-two reconstruction

/// F_2 of P^1 from TRR2 (k = 2..6) and TRR3 with the ansatz N / P^4: N is a combination of jet
/// monomials of order <= 4 and x-weight 10, each times the unique power of Q_v making F_2
/// quasi-homogeneous of degree -2 (string equation: no explicit v^1; divisor: v^2 only via Q_v).
struct F2Reconstruction {
  JetFunction f2;
  int unknowns = 0;
  int equations = 0;
  int rank = 0;
  int kernel_dim = 0;
  bool consistent = false;
};
F2Reconstruction reconstruct_f2_p1(OperatorReading r, int jobs = 1);

// ---------------------------------------------------------------------------
// Changes of jet variables and genus one

/// Images of v^alpha_k (k = 0..order) in the u-jets of the X model of a case.
struct JetChangeOfVariables {
  Case c = Case::Di;
  int order = 0;
  int q_cut = 0;
  std::array<CoordRingElem, 2> v0;          // k = 0: the coordinate map
  std::array<std::vector<JetPoly>, 2> vk;   // vk[a][k] for k >= 1 (vk[a][0] unused)
  CoordRingElem disc_factor;                // lambda with P(v-jets) = lambda * D_X
};
JetChangeOfVariables jet_transform(Case c, int order, int q_cut);
/// Re-applies the defining recursion to the stored images; zero means consistent.
JetPoly jet_transform_residual(const JetChangeOfVariables& t, int alpha, int k);

/// Pushes a P^1 jet function through the change of variables (sign applied by the caller).
JetFunction push_forward(const JetChangeOfVariables& t, const JetFunction& f_p1);

/// Closed-form genus-one free energies.
JetFunction f1(ModelId id, int q_cut);
/// F_1^{P1} pushed through the change of variables.  The constant part of log(lambda) is
/// irrelevant for a free energy and is dropped; it is returned through dropped_constant.
JetFunction derived_f1(Case c, int q_cut, Gq* dropped_constant = nullptr);
/// G_1 = F_1 - (1/24) log det(c^a_{bc} w^c_x) (a jet-free function).
JetFunction g_function1(ModelId id, int q_cut);

/// Jet-function JSON: {"model", "name", "terms": [{a, b, m, d, c, jets}], "denominator": [{poly, power}],
/// "logs": [{coeff, arg}]}; the denominator and log argument must be the model discriminant.
Json jet_function_to_json(const JetFunction& f, ModelId model, const std::string& name);
JetFunction jet_function_from_json(const Json& j, int q_cut);
JetPoly jet_poly_from_json(const Json& terms, int q_cut);

/// Genus-two reference data (jet functions over the X discriminants) from the bundled oracle file.
JetFunction reference_jet_function(const std::string& model, const std::string& name, int q_cut);

}  // namespace fv
