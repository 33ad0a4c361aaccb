#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "fv/genus12.hpp"
#include "fv/hierarchy.hpp"

namespace fv {

CoordRingElem correlation(Correlators& c, int genus, std::vector<Insertion> ins) {
  const JetModel& m = c.model();
  if (genus == 0 && ins.size() == 1) {
    const auto [a, p] = ins[0];
    CoordRingElem r = -omega(m.id, a, p, 1, 1, m.q_cut);
    r += CoordRingElem::w1(m.q_cut) * omega(m.id, a, p, 1, 0, m.q_cut);
    r += CoordRingElem::w2(m.q_cut) * omega(m.id, a, p, 2, 0, m.q_cut);
    return r;
  }
  if (genus == 0 && ins.size() == 2) return omega(m.id, ins[0].alpha, ins[0].p, ins[1].alpha, ins[1].p, m.q_cut);
  if (genus == 0 && ins.empty()) throw std::invalid_argument("correlation: empty genus-zero correlator");
  return c.at_primary(genus, std::move(ins));
}

PrimaryJetCheck check_primary_jets(ModelId id, int q_cut) {
  TimeConfig cfg;
  cfg.kind = SolutionKind::Plain;
  cfg.model = id;
  cfg.base = Gq(0);
  cfg.k_max = 2;
  cfg.deg = 3;
  cfg.q_cut = q_cut;
  const TopologicalSolution sol = topological_solution(cfg);
  const TimeSeries expect[2] = {TimeSeries::variable(sol.space, 1, 0), TimeSeries::variable(sol.space, 2, 0)};
  PrimaryJetCheck out;
  out.ok = true;
  std::ostringstream msg;
  for (int a = 0; a < 2; ++a)
    for (const auto& [mono, series] : nonzero_terms(sol.w[a] - expect[a])) {
      const bool primary = std::all_of(mono.begin(), mono.end(), [](const auto& e) { return e.first.second == 0; });
      if (!primary) continue;
      out.ok = false;
      msg << "w^" << a + 1 << " has a primary-slice term;";
    }
  out.detail = out.ok ? "w = (t1, t2) on the primary slice through total degree " + std::to_string(cfg.deg) +
                            ": w_x = (1, 0), higher jets 0"
                      : msg.str();
  return out;
}

namespace {

// Slot alphabet: a/A, b/B contracted primary pairs; '#' before a letter makes it tau_1;
// digits 1..3 are the external insertions, 4 is tau_{k_1 + 1}(phi_{alpha_1}).
struct BpTerm {
  Rational coeff;
  const char* factors;
};

const std::vector<BpTerm>& bp_terms() {
  static const std::vector<BpTerm> t = {
      {Rational(-2), "2:a 0:Ab1 0:B23"},
      {Rational(2), "2:#a 0:A123"},
      {Rational(-2), "2:a 0:Ab 0:B123"},
      {Rational(3), "2:a4 0:A23"},
      {Rational(-3), "0:a1 2:Ab 0:B23"},
      {Rational(-3), "2:#a1 0:A23"},
      {Rational(3), "2:a1 0:Ab 0:B23"},
      {Rational(1, 5), "1:a 0:Ab123 1:B"},
      {Rational(-6, 5), "1:a 0:Ab12 1:B3"},
      {Rational(12, 5), "1:a 0:Ab1 1:B23"},
      {Rational(-18, 5), "1:a1 0:Ab2 1:B3"},
      {Rational(-6, 5), "1:a 1:Ab 0:B123"},
      {Rational(9, 5), "1:a1 1:Ab 0:B23"},
      {Rational(-6, 5), "1:a 1:Ab1 0:B23"},
      {Rational(1, 120), "0:aAb123 1:B"},
      {Rational(-3, 40), "0:aAb12 1:B3"},
      {Rational(3, 40), "0:aAb1 1:B23"},
      {Rational(-1, 120), "0:aAb 1:B123"},
      {Rational(1, 10), "0:ab123 1:AB"},
      {Rational(-3, 10), "0:ab12 1:AB3"},
      {Rational(1, 10), "0:ab1 1:AB23"},
      {Rational(-1, 20), "1:aAb 0:B123"},
      {Rational(-1, 20), "1:aAb1 0:B23"},
  };
  return t;
}

}  // namespace

CoordRingElem bp_residual(Correlators& c, const std::array<Insertion, 3>& ext) {
  for (const auto& e : ext)
    if (e.p < 0 || e.p > 1) throw std::invalid_argument("bp_residual: descendant orders must be 0 or 1");
  const JetModel& m = c.model();
  const Mat2q& ei = m.eta_inv;
  CoordRingElem total(Gq(0), m.q_cut);
  std::array<int, 3> perm = {0, 1, 2};
  do {
    const Insertion x[5] = {{}, ext[perm[0]], ext[perm[1]], ext[perm[2]], {ext[perm[0]].alpha, ext[perm[0]].p + 1}};
    for (const auto& term : bp_terms()) {
      std::vector<std::pair<int, std::string>> factors;
      std::istringstream in(term.factors);
      for (std::string tok; in >> tok;) factors.emplace_back(tok[0] - '0', tok.substr(2));
      const bool has_b = std::string(term.factors).find('b') != std::string::npos;
      for (int la = 1; la <= 2; ++la)
        for (int ua = 1; ua <= 2; ++ua)
          for (int lb = 1; lb <= (has_b ? 2 : 1); ++lb)
            for (int ub = 1; ub <= (has_b ? 2 : 1); ++ub) {
              Gq w = Gq(term.coeff) * ei(la - 1, ua - 1);
              if (has_b) w *= ei(lb - 1, ub - 1);
              if (w.is_zero()) continue;
              CoordRingElem prod(w, m.q_cut);
              for (const auto& [g, slots] : factors) {
                std::vector<Insertion> ins;
                for (std::size_t i = 0; i < slots.size(); ++i) {
                  int p = 0;
                  char ch = slots[i];
                  if (ch == '#') p = 1, ch = slots[++i];
                  switch (ch) {
                    case 'a': ins.push_back({la, p}); break;
                    case 'A': ins.push_back({ua, p}); break;
                    case 'b': ins.push_back({lb, p}); break;
                    case 'B': ins.push_back({ub, p}); break;
                    default: ins.push_back(x[ch - '0']);
                  }
                }
                prod *= correlation(c, g, std::move(ins));
                if (prod.is_zero()) break;
              }
              total += prod;
            }
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

}  // namespace fv
