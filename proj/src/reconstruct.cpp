#include <atomic>
#include <map>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "fv/genus12.hpp"
#include "fv/linsolve.hpp"

namespace fv {

namespace {

constexpr int kOrder = 4;    // 3g - 2
constexpr int kWeight = 10;  // 2g - 2 plus the weight of P^4
constexpr int kPow = 4;

struct Basis {
  JetKey jets;
  int q_power;
};

void enumerate(int slot, int weight, int grade, JetKey key, std::vector<Basis>& out) {
  if (slot == 2 * kOrder) {
    if (weight != kWeight) return;
    const int twice_b = -2 - grade;  // Q_v has degree 2
    if (twice_b >= 0 && twice_b % 2 == 0) out.push_back({key, twice_b / 2});
    return;
  }
  const int alpha = slot / kOrder + 1, k = slot % kOrder + 1;
  const int deg = (alpha == 1 ? 1 : 0) - k;
  for (int e = 0; weight + e * k <= kWeight; ++e)
    enumerate(slot + 1, weight + e * k, grade + e * deg, key + jet_unit(alpha, k) * static_cast<unsigned>(e), out);
}

// One linear relation family: a map from F_2 to a jet function, plus its right-hand side.
struct Family {
  std::string name;
  std::function<JetFunction(const JetFunction&)> lhs;
  JetFunction rhs;
};

}  // namespace

F2Reconstruction reconstruct_f2_p1(OperatorReading r, int jobs) {
  const int qc = CoordRingElem::kExact;
  const auto m = jet_model(ModelId::P1, qc);
  Correlators corr(m, f1(ModelId::P1, qc));

  std::vector<Basis> basis;
  enumerate(0, 0, 0, 0, basis);

  // operators D_{alpha,k}, images prebuilt so that concurrent reads are safe
  std::map<std::pair<int, int>, std::unique_ptr<TrrOperator>> ops;
  for (int a = 1; a <= 2; ++a)
    for (int k = 1; k <= 6; ++k) {
      auto op = std::make_unique<TrrOperator>(m, a, k, r);
      for (int p = 0; p <= kMaxJet - 1; ++p)
        for (int b = 1; b <= 2; ++b) op->image(b, p);
      ops[{a, k}] = std::move(op);
    }
  auto D = [&](int a, int k) -> TrrOperator& { return *ops.at({a, k}); };

  std::vector<Family> fams;
  for (int a = 1; a <= 2; ++a)
    for (int k = 2; k <= 6; ++k)
      fams.push_back({"TRR2(" + std::to_string(a) + "," + std::to_string(k) + ")",
                      [&, a, k](const JetFunction& f) { return D(a, k).apply(f); },
                      k <= 4 ? evaluate_terms(corr, r_terms(k), a) : JetFunction(m->disc, JetPoly(qc))});
  const Mat2q& ei = m->eta_inv;
  for (int a = 1; a <= 2; ++a)
    for (int b = 1; b <= 2; ++b) {
      std::vector<std::pair<JetFunction, int>> mix;  // 3 <<phi_a phi_b phi^g>>_0 paired with D_{g,1}
      for (int g = 1; g <= 2; ++g)
        for (int h = 1; h <= 2; ++h)
          if (!ei(g - 1, h - 1).is_zero()) mix.emplace_back(corr.get(0, {{a, 0}, {b, 0}, {g, 0}}) * (Gq(3) * ei(g - 1, h - 1)), h);
      fams.push_back({"TRR3(" + std::to_string(a) + "," + std::to_string(b) + ")",
                      [&, a, b, mix](const JetFunction& f) {
                        JetFunction x = D(a, 1).apply(D(b, 1).apply(f));
                        for (const auto& [c, h] : mix) x -= c * D(h, 1).apply(f);
                        return x;
                      },
                      evaluate_terms(corr, r11_terms(), a, b)});
    }

  // images of the basis under every family
  const std::size_t n = basis.size(), nf = fams.size();
  std::vector<std::vector<JetFunction>> img(n, std::vector<JetFunction>(nf));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < n;) {
      const JetFunction e(m->disc, JetPoly::monomial(basis[i].jets, CoordRingElem::Q(basis[i].q_power, qc)), kPow);
      for (std::size_t f = 0; f < nf; ++f) img[i][f] = fams[f].lhs(e);
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < std::max(1, jobs); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  // rows indexed by (family, jet monomial, ring monomial) of the numerator over a common power
  using Key = std::tuple<std::size_t, JetKey, std::uint64_t>;
  std::map<Key, std::pair<SparseLinearSystem::Row, Gq>> rows;
  for (std::size_t f = 0; f < nf; ++f) {
    int p = fams[f].rhs.pow();
    for (std::size_t i = 0; i < n; ++i) p = std::max(p, img[i][f].pow());
    for (std::size_t i = 0; i < n; ++i) {
      const JetPoly num = img[i][f].num_over(p);
      for (const auto& [jk, c] : num.terms())
        for (const auto& [ck, v] : c.terms()) rows[{f, jk, ck}].first.emplace_back(static_cast<int>(i), v);
    }
    if (!fams[f].rhs.log_coeff().is_zero()) throw std::logic_error("reconstruct_f2: logarithmic right-hand side");
    const JetPoly rhs = fams[f].rhs.num_over(p);
    for (const auto& [jk, c] : rhs.terms())
      for (const auto& [ck, v] : c.terms()) rows[{f, jk, ck}].second += v;
  }
  SparseLinearSystem sys(static_cast<int>(n));
  for (auto& [key, row] : rows) sys.add_equation(std::move(row.first), std::move(row.second));

  F2Reconstruction out;
  out.unknowns = static_cast<int>(n);
  out.equations = sys.equations();
  const auto sol = sys.solve();
  out.rank = sol.rank;
  out.kernel_dim = sol.kernel_dim;
  out.consistent = sol.consistent;
  if (!sol.consistent) return out;
  std::vector<JetPoly::Term> terms;
  for (std::size_t i = 0; i < n; ++i)
    if (!sol.x[i].is_zero())
      terms.emplace_back(basis[i].jets, CoordRingElem::Q(basis[i].q_power, qc) * sol.x[i]);
  out.f2 = JetFunction(m->disc, JetPoly::from_terms(std::move(terms), qc), kPow).reduced();
  return out;
}

}  // namespace fv
