#include <cctype>
#include <sstream>
#include <stdexcept>

#include "fv/genus12.hpp"

namespace fv {

namespace {

struct Factor {
  int genus;
  std::string slots;
};

std::vector<Factor> parse_factors(const std::string& s) {
  std::vector<Factor> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) {
    if (tok.size() < 2 || tok[1] != ':' || !std::isdigit(static_cast<unsigned char>(tok[0])))
      throw std::invalid_argument("correlator factor '" + tok + "'");
    out.push_back({tok[0] - '0', tok.substr(2)});
  }
  return out;
}

CorrelatorTerm T(long num, long den, const char* f) { return {Rational(num, den), f}; }

}  // namespace

JetFunction evaluate_terms(Correlators& c, const std::vector<CorrelatorTerm>& terms, int alpha, int beta) {
  const Mat2q& ei = c.model().eta_inv;
  JetFunction total(c.model().disc, JetPoly(c.model().q_cut));
  for (const auto& term : terms) {
    const auto factors = parse_factors(term.factors);
    std::string letters;
    for (const auto& f : factors)
      for (char ch : f.slots)
        if (std::islower(static_cast<unsigned char>(ch)) && ch != 'a' && ch != 'b' && letters.find(ch) == std::string::npos)
          letters += ch;
    // each contracted letter takes a (lower, upper) value pair with eta^{lower upper} != 0
    const std::size_t n = letters.size();
    std::vector<int> lo(n, 0), up(n, 0);
    auto value = [&](char ch) -> int {
      if (ch == 'a') return alpha;
      if (ch == 'b') return beta;
      const auto i = letters.find(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
      if (i == std::string::npos) throw std::invalid_argument("unpaired index in '" + term.factors + "'");
      return std::isupper(static_cast<unsigned char>(ch)) ? up[i] : lo[i];
    };
    for (std::size_t code = 0; code < (std::size_t{1} << (2 * n)); ++code) {
      Gq w(term.coeff);
      for (std::size_t i = 0; i < n; ++i) {
        lo[i] = 1 + static_cast<int>((code >> (2 * i)) & 1);
        up[i] = 1 + static_cast<int>((code >> (2 * i + 1)) & 1);
        w *= ei(lo[i] - 1, up[i] - 1);
      }
      if (w.is_zero()) continue;
      std::optional<JetFunction> prod;
      for (const auto& f : factors) {
        std::vector<Insertion> ins;
        for (char ch : f.slots) ins.push_back({value(ch), 0});
        JetFunction x = c.get(f.genus, ins);
        prod = prod ? *prod * x : x;
        if (prod->is_zero()) break;
      }
      if (!prod->is_zero()) total += *prod * w;
    }
  }
  return total;
}

const std::vector<CorrelatorTerm>& r_terms(int k) {
  static const std::vector<CorrelatorTerm> r2 = {
      T(7, 10, "0:apg 1:P 1:G"), T(1, 10, "0:apg 1:PG"), T(13, 240, "0:apgG 1:P"),
      T(-1, 240, "1:aP 0:pgG"),  T(1, 960, "0:apPgG"),
  };
  static const std::vector<CorrelatorTerm> r3 = {
      T(1, 20, "0:apg 1:P 0:GSs"), T(1, 480, "0:apg 0:PGSs"), T(1, 1152, "0:aPGg 0:pSs"),
  };
  static const std::vector<CorrelatorTerm> r4 = {T(1, 1152, "0:aPG 0:pgS 0:sDd")};
  static const std::vector<CorrelatorTerm> none;
  switch (k) {
    case 2: return r2;
    case 3: return r3;
    case 4: return r4;
    default:
      if (k < 2) throw std::invalid_argument("r_terms: k must be >= 2");
      return none;
  }
}

const std::vector<CorrelatorTerm>& r11_terms() {
  // the genus-one three-point factor of the second term carries a lower sigma (index balance)
  static const std::vector<CorrelatorTerm> r = {
      T(13, 10, "0:abgs 1:G 1:S"), T(4, 5, "1:ag 1:s 0:bGS"),   T(1, 30, "1:ags 0:bGS"),
      T(4, 5, "0:aGS 1:bg 1:s"),   T(1, 30, "0:aGS 1:bgs"),     T(1, 48, "0:agsS 1:Gb"),
      T(-4, 5, "0:abg 1:Gs 1:S"),  T(-1, 30, "0:abg 1:GsS"),    T(1, 48, "1:ag 0:bGsS"),
      T(23, 240, "0:abgsS 1:G"),   T(-1, 80, "1:abg 0:GSs"),    T(7, 30, "0:abgs 1:GS"),
      T(1, 576, "0:abgGsS"),
  };
  return r;
}

JetFunction trr1_residual(Correlators& c, int alpha, int k, OperatorReading r) {
  TrrOperator d(c.model_ptr(), alpha, k, r);
  JetFunction res = d.apply(c.f1());
  if (k == 1) res -= evaluate_terms(c, {T(1, 24, "0:agG")}, alpha);
  return res.reduced();
}

JetFunction trr2_residual(Correlators& c, int alpha, int k, OperatorReading r) {
  TrrOperator d(c.model_ptr(), alpha, k, r);
  JetFunction res = d.apply(c.f2());
  if (k <= 4) res -= evaluate_terms(c, r_terms(k), alpha);
  return res.reduced();
}

JetFunction trr3_residual(Correlators& c, int alpha, int beta, OperatorReading r) {
  TrrOperator da(c.model_ptr(), alpha, 1, r), db(c.model_ptr(), beta, 1, r);
  JetFunction res = da.apply(db.apply(c.f2()));
  const Mat2q& ei = c.model().eta_inv;
  for (int g = 1; g <= 2; ++g)
    for (int h = 1; h <= 2; ++h) {
      if (ei(g - 1, h - 1).is_zero()) continue;
      TrrOperator dh(c.model_ptr(), h, 1, r);
      res -= c.get(0, {{alpha, 0}, {beta, 0}, {g, 0}}) * dh.apply(c.f2()) * (Gq(3) * ei(g - 1, h - 1));
    }
  res -= evaluate_terms(c, r11_terms(), alpha, beta);
  return res.reduced();
}

Calibration calibrate_reading(int max_k) {
  Calibration cal;
  const int qc = CoordRingElem::kExact;
  Correlators c(jet_model(ModelId::P1, qc), f1(ModelId::P1, qc));
  for (OperatorReading r : {OperatorReading::Literal, OperatorReading::Derived}) {
    std::string failed;
    for (int a = 1; a <= 2 && failed.empty(); ++a)
      for (int k = 1; k <= max_k && failed.empty(); ++k)
        if (!trr1_residual(c, a, k, r).is_zero()) failed = "alpha=" + std::to_string(a) + " k=" + std::to_string(k);
    cal.log.push_back(std::string(reading_name(r)) + ": " + (failed.empty() ? "TRR1 holds" : "TRR1 fails at " + failed));
    if (failed.empty()) {
      cal.reading = r;
      return cal;
    }
  }
  std::string msg = "TRR operator calibration failed for every reading:";
  for (const auto& l : cal.log) msg += " [" + l + "]";
  throw std::runtime_error(msg);
}

}  // namespace fv
