#pragma once

// Named verification suites. Each suite sweeps a parameter grid, records one
// Entry per claim with the worst margin and a witness, and never stops at the
// first failure. Exact margins decide exactly; float margins inside the noise
// floor are counted as equality for non-strict claims and as indeterminate for
// strict ones.

#include <hypergroup/chainseq.hpp>

#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace hypergroup {

class ParameterError : public DomainError {
 public:
  using DomainError::DomainError;
};

enum class Status { pass, fail, indeterminate };
enum class EntryKind { inequality, equality, info };

inline std::string to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    default: return "indeterminate";
  }
}

inline std::string to_string(EntryKind k) {
  switch (k) {
    case EntryKind::inequality: return "inequality";
    case EntryKind::equality: return "equality";
    default: return "info";
  }
}

inline Status parse_status(const std::string& s) {
  if (s == "pass") return Status::pass;
  if (s == "fail") return Status::fail;
  if (s == "indeterminate") return Status::indeterminate;
  throw DomainError("unknown status '" + s + "'");
}

inline EntryKind parse_entry_kind(const std::string& s) {
  if (s == "inequality") return EntryKind::inequality;
  if (s == "equality") return EntryKind::equality;
  if (s == "info") return EntryKind::info;
  throw DomainError("unknown entry kind '" + s + "'");
}

using ParamRecord = std::vector<std::pair<std::string, std::string>>;

struct Entry {
  std::string claim;
  std::string anchor;
  EntryKind kind = EntryKind::inequality;
  std::string range;
  Status status = Status::pass;
  std::size_t checked = 0;
  std::size_t failures = 0;
  std::size_t indeterminate = 0;
  std::optional<std::string> worst_margin;  // inequality: min of value - bound; equality: max residual
  std::optional<std::string> worst_margin_approx;
  std::optional<std::string> witness;
  std::optional<std::string> first_failure;
  std::string note;

  bool pass() const { return status == Status::pass; }
  bool operator==(const Entry&) const = default;
};

struct Report {
  std::string suite;
  ParamRecord params;
  std::string mode;
  unsigned precision = 0;
  std::vector<Entry> entries;

  Status status() const {
    bool indet = false;
    for (const auto& e : entries) {
      if (e.status == Status::fail) return Status::fail;
      if (e.status == Status::indeterminate) indet = true;
    }
    return indet ? Status::indeterminate : Status::pass;
  }
  bool pass() const { return status() == Status::pass; }

  const Entry* find(std::string_view claim) const {
    for (const auto& e : entries)
      if (e.claim == claim) return &e;
    return nullptr;
  }
  bool operator==(const Report&) const = default;
};

// ---------------------------------------------------------------------------
// verdicts and tallies

namespace detail {

template <class M>
double approx(const M& v) {
  return v.template convert_to<double>();
}

/// Ten significant digits without double underflow.
template <class M>
std::string approx_text(const M& v) {
  std::ostringstream os;
  os << std::setprecision(10);
  if constexpr (is_exact_v<M>) os << BigFloat(v);
  else os << v;
  return os.str();
}

/// Noise floor for a float margin of the given scale.
template <class M>
M noise_floor(const M& scale) {
  if constexpr (is_exact_v<M>) {
    return M(0);
  } else {
    const int p = static_cast<int>(precision_bits(scale));
    M s = abs_of(scale);
    if (s < 1) s = M(1);
    return M(mp::ldexp(M(1), 24 - p) * s);
  }
}

}  // namespace detail

template <class M>
Status verdict(const M& margin, bool strict, const M& scale = M(1)) {
  if constexpr (is_exact_v<M>) {
    return (strict ? margin > 0 : margin >= 0) ? Status::pass : Status::fail;
  } else {
    const M floor = detail::noise_floor(scale);
    if (margin > floor) return Status::pass;
    if (margin < -floor) return Status::fail;
    return strict ? Status::indeterminate : Status::pass;
  }
}

/// Accumulates one claim over a sweep.
template <class M>
class Tally {
 public:
  Tally(std::string claim, std::string anchor, EntryKind kind, std::string range) {
    e_.claim = std::move(claim);
    e_.anchor = std::move(anchor);
    e_.kind = kind;
    e_.range = std::move(range);
  }

  template <class W>
  void add(const M& margin, Status s, W&& witness) {
    ++e_.checked;
    count(s, 1, witness);
    update_worst(margin, witness);
  }

  /// Inequality with value - bound = margin.
  template <class W>
  void inequality(const M& margin, bool strict, W&& witness, const M& scale = M(1)) {
    add(margin, verdict(margin, strict, scale), std::forward<W>(witness));
  }

  /// Equality with residual |lhs - rhs|; exact residuals must vanish.
  template <class W>
  void equality(const M& residual, const M& tol, W&& witness) {
    const bool ok = is_exact_v<M> ? residual == 0 : residual <= tol;
    add(residual, ok ? Status::pass : Status::fail, std::forward<W>(witness));
  }

  /// Folds a whole InequalityCheck. With exact_flags the check's own pass/fail
  /// decisions stand; otherwise its worst margin goes through the noise rule.
  template <class W>
  void merge(const InequalityCheck<M>& c, W&& witness_of, bool exact_flags = is_exact_v<M>, const M& scale = M(1)) {
    if (!c.worst_margin) return;
    const Status s = exact_flags ? (c.pass() ? Status::pass : Status::fail) : verdict(*c.worst_margin, c.strict, scale);
    e_.checked += c.checked;
    const std::size_t at_fail = c.first_failure ? *c.first_failure : *c.witness;
    count(s, std::max<std::size_t>(c.failures, 1), [&] { return witness_of(at_fail); });
    update_worst(*c.worst_margin, [&] { return witness_of(*c.witness); });
  }

  void info(std::string note) { e_.note = std::move(note); }
  void append_note(const std::string& note) { e_.note += (e_.note.empty() ? "" : "; ") + note; }

  Entry finish() const {
    Entry e = e_;
    if (e.kind == EntryKind::info) {
      e.status = Status::pass;
    } else if (e.failures > 0) {
      e.status = Status::fail;
      e.note += (e.note.empty() ? "" : "; ") + std::to_string(e.failures) + " of " + std::to_string(e.checked) + " fail";
    } else if (e.indeterminate > 0) {
      e.status = Status::indeterminate;
      e.note += (e.note.empty() ? "" : "; ") + std::string("margin below the noise floor; rerun with more --precision");
    } else {
      e.status = Status::pass;
    }
    if (worst_) {
      e.worst_margin = to_string(*worst_);
      e.worst_margin_approx = detail::approx_text(*worst_);
    }
    return e;
  }

 private:
  template <class W>
  void count(Status s, std::size_t n, W&& witness) {
    if (s == Status::fail) {
      e_.failures += n;
      if (!e_.first_failure) e_.first_failure = witness();
    } else if (s == Status::indeterminate) {
      ++e_.indeterminate;
    }
  }

  template <class W>
  void update_worst(const M& margin, W&& witness) {
    const bool worse = !worst_ || (e_.kind == EntryKind::equality ? margin > *worst_ : margin < *worst_);
    if (worse) {
      worst_ = margin;
      e_.witness = witness();
    }
  }

  Entry e_;
  std::optional<M> worst_;
};

inline Entry info_entry(std::string claim, std::string anchor, std::string range, std::string note) {
  Entry e;
  e.claim = std::move(claim);
  e.anchor = std::move(anchor);
  e.kind = EntryKind::info;
  e.range = std::move(range);
  e.note = std::move(note);
  return e;
}

// ---------------------------------------------------------------------------
// catalog

struct ParamSpec {
  std::string name;
  std::string description;
  std::vector<std::string> defaults;  // a one-element list is a point, longer lists are a grid axis
};

struct SuiteSpec {
  std::string name;
  std::string title;
  std::vector<ParamSpec> params;
  std::vector<std::pair<std::string, long>> sizes;
  std::vector<std::pair<std::string, std::string>> tolerances;
  bool float_path = true;  // false: always exact, whatever the mode
};

struct RunOptions {
  std::string mode = "auto";  // auto | rational | float
  unsigned precision = 256;
  std::uint64_t seed = 1;
};

namespace detail {

inline const std::vector<std::string> kAlphaGrid{"-2/5", "-1/4", "0", "1/2", "1", "2"};
inline const std::vector<std::string> kLambdaGrid{"0", "1/10", "3/10", "1", "5"};
inline const std::vector<std::string> kNuGrid{"0", "1/2", "1", "3"};

inline std::vector<ParamSpec> pollaczek_params() {
  return {{"alpha", "alpha > -1/2", kAlphaGrid}, {"lambda", "lambda >= 0", kLambdaGrid}, {"nu", "nu >= 0", kNuGrid}};
}

}  // namespace detail

inline const std::vector<SuiteSpec>& list_suites() {
  static const std::vector<SuiteSpec> catalog = [] {
    using detail::pollaczek_params;
    std::vector<SuiteSpec> c;
    c.push_back({"qleg-basics", "little q-Legendre coefficients, property (P), Haar weights, 2phi1 form",
                 {{"q", "0 < q < 1", {"1/4", "1/2", "3/4"}}},
                 {{"N_coeff", 200}, {"N_p", 30}, {"N_haar", 100}, {"N_glin", 30}, {"N_2phi1", 20}},
                 {},
                 false});
    c.push_back({"qleg-thm21", "character norm sandwich with the explicit constant C",
                 {{"q", "0 < q < 1", {"3/10", "1/2", "7/10"}}},
                 {{"N", 15}, {"K_extra", 60}},
                 {},
                 false});
    c.push_back({"qleg-thm23-idempotents", "idempotent expansion residual R(M,K)",
                 {{"q", "0 < q < 1", {"1/2"}}},
                 {{"M", 25}, {"K", 160}},
                 {{"residual", "1/1000000"}},
                 false});
    c.push_back({"qleg-cor24", "limit of P_n(1-q^n) and growth of the fourth moments",
                 {{"q", "0 < q < 1", {"1/10", "1/5"}}},
                 {{"n_series", 40}, {"terms", 30}, {"p4_from", 20}, {"p4_to", 40}, {"K", 120}, {"gamma_k", 20}},
                 {{"series", "1/100000"}},
                 false});
    c.push_back({"qleg-lemma32", "uniform ratio bound and envelope for characters",
                 {{"q", "0 < q < 1", {"3/10", "1/2", "7/10"}}},
                 {{"N", 10}, {"span", 40}},
                 {},
                 false});
    c.push_back({"qleg-lemma33", "A_n > 4 and B_n > 1/(2q), with B_n(k) -> 1/q",
                 {{"q", "0 < q < 1", {"3/10", "1/2", "7/10"}}},
                 {{"N", 10}, {"span", 40}, {"k_limit", 200}},
                 {{"limit", "1/1000000"}},
                 false});
    c.push_back({"qleg-lemma34", "square norms of characters at the atoms",
                 {{"q", "0 < q < 1", {"1/2"}}},
                 {{"N", 8}, {"K_extra", 80}},
                 {{"closed_form", "1/10000000000"}},
                 false});
    c.push_back({"qleg-lemma35", "partial sums of Haar weights",
                 {{"q", "0 < q < 1", {"1/4", "1/2"}}},
                 {{"N", 100}},
                 {},
                 false});
    c.push_back({"poll-thm25", "Pollaczek c_n strictly increasing with limit 1/2; Laguerre form agrees",
                 pollaczek_params(),
                 {{"N", 500}, {"N_laguerre", 200}},
                 {{"limit", "1/20"}}});
    c.push_back({"poll-cor26", "Pollaczek coefficient bound from phi", pollaczek_params(), {{"N", 500}}, {}});
    c.push_back({"poll-lemma37", "Pollaczek polynomials as rescaled random walk polynomials",
                 pollaczek_params(),
                 {{"N", 100}, {"N_st", 100}},
                 {}});
    c.push_back({"poll-lemma38", "chi sequences and the tau limit",
                 {{"a", "a > 1", {"3"}}, {"b", "b > 0", {"9/2"}}, {"nu", "nu >= 0", {"1"}}},
                 {{"N", 20000}},
                 {{"cauchy", "1/1000000"}}});
    c.push_back({"poll-lemma39", "psi recursion and its lower bound", pollaczek_params(), {{"N", 1000}}, {}});
    c.push_back({"poll-thm27-bounds", "claims A and B and the Case-1 coefficient bound",
                 pollaczek_params(),
                 {{"N_A", 200}, {"N_B", 500}, {"N_C", 1000}},
                 {}});
    c.push_back({"appendixA", "phi comparisons, critical points, coefficient estimates", pollaczek_params(),
                 {{"N", 500}, {"X", 1000}},
                 {{"critical_point", "1e-20"}}});
    c.push_back({"turan", "Turan inequality for random walk and Laguerre families", pollaczek_params(),
                 {{"N", 100}, {"grid_den", 128}},
                 {}});
    c.push_back({"chain-basics", "chain sequences, parameter sequences, Worpitzky continued fractions",
                 pollaczek_params(),
                 {{"N", 200}, {"N_monotone", 100}, {"trials", 1000}},
                 {}});
    return c;
  }();
  return catalog;
}

inline std::optional<SuiteSpec> find_suite(std::string_view name) {
  for (const auto& s : list_suites())
    if (s.name == name) return s;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// suite context

struct SuiteContext {
  std::map<std::string, std::vector<Rational>> axes;
  std::map<std::string, long> sizes;
  std::map<std::string, Rational> tolerances;
  bool float_mode = false;
  unsigned bits = 256;
  std::uint64_t seed = 1;
  bool single_point = true;

  const std::vector<Rational>& axis(const std::string& name) const { return axes.at(name); }
  std::size_t size(const std::string& name) const { return static_cast<std::size_t>(sizes.at(name)); }
  const Rational& tol(const std::string& name) const { return tolerances.at(name); }
};

namespace detail {

template <class T>
std::string text(const T& v) {
  return to_string(v);
}

template <class T>
struct PollPoint {
  T alpha, lambda, nu;
  std::string label() const {
    return "alpha=" + text(alpha) + ", lambda=" + text(lambda) + ", nu=" + text(nu);
  }
  PollaczekParams<T> params() const { return {alpha, lambda, nu}; }
  bool transform_region() const { return lambda > 0 && lambda < alpha + T(1) / 2; }
  bool band() const { return lambda > 0 && lambda < T(1) / 2 - abs_of(alpha); }
};

template <class T>
std::vector<PollPoint<T>> pollaczek_grid(const SuiteContext& ctx) {
  std::vector<PollPoint<T>> out;
  for (const auto& a : ctx.axis("alpha"))
    for (const auto& l : ctx.axis("lambda"))
      for (const auto& v : ctx.axis("nu")) out.push_back({from_rational<T>(a), from_rational<T>(l), from_rational<T>(v)});
  return out;
}

inline std::string nrange(const std::string& var, std::size_t lo, std::size_t hi) {
  return std::to_string(lo) + " <= " + var + " <= " + std::to_string(hi);
}

inline std::string at(const std::string& prefix, const std::string& var, std::size_t n) {
  return prefix + (prefix.empty() ? "" : ", ") + var + "=" + std::to_string(n);
}

inline std::string grid_text(const SuiteContext& ctx) {
  std::string out;
  for (const auto& [name, vals] : ctx.axes) {
    if (!out.empty()) out += "; ";
    out += name + " in {";
    for (std::size_t i = 0; i < vals.size(); ++i) out += (i ? "," : "") + to_string(vals[i]);
    out += "}";
  }
  return out;
}

template <class R>
R float_tol(int spare_bits) {
  return mp::ldexp(R(1), spare_bits - static_cast<int>(current_precision_bits()));
}

/// float_tol in the scalar type T; exact types compare against zero.
template <class T>
T tol_as(int spare_bits) {
  if constexpr (is_exact_v<T>) return T(0);
  else return float_tol<T>(spare_bits);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// little q-Legendre suites (always exact: characters at the atoms are minimal solutions)

namespace suites {

using detail::at;
using detail::nrange;

inline void qleg_basics(const SuiteContext& ctx, Report& rep) {
  using Q = Rational;
  const std::size_t Nc = ctx.size("N_coeff"), Np = ctx.size("N_p"), Nh = ctx.size("N_haar"), Ng = ctx.size("N_glin"),
                    N21 = ctx.size("N_2phi1");
  Tally<Q> sum1("coefficients-sum-to-one", "a_n + b_n + c_n = 1", EntryKind::equality, nrange("n", 0, Nc));
  Tally<Q> pnn("property-P-nonnegative", "\"Property (P) is always satisfied\"", EntryKind::inequality,
               "0 <= m <= n <= " + std::to_string(Np));
  Tally<Q> psum("property-P-sum-one", "sum_k g(m,n;k) = 1", EntryKind::equality, "0 <= m <= n <= " + std::to_string(Np));
  Tally<Q> haar("haar-closed-form", "\"The Haar weights are of exponential growth\"", EntryKind::equality,
                nrange("n", 0, Nh));
  Tally<Q> hg("haar-linearization", "h(n) = 1/g(n,n;0)", EntryKind::equality, nrange("n", 0, Ng));
  Tally<Q> phi21("2phi1-representation", "\"basic hypergeometric representation\"", EntryKind::equality,
                 nrange("n", 0, N21) + ", x in {0,1/2,1}");
  for (const Q& q : ctx.axis("q")) {
    const std::string pq = "q=" + to_string(q);
    auto cs = little_q_legendre(q);
    for (std::size_t n = 0; n <= Nc; ++n)
      sum1.equality(abs_of(Q(cs->a(n) + cs->b(n) + cs->c(n) - 1)), Q(0), [&] { return at(pq, "n", n); });
    LinearizationTable<Q> table(cs);
    auto pr = property_p_check(table, Np);
    pnn.add(pr.min_value, pr.has_violation() ? Status::fail : Status::pass, [&] {
      return pq + ", (m,n,k)=(" + std::to_string(pr.min_witness.m) + "," + std::to_string(pr.min_witness.n) + "," +
             std::to_string(pr.min_witness.k) + ")";
    });
    psum.equality(pr.max_sum_residual, Q(0), [&] { return pq; });
    for (std::size_t n = 0; n <= Nh; ++n)
      haar.equality(abs_of(Q(table.haar(n) - haar_qleg_closed(q, n))), Q(0), [&] { return at(pq, "n", n); });
    for (std::size_t n = 0; n <= Ng; ++n)
      hg.equality(abs_of(Q(table.haar(n) * table.g(n, n, 0) - 1)), Q(0), [&] { return at(pq, "n", n); });
    for (const Q x : {Q(0), Q(1, 2), Q(1)}) {
      const auto v = eval_sequence(*cs, N21, x);
      for (std::size_t n = 0; n <= N21; ++n)
        phi21.equality(abs_of(Q(q_hypergeometric_R(q, n, x) - v[n])), Q(0),
                       [&] { return at(pq + ", x=" + to_string(x), "n", n); });
    }
  }
  for (auto* t : {&sum1, &pnn, &psum, &haar, &hg, &phi21}) rep.entries.push_back(t->finish());
}

inline void qleg_thm21(const SuiteContext& ctx, Report& rep) {
  using Q = Rational;
  const std::size_t Nn = ctx.size("N"), Kx = ctx.size("K_extra");
  const std::string anchor = "\"It is possible to take\"";
  const std::string range = nrange("n", 0, Nn) + ", K = n + N + " + std::to_string(Kx);
  Tally<Q> pos("l2-positive", anchor, EntryKind::inequality, range);
  Tally<Q> l2l1("l2-below-l1", anchor, EntryKind::inequality, range);
  Tally<Q> l1C("l1-below-C-l2", anchor, EntryKind::inequality, range);
  std::string cnote, rnote;
  for (const Q& q : ctx.axis("q")) {
    const std::string pq = "q=" + to_string(q);
    const auto C = theorem21_constant(q);
    double max_ratio = 0;
    std::size_t argmax = 0;
    for (std::size_t n = 0; n <= Nn; ++n) {
      const auto cn = qleg_character_norms(q, n, n + qleg_N(q) + Kx);
      auto w = [&] { return at(pq, "n", n); };
      pos.inequality(cn.l2sq, true, w);
      l2l1.inequality(Q(cn.l1 - cn.l2sq - *cn.l2sq_tail), true, w);
      l1C.inequality(Q(C.value * cn.l2sq - cn.l1 - *cn.l1_tail), true, w);
      const double ratio = detail::approx(Q(cn.l1 / cn.l2sq));
      if (ratio > max_ratio) max_ratio = ratio, argmax = n;
    }
    cnote += (cnote.empty() ? "" : "; ") + pq + ": C = " + to_string(detail::approx(C.value)) +
             " (remainder < " + to_string(detail::approx(C.tail_bound)) + ")";
    rnote += (rnote.empty() ? "" : "; ") + pq + ": max |a|_1/|a|_2^2 = " + to_string(max_ratio) + " at n=" +
             std::to_string(argmax);
  }
  rep.entries.push_back(pos.finish());
  rep.entries.push_back(l2l1.finish());
  rep.entries.push_back(l1C.finish());
  rep.entries.push_back(info_entry("C-value", anchor, "", cnote));
  rep.entries.push_back(info_entry("max-observed-ratio", anchor, range, rnote));
}

inline void qleg_thm23(const SuiteContext& ctx, Report& rep) {
  using Q = Rational;
  const std::size_t M = ctx.size("M"), K = ctx.size("K");
  const std::string anchor = "\"spanned by its idempotents\"";
  Tally<Q> mono("residual-decreasing", anchor, EntryKind::inequality, nrange("M'", 1, M) + ", K=" + std::to_string(K));
  Tally<Q> last("residual-small", anchor, EntryKind::inequality, "M=" + std::to_string(M) + ", K=" + std::to_string(K));
  for (const Q& q : ctx.axis("q")) {
    const std::string pq = "q=" + to_string(q);
    const auto R = idempotent_residuals(q, M, K);
    for (std::size_t m = 1; m <= M; ++m) mono.inequality(Q(R[m - 1] - R[m]), true, [&] { return at(pq, "M'", m); });
    last.inequality(Q(ctx.tol("residual") - R[M]), true, [&] { return pq; });
    last.append_note(pq + ": R = " + to_string(detail::approx(R[M])));
  }
  rep.entries.push_back(mono.finish());
  rep.entries.push_back(last.finish());
}

inline void qleg_cor24(const SuiteContext& ctx, Report& rep) {
  using Q = Rational;
  using R = BigFloat;
  const std::size_t ns = ctx.size("n_series"), terms = ctx.size("terms"), a = ctx.size("p4_from"),
                    b = ctx.size("p4_to"), K = ctx.size("K"), G = ctx.size("gamma_k");
  Tally<R> series("series-vs-character", "\"characterlimiting\" series", EntryKind::inequality,
                  "n=" + std::to_string(ns) + ", " + std::to_string(terms) + " terms");
  Tally<Q> p4("p4-integral-increasing", "int p_n^4 dmu", EntryKind::inequality,
              nrange("n", a, b) + ", K=" + std::to_string(K));
  Tally<Q> gdec("gamma-decreasing", "\"strictly decreasing if q is sufficiently small\"", EntryKind::inequality,
                nrange("k", 0, G) + ", q <= 1/5");
  Tally<Q> g01("gamma0-above-gamma1", "\"(q;q)_inf (gamma_0 - gamma_1) > 0\"", EntryKind::inequality, "q <= 1/5");
  std::string sign_note;
  for (const Q& q : ctx.axis("q")) {
    const std::string pq = "q=" + to_string(q);
    const auto cs = little_q_legendre(q);
    const auto s = character_limit_series(q, terms);
    const R pn = to_real(eval_normalized(*cs, ns, Q(1 - pow_int(q, static_cast<long>(ns)))));
    series.inequality(R(to_real(ctx.tol("series")) - abs_of(R(s.value - pn))), true, [&] { return pq; });
    TruncatedValue<Q> prev = integrate_poly_power(q, a, 4, K);
    for (std::size_t n = a + 1; n <= b; ++n) {
      TruncatedValue<Q> cur = integrate_poly_power(q, n, 4, K);
      p4.inequality(Q(cur.value - prev.value - prev.tail_bound), true, [&] { return at(pq, "n", n); });
      prev = std::move(cur);
    }
    // gamma_k = q^{k(3k+1)/2} / (q;q)_k^3
    std::vector<Q> gamma(G + 2);
    gamma[0] = 1;
    for (std::size_t k = 0; k + 1 < gamma.size(); ++k) {
      const Q d = 1 - pow_int(q, static_cast<long>(k) + 1);
      gamma[k + 1] = gamma[k] * pow_int(q, 3 * static_cast<long>(k) + 2) / (d * d * d);
    }
    const Q diff = gamma[0] - gamma[1];
    if (q <= Q(1, 5)) {
      for (std::size_t k = 0; k <= G; ++k) gdec.inequality(Q(gamma[k] - gamma[k + 1]), true, [&] { return at(pq, "k", k); });
      g01.inequality(diff, true, [&] { return pq; });
    } else {
      sign_note += (sign_note.empty() ? "" : "; ") + pq + ": gamma_0 - gamma_1 " +
                   (diff > 0 ? "> 0" : diff < 0 ? "< 0" : "= 0") + " (" + to_string(detail::approx(diff)) + ")";
    }
  }
  rep.entries.push_back(series.finish());
  rep.entries.push_back(p4.finish());
  rep.entries.push_back(gdec.finish());
  rep.entries.push_back(g01.finish());
  if (!sign_note.empty()) rep.entries.push_back(info_entry("gamma0-minus-gamma1-sign", "q not small", "", sign_note));
}

inline void qleg_lemma32(const SuiteContext& ctx, Report& rep) {
  using Q = Rational;
  const std::size_t Nn = ctx.size("N"), span = ctx.size("span");
  const std::string range = nrange("n", 0, Nn) + ", N <= k <= N + " + std::to_string(span);
  Tally<Q> nz("character-nonzero", "\"alpha_{1-q^n}(n+k) != 0\"", EntryKind::inequality, range);
  Tally<Q> ratio("ratio-below-4", "ratio bound \"< 4\"", EntryKind::inequality, range);
  Tally<Q> env("envelope", "\"4^k q^{(2N+k+1)k/2}\"", EntryKind::inequality, range);
  for (const Q& q : ctx.axis("q")) {
    const std::size_t N = qleg_N(q);
    for (std::size_t n = 0; n <= Nn; ++n) {
      const std::string pn = "q=" + to_string(q) + ", n=" + std::to_string(n);
      const auto rb = ratio_bound_check(q, n, N + span);
      nz.merge(rb.nonzero, [&](std::size_t k) { return at(pn, "k", k); });
      ratio.merge(rb.ratio, [&](std::size_t k) { return at(pn, "k", k); });
      env.merge(rb.envelope, [&](std::size_t j) { return at(pn, "j", j); });
    }
  }
  rep.entries.push_back(nz.finish());
  rep.entries.push_back(ratio.finish());
  rep.entries.push_back(env.finish());
}

inline void qleg_lemma33(const SuiteContext& ctx, Report& rep) {
  using Q = Rational;
  const std::size_t Nn = ctx.size("N"), span = ctx.size("span"), kl = ctx.size("k_limit");
  const std::string range = nrange("n", 0, Nn) + ", N <= k <= N + " + std::to_string(span);
  Tally<Q> A("A-above-4", "\"A_n(n+k) > 4\"", EntryKind::inequality, range);
  Tally<Q> B("B-above-half-inverse-q", "\"B_n(k) > 1/(2q)\"", EntryKind::inequality, range);
  Tally<Q> L("B-limit", "\"lim B_n(k) = 1/q\"", EntryKind::inequality, nrange("n", 0, Nn) + ", k=" + std::to_string(kl));
  for (const Q& q : ctx.axis("q")) {
    const std::size_t N = qleg_N(q);
    for (std::size_t n = 0; n <= Nn; ++n) {
      const std::string pn = "q=" + to_string(q) + ", n=" + std::to_string(n);
      for (std::size_t k = N; k <= N + span; ++k) {
        const auto v = ab_quantities(q, n, k);
        A.inequality(v.A_margin, true, [&] { return at(pn, "k", k); });
        B.inequality(v.B_margin, true, [&] { return at(pn, "k", k); });
      }
      const auto v = ab_quantities(q, n, kl);
      L.inequality(Q(ctx.tol("limit") - abs_of(v.B_minus_inv_q)), true, [&] { return pn; });
    }
  }
  rep.entries.push_back(A.finish());
  rep.entries.push_back(B.finish());
  rep.entries.push_back(L.finish());
}

inline void qleg_lemma34(const SuiteContext& ctx, Report& rep) {
  using Q = Rational;
  const std::size_t Nn = ctx.size("N"), Kx = ctx.size("K_extra");
  const std::string range = nrange("n", 0, Nn) + ", K = n + " + std::to_string(Kx);
  Tally<Q> close("l2-closed-form", "\"1/(q^n(1-q))\"", EntryKind::inequality, range);
  Tally<Q> tail("l2-tail-covers-gap", "\"1/(q^n(1-q))\"", EntryKind::inequality, range);
  for (const Q& q : ctx.axis("q")) {
    for (std::size_t n = 0; n <= Nn; ++n) {
      const std::string pn = "q=" + to_string(q) + ", n=" + std::to_string(n);
      const auto cn = qleg_character_norms(q, n, n + Kx);
      const Q gap = abs_of(Q(cn.l2sq - qleg_character_l2sq_closed(q, n)));
      close.inequality(Q(ctx.tol("closed_form") - gap), true, [&] { return pn; });
      if (cn.l2sq_tail) tail.inequality(Q(*cn.l2sq_tail - gap), false, [&] { return pn; });
    }
  }
  rep.entries.push_back(close.finish());
  rep.entries.push_back(tail.finish());
}

inline void qleg_lemma35(const SuiteContext& ctx, Report& rep) {
  using Q = Rational;
  const std::size_t Nn = ctx.size("N");
  Tally<Q> id("partial-sum-identity", "sum_{k<=n} h(k) closed form", EntryKind::equality, nrange("n", 0, Nn));
  Tally<Q> bound("partial-sum-bound", "sum_{k<=n} h(k) < h(n)/(1-q)", EntryKind::inequality, nrange("n", 0, Nn));
  for (const Q& q : ctx.axis("q")) {
    const std::string pq = "q=" + to_string(q);
    for (std::size_t n = 0; n <= Nn; ++n) {
      const auto v = haar_partial_sum_identity(q, n);
      id.equality(abs_of(Q(v.lhs - v.rhs)), Q(0), [&] { return at(pq, "n", n); });
      bound.inequality(v.margin, true, [&] { return at(pq, "n", n); });
      if (n == 2) id.append_note(pq + ": value at n=2 is " + to_string(v.lhs));
    }
  }
  rep.entries.push_back(id.finish());
  rep.entries.push_back(bound.finish());
}

// ---------------------------------------------------------------------------
// Pollaczek and random walk suites

template <class T>
void poll_thm25(const SuiteContext& ctx, Report& rep) {
  using R = real_t<T>;
  const std::size_t N = ctx.size("N"), NL = ctx.size("N_laguerre");
  const std::string anchor = "\"is strictly increasing and\"";
  Tally<T> inc("c-strictly-increasing", anchor, EntryKind::inequality, nrange("n", 2, N));
  Tally<R> lim("c-limit-one-half", "\"converges to 1/2\"", EntryKind::inequality, "n=" + std::to_string(N));
  Tally<T> lag("laguerre-form-agrees", "c_n from Laguerre values at -2 lambda", EntryKind::equality, nrange("n", 0, NL));
  const auto grid = detail::pollaczek_grid<T>(ctx);
  const R ltol = to_real(from_rational<T>(ctx.tol("limit")));
  for (const auto& pt : grid) {
    const std::string pl = pt.label();
    auto cs = assoc_pollaczek(pt.params());
    for (std::size_t n = 2; n <= N; ++n) inc.inequality(T(cs->c(n) - cs->c(n - 1)), true, [&] { return at(pl, "n", n); });
    lim.inequality(R(ltol - abs_of(R(to_real(cs->c(N)) - R(1) / 2))), true, [&] { return pl; });
    PollaczekLaguerreForm<T> lf(pt.params());
    for (std::size_t n = 0; n <= NL; ++n) {
      const T res = abs_of(T(lf.c(n) - cs->c(n)));
      lag.equality(res, detail::tol_as<T>(32), [&] { return at(pl, "n", n); });
    }
  }
  rep.entries.push_back(inc.finish());
  rep.entries.push_back(lim.finish());
  rep.entries.push_back(lag.finish());
  if (grid.size() == 1) {
    auto cs = assoc_pollaczek(grid[0].params());
    rep.entries.push_back(info_entry("first-step", anchor, "n=1,2",
                                     "c_1 = " + to_string(cs->c(1)) + " < c_2 = " + to_string(cs->c(2))));
  }
}

template <class T>
void poll_cor26(const SuiteContext& ctx, Report& rep) {
  using R = real_t<T>;
  const std::size_t N = ctx.size("N");
  Tally<R> t("c-below-phi-bound", "\"1-4phi(n+1)\"", EntryKind::inequality, nrange("n", 0, N));
  for (const auto& pt : detail::pollaczek_grid<T>(ctx)) {
    const auto c = corollary_c_bound(pt.params(), N);
    t.merge(c, [&](std::size_t n) { return at(pt.label(), "n", n); }, is_exact_v<T>);
  }
  if constexpr (is_exact_v<T>) t.info("decided exactly; the margin shown is a float approximation");
  rep.entries.push_back(t.finish());
}

template <class T>
void poll_lemma37(const SuiteContext& ctx, Report& rep) {
  using R = real_t<T>;
  const std::size_t N = ctx.size("N"), Nst = ctx.size("N_st");
  const std::string anchor = "\"and the arising denominators are positive\"";
  const std::string region = "points with 0 < lambda < alpha + 1/2";
  Tally<R> wr("omega-equals-rho", anchor, EntryKind::equality, region);
  Tally<T> st("s-plus-t", "\"t_n := 1 - s_n\"", EntryKind::equality, nrange("n", 1, Nst));
  Tally<R> tr("pollaczek-as-random-walk", anchor, EntryKind::equality,
              nrange("n", 0, N) + ", x in {-1,-1/2,0,1/3,1}, relative residual");
  Tally<R> pos("random-walk-positive-at-omega", "S_n(omega) > 0 and S~_n(omega) > 0", EntryKind::inequality,
               nrange("n", 0, N));
  std::size_t used = 0;
  for (const auto& pt : detail::pollaczek_grid<T>(ctx)) {
    if (!pt.transform_region()) continue;
    ++used;
    const std::string pl = pt.label();
    const auto tb = transform_params(pt.alpha, pt.lambda, pt.nu);
    wr.equality(abs_of(R(tb.omega - tb.rho)), detail::float_tol<R>(16), [&] { return pl; });
    for (std::size_t n = 1; n <= Nst; ++n)
      st.equality(abs_of(T(tb.s(n) + tb.t(n) - 1)), detail::tol_as<T>(16), [&] { return at(pl, "n", n); });
    const RandomWalkParams<R> rp(to_real(tb.a), to_real(tb.b), to_real(tb.nu), false);
    const RandomWalkParams<R> rt(to_real(tb.a), to_real(tb.b), to_real(tb.nu), true);
    auto s = random_walk(rp);
    auto stl = random_walk(rt);
    auto pc = assoc_pollaczek(PollaczekParams<R>(to_real(pt.alpha), to_real(pt.lambda), to_real(pt.nu)));
    const auto at_omega = eval_sequence(*s, N, tb.rho);
    const auto at_omega_t = eval_sequence(*stl, N, tb.rho);
    for (std::size_t n = 0; n <= N; ++n) {
      pos.inequality(at_omega[n], true, [&] { return at(pl + ", S", "n", n); });
      pos.inequality(at_omega_t[n], true, [&] { return at(pl + ", S~", "n", n); });
    }
    for (const R x : {R(-1), R(-0.5), R(0), R(1) / 3, R(1)}) {
      const auto q = eval_sequence(*pc, N, x);
      const auto sv = eval_sequence(*s, N, R(tb.rho * x));
      for (std::size_t n = 0; n <= N; ++n) {
        const R scale = std::max(R(1), abs_of(q[n]));
        tr.equality(R(abs_of(R(q[n] - sv[n] / at_omega[n])) / scale), detail::float_tol<R>(40),
                    [&] { return at(pl + ", x=" + to_string(x), "n", n); });
      }
    }
  }
  for (auto* t : {&wr, &tr, &pos}) t->append_note(std::to_string(used) + " grid points in the region");
  rep.entries.push_back(wr.finish());
  rep.entries.push_back(st.finish());
  rep.entries.push_back(tr.finish());
  rep.entries.push_back(pos.finish());
}

template <class T>
void poll_lemma38(const SuiteContext& ctx, Report& rep) {
  using R = real_t<T>;
  const std::size_t N = ctx.size("N");
  const std::string anchor = "\"there is some tau > 0\"";
  Tally<R> le("chi-below-chi-tilde", anchor, EntryKind::inequality, nrange("n", 1, N));
  Tally<R> inc("chi-tilde-increasing", "\"is strictly increasing\"", EntryKind::inequality, nrange("n", 1, N - 1));
  Tally<R> idn("chain-identity", "\"chi~_n(1-chi~_{n-1}) = lambda~_n/omega^2\"", EntryKind::equality, nrange("n", 2, N));
  Tally<R> one("chi-tilde-1", "\"chi~_1 = c~_1/omega^2\"", EntryKind::equality, "n=1");
  Tally<R> cau("tau-cauchy", anchor, EntryKind::inequality, "|r_N - r_{N/2}|, N=" + std::to_string(N));
  std::string tau_note;
  for (const auto& a : ctx.axis("a"))
    for (const auto& b : ctx.axis("b"))
      for (const auto& nu : ctx.axis("nu")) {
        const std::string pl = "a=" + to_string(a) + ", b=" + to_string(b) + ", nu=" + to_string(nu);
        const auto ct = chi_tau(from_rational<T>(a), from_rational<T>(b), from_rational<T>(nu), N);
        le.merge(ct.chi_le, [&](std::size_t n) { return at(pl, "n", n); });
        inc.merge(ct.chi_tilde_increasing, [&](std::size_t n) { return at(pl, "n", n); });
        idn.equality(ct.identity_residual, detail::float_tol<R>(40), [&] { return pl; });
        one.equality(ct.chi1_residual, detail::float_tol<R>(16), [&] { return pl; });
        cau.inequality(R(to_real(from_rational<T>(ctx.tol("cauchy"))) - ct.cauchy_gap), true, [&] { return pl; });
        tau_note += (tau_note.empty() ? "" : "; ") + pl + ": tau ~ r_N = " + to_string(detail::approx(ct.tau_estimate)) +
                    ", gap " + to_string(detail::approx(ct.cauchy_gap));
      }
  for (auto* t : {&le, &inc, &idn, &one, &cau}) rep.entries.push_back(t->finish());
  rep.entries.push_back(info_entry("tau-estimate", anchor, "n=" + std::to_string(N), tau_note));
}

template <class T>
void poll_lemma39(const SuiteContext& ctx, Report& rep) {
  using R = real_t<T>;
  const std::size_t N = ctx.size("N");
  const std::string anchor = "\"defines a sequence\"";
  Tally<R> bound("psi-lower-bound", anchor, EntryKind::inequality, nrange("n", 1, N) + ", 0 < lambda < alpha + 1/2");
  Tally<R> prod("psi-product", "S~_n(rho) = prod psi_k", EntryKind::equality, nrange("n", 1, N) + ", relative");
  auto run = [&](const detail::PollPoint<T>& pt) {
    const auto tb = transform_params(pt.alpha, pt.lambda, pt.nu);
    const auto ps = pollaczek_psi(tb, N);
    bound.merge(ps.bound, [&](std::size_t n) { return at(pt.label(), "n", n); });
    prod.equality(ps.product_rel_error, detail::float_tol<R>(64), [&] { return pt.label(); });
  };
  std::size_t used = 0;
  for (const auto& pt : detail::pollaczek_grid<T>(ctx))
    if (pt.transform_region()) run(pt), ++used;
  // the worked point is always included
  const detail::PollPoint<T> worked{T(0), T(1) / 4, T(0)};
  run(worked);
  bound.append_note(std::to_string(used) + " grid points in the region plus (0, 1/4, 0)");
  rep.entries.push_back(bound.finish());
  rep.entries.push_back(prod.finish());

  const auto ps = pollaczek_psi(transform_params(worked.alpha, worked.lambda, worked.nu), 2);
  const R s3 = sqrt_real(R(3));
  Tally<R> w("psi-2-worked", "psi_2 = 17/(12 sqrt 3) >= 4/(3 sqrt 3)", EntryKind::equality, "alpha=0, lambda=1/4, nu=0");
  w.equality(abs_of(R(ps.psi[2] - R(17) / (12 * s3))), detail::float_tol<R>(16), [] { return std::string("n=2"); });
  rep.entries.push_back(w.finish());
  Tally<R> wb("psi-2-worked-bound", "psi_2 >= 4/(3 sqrt 3)", EntryKind::inequality, "alpha=0, lambda=1/4, nu=0");
  wb.inequality(R(ps.psi[2] - R(4) / (3 * s3)), false, [] { return std::string("n=2"); });
  rep.entries.push_back(wb.finish());
}

template <class T>
void poll_thm27(const SuiteContext& ctx, Report& rep) {
  using R = real_t<T>;
  const std::size_t NA = ctx.size("N_A"), NB = ctx.size("N_B"), NC = ctx.size("N_C");
  Tally<R> A("claim-A", "\"a^n|S'_{2n+1}(0)| <= 2n+1\"", EntryKind::inequality, nrange("n", 0, NA));
  Tally<R> Z("even-derivative-zero", "\"S'_{2n}(0) = 0 due to symmetry\"", EntryKind::equality, nrange("n", 0, NA));
  Tally<R> B("claim-B", "\"2 lambda n + 2 lambda nu + 2 alpha + 1\"", EntryKind::inequality, nrange("n", 0, NB));
  Tally<T> C("case1-coefficient-bound", "\"1/4 - c_n a_{n-1}\"", EntryKind::inequality, nrange("n", 1, NC));
  std::vector<detail::PollPoint<T>> pts = detail::pollaczek_grid<T>(ctx);
  if (!ctx.single_point) {
    pts.push_back({T(0), T(1) / 4, T(0)});
    pts.push_back({T(0), T(1) / 5, T(0)});
  }
  std::size_t na = 0, nc = 0, indet = 0;
  unsigned max_bits = 0;
  for (const auto& pt : pts) {
    const std::string pl = pt.label();
    const auto cl = pollaczek_claims_ab(pt.params(), NA, NB, NC, ctx.bits, 4 * ctx.bits);
    max_bits = std::max(max_bits, cl.precision_used);
    if (cl.transform_region) {
      ++na;
      // margins that stay inside the noise floor at every precision are equality cases
      if (cl.indeterminate) ++indet;
      A.merge(cl.claim_a, [&](std::size_t n) { return at(pl, "n", n); });
      B.merge(cl.claim_b, [&](std::size_t n) { return at(pl, "n", n); });
      Z.equality(cl.even_derivative_zero.worst_margin ? R(-*cl.even_derivative_zero.worst_margin) : R(0), R(0),
                 [&] { return pl; });
    }
    if (cl.case1_region) {
      ++nc;
      C.merge(cl.case1, [&](std::size_t n) { return at(pl, "n", n); });
    }
  }
  A.append_note(std::to_string(na) + " points with 0 < lambda < alpha + 1/2; max precision " + std::to_string(max_bits) +
                " bits" + (indet ? ", " + std::to_string(indet) + " with a margin in the noise floor at every precision" : std::string()));
  C.append_note(std::to_string(nc) + " points with lambda at or above the Case-1 threshold");
  for (auto* t : {&A, &Z, &B}) rep.entries.push_back(t->finish());
  rep.entries.push_back(C.finish());
}

template <class T>
void appendix_a(const SuiteContext& ctx, Report& rep) {
  using R = real_t<T>;
  const std::size_t N = ctx.size("N"), X = ctx.size("X");
  Tally<T> phi("phi-below-lambda0", "\"phi(x) <= phi^(lambda=0)(x)\"", EntryKind::inequality,
               "x in {1, 3/2, ..., " + std::to_string(X) + "}");
  Tally<T> i("c-below-lambda0", "\"c_n <= c_n^(lambda=0)\"", EntryKind::inequality, nrange("n", 0, N));
  Tally<T> ii("c-below-nu0-in-band", "\"for all n in {0,...,floor(x_**)}\"", EntryKind::inequality,
              "0 <= n <= min(N, floor(x_**)), 0 < lambda < -|alpha| + 1/2");
  Tally<R> iii("c-nu0-below-iota", "\"c_n^(nu=0) < iota(n)\"", EntryKind::inequality, nrange("n", 1, N));
  Tally<R> eta("x-star-zero-of-eta", "\"the potential zeros are given by\"", EntryKind::equality, "band points");
  Tally<R> theta("x-star-star-zero-of-theta", "\"the potential zeros are given by\"", EntryKind::equality, "band points");
  Tally<R> order("x-star-star-above-x-star", "\"x_** >= x_*\"", EntryKind::inequality, "band points");
  std::size_t band = 0;
  for (const auto& pt : detail::pollaczek_grid<T>(ctx)) {
    const std::string pl = pt.label();
    const auto p = pt.params();
    const auto p0 = p.with_lambda(T(0));
    for (std::size_t j = 2; j <= 2 * X; ++j) {
      const T x = T(static_cast<long>(j)) / 2;
      phi.inequality(T(p0.phi(x) - p.phi(x)), false, [&] { return pl + ", x=" + to_string(x); });
    }
    auto cs = assoc_pollaczek(p);
    auto cl0 = assoc_pollaczek(p0);
    auto cnu0 = assoc_pollaczek(p.with_nu(T(0)));
    for (std::size_t n = 0; n <= N; ++n) i.inequality(T(cl0->c(n) - cs->c(n)), false, [&] { return at(pl, "n", n); });
    const auto pnu0 = p.with_nu(T(0));
    for (std::size_t n = 1; n <= N; ++n) {
      const T& c = cnu0->c(n);
      const R margin = pnu0.iota(T(static_cast<long>(n))) - to_real(c);
      const bool ok = below_iota(pnu0, n, c);
      Status s = ok ? Status::pass : Status::fail;
      if constexpr (!is_exact_v<T>) s = verdict(margin, true);
      iii.add(margin, s, [&] { return at(pl, "n", n); });
    }
    if (pt.band()) {
      ++band;
      const auto cp = critical_points(p);
      const R xs = *cp.x_star, xss = *cp.x_star_star;
      PollaczekParams<R> pr(to_real(pt.alpha), to_real(pt.lambda), to_real(pt.nu));
      const R ctol = to_real(ctx.tol("critical_point"));
      eta.equality(abs_of(pr.eta(xs)), ctol, [&] { return pl; });
      theta.equality(abs_of(pr.theta(xss)), ctol, [&] { return pl; });
      order.inequality(R(xss - xs), false, [&] { return pl; });
      if (xss >= 1) {
        const auto top = std::min<std::size_t>(N, static_cast<std::size_t>(mp::floor(xss).template convert_to<long>()));
        for (std::size_t n = 0; n <= top; ++n)
          ii.inequality(T(cnu0->c(n) - cs->c(n)), false, [&] { return at(pl, "n", n); });
      }
    }
  }
  ii.append_note(std::to_string(band) + " grid points in the band");
  if constexpr (is_exact_v<T>) iii.append_note("decided exactly; the margin shown is a float approximation");
  for (auto* t : {&phi, &i, &ii}) rep.entries.push_back(t->finish());
  rep.entries.push_back(iii.finish());
  for (auto* t : {&eta, &theta, &order}) rep.entries.push_back(t->finish());
}

template <class T>
void turan(const SuiteContext& ctx, Report& rep) {
  const std::size_t N = ctx.size("N");
  const long den = ctx.sizes.at("grid_den");
  const std::string anchor = "\"satisfy Turan's inequality\"";
  const std::string grid = nrange("n", 1, N) + ", x = -1 + j/" + std::to_string(den);
  Tally<T> tn("random-walk-tilde-nonnegative", anchor, EntryKind::inequality, grid);
  Tally<T> tp("random-walk-tilde-interior-positive", anchor, EntryKind::inequality, grid + ", interior");
  Tally<T> sn("random-walk-nonnegative", anchor, EntryKind::inequality, grid);
  Tally<T> sp("random-walk-interior-positive", anchor, EntryKind::inequality, grid + ", interior");
  Tally<T> ln("laguerre-nonnegative", "\"Turan's inequality for Laguerre polynomials\"", EntryKind::inequality,
              nrange("n", 1, N) + ", x = -2 lambda");
  Tally<T> lp("laguerre-positive", "\"Turan's inequality for Laguerre polynomials\"", EntryKind::inequality,
              nrange("n", 1, N) + ", x = -2 lambda, lambda > 0");
  std::map<std::string, bool> seen;
  std::size_t fam = 0;
  for (const auto& pt : detail::pollaczek_grid<T>(ctx)) {
    if (pt.transform_region()) {
      const auto tb = transform_params(pt.alpha, pt.lambda, pt.nu);
      const std::string key = to_string(tb.a) + "|" + to_string(tb.b) + "|" + to_string(pt.nu);
      if (!seen[key]) {
        seen[key] = true;
        fam += 2;
        const std::string pl = "a=" + to_string(tb.a) + ", b=" + to_string(tb.b) + ", nu=" + to_string(pt.nu);
        for (bool tilde : {true, false}) {
          const auto rw = random_walk(tb.random_walk_params(tilde));
          const auto r = turan_check(*rw, N, den);
          auto w = [&](std::size_t n) { return at(pl, "n", n); };
          (tilde ? tn : sn).merge(r.nonnegative, w);
          (tilde ? tp : sp).merge(r.interior_positive, [&](std::size_t n) {
            return at(pl, "n", n) + (r.worst_x ? ", x=" + to_string(*r.worst_x) : std::string());
          });
        }
      }
    }
  }
  std::map<std::string, bool> lseen;
  for (const auto& pt : detail::pollaczek_grid<T>(ctx)) {
    const std::string key = to_string(pt.alpha) + "|" + to_string(pt.lambda);
    if (lseen[key]) continue;
    lseen[key] = true;
    const std::string pl = "2alpha=" + to_string(T(2 * pt.alpha)) + ", x=" + to_string(T(-2 * pt.lambda));
    const auto nn = laguerre_turan(T(2 * pt.alpha), T(-2 * pt.lambda), N, false);
    ln.merge(nn, [&](std::size_t n) { return at(pl, "n", n); });
    if (pt.lambda > 0) {
      const auto ss = laguerre_turan(T(2 * pt.alpha), T(-2 * pt.lambda), N, true);
      lp.merge(ss, [&](std::size_t n) { return at(pl, "n", n); });
    }
  }
  tn.append_note(std::to_string(fam) + " random walk families from points with 0 < lambda < alpha + 1/2");
  for (auto* t : {&tn, &tp, &sn, &sp, &ln, &lp}) rep.entries.push_back(t->finish());
}

template <class T>
void chain_basics(const SuiteContext& ctx, Report& rep) {
  using Q = Rational;
  using R = real_t<T>;
  const std::size_t N = ctx.size("N"), NM = ctx.size("N_monotone"), trials = ctx.size("trials");

  Tally<Q> quarter("minimal-quarter", "\"one has m_0 = 0\"", EntryKind::equality, nrange("n", 0, N) + ", m(n) = n/(2n+2)");
  {
    const auto m = minimal_parameters(ChainSequenceProbe<Q>{[](std::size_t) { return Q(1, 4); }, std::nullopt, "1/4"}, N);
    for (std::size_t n = 0; n < m.values.size(); ++n)
      quarter.equality(abs_of(Q(m.values[n] - Q(static_cast<long>(n), 2 * static_cast<long>(n) + 2))), Q(0),
                       [&] { return at("", "n", n); });
  }
  Tally<T> mpc("minimal-equals-pollaczek-c", "\"is called a chain sequence\"", EntryKind::equality, nrange("n", 0, N));
  Tally<T> pid("pollaczek-parameter-identity", "phi(n) = c_n (1 - c_{n-1})", EntryKind::equality, nrange("n", 1, N));
  Tally<T> minc("minimal-increasing", "\"then (m_n) is strictly increasing\"", EntryKind::inequality,
                nrange("n", 1, NM) + ", nondecreasing phi");
  Tally<R> mdec("maximal-nonincreasing", "\"and (M_n) is nonincreasing\"", EntryKind::inequality,
                nrange("n", 1, NM) + ", nondecreasing phi, up to twice the horizon gap");
  Tally<R> above("maximal-above-minimal", "\"m_n < p_n\"", EntryKind::inequality, nrange("n", 1, 50));
  std::size_t mono_points = 0;
  for (const auto& pt : detail::pollaczek_grid<T>(ctx)) {
    const std::string pl = pt.label();
    const auto p = pt.params();
    ChainSequenceProbe<T> probe{[p](std::size_t n) { return p.phi(T(static_cast<long>(n))); }, std::nullopt, "phi"};
    const auto m = minimal_parameters(probe, N);
    auto cs = assoc_pollaczek(p);
    const T tol = detail::tol_as<T>(40);
    for (std::size_t n = 0; n < m.values.size(); ++n)
      mpc.equality(abs_of(T(m.values[n] - cs->c(n))), tol, [&] { return at(pl, "n", n); });
    if (!m.certified) mpc.add(T(1), Status::fail, [&] { return pl + ", no certificate"; });
    for (std::size_t n = 1; n <= N; ++n)
      pid.equality(abs_of(T(probe.lambda(n) - cs->c(n) * (1 - cs->c(n - 1)))), tol, [&] { return at(pl, "n", n); });

    bool nondecreasing = true;
    for (std::size_t n = 2; n <= 2 * NM + 2 && nondecreasing; ++n)
      if (probe.lambda(n) < probe.lambda(n - 1)) nondecreasing = false;
    if (nondecreasing) {
      ++mono_points;
      for (std::size_t n = 1; n <= NM; ++n)
        minc.inequality(T(m.values[n] - m.values[n - 1]), true, [&] { return at(pl, "n", n); });
      const PollaczekParams<R> pr(to_real(pt.alpha), to_real(pt.lambda), to_real(pt.nu));
      ChainSequenceProbe<R> rp{[pr](std::size_t n) { return pr.phi(R(static_cast<long>(n))); }, std::nullopt, "phi"};
      const auto M = maximal_parameters(rp, NM, 2 * NM, R(1e-8));
      if (M.certified && M.values.size() == NM + 1) {
        const R slack = M.cauchy_gap ? R(2 * *M.cauchy_gap) : R(0);
        for (std::size_t n = 1; n <= NM; ++n)
          mdec.inequality(R(M.values[n - 1] - M.values[n] + slack), false, [&] { return at(pl, "n", n); });
        for (std::size_t n = 1; n <= std::min<std::size_t>(50, NM); ++n)
          above.inequality(R(M.values[n] - to_real(cs->c(n))), true, [&] { return at(pl, "n", n); });
        if (!M.converged) mdec.append_note(pl + ": horizon did not converge");
      } else {
        mdec.add(R(-1), Status::fail, [&] { return pl + ", maximal parameters left (0,1)"; });
      }
    }
  }
  minc.append_note(std::to_string(mono_points) + " grid points with nondecreasing phi");

  Tally<Q> cert("negative-certificate", "\"is called a chain sequence\"", EntryKind::equality, "Lambda = 9/10, 9/10");
  {
    const auto m = minimal_parameters(ChainSequenceProbe<Q>{[](std::size_t) { return Q(9, 10); }, std::nullopt, "0.9"}, 5);
    const bool ok = !m.certified && m.failure == std::size_t(2) && m.failure_value == Q(9);
    cert.add(m.failure_value ? abs_of(Q(*m.failure_value - 9)) : Q(1), ok ? Status::pass : Status::fail,
             [&] { return m.failure ? "n=" + std::to_string(*m.failure) : std::string("no failure"); });
  }
  Tally<R> fixed("maximal-fixed-points", "\"is called maximal\"", EntryKind::equality, "Lambda = 1/4 and 3/16");
  {
    ChainSequenceProbe<R> p1{[](std::size_t) { return R(1) / 4; }, std::nullopt, "1/4"};
    const auto M1 = maximal_parameters(p1, 10, 20, R(1e-4));
    for (const auto& v : M1.values) fixed.equality(abs_of(R(v - R(1) / 2)), R(1e-4), [] { return std::string("1/4"); });
    ChainSequenceProbe<R> p2{[](std::size_t) { return R(3) / 16; }, std::nullopt, "3/16"};
    const auto M2 = maximal_parameters(p2, 10, 20, detail::float_tol<R>(64));
    for (const auto& v : M2.values)
      fixed.equality(abs_of(R(v - R(3) / 4)), detail::float_tol<R>(70), [] { return std::string("3/16"); });
  }
  Tally<R> cf("worpitzky-constant", "\"due to Worpitzky's theorem\"", EntryKind::equality, "partials 1/8, depth 200");
  {
    const auto q = worpitzky_cf<R>([](std::size_t) { return R(1) / 8; }, 200);
    const R w = (1 - sqrt_real(R(1) / 2)) / 2;
    cf.equality(abs_of(R(q.value - 1 / (1 - w))), std::max(*q.tail_bound, detail::float_tol<R>(16)),
                [] { return std::string("depth 200"); });
  }
  Tally<Q> wc("worpitzky-containment", "\"elements of the interval [2/3, 2]\"", EntryKind::inequality,
              std::to_string(trials) + " random trials, partials in (0,1/4), depth 10..29");
  {
    std::mt19937_64 rng(ctx.seed);
    std::uniform_int_distribution<long> num(1, 249);
    for (std::size_t t = 0; t < trials; ++t) {
      std::vector<Q> parts(30);
      for (auto& p : parts) p = Q(num(rng), 1000);
      const auto q = worpitzky_cf<Q>([&parts](std::size_t i) { return parts[i]; }, 10 + t % 20);
      const Q margin = std::min(Q(q.value - Q(2, 3)), Q(2 - q.value));
      wc.inequality(margin, false, [&] { return "trial " + std::to_string(t); });
    }
    wc.append_note("seed " + std::to_string(ctx.seed));
  }
  for (auto* t : {&quarter, &cert}) rep.entries.push_back(t->finish());
  rep.entries.push_back(mpc.finish());
  rep.entries.push_back(pid.finish());
  rep.entries.push_back(minc.finish());
  rep.entries.push_back(mdec.finish());
  rep.entries.push_back(above.finish());
  rep.entries.push_back(fixed.finish());
  rep.entries.push_back(cf.finish());
  rep.entries.push_back(wc.finish());
}

}  // namespace suites

// ---------------------------------------------------------------------------
// running

using ParamInput = std::map<std::string, std::string>;
using SizeOverrides = std::map<std::string, long>;

namespace detail {

inline void check_param(const std::string& name, const Rational& v) {
  auto fail = [&](const std::string& why) { throw ParameterError("parameter " + name + "=" + to_string(v) + ": " + why); };
  if (name == "q" && !(v > 0 && v < 1)) fail("needs 0 < q < 1");
  if (name == "alpha" && !(2 * v > -1)) fail("needs alpha > -1/2");
  if ((name == "lambda" || name == "nu") && v < 0) fail("needs " + name + " >= 0");
  if (name == "a" && !(v > 1)) fail("needs a > 1");
  if (name == "b" && !(v > 0)) fail("needs b > 0");
}

/// Comma-separated values; each must be "p/q", an integer, or a decimal.
inline std::vector<std::string> split_values(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) throw ParameterError("empty value in '" + s + "'");
    out.push_back(item);
  }
  if (out.empty() || s.back() == ',') throw ParameterError("empty value in '" + s + "'");
  return out;
}

}  // namespace detail

/// Resolves parameters and mode, runs the suite and returns its report.
/// Throws ParameterError on unknown suites, unknown parameters or out-of-range values.
inline Report run_suite(const std::string& name, const ParamInput& params = {}, const SizeOverrides& overrides = {},
                        const RunOptions& opt = {}) {
  const auto spec = find_suite(name);
  if (!spec) throw ParameterError("unknown suite '" + name + "'");
  if (opt.precision < 64) throw ParameterError("precision must be at least 64 bits");
  if (opt.mode != "auto" && opt.mode != "rational" && opt.mode != "float")
    throw ParameterError("mode must be auto, rational or float");

  SuiteContext ctx;
  ctx.bits = opt.precision;
  ctx.seed = opt.seed;
  bool decimals = false;
  for (const auto& [key, value] : params) {
    const bool known = std::any_of(spec->params.begin(), spec->params.end(), [&](const ParamSpec& p) { return p.name == key; });
    if (!known) throw ParameterError("suite " + name + " has no parameter '" + key + "'");
    (void)value;
  }
  Report rep;
  rep.suite = name;
  for (const auto& ps : spec->params) {
    const auto given = params.find(ps.name);
    const auto texts = given != params.end() ? detail::split_values(given->second) : ps.defaults;
    std::vector<Rational> vals;
    std::string joined;
    for (const auto& t : texts) {
      Rational v;
      try {
        v = parse_rational(t);
      } catch (const DomainError& e) {
        throw ParameterError(e.what());
      }
      if (!is_fraction_literal(t)) decimals = true;
      detail::check_param(ps.name, v);
      vals.push_back(v);
      joined += (joined.empty() ? "" : ",") + to_string(v);
    }
    if (vals.size() > 1) ctx.single_point = false;
    ctx.axes[ps.name] = std::move(vals);
    rep.params.emplace_back(ps.name, joined);
  }
  for (const auto& [key, value] : spec->sizes) ctx.sizes[key] = value;
  for (const auto& [key, value] : overrides) {
    if (!ctx.sizes.count(key)) throw ParameterError("suite " + name + " has no size '" + key + "'");
    if (value < 0) throw ParameterError("size " + key + " must be nonnegative");
    ctx.sizes[key] = value;
  }
  for (const auto& [key, value] : spec->tolerances) ctx.tolerances[key] = parse_rational(value);
  if (opt.mode == "rational" && decimals) throw ParameterError("mode=rational does not accept decimal parameters");
  ctx.float_mode = opt.mode == "float" || (opt.mode == "auto" && decimals);
  if (name == "chain-basics") rep.params.emplace_back("seed", std::to_string(opt.seed));
  for (const auto& [key, value] : ctx.sizes) rep.params.emplace_back(key, std::to_string(value));

  PrecisionGuard guard(opt.precision);
  const bool use_float = ctx.float_mode && spec->float_path;
  rep.mode = use_float ? "float" : "rational";
  rep.precision = opt.precision;

  using Q = Rational;
  using F = BigFloat;
  static const std::map<std::string, std::function<void(const SuiteContext&, Report&)>> exact = {
      {"qleg-basics", suites::qleg_basics},
      {"qleg-thm21", suites::qleg_thm21},
      {"qleg-thm23-idempotents", suites::qleg_thm23},
      {"qleg-cor24", suites::qleg_cor24},
      {"qleg-lemma32", suites::qleg_lemma32},
      {"qleg-lemma33", suites::qleg_lemma33},
      {"qleg-lemma34", suites::qleg_lemma34},
      {"qleg-lemma35", suites::qleg_lemma35},
      {"poll-thm25", suites::poll_thm25<Q>},
      {"poll-cor26", suites::poll_cor26<Q>},
      {"poll-lemma37", suites::poll_lemma37<Q>},
      {"poll-lemma38", suites::poll_lemma38<Q>},
      {"poll-lemma39", suites::poll_lemma39<Q>},
      {"poll-thm27-bounds", suites::poll_thm27<Q>},
      {"appendixA", suites::appendix_a<Q>},
      {"turan", suites::turan<Q>},
      {"chain-basics", suites::chain_basics<Q>},
  };
  static const std::map<std::string, std::function<void(const SuiteContext&, Report&)>> floating = {
      {"poll-thm25", suites::poll_thm25<F>},
      {"poll-cor26", suites::poll_cor26<F>},
      {"poll-lemma37", suites::poll_lemma37<F>},
      {"poll-lemma38", suites::poll_lemma38<F>},
      {"poll-lemma39", suites::poll_lemma39<F>},
      {"poll-thm27-bounds", suites::poll_thm27<F>},
      {"appendixA", suites::appendix_a<F>},
      {"turan", suites::turan<F>},
      {"chain-basics", suites::chain_basics<F>},
  };
  try {
    (use_float ? floating : exact).at(name)(ctx, rep);
  } catch (const std::bad_alloc&) {
    rep.entries.push_back(info_entry("aborted", "resource limit", "", "out of memory; entries above are partial"));
    rep.entries.back().kind = EntryKind::inequality;
    rep.entries.back().status = Status::indeterminate;
  }
  if (ctx.float_mode && !spec->float_path)
    rep.entries.push_back(info_entry("exact-evaluation", "characters at the atoms", "",
                                     "this suite always runs in exact arithmetic; parameters were read as exact decimals"));
  return rep;
}

// ---------------------------------------------------------------------------
// serialization

inline nlohmann::ordered_json to_json(const Entry& e) {
  nlohmann::ordered_json j;
  j["claim"] = e.claim;
  j["anchor"] = e.anchor;
  j["kind"] = to_string(e.kind);
  j["range"] = e.range;
  j["pass"] = e.pass();
  j["status"] = to_string(e.status);
  j["checked"] = e.checked;
  j["failures"] = e.failures;
  j["indeterminate"] = e.indeterminate;
  auto opt = [&](const char* key, const std::optional<std::string>& v) {
    if (v) j[key] = *v;
    else j[key] = nullptr;
  };
  opt("worst_margin", e.worst_margin);
  opt("worst_margin_approx", e.worst_margin_approx);
  opt("witness", e.witness);
  opt("first_failure", e.first_failure);
  j["note"] = e.note;
  return j;
}

inline nlohmann::ordered_json to_json(const Report& r) {
  nlohmann::ordered_json j;
  j["suite"] = r.suite;
  nlohmann::ordered_json p = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.params) p[k] = v;
  j["params"] = p;
  j["mode"] = r.mode;
  j["precision"] = r.precision;
  j["pass"] = r.pass();
  j["status"] = to_string(r.status());
  j["entries"] = nlohmann::ordered_json::array();
  for (const auto& e : r.entries) j["entries"].push_back(to_json(e));
  return j;
}

namespace detail {

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace detail

/// "json" or "csv". JSON carries everything; CSV is one row per entry with the report fields repeated.
inline std::string serialize(const Report& r, const std::string& format = "json") {
  if (format == "json") return to_json(r).dump(2) + "\n";
  if (format != "csv") throw DomainError("unknown format '" + format + "'");
  std::string params;
  for (const auto& [k, v] : r.params) params += (params.empty() ? "" : ";") + k + "=" + v;
  std::string out =
      "suite,mode,precision,params,claim,anchor,kind,range,status,checked,failures,indeterminate,worst_margin,"
      "worst_margin_approx,witness,first_failure,note\n";
  for (const auto& e : r.entries) {
    const std::vector<std::string> cols{r.suite, r.mode, std::to_string(r.precision), params, e.claim, e.anchor,
                                        to_string(e.kind), e.range, to_string(e.status), std::to_string(e.checked),
                                        std::to_string(e.failures), std::to_string(e.indeterminate),
                                        e.worst_margin.value_or(""), e.worst_margin_approx.value_or(""),
                                        e.witness.value_or(""), e.first_failure.value_or(""), e.note};
    for (std::size_t i = 0; i < cols.size(); ++i) out += (i ? "," : "") + detail::csv_field(cols[i]);
    out += "\n";
  }
  return out;
}

inline Entry entry_from_json(const nlohmann::ordered_json& j) {
  Entry e;
  e.claim = j.at("claim").get<std::string>();
  e.anchor = j.at("anchor").get<std::string>();
  e.kind = parse_entry_kind(j.at("kind").get<std::string>());
  e.range = j.at("range").get<std::string>();
  e.status = parse_status(j.at("status").get<std::string>());
  e.checked = j.at("checked").get<std::size_t>();
  e.failures = j.at("failures").get<std::size_t>();
  e.indeterminate = j.at("indeterminate").get<std::size_t>();
  auto opt = [&](const char* key) -> std::optional<std::string> {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return j.at(key).get<std::string>();
  };
  e.worst_margin = opt("worst_margin");
  e.worst_margin_approx = opt("worst_margin_approx");
  e.witness = opt("witness");
  e.first_failure = opt("first_failure");
  e.note = j.at("note").get<std::string>();
  return e;
}

inline Report parse_report(const std::string& text) {
  const auto j = nlohmann::ordered_json::parse(text);
  Report r;
  r.suite = j.at("suite").get<std::string>();
  for (const auto& [k, v] : j.at("params").items()) r.params.emplace_back(k, v.get<std::string>());
  r.mode = j.at("mode").get<std::string>();
  r.precision = j.at("precision").get<unsigned>();
  for (const auto& e : j.at("entries")) r.entries.push_back(entry_from_json(e));
  return r;
}

/// CLI exit status: 0 pass, 1 fail, 2 indeterminate.
inline int exit_code(const Report& r) {
  switch (r.status()) {
    case Status::pass: return 0;
    case Status::fail: return 1;
    default: return 2;
  }
}

}  // namespace hypergroup
