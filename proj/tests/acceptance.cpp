// Acceptance gate: one line per criterion, PASS or FAIL, with the deciding
// margins and the runtime against its budget. Criteria listed in kKnown fail
// for reasons recorded in the decisions notes; the binary exits nonzero on any
// other failure, or when a known failure starts to pass.

#include <hypergroup/verify.hpp>

#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

using namespace hypergroup;

namespace {

struct Timed {
  Report report;
  double seconds = 0;
};

class Runs {
 public:
  const Timed& get(const std::string& suite, const ParamInput& params = {}) {
    const std::string key = suite + "|" + [&] {
      std::string s;
      for (const auto& [k, v] : params) s += k + "=" + v + ";";
      return s;
    }();
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    const auto t0 = std::chrono::steady_clock::now();
    Timed t;
    t.report = run_suite(suite, params);
    t.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return cache_.emplace(key, std::move(t)).first->second;
  }

 private:
  std::map<std::string, Timed> cache_;
};

struct Outcome {
  bool pass = true;
  double seconds = 0;
  std::string detail;
};

/// Folds the named entries of a suite run into an outcome.
void take(Outcome& o, const Timed& t, std::initializer_list<const char*> claims) {
  o.seconds += t.seconds;
  for (const char* c : claims) {
    const Entry* e = t.report.find(c);
    std::ostringstream s;
    if (!e) {
      o.pass = false;
      s << c << ": missing";
    } else {
      s << c << " " << to_string(e->status);
      if (e->worst_margin_approx) s << " (" << (e->kind == EntryKind::equality ? "max residual " : "worst ") << *e->worst_margin_approx << ")";
      if (!e->pass()) {
        o.pass = false;
        s << " [" << e->failures << "/" << e->checked << " fail, first at " << e->first_failure.value_or("?") << "]";
      }
    }
    o.detail += (o.detail.empty() ? "" : "; ") + s.str();
  }
}

struct Criterion {
  int id;
  std::string title;
  double budget;
  std::function<Outcome(Runs&)> run;
};

// Criteria that cannot pass as stated; the analysis is in the decisions notes.
const std::map<int, std::string> kKnown = {
    {9, "lambda = 5 gives 1/2 - c_500 ~ sqrt(lambda/(2n)) ~ 0.07 > 0.05"},
    {10, "lambda = 0 gives c_n^(nu=0) = iota(n) exactly, so the strict iota bound fails"},
};

std::vector<Criterion> criteria() {
  return {
      {1, "property (P) for little q-Legendre, q in {1/4,1/2,3/4}, m,n <= 30", 180,
       [](Runs& r) {
         Outcome o;
         take(o, r.get("qleg-basics"), {"property-P-nonnegative", "property-P-sum-one"});
         return o;
       }},
      {2, "Haar weights: closed form n <= 100, h(n) g(n,n;0) = 1 n <= 30", 10,
       [](Runs& r) {
         Outcome o;
         take(o, r.get("qleg-basics"), {"haar-closed-form", "haar-linearization"});
         return o;
       }},
      {3, "Haar partial-sum identity and strict bound, n <= 100", 5,
       [](Runs& r) {
         Outcome o;
         take(o, r.get("qleg-lemma35"), {"partial-sum-identity", "partial-sum-bound"});
         return o;
       }},
      {4, "character l2 norm vs 1/(q^n(1-q)) within 1e-10, q = 1/2, n <= 8", 5,
       [](Runs& r) {
         Outcome o;
         take(o, r.get("qleg-lemma34"), {"l2-closed-form", "l2-tail-covers-gap"});
         return o;
       }},
      {5, "norm sandwich 0 < |a|_2^2 < |a|_1 < C |a|_2^2, q in {0.3,0.5,0.7}, n <= 15", 30,
       [](Runs& r) {
         Outcome o;
         take(o, r.get("qleg-thm21"), {"l2-positive", "l2-below-l1", "l1-below-C-l2"});
         return o;
       }},
      {6, "ratio < 4, A > 4, B > 1/(2q) on [N, N+40], |B_n(200) - 1/q| < 1e-6", 30,
       [](Runs& r) {
         Outcome o;
         take(o, r.get("qleg-lemma32"), {"character-nonzero", "ratio-below-4"});
         take(o, r.get("qleg-lemma33"), {"A-above-4", "B-above-half-inverse-q", "B-limit"});
         return o;
       }},
      {7, "idempotent residual decreasing in M and < 1e-6 at (25, 160), q = 1/2", 60,
       [](Runs& r) {
         Outcome o;
         take(o, r.get("qleg-thm23-idempotents"), {"residual-decreasing", "residual-small"});
         return o;
       }},
      {8, "limit series vs P_40(1-q^40) < 1e-5; int p_n^4 increasing on [20,40]", 30,
       [](Runs& r) {
         Outcome o;
         take(o, r.get("qleg-cor24"), {"series-vs-character", "p4-integral-increasing"});
         return o;
       }},
      {9, "Pollaczek c_n strictly increasing, 120 points, n <= 500; |c_500 - 1/2| < 5e-2", 120,
       [](Runs& r) {
         Outcome o;
         take(o, r.get("poll-thm25"), {"c-strictly-increasing", "c-limit-one-half"});
         return o;
       }},
      {10, "coefficient bound from phi, c_n <= c_n^(lambda=0), c_n^(nu=0) < iota(n), n <= 500; Laguerre form n <= 200", 120,
       [](Runs& r) {
         Outcome o;
         take(o, r.get("poll-cor26"), {"c-below-phi-bound"});
         take(o, r.get("appendixA"), {"c-below-lambda0", "c-nu0-below-iota"});
         const Timed& t = r.get("poll-thm25");
         Outcome lag;
         take(lag, t, {"laguerre-form-agrees"});
         o.pass = o.pass && lag.pass;
         o.detail += "; " + lag.detail;
         return o;
       }},
      {11, "psi_n above its bound, n <= 1000, transform region; psi_2 at (0,1/4,0)", 30,
       [](Runs& r) {
         Outcome o;
         take(o, r.get("poll-lemma39"), {"psi-lower-bound", "psi-2-worked", "psi-2-worked-bound"});
         return o;
       }},
      {12, "claim A n <= 200, claim B n <= 500, Case-1 bound n <= 1000 at (0,0.2,0)", 60,
       [](Runs& r) {
         Outcome o;
         take(o, r.get("poll-thm27-bounds"), {"claim-A", "claim-B", "case1-coefficient-bound"});
         return o;
       }},
      {13, "chi <= chi~, chi~ increasing, |r_2n - r_n| < 1e-6 at n = 10^4, (3,9/2,1)", 60,
       [](Runs& r) {
         Outcome o;
         take(o, r.get("poll-lemma38"), {"chi-below-chi-tilde", "chi-tilde-increasing", "tau-cauchy"});
         return o;
       }},
      {14, "Turan inequality: random walk families on the 1/128 grid, Laguerre at -2 lambda, n <= 100", 60,
       [](Runs& r) {
         Outcome o;
         take(o, r.get("turan"),
              {"random-walk-tilde-nonnegative", "random-walk-tilde-interior-positive", "random-walk-nonnegative",
               "random-walk-interior-positive", "laguerre-nonnegative", "laguerre-positive"});
         return o;
       }},
      {15, "2phi1 representation equals the recurrence, n <= 20, x in {0,1/2,1}", 5,
       [](Runs& r) {
         Outcome o;
         take(o, r.get("qleg-basics"), {"2phi1-representation"});
         return o;
       }},
  };
}

}  // namespace

int main() {
  Runs runs;
  int unexpected = 0, passed = 0;
  for (const auto& c : criteria()) {
    Outcome o;
    try {
      o = c.run(runs);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("error: ") + e.what();
    }
    const bool in_budget = o.seconds <= c.budget;
    const bool pass = o.pass && in_budget;
    const bool known = kKnown.count(c.id) > 0;
    if (pass) ++passed;
    if (pass == known) ++unexpected;
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title << " | " << o.detail << " | "
              << std::fixed << std::setprecision(2) << o.seconds << " s of " << c.budget << " s";
    if (!in_budget) std::cout << " (over budget)";
    if (known && !pass) std::cout << " | known failure: " << kKnown.at(c.id);
    if (known && pass) std::cout << " | listed as a known failure but passed";
    std::cout << std::endl;
  }
  std::cout << passed << " of 15 criteria pass";
  if (!kKnown.empty()) std::cout << "; known failures: " << kKnown.size();
  std::cout << std::endl;
  return unexpected == 0 ? 0 : 1;
}
