#pragma once

// Chain sequences and parameter sequences, Worpitzky continued fractions, the
// A/B quantities behind the little q-Legendre character decay, and the
// random-walk machinery (chi, psi, Turan) behind the Pollaczek results.
// Strict inequalities are always reported with a margin, value minus bound.

#include <hypergroup/spectrum.hpp>

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace hypergroup {

template <class M>
struct InequalityCheck {
  std::string claim;
  bool strict = true;
  std::size_t checked = 0;
  std::optional<M> worst_margin;
  std::optional<std::size_t> witness;  // index with the smallest margin
  std::optional<std::size_t> first_failure;
  std::size_t failures = 0;

  InequalityCheck() = default;
  InequalityCheck(std::string c, bool s) : claim(std::move(c)), strict(s) {}

  bool pass() const { return !first_failure.has_value(); }

  /// Returns true when this margin became the worst one.
  bool record(std::size_t idx, const M& margin) { return record(idx, margin, strict ? margin > 0 : margin >= 0); }

  /// For callers that decide the inequality exactly while the margin is only approximate.
  bool record(std::size_t idx, const M& margin, bool ok) {
    ++checked;
    if (!ok) {
      ++failures;
      if (!first_failure) first_failure = idx;
    }
    if (!worst_margin || margin < *worst_margin) {
      worst_margin = margin;
      witness = idx;
      return true;
    }
    return false;
  }
};

// ---------------------------------------------------------------------------
// chain sequences

template <class T>
struct ChainSequenceProbe {
  std::function<T(std::size_t)> lambda;                    // Lambda(n), n >= 1
  std::optional<std::function<T(std::size_t)>> parameters;  // a known parameter sequence p(n), n >= 0
  std::string label;

  /// First n in [1,N] with Lambda(n) != p(n)(1 - p(n-1)), exact compare in rational mode.
  std::optional<std::size_t> check_parameters(std::size_t N) const {
    if (!parameters) return std::nullopt;
    for (std::size_t n = 1; n <= N; ++n) {
      const T lhs = lambda(n), rhs = (*parameters)(n) * (1 - (*parameters)(n - 1));
      if constexpr (is_exact_v<T>) {
        if (lhs != rhs) return n;
      } else {
        if (abs_of(T(lhs - rhs)) > 16 * epsilon_of(lhs)) return n;
      }
    }
    return std::nullopt;
  }
};

template <class T>
struct ParameterSequence {
  std::vector<T> values;
  bool certified = true;                // stayed inside (0,1) on the scanned range
  std::optional<std::size_t> failure;  // first n where the sequence left (0,1)
  std::optional<T> failure_value;
  std::size_t horizon = 0;  // maximal parameters: horizon used
  bool converged = true;     // maximal parameters: Cauchy criterion met
  std::optional<T> cauchy_gap;        // maximal parameters: last difference between horizons
  std::optional<bool> nonincreasing;  // maximal parameters, when Lambda is nondecreasing, up to 2 cauchy_gap
  std::optional<bool> increasing;     // minimal parameters, when Lambda is nondecreasing
};

/// m(0) = 0, m(n) = Lambda(n)/(1 - m(n-1)).
template <class T>
ParameterSequence<T> minimal_parameters(const ChainSequenceProbe<T>& probe, std::size_t N) {
  ParameterSequence<T> out;
  out.values.push_back(T(0));
  for (std::size_t n = 1; n <= N; ++n) {
    const T m = probe.lambda(n) / (1 - out.values.back());
    if (!(m > 0 && m < 1)) {
      out.certified = false;
      out.failure = n;
      out.failure_value = m;
      break;
    }
    out.values.push_back(m);
  }
  bool lam_nondecreasing = true, strictly_up = true;
  for (std::size_t n = 1; n < out.values.size(); ++n) {
    if (n >= 2 && probe.lambda(n) < probe.lambda(n - 1)) lam_nondecreasing = false;
    if (!(out.values[n] > out.values[n - 1])) strictly_up = false;
  }
  if (lam_nondecreasing) out.increasing = strictly_up;
  return out;
}

/// Backward recursion M(n-1) = 1 - Lambda(n)/M(n) from M(H) = 1, doubling H
/// until successive horizons agree within tol on [0,N].
template <class T>
ParameterSequence<T> maximal_parameters(const ChainSequenceProbe<T>& probe, std::size_t N, std::size_t H,
                                        const T& tol, std::size_t max_horizon = std::size_t(1) << 20) {
  if (H < 2 * N) throw DomainError("maximal_parameters needs H >= 2N");
  if (H == 0) H = 1;
  std::vector<T> lam;  // lam[n] = Lambda(n), grown on demand
  lam.push_back(T(0));
  auto run = [&](std::size_t horizon, ParameterSequence<T>& seq) {
    while (lam.size() <= horizon) lam.push_back(probe.lambda(lam.size()));
    T M(1);
    std::vector<T> head(N + 1);
    for (std::size_t n = horizon; n > 0; --n) {
      M = 1 - lam[n] / M;
      if (!(M > 0)) {
        seq.certified = false;
        seq.failure = n - 1;
        seq.failure_value = M;
        return std::vector<T>{};
      }
      if (n - 1 <= N) head[n - 1] = M;
    }
    return head;
  };
  ParameterSequence<T> out;
  out.converged = false;
  auto prev = run(H, out);
  while (out.certified) {
    const std::size_t next_h = 2 * H;
    if (next_h > max_horizon) break;
    auto cur = run(next_h, out);
    if (!out.certified) break;
    T diff(0);
    for (std::size_t n = 0; n <= N; ++n) diff = std::max(diff, T(abs_of(T(cur[n] - prev[n]))));
    prev = std::move(cur);
    H = next_h;
    out.cauchy_gap = diff;
    if (diff < tol) {
      out.converged = true;
      break;
    }
  }
  out.horizon = H;
  out.values = std::move(prev);
  if (out.certified && !out.values.empty()) {
    bool lam_nondecreasing = true;
    for (std::size_t n = 2; n <= N; ++n)
      if (lam[n] < lam[n - 1]) lam_nondecreasing = false;
    if (lam_nondecreasing) {
      // finite-horizon iterates sit above M and may creep upward by up to the horizon error
      const T slack = out.cauchy_gap ? T(2 * *out.cauchy_gap) : T(0);
      bool ok = true;
      for (std::size_t n = 1; n <= N; ++n)
        if (out.values[n] > out.values[n - 1] + slack) ok = false;
      out.nonincreasing = ok;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Worpitzky continued fractions

template <class T>
struct CfQuote {
  T value;
  std::size_t depth = 0;
  bool premise = false;                  // all partials in (0, 1/4)
  std::optional<bool> contained;         // value in [2/3, 2], asserted only under the premise
  std::optional<real_t<T>> tail_bound;   // |value - limit| bound, under the premise
};

/// 1/(1 - a_1/(1 - a_2/(1 - ...))) truncated after a_depth, evaluated from the bottom.
template <class T>
CfQuote<T> worpitzky_cf(const std::function<T(std::size_t)>& partials, std::size_t depth) {
  using R = real_t<T>;
  CfQuote<T> q;
  q.depth = depth;
  q.premise = true;
  T w(0), kappa(0);
  for (std::size_t i = depth; i >= 1; --i) {
    const T a = partials(i);
    if (!(a > 0 && 4 * a < 1)) q.premise = false;
    if (a > kappa) kappa = a;
    w = a / (1 - w);
  }
  q.value = T(1) / (1 - w);
  if (q.premise) {
    q.contained = 3 * q.value >= 2 && q.value <= 2;
    // truncated tails stay in [0, w*] with kappa = w*(1 - w*); true tails stay in [0, 1/2]
    const R k = to_real(kappa);
    const R wstar = (1 - sqrt_real(R(1 - 4 * k))) / 2;
    q.tail_bound = pow_int(R(2 * wstar), static_cast<long>(depth)) / (1 - wstar);
  }
  return q;
}

// ---------------------------------------------------------------------------
// little q-Legendre: A_n, B_n and the ratio bound

template <class T>
struct ABQuantities {
  std::size_t n = 0, k = 0, N = 0;
  T A;  // A_n(n+k)
  T B;  // B_n(k)
  T A_margin;           // A - 4
  T B_margin;           // B - 1/(2q)
  T B_minus_inv_q;      // B - 1/q
  bool in_range = false;  // k >= N, where the bounds are claimed
  bool A_ok = true, B_ok = true;
};

/// A_n(k) = (b_{k+1} - P_1(1-q^n))(b_{k+2} - P_1(1-q^n)) / (a_{k+1} c_{k+2}).
template <class T>
T qleg_A(const CoefficientSequence<T>& cs, const T& q, std::size_t n, std::size_t k) {
  const T p1 = eval_normalized(cs, 1, T(1 - pow_int(q, static_cast<long>(n))));
  return (cs.b(k + 1) - p1) * (cs.b(k + 2) - p1) / (cs.a(k + 1) * cs.c(k + 2));
}

/// B_n(k) = (b_{n+k+1} - P_1(1-q^n)) q^k / c_{n+k+1}.
template <class T>
T qleg_B(const CoefficientSequence<T>& cs, const T& q, std::size_t n, std::size_t k) {
  const T p1 = eval_normalized(cs, 1, T(1 - pow_int(q, static_cast<long>(n))));
  return (cs.b(n + k + 1) - p1) * pow_int(q, static_cast<long>(k)) / cs.c(n + k + 1);
}

template <class T>
ABQuantities<T> ab_quantities(const T& q, std::size_t n, std::size_t k) {
  const auto cs = little_q_legendre(q);
  ABQuantities<T> r;
  r.n = n;
  r.k = k;
  r.N = qleg_N(q);
  r.A = qleg_A(*cs, q, n, n + k);
  r.B = qleg_B(*cs, q, n, k);
  r.A_margin = r.A - 4;
  r.B_margin = r.B - T(1) / (2 * q);
  r.B_minus_inv_q = r.B - T(1) / q;
  r.in_range = k >= r.N;
  if (r.in_range) {
    r.A_ok = r.A_margin > 0;
    r.B_ok = r.B_margin > 0;
  }
  return r;
}

template <class T>
struct RatioBoundReport {
  std::size_t n = 0, N = 0, k_max = 0;
  InequalityCheck<T> nonzero{"alpha_{1-q^n}(n+k) != 0", true};  // margin |alpha|
  InequalityCheck<T> ratio{"|alpha(n+k+1)/(alpha(n+k) q^{k+1})| < 4", true};
  InequalityCheck<T> envelope{"|alpha(n+N+j)| <= 4^j q^{(2N+j+1)j/2}", false};
  bool pass() const { return nonzero.pass() && ratio.pass() && envelope.pass(); }
};

/// Ratio and envelope sweep in exact arithmetic for N <= k <= k_max.
template <class T>
RatioBoundReport<T> ratio_bound_check(const T& q, std::size_t n, std::size_t k_max) {
  const auto cs = little_q_legendre(q);
  RatioBoundReport<T> rep;
  rep.n = n;
  rep.N = qleg_N(q);
  rep.k_max = k_max;
  const auto alpha = eval_sequence(*cs, n + k_max + 1, T(1 - pow_int(q, static_cast<long>(n))));
  for (std::size_t k = rep.N; k <= k_max; ++k) {
    const T a = abs_of(alpha[n + k]);
    rep.nonzero.record(k, a);
    if (a == 0) continue;
    const T ratio = abs_of(T(alpha[n + k + 1] / (alpha[n + k] * pow_int(q, static_cast<long>(k) + 1))));
    rep.ratio.record(k, T(4 - ratio));
    const std::size_t j = k - rep.N;
    const T env = pow_int(T(4), static_cast<long>(j)) * pow_int(q, static_cast<long>((2 * rep.N + j + 1) * j / 2));
    rep.envelope.record(j, T(env - a));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Pollaczek: psi recursion, chi/tau, claims A and B, Turan

template <class T>
struct PsiReport {
  std::vector<real_t<T>> psi;  // psi[0] unused
  InequalityCheck<real_t<T>> bound{"psi_n >= gamma (2ln+2lnu+2a+1)/(2ln+2lnu+2a-2l+1)", false};
  real_t<T> product_rel_error;  // max |prod psi_k - S~_n(rho)| / S~_n(rho)
};

/// gamma (2 lambda n + 2 lambda nu + 2 alpha + 1) / (2 lambda n + 2 lambda nu + 2 alpha - 2 lambda + 1).
template <class T>
real_t<T> psi_lower_bound(const TransformBundle<T>& tb, std::size_t n) {
  const T k(static_cast<long>(n));
  const T u = 2 * tb.lambda * k + 2 * tb.lambda * tb.nu + 2 * tb.alpha + 1;
  return tb.gamma * to_real(T(u / (u - 2 * tb.lambda)));
}

template <class T>
PsiReport<T> pollaczek_psi(const TransformBundle<T>& tb, std::size_t N) {
  using R = real_t<T>;
  PsiReport<T> rep;
  rep.psi.assign(N + 1, R(0));
  if (N == 0) return rep;
  rep.psi[1] = tb.rho;
  for (std::size_t n = 1; n < N; ++n) {
    const R& p = rep.psi[n];
    if (!(p > 0)) break;  // recorded below as a failure
    rep.psi[n + 1] = (tb.rho * p - to_real(tb.t(n))) / (to_real(tb.s(n)) * p);
  }
  for (std::size_t n = 1; n <= N; ++n) rep.bound.record(n, R(rep.psi[n] - psi_lower_bound(tb, n)));

  // S~_n(rho) by direct evaluation, with c~_n = t_n and a~_n = s_n
  auto rw = random_walk(RandomWalkParams<R>(to_real(tb.a), to_real(tb.b), to_real(tb.nu), true));
  const auto direct = eval_sequence(*rw, N, tb.rho);
  R prod(1), worst(0);
  for (std::size_t n = 1; n <= N; ++n) {
    prod *= rep.psi[n];
    worst = std::max(worst, R(abs_of(R(prod - direct[n])) / abs_of(direct[n])));
  }
  rep.product_rel_error = worst;
  return rep;
}

template <class R>
struct ChiTauReport {
  std::vector<R> chi_tilde, chi;  // index 0 unused
  std::vector<R> r;               // r_n = S_n(omega)/S~_n(omega), r[0] = 1
  InequalityCheck<R> chi_le{"chi_n <= chi~_n", false};
  InequalityCheck<R> chi_tilde_increasing{"chi~_{n+1} - chi~_n > 0", true};
  R identity_residual;  // max |chi_n(1-chi_{n-1}) - lambda_n/omega^2| over both families, n >= 2
  R chi1_residual;      // |chi~_1 - c~_1/omega^2|
  R tau_estimate;       // r_N
  R cauchy_gap;         // |r_N - r_{N/2}|
};

/// chi~, chi and r_n for the random-walk pair (a,b,nu) at omega = 2 sqrt(a)/(a+1), n <= N.
template <class T>
ChiTauReport<real_t<T>> chi_tau(const T& a, const T& b, const T& nu, std::size_t N) {
  using R = real_t<T>;
  if (N < 2) throw DomainError("chi_tau needs N >= 2");
  const RandomWalkParams<R> pt(to_real(a), to_real(b), to_real(nu), true);
  const RandomWalkParams<R> ps(to_real(a), to_real(b), to_real(nu), false);
  const auto st = random_walk(pt);
  const auto ss = random_walk(ps);
  const R omega = pt.omega();
  ChiTauReport<R> rep;

  // rho_n = sigma_n(omega)/sigma_{n-1}(omega) for the monic versions; chi_n = 1 - rho_{n+1}/omega
  auto chis = [&](const CoefficientSequence<R>& cs, std::vector<R>& chi, std::vector<R>& rho, std::vector<R>& lam) {
    chi.assign(N + 1, R(0));
    rho.assign(N + 2, R(0));
    lam.assign(N + 1, R(0));
    rho[1] = omega;
    for (std::size_t n = 1; n <= N; ++n) {
      lam[n] = cs.c(n) * (n == 1 ? R(1) : cs.a(n - 1));
      rho[n + 1] = omega - lam[n] / rho[n];
      chi[n] = 1 - rho[n + 1] / omega;
    }
  };
  std::vector<R> rho_t, rho_s, lam_t, lam_s;
  chis(*st, rep.chi_tilde, rho_t, lam_t);
  chis(*ss, rep.chi, rho_s, lam_s);

  const R w2 = omega * omega;
  rep.identity_residual = R(0);
  for (std::size_t n = 2; n <= N; ++n) {
    rep.identity_residual = std::max(
        {rep.identity_residual, R(abs_of(R(rep.chi_tilde[n] * (1 - rep.chi_tilde[n - 1]) - lam_t[n] / w2))),
         R(abs_of(R(rep.chi[n] * (1 - rep.chi[n - 1]) - lam_s[n] / w2)))});
  }
  rep.chi1_residual = abs_of(R(rep.chi_tilde[1] - st->c(1) / w2));
  for (std::size_t n = 1; n <= N; ++n) rep.chi_le.record(n, R(rep.chi_tilde[n] - rep.chi[n]));
  for (std::size_t n = 1; n < N; ++n) rep.chi_tilde_increasing.record(n, R(rep.chi_tilde[n + 1] - rep.chi_tilde[n]));

  // S_n(omega) = sigma_n(omega)/sigma_n(1) and sigma_n(1) = prod_{k<n} a_k
  rep.r.assign(N + 1, R(1));
  R r(1);
  for (std::size_t n = 1; n <= N; ++n) {
    r *= (rho_s[n] / rho_t[n]) * (st->a(n - 1) / ss->a(n - 1));
    rep.r[n] = r;
  }
  rep.tau_estimate = rep.r[N];
  rep.cauchy_gap = abs_of(R(rep.r[N] - rep.r[N / 2]));
  return rep;
}

template <class T>
struct ClaimsReport {
  bool transform_region = false;  // 0 < lambda < alpha + 1/2
  bool case1_region = false;      // lambda >= threshold
  real_t<T> case1_threshold;
  unsigned precision_used = 0;
  bool escalated = false;
  bool indeterminate = false;
  InequalityCheck<real_t<T>> claim_a{"a^n |S'_{2n+1}(0)| <= 2n+1", false};
  InequalityCheck<real_t<T>> even_derivative_zero{"S'_{2n}(0) = 0", false};  // margin -|S'_{2n}(0)|
  InequalityCheck<real_t<T>> claim_b{"S~_n(rho) >= gamma^n (2ln+2lnu+2a+1)/(2lnu+2a+1)", false};
  InequalityCheck<T> case1{"1/4 - c_n a_{n-1} >= 0", false};
};

/// -alpha - nu - 1 + sqrt(4(nu+1)(2alpha+nu+1) + 1)/2.
template <class T>
real_t<T> case1_threshold(const PollaczekParams<T>& p) {
  return to_real(T(-p.alpha - p.nu - 1)) +
         sqrt_real(to_real(T(4 * (p.nu + 1) * (2 * p.alpha + p.nu + 1) + 1))) / 2;
}

namespace detail {

template <class T>
void claims_ab_at_precision(const PollaczekParams<T>& p, std::size_t NA, std::size_t NB, ClaimsReport<T>& rep) {
  using R = real_t<T>;
  const auto tb = transform_params(p.alpha, p.lambda, p.nu);
  const R a = to_real(tb.a);
  auto s = random_walk(RandomWalkParams<R>(a, to_real(tb.b), to_real(tb.nu), false));
  const auto d = eval_derivative_sequence(*s, 2 * NA + 1, R(0));
  rep.claim_a = {"a^n |S'_{2n+1}(0)| <= 2n+1", false};
  rep.even_derivative_zero = {"S'_{2n}(0) = 0", false};
  R an(1);
  for (std::size_t n = 0; n <= NA; ++n) {
    rep.claim_a.record(n, R(R(2 * n + 1) - an * abs_of(d[2 * n + 1])));
    rep.even_derivative_zero.record(n, R(-abs_of(d[2 * n])));
    an *= a;
  }
  auto st = random_walk(RandomWalkParams<R>(a, to_real(tb.b), to_real(tb.nu), true));
  const auto v = eval_sequence(*st, NB, tb.rho);
  rep.claim_b = {"S~_n(rho) >= gamma^n (2ln+2lnu+2a+1)/(2lnu+2a+1)", false};
  const R base = to_real(T(2 * p.lambda * p.nu + 2 * p.alpha + 1));
  R gn(1);
  for (std::size_t n = 0; n <= NB; ++n) {
    const R bound = gn * to_real(T(2 * p.lambda * T(static_cast<long>(n)) + 2 * p.lambda * p.nu + 2 * p.alpha + 1)) / base;
    rep.claim_b.record(n, R(v[n] - bound));
    gn *= tb.gamma;
  }
}

template <class R>
bool near_noise(const InequalityCheck<R>& c, const R& floor) {
  return c.worst_margin && *c.worst_margin != 0 && abs_of(*c.worst_margin) < floor;
}

}  // namespace detail

/// Claims A and B (transform region) and the Case-1 coefficient bound.
template <class T>
ClaimsReport<T> pollaczek_claims_ab(const PollaczekParams<T>& p, std::size_t NA, std::size_t NB, std::size_t NC,
                                    unsigned bits = 256, unsigned max_bits = 1024) {
  using R = real_t<T>;
  ClaimsReport<T> rep;
  PrecisionGuard guard(bits);
  rep.case1_threshold = case1_threshold(p);
  rep.case1_region = to_real(p.lambda) >= rep.case1_threshold;
  rep.transform_region = p.lambda > 0 && p.lambda < p.alpha + T(1) / 2;
  if (rep.case1_region) {
    auto cs = assoc_pollaczek(p);
    for (std::size_t n = 1; n <= NC; ++n) rep.case1.record(n, T(T(1) / 4 - cs->c(n) * cs->a(n - 1)));
  }
  rep.precision_used = bits;
  if (!rep.transform_region) return rep;
  for (unsigned b = bits;; b *= 2) {
    PrecisionGuard inner(b);
    rep.precision_used = b;
    detail::claims_ab_at_precision(p, NA, NB, rep);
    const R floor = mp::ldexp(R(1), -64);
    const bool noisy = detail::near_noise(rep.claim_a, floor) || detail::near_noise(rep.claim_b, floor);
    if (!noisy) break;
    rep.escalated = true;
    if (2 * b > max_bits) {
      rep.indeterminate = true;
      break;
    }
  }
  return rep;
}

/// Whether c < (1 - sqrt(d))/2, decided exactly for rationals: 1 - 2c > 0 and (1 - 2c)^2 > d.
template <class T>
bool below_half_one_minus_sqrt(const T& c, const T& d) {
  const T u = 1 - 2 * c;
  if constexpr (is_exact_v<T>) {
    return u > 0 && u * u > d;
  } else {
    return c < (1 - sqrt_real(d)) / 2;
  }
}

/// c_n < (1 - sqrt(max(0, 1 - 4 phi(n+1))))/2 for 0 <= n <= N; margin is bound minus c_n.
template <class T>
InequalityCheck<real_t<T>> corollary_c_bound(const PollaczekParams<T>& p, std::size_t N) {
  using R = real_t<T>;
  InequalityCheck<R> rep("c_n < (1 - sqrt(max(0, 1-4phi(n+1))))/2", true);
  auto cs = assoc_pollaczek(p);
  for (std::size_t n = 0; n <= N; ++n) {
    T d = 1 - 4 * p.phi(T(static_cast<long>(n) + 1));
    if (d < 0) d = 0;
    const R bound = (1 - sqrt_real(to_real(d))) / 2;
    rep.record(n, R(bound - to_real(cs->c(n))), below_half_one_minus_sqrt(cs->c(n), d));
  }
  return rep;
}

/// Whether c < iota(n) = (1 - sqrt(8 lambda n + p^2)/(2n + p))/2 with p = 2alpha + 2lambda + 1,
/// decided exactly for rationals.
template <class T>
bool below_iota(const PollaczekParams<T>& p, std::size_t n, const T& c) {
  const T k(static_cast<long>(n));
  const T p1 = 2 * p.alpha + 2 * p.lambda + 1;
  const T D = 8 * p.lambda * k + p1 * p1;
  const T den = 2 * k + p1;
  if constexpr (is_exact_v<T>) {
    const T u = 1 - 2 * c;
    return u > 0 && u * u * den * den > D;
  } else {
    return c < p.iota(k);
  }
}

/// Turan expression P_n(x)^2 - P_{n+1}(x) P_{n-1}(x) on the grid x = -1 + j/den, 1 <= n <= N.
/// Nonnegativity everywhere; strict positivity at interior points.
template <class T>
struct TuranReport {
  InequalityCheck<T> nonnegative{"P_n^2 - P_{n+1}P_{n-1} >= 0 on [-1,1]", false};
  InequalityCheck<T> interior_positive{"P_n^2 - P_{n+1}P_{n-1} > 0 on (-1,1)", true};
  std::optional<T> worst_x;  // grid point of the interior witness
  bool pass() const { return nonnegative.pass() && interior_positive.pass(); }
};

template <class T>
TuranReport<T> turan_check(const CoefficientSequence<T>& cs, std::size_t N, long den = 128) {
  TuranReport<T> rep;
  for (long j = 0; j <= 2 * den; ++j) {
    const T x = T(-1) + T(j) / T(den);
    const auto v = eval_sequence(cs, N + 1, x);
    const bool interior = j > 0 && j < 2 * den;
    for (std::size_t n = 1; n <= N; ++n) {
      const T t = v[n] * v[n] - v[n + 1] * v[n - 1];
      rep.nonnegative.record(n, t);
      if (interior && rep.interior_positive.record(n, t)) rep.worst_x = x;
    }
  }
  return rep;
}

/// (L_n(x)/L_n(0))^2 - (L_{n+1}(x)/L_{n+1}(0)) (L_{n-1}(x)/L_{n-1}(0)) for Laguerre L^{(2alpha)}, 1 <= n <= N.
template <class T>
InequalityCheck<T> laguerre_turan(const T& two_alpha, const T& x, std::size_t N, bool strict) {
  InequalityCheck<T> rep(strict ? "normalized Laguerre Turan > 0" : "normalized Laguerre Turan >= 0", strict);
  std::vector<T> v(N + 2);
  // L_n(0) = (2alpha+1)_n / n!
  T l0(1);
  for (std::size_t n = 0; n <= N + 1; ++n) {
    v[n] = laguerre_eval(n, x, two_alpha, T(0)) / l0;
    l0 = l0 * (two_alpha + T(static_cast<long>(n)) + 1) / T(static_cast<long>(n) + 1);
  }
  for (std::size_t n = 1; n <= N; ++n) rep.record(n, T(v[n] * v[n] - v[n + 1] * v[n - 1]));
  return rep;
}

}  // namespace hypergroup
