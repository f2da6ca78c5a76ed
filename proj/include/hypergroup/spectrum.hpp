#pragma once

// Point evaluation of P_n in every normalization, characters, the Fourier
// transform, the discrete little q-Legendre measure and the q-series used to
// cross-check them. Truncated sums always carry a tail bound.

#include <hypergroup/hypergroup.hpp>

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace hypergroup {

enum class PolyForm { normalized, orthonormal, monic, derivative };

inline std::string to_string(PolyForm f) {
  switch (f) {
    case PolyForm::normalized: return "normalized";
    case PolyForm::orthonormal: return "orthonormal";
    case PolyForm::monic: return "monic";
    case PolyForm::derivative: return "derivative";
  }
  return "?";
}

inline PolyForm parse_poly_form(const std::string& s) {
  if (s == "normalized") return PolyForm::normalized;
  if (s == "orthonormal") return PolyForm::orthonormal;
  if (s == "monic") return PolyForm::monic;
  if (s == "derivative") return PolyForm::derivative;
  throw DomainError("unknown polynomial form '" + s + "'");
}

/// P_0(x), ..., P_N(x) by forward recurrence.
template <class T>
std::vector<T> eval_sequence(const CoefficientSequence<T>& cs, std::size_t N, const T& x) {
  std::vector<T> v;
  v.reserve(N + 1);
  v.push_back(T(1));
  if (N == 0) return v;
  const T p1 = (x - cs.b(0)) / cs.a(0);
  v.push_back(p1);
  for (std::size_t n = 1; n < N; ++n) v.push_back(((p1 - cs.b(n)) * v[n] - cs.c(n) * v[n - 1]) / cs.a(n));
  return v;
}

/// P_0'(x), ..., P_N'(x), co-recursed with the values.
template <class T>
std::vector<T> eval_derivative_sequence(const CoefficientSequence<T>& cs, std::size_t N, const T& x) {
  std::vector<T> d;
  d.reserve(N + 1);
  d.push_back(T(0));
  if (N == 0) return d;
  const T dp1 = T(1) / cs.a(0);
  const T p1 = (x - cs.b(0)) * dp1;
  d.push_back(dp1);
  T prev(1), cur = p1;
  for (std::size_t n = 1; n < N; ++n) {
    const T next = ((p1 - cs.b(n)) * cur - cs.c(n) * prev) / cs.a(n);
    d.push_back((dp1 * cur + (p1 - cs.b(n)) * d[n] - cs.c(n) * d[n - 1]) / cs.a(n));
    prev = cur;
    cur = next;
  }
  return d;
}

template <class T>
T eval_normalized(const CoefficientSequence<T>& cs, std::size_t n, const T& x) {
  return eval_sequence(cs, n, x).back();
}

template <class T>
T eval_derivative(const CoefficientSequence<T>& cs, std::size_t n, const T& x) {
  return eval_derivative_sequence(cs, n, x).back();
}

/// Monic q_n through its own recurrence.
template <class T>
T eval_monic(const CoefficientSequence<T>& cs, std::size_t n, const T& x) {
  T prev(1);
  if (n == 0) return prev;
  T cur = x - monic_shift(cs, 0);
  for (std::size_t k = 1; k < n; ++k) {
    T next = (x - monic_shift(cs, k)) * cur - monic_lambda(cs, k) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

/// Leading coefficient of P_n.
template <class T>
T leading_coefficient(const CoefficientSequence<T>& cs, std::size_t n) {
  T l(1);
  for (std::size_t k = 0; k < n; ++k) l /= cs.a(0) * (k == 0 ? T(1) : cs.a(k));
  return l;
}

template <class T>
T haar_weight(const CoefficientSequence<T>& cs, std::size_t n) {
  if (n == 0) return T(1);
  T h = T(1) / cs.c(1);
  for (std::size_t k = 1; k < n; ++k) h = h * cs.a(k) / cs.c(k + 1);
  return h;
}

template <class T>
real_t<T> eval_orthonormal(const CoefficientSequence<T>& cs, std::size_t n, const T& x) {
  return sqrt_real(to_real(haar_weight(cs, n))) * to_real(eval_normalized(cs, n, x));
}

template <class T>
Scalar eval_poly(const CoefficientSequence<T>& cs, std::size_t n, const T& x, PolyForm form) {
  switch (form) {
    case PolyForm::normalized: return Scalar(eval_normalized(cs, n, x));
    case PolyForm::orthonormal: return Scalar(eval_orthonormal(cs, n, x));
    case PolyForm::monic: return Scalar(eval_monic(cs, n, x));
    case PolyForm::derivative: return Scalar(eval_derivative(cs, n, x));
  }
  throw InternalError("unhandled polynomial form");
}

// ---------------------------------------------------------------------------
// characters

struct CharacterOptions {
  bool assert_bounded = false;  // caller asserts x in supp mu or x = 1
  bool with_derivative = false;
};

template <class T>
struct Character {
  T x;
  std::size_t K = 0;
  std::vector<T> values;
  std::optional<std::vector<T>> derivatives;
  bool bound_checked = false;
  std::optional<std::size_t> bound_violation;  // first n with |P_n(x)| > 1

  const T& operator()(std::size_t n) const {
    if (n > K) throw DomainError("character index " + std::to_string(n) + " beyond truncation " + std::to_string(K));
    return values[n];
  }
};

template <class T>
Character<T> character(const CoefficientSequence<T>& cs, const T& x, std::size_t K, CharacterOptions opt = {}) {
  Character<T> ch;
  ch.x = x;
  ch.K = K;
  ch.values = eval_sequence(cs, K, x);
  if (opt.with_derivative) ch.derivatives = eval_derivative_sequence(cs, K, x);
  if (opt.assert_bounded) {
    ch.bound_checked = true;
    T limit(1);
    if constexpr (!is_exact_v<T>) limit += mp::ldexp(T(1), 10 - static_cast<int>(precision_bits(x)));
    for (std::size_t n = 0; n <= K; ++n)
      if (abs_of(ch.values[n]) > limit) {
        ch.bound_violation = n;
        break;
      }
  }
  return ch;
}

// ---------------------------------------------------------------------------
// Fourier transform

/// f^(x) = sum_k f(k) P_k(x) h(k).
template <class T>
T fourier(const LinearizationTable<T>& table, const HSequence<T>& f, const T& x) {
  if (f.empty()) return T(0);
  const auto p = eval_sequence(table.sequence(), f.max_support(), x);
  T s(0);
  for (const auto& [k, v] : f.values()) s += v * p[k] * table.haar(k);
  return s;
}

/// |(f*g)^(x) - f^(x) g^(x)|. Debug tables throw in exact mode when it is nonzero.
template <class T>
T fourier_multiplicativity_residual(const LinearizationTable<T>& table, const HSequence<T>& f, const HSequence<T>& g,
                                    const T& x) {
  const T r = abs_of(T(fourier(table, convolve(table, f, g), x) - fourier(table, f, x) * fourier(table, g, x)));
  if constexpr (is_exact_v<T>) {
    if (table.debug() && r != 0) throw InvariantError("Fourier transform is not multiplicative");
  }
  return r;
}

// ---------------------------------------------------------------------------
// the little q-Legendre measure

template <class T>
struct Atom {
  T location;
  T mass;
};

template <class T>
struct DiscreteMeasure {
  std::vector<Atom<T>> atoms;
  T tail_bound;

  T total_mass() const {
    T s(0);
    for (const auto& a : atoms) s += a.mass;
    return s;
  }
};

/// Atoms (1 - q^m, q^m (1-q)) for m <= K; the omitted mass is q^{K+1}.
template <class T>
DiscreteMeasure<T> q_measure(const T& q, std::size_t K) {
  if (!(q > 0 && q < 1)) throw DomainError("q must lie in (0,1)");
  DiscreteMeasure<T> mu;
  mu.atoms.reserve(K + 1);
  T qm(1);
  for (std::size_t m = 0; m <= K; ++m) {
    mu.atoms.push_back({T(1 - qm), T(qm * (1 - q))});
    qm *= q;
  }
  mu.tail_bound = qm;
  return mu;
}

template <class T>
struct TruncatedValue {
  T value;
  T tail_bound;
};

/// sum_m p_n(1-q^m)^power q^m (1-q) for m <= K. Uses |P_n| <= 1 on the support for the tail.
template <class T>
TruncatedValue<T> integrate_poly_power(const T& q, std::size_t n, int power, std::size_t K) {
  if (power != 2 && power != 4) throw DomainError("power must be 2 or 4");
  const auto cs = little_q_legendre(q);
  const auto mu = q_measure(q, K);
  const T h = haar_weight(*cs, n);
  const T hp = power == 2 ? h : T(h * h);
  T s(0);
  for (const auto& atom : mu.atoms) {
    const T p = eval_normalized(*cs, n, atom.location);
    const T p2 = p * p;
    s += (power == 2 ? p2 : T(p2 * p2)) * atom.mass;
  }
  return {T(s * hp), T(hp * mu.tail_bound)};
}

/// 2phi1(q^{-n}, q^{n+1}; q; q, q(1-x)), a finite sum.
template <class T>
T q_hypergeometric_R(const T& q, std::size_t n, const T& x) {
  const T z = q * (1 - x);
  const T qmn = pow_int(q, -static_cast<long>(n)), qn1 = pow_int(q, static_cast<long>(n) + 1);
  T sum(1), term(1);
  T qk(1);  // q^k
  for (std::size_t k = 0; k < n; ++k) {
    // (a;q)_{k+1} = (a;q)_k (1 - a q^k)
    const T num = (1 - qmn * qk) * (1 - qn1 * qk);
    qk *= q;
    const T den = (1 - qk) * (1 - qk);
    term = term * num / den * z;
    sum += term;
  }
  return sum;
}

// ---------------------------------------------------------------------------
// support interval

template <class T>
struct SupportInterval {
  bool premise_ok = false;
  std::string premise_detail;
  T c_limit;  // c(N)
  T c_upper;  // 1/2
  real_t<T> endpoint;        // 2 sqrt(c(N)(1 - c(N)))
  real_t<T> endpoint_upper;  // 2 sqrt(c_upper (1 - c_upper)) = 1
};

template <class T>
SupportInterval<T> support_interval(const CoefficientSequence<T>& cs, std::size_t N) {
  if (N == 0) throw DomainError("support interval needs N >= 1");
  SupportInterval<T> s;
  std::string why;
  for (std::size_t n = 0; n <= N; ++n)
    if (cs.b(n) != 0) {
      why += "b(" + std::to_string(n) + ") != 0; ";
      break;
    }
  for (std::size_t n = 2; n <= N; ++n)
    if (cs.c(n) < cs.c(n - 1)) {
      why += "c decreases at n=" + std::to_string(n) + "; ";
      break;
    }
  s.premise_ok = why.empty();
  s.premise_detail = s.premise_ok ? "b = 0 and c nondecreasing on [1,N]" : why;
  s.c_limit = cs.c(N);
  s.c_upper = T(1) / 2;
  const auto endpoint_of = [](const T& c) { return 2 * sqrt_real(to_real(T(c * (1 - c)))); };
  s.endpoint = endpoint_of(s.c_limit);
  s.endpoint_upper = endpoint_of(s.c_upper);
  return s;
}

// ---------------------------------------------------------------------------
// q-series for lim P_n(1 - q^n)

template <class T>
struct SeriesValue {
  real_t<T> value;
  std::optional<real_t<T>> error_bound;  // absent when the omitted terms are not yet decreasing
  real_t<T> qq_infinity;
  std::size_t terms = 0;
};

/// (q;q)_inf sum_{k<terms} (-1)^k q^{k(3k+1)/2} / (q;q)_k^3.
template <class T>
SeriesValue<T> character_limit_series(const T& q, std::size_t terms) {
  using R = real_t<T>;
  if (!(q > 0 && q < 1)) throw DomainError("q must lie in (0,1)");
  const R qr = to_real(q);
  const R eps = epsilon_of(qr);
  // (q;q)_J with q^{J+1}/(1-q) below eps
  R prod(1), qj(1), prod_err;
  for (;;) {
    qj *= qr;
    prod *= 1 - qj;
    if (qj * qr / (1 - qr) < eps * eps) break;
  }
  prod_err = prod * qj * qr / (1 - qr);

  R sum(0), qqk(1);  // (q;q)_k
  auto term = [&](std::size_t k, const R& qqk_) {
    const long e = static_cast<long>(k * (3 * k + 1) / 2);
    R t = pow_int(qr, e) / (qqk_ * qqk_ * qqk_);
    return (k % 2) ? R(-t) : t;
  };
  for (std::size_t k = 0; k < terms; ++k) {
    if (k > 0) qqk *= 1 - pow_int(qr, static_cast<long>(k));
    sum += term(k, qqk);
  }
  SeriesValue<T> out;
  out.terms = terms;
  out.qq_infinity = prod;
  out.value = prod * sum;
  // |t_{k+1}/t_k| = q^{3k+2}/(1-q^{k+1})^3 decreases in k
  const R qqn = qqk * (1 - pow_int(qr, static_cast<long>(terms)));
  const R next = abs_of(term(terms, terms == 0 ? R(1) : qqn));
  const R ratio = pow_int(qr, static_cast<long>(3 * terms + 2)) / pow_int(R(1 - pow_int(qr, static_cast<long>(terms) + 1)), 3);
  if (ratio < 1) out.error_bound = prod * next / (1 - ratio) + abs_of(sum) * prod_err + 4 * eps * abs_of(out.value);
  return out;
}

// ---------------------------------------------------------------------------
// derivative growth (heuristic)

template <class T>
struct GrowthProfile {
  T max_abs;
  std::size_t argmax = 0;
  T window_max;  // over n in (N/2, N]
  bool bounded_looking = false;
  std::size_t N = 0;
  static constexpr const char* note = "heuristic: boundedness cannot be decided from finitely many terms";
};

template <class T>
GrowthProfile<T> derivative_growth(const CoefficientSequence<T>& cs, const T& x, std::size_t N) {
  if (x < -1 || x > 1) throw DomainError("x must lie in [-1,1]");
  const auto d = eval_derivative_sequence(cs, N, x);
  GrowthProfile<T> g;
  g.N = N;
  g.max_abs = T(0);
  g.window_max = T(0);
  for (std::size_t n = 0; n <= N; ++n) {
    const T a = abs_of(d[n]);
    if (a > g.max_abs) {
      g.max_abs = a;
      g.argmax = n;
    }
    if (2 * n > N && a > g.window_max) g.window_max = a;
  }
  g.bounded_looking = 2 * g.argmax <= N;
  return g;
}

// ---------------------------------------------------------------------------
// little q-Legendre character analysis

/// Smallest N >= 0 with q^{N+1} <= 1/4.
template <class T>
std::size_t qleg_N(const T& q) {
  if (!(q > 0 && q < 1)) throw DomainError("q must lie in (0,1)");
  std::size_t N = 0;
  T p = q;
  while (4 * p > 1) {
    p *= q;
    ++N;
  }
  return N;
}

/// 1/(q^n (1-q)), the squared l^2(h)-norm of the character at 1 - q^n.
template <class T>
T qleg_character_l2sq_closed(const T& q, std::size_t n) {
  return T(1) / (pow_int(q, static_cast<long>(n)) * (1 - q));
}

/// Sum of t_j for j >= j0 where t_{j+1}/t_j <= ratio(j) and ratio decreases; returns nullopt if ratio(j0) >= 1.
template <class T, class Term, class Ratio>
std::optional<T> geometric_tail(std::size_t j0, Term term, Ratio ratio) {
  const T r = ratio(j0);
  if (r >= 1) return std::nullopt;
  return T(term(j0) / (1 - r));
}

template <class T>
struct CharacterNorms {
  T q;
  std::size_t n = 0, K = 0, N = 0;
  T l1, l2sq;            // truncated at K
  std::optional<T> l1_tail, l2sq_tail;  // bounds on the omitted parts
  std::vector<T> values;  // alpha(0..K)
};

/// Truncated l^1(h) and l^2(h) norms of alpha_{1-q^n} with tails from the
/// envelope |alpha(n+N+j)| <= 4^j q^{(2N+j+1)j/2} and h(k) <= q^{-k}/(1-q).
template <class T>
CharacterNorms<T> qleg_character_norms(const T& q, std::size_t n, std::size_t K) {
  const auto cs = little_q_legendre(q);
  const std::size_t N = qleg_N(q);
  CharacterNorms<T> out;
  out.q = q;
  out.n = n;
  out.K = K;
  out.N = N;
  out.values = eval_sequence(*cs, K, T(1 - pow_int(q, static_cast<long>(n))));
  out.l1 = T(0);
  out.l2sq = T(0);
  for (std::size_t k = 0; k <= K; ++k) {
    const T h = haar_qleg_closed(q, k);
    out.l1 += abs_of(out.values[k]) * h;
    out.l2sq += out.values[k] * out.values[k] * h;
  }
  if (K >= n + N) {
    const std::size_t j0 = K - n - N + 1;
    const auto hb = [&](std::size_t j) { return pow_int(q, -static_cast<long>(n + N + j)) / (1 - q); };
    const auto env = [&](std::size_t j) {
      return T(pow_int(T(4), static_cast<long>(j)) * pow_int(q, static_cast<long>((2 * N + j + 1) * j / 2)));
    };
    out.l1_tail = geometric_tail<T>(
        j0, [&](std::size_t j) { return T(env(j) * hb(j)); },
        [&](std::size_t j) { return T(4 * pow_int(q, static_cast<long>(N + j))); });
    out.l2sq_tail = geometric_tail<T>(
        j0, [&](std::size_t j) { return T(env(j) * env(j) * hb(j)); },
        [&](std::size_t j) { return T(16 * pow_int(q, static_cast<long>(2 * N + 2 * j + 1))); });
  }
  return out;
}

/// C = q^{-N} [1/(1-q) + 1/(1-q^{2N+1}) sum_{k>=1} 4^k q^{(2N+k-1)k/2}], summed until the
/// geometric remainder is below 2^-200. Returns (partial sum, remainder bound).
template <class T>
TruncatedValue<T> theorem21_constant(const T& q) {
  const std::size_t N = qleg_N(q);
  const auto term = [&](std::size_t k) {
    return T(pow_int(T(4), static_cast<long>(k)) * pow_int(q, static_cast<long>((2 * N + k - 1) * k / 2)));
  };
  // t_{k+1}/t_k = 4 q^{N+k}
  const auto ratio = [&](std::size_t k) { return T(4 * pow_int(q, static_cast<long>(N + k))); };
  const T tiny = pow_int(T(2), -200);
  T s(0);
  std::size_t k = 1;
  std::optional<T> rem;
  for (;; ++k) {
    s += term(k);
    rem = geometric_tail<T>(k + 1, term, ratio);
    if (rem && *rem < tiny) break;
  }
  const T pre = pow_int(q, -static_cast<long>(N));
  const T f = T(1) / (1 - pow_int(q, static_cast<long>(2 * N + 1)));
  return {T(pre * (T(1) / (1 - q) + f * s)), T(pre * f * *rem)};
}

/// R(M,K) for M' = 0..M: || eps_1 - eps_0 + sum_{n<=M'} (q+1) q^n alpha_{1-q^n} / ||alpha||_2^2 ||_1
/// restricted to k <= K, with ||alpha_{1-q^n}||_2^2 = 1/(q^n(1-q)).
template <class T>
std::vector<T> idempotent_residuals(const T& q, std::size_t M, std::size_t K) {
  const auto cs = little_q_legendre(q);
  std::vector<T> h(K + 1);
  for (std::size_t k = 0; k <= K; ++k) h[k] = haar_qleg_closed(q, k);
  std::vector<T> r(K + 1, T(0));
  r[0] = T(-1);
  if (K >= 1) r[1] = T(1) / h[1];
  std::vector<T> out;
  T qn(1);
  for (std::size_t n = 0; n <= M; ++n) {
    const auto alpha = eval_sequence(*cs, K, T(1 - qn));
    const T coef = (q + 1) * qn * qn * (1 - q);
    for (std::size_t k = 0; k <= K; ++k) r[k] += coef * alpha[k];
    T R(0);
    for (std::size_t k = 0; k <= K; ++k) R += abs_of(r[k]) * h[k];
    out.push_back(R);
    qn *= q;
  }
  return out;
}

template <class T>
struct RatioProfile {
  std::vector<std::pair<std::size_t, T>> ratios;  // (k, |alpha(n+k+1)/(alpha(n+k) q^{k+1})|)
  std::vector<std::size_t> zero_indices;         // n+k with alpha(n+k) = 0, skipped
};

template <class T>
RatioProfile<T> qleg_character_ratios(const T& q, std::size_t n, std::size_t k_from, std::size_t k_to) {
  const auto cs = little_q_legendre(q);
  const auto alpha = eval_sequence(*cs, n + k_to + 1, T(1 - pow_int(q, static_cast<long>(n))));
  RatioProfile<T> out;
  for (std::size_t k = k_from; k <= k_to; ++k) {
    if (alpha[n + k] == 0) {
      out.zero_indices.push_back(n + k);
      continue;
    }
    out.ratios.emplace_back(k, abs_of(T(alpha[n + k + 1] / (alpha[n + k] * pow_int(q, static_cast<long>(k) + 1)))));
  }
  return out;
}

// ---------------------------------------------------------------------------
// CSV export

template <class T>
void write_character_csv(std::ostream& os, const Character<T>& ch) {
  os << "n,value\n";
  for (std::size_t n = 0; n <= ch.K; ++n) os << n << ',' << to_string(ch.values[n]) << '\n';
}

template <class T>
void write_measure_csv(std::ostream& os, const DiscreteMeasure<T>& mu) {
  os << "location,mass\n";
  for (const auto& a : mu.atoms) os << to_string(a.location) << ',' << to_string(a.mass) << '\n';
}

}  // namespace hypergroup
