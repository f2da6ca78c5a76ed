#pragma once

// Recurrence coefficient families and the scalar auxiliary functions attached
// to them. Every family is normalized so that P_n(1) = 1, i.e.
//   P_1 P_n = a_n P_{n+1} + b_n P_n + c_n P_{n-1},  a_n + b_n + c_n = 1.

#include <hypergroup/scalar.hpp>

#include <cstddef>
#include <deque>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <utility>
#include <vector>

namespace hypergroup {

template <class T>
struct Coeff {
  T a;
  T b;
  T c;
};

using ParamList = std::vector<std::pair<std::string, std::string>>;

/// Lazily generated, memoized (a_n, b_n, c_n). Entries are validated when they
/// are produced; a materialized prefix never changes, so references returned
/// by at() stay valid for the lifetime of the sequence.
template <class T>
class CoefficientSequence {
 public:
  /// Produces entry n; `prefix` holds entries 0..n-1.
  using Generator = std::function<Coeff<T>(std::size_t n, const std::deque<Coeff<T>>& prefix)>;

  CoefficientSequence(std::string family, ParamList params, Generator gen)
      : family_(std::move(family)), params_(std::move(params)), gen_(std::move(gen)) {}

  /// A fixed table; fully validated up front. Indices past the end are a domain error.
  static std::shared_ptr<CoefficientSequence> from_table(std::vector<Coeff<T>> table, std::string family = "table") {
    if (table.empty()) throw InvariantError("coefficient table is empty");
    auto rows = std::make_shared<std::vector<Coeff<T>>>(std::move(table));
    const std::size_t size = rows->size();
    auto seq = std::make_shared<CoefficientSequence>(
        std::move(family), ParamList{{"size", std::to_string(size)}},
        [rows](std::size_t n, const std::deque<Coeff<T>>&) -> Coeff<T> {
          if (n >= rows->size()) throw DomainError("index " + std::to_string(n) + " beyond coefficient table");
          return (*rows)[n];
        });
    seq->ensure(size - 1);
    return seq;
  }

  const Coeff<T>& at(std::size_t n) const {
    {
      std::shared_lock lock(mutex_);
      if (n < entries_.size()) return entries_[n];
    }
    std::unique_lock lock(mutex_);
    extend_locked(n);
    return entries_[n];
  }

  T a(std::size_t n) const { return at(n).a; }
  T b(std::size_t n) const { return at(n).b; }
  T c(std::size_t n) const { return at(n).c; }

  /// Materializes entries 0..n.
  void ensure(std::size_t n) const { (void)at(n); }

  std::size_t materialized() const {
    std::shared_lock lock(mutex_);
    return entries_.size();
  }

  const std::string& family() const { return family_; }
  const ParamList& params() const { return params_; }

 private:
  void extend_locked(std::size_t n) const {
    while (entries_.size() <= n) {
      const std::size_t k = entries_.size();
      Coeff<T> e = gen_(k, entries_);
      validate(k, e);
      entries_.push_back(std::move(e));
    }
  }

  static void validate(std::size_t n, const Coeff<T>& e) {
    auto fail = [n](const std::string& what) {
      throw InvariantError("coefficient invariant violated at n=" + std::to_string(n) + ": " + what);
    };
    if (n == 0) {
      if (!(e.a > 0)) fail("a(0) must be positive");
      if (!(e.b < 1)) fail("b(0) must be below 1");
      if (e.c != 0) fail("c(0) must be 0");
    } else {
      if (!(e.a > 0 && e.a < 1)) fail("a(n) must lie in (0,1)");
      if (!(e.c > 0 && e.c < 1)) fail("c(n) must lie in (0,1)");
      if constexpr (is_exact_v<T>) {
        if (!(e.b >= 0 && e.b < 1)) fail("b(n) must lie in [0,1)");
      } else {
        // b = 1 - a - c rounds to 1 once a and c drop below half an ulp.
        if (!(e.b >= 0 && e.b <= 1)) fail("b(n) must lie in [0,1)");
      }
    }
    const T sum = e.a + e.b + e.c;
    if constexpr (is_exact_v<T>) {
      if (sum != 1) fail("a+b+c = " + to_string(sum) + " != 1");
    } else {
      const T slack = 4 * epsilon_of(sum);
      if (abs_of(T(sum - 1)) > slack) fail("a+b+c differs from 1 by more than 4 ulp");
    }
  }

  std::string family_;
  ParamList params_;
  Generator gen_;
  mutable std::shared_mutex mutex_;
  mutable std::deque<Coeff<T>> entries_;
};

template <class T>
using SequencePtr = std::shared_ptr<const CoefficientSequence<T>>;

template <class T>
std::string param_text(const T& v) {
  return to_string(v);
}

// ---------------------------------------------------------------------------
// little q-Legendre

template <class T>
SequencePtr<T> little_q_legendre(const T& q) {
  if (!(q > 0 && q < 1)) throw DomainError("little q-Legendre needs 0 < q < 1");
  auto gen = [q](std::size_t n, const std::deque<Coeff<T>>&) -> Coeff<T> {
    const T one(1);
    if (n == 0) return {one / (q + one), q / (q + one), T(0)};
    const long k = static_cast<long>(n);
    const T qn = pow_int(q, k);
    const T qn1 = qn * q;
    const T q2n1 = qn * qn * q;
    const T a = qn * (one + q) * (one - qn1) / ((one - q2n1) * (one + qn1));
    const T c = qn * (one + q) * (one - qn) / ((one - q2n1) * (one + qn));
    return {a, T(one - a - c), c};
  };
  return std::make_shared<CoefficientSequence<T>>("qleg", ParamList{{"q", param_text(q)}}, gen);
}

// ---------------------------------------------------------------------------
// associated symmetric Pollaczek

template <class T>
struct PollaczekParams {
  T alpha;
  T lambda;
  T nu;

  PollaczekParams(T alpha_, T lambda_, T nu_) : alpha(std::move(alpha_)), lambda(std::move(lambda_)), nu(std::move(nu_)) {
    if (!(alpha * 2 > -1)) throw DomainError("Pollaczek parameters need alpha > -1/2");
    if (lambda < 0) throw DomainError("Pollaczek parameters need lambda >= 0");
    if (nu < 0) throw DomainError("Pollaczek parameters need nu >= 0");
  }

  PollaczekParams with_lambda(const T& l) const { return {alpha, l, nu}; }
  PollaczekParams with_nu(const T& v) const { return {alpha, lambda, v}; }

  ParamList describe() const {
    return {{"alpha", param_text(alpha)}, {"lambda", param_text(lambda)}, {"nu", param_text(nu)}};
  }

  /// (2x+2nu+2alpha+2lambda+1)(2x+2nu+2alpha+2lambda-1)
  T phi_den(const T& x) const {
    const T s = 2 * x + 2 * nu + 2 * alpha + 2 * lambda;
    return (s + 1) * (s - 1);
  }

  T phi(const T& x) const { return (x + nu) * (x + nu + 2 * alpha) / phi_den(x); }

  /// The "1 - ..." form of phi, kept separate so the two can be compared.
  T phi_alt(const T& x) const {
    const T num = (2 * alpha + 1) * (3 * x + 3 * nu + 2 * alpha + 4 * lambda - 1) +
                  4 * lambda * (2 * x + 2 * nu + lambda - 1) + (3 * x + 3 * nu) * (x + nu - 1);
    return T(1) - num / phi_den(x);
  }

  T d_squared() const {
    const T m = 2 * alpha - 2 * lambda;
    const T p = 2 * alpha + 2 * lambda;
    return (T(1) - m * m) * (T(1) - p * p);
  }

  T eta(const T& x) const {
    const T p = 2 * alpha + 2 * lambda;
    const T u = 8 * lambda * (x + nu) + p * p - 1;
    return u * u - d_squared();
  }

  T theta(const T& x) const {
    const T p = 2 * alpha + 2 * lambda;
    const T u = 8 * lambda * (x + nu / 2) + p * p - 1;
    return u * u - d_squared() - 16 * lambda * lambda * nu * nu;
  }

  T phi_prime(const T& x) const {
    if (lambda == 0) {
      const T s = 2 * x + 2 * nu + 2 * alpha;
      return (2 * alpha + 1) * (2 * alpha - 1) * s / ((s + 1) * (s + 1) * (s - 1) * (s - 1));
    }
    const T s = 2 * x + 2 * nu + 2 * alpha + 2 * lambda;
    return eta(x) / (8 * lambda * (s + 1) * (s + 1) * (s - 1) * (s - 1));
  }

  real_t<T> iota(const T& x) const {
    if (x < 0) throw DomainError("iota is defined for x >= 0");
    using R = real_t<T>;
    const T p1 = 2 * alpha + 2 * lambda + 1;
    const R root = sqrt_real(to_real(T(8 * lambda * x + p1 * p1)));
    return (R(1) - root / to_real(T(2 * x + p1))) / 2;
  }

  real_t<T> xi(const T& x) const {
    if (x < 1) throw DomainError("xi is defined for x >= 1");
    const T f = phi(x);
    if (f * 4 > 1) throw DomainError("xi requires phi(x) <= 1/4");
    using R = real_t<T>;
    return (R(1) - sqrt_real(to_real(T(1 - 4 * f)))) / 2;
  }
};

template <class T>
SequencePtr<T> assoc_pollaczek(const PollaczekParams<T>& p, std::string family = "pollaczek") {
  auto gen = [p](std::size_t n, const std::deque<Coeff<T>>& prev) -> Coeff<T> {
    if (n == 0) return {T(1), T(0), T(0)};
    const T c = p.phi(T(static_cast<long>(n))) / (T(1) - prev[n - 1].c);
    if (!(c > 0 && c < 1)) {
      throw InternalError("Pollaczek c(" + std::to_string(n) + ") left (0,1): " + to_string(c));
    }
    return {T(1 - c), T(0), c};
  };
  return std::make_shared<CoefficientSequence<T>>(std::move(family), p.describe(), gen);
}

template <class T>
SequencePtr<T> ultraspherical(const T& alpha) {
  return assoc_pollaczek(PollaczekParams<T>(alpha, T(0), T(0)), "ultraspherical");
}

/// Associated Laguerre L_n^{(2alpha,nu)}(x) by the three-term recurrence.
template <class T>
T laguerre_eval(std::size_t n, const T& x, const T& two_alpha, const T& nu) {
  T prev(1);
  if (n == 0) return prev;
  T cur = (-x + 2 * nu + two_alpha + 1) / (nu + 1);
  for (std::size_t k = 1; k < n; ++k) {
    const T kk(static_cast<long>(k));
    T next = ((-x + 2 * kk + 2 * nu + two_alpha + 1) * cur - (kk + nu + two_alpha) * prev) / (kk + nu + 1);
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

/// Memoized ratios r_n = L_{n-1}/L_n of associated Laguerre values at a fixed x.
/// Ratios stay O(1) while the values themselves grow factorially.
template <class T>
class LaguerreRatios {
 public:
  LaguerreRatios(T x, T two_alpha, T nu) : x_(std::move(x)), two_alpha_(std::move(two_alpha)), nu_(std::move(nu)) {}

  /// L_{n-1}(x) / L_n(x), n >= 1.
  const T& ratio(std::size_t n) const {
    if (n == 0) throw DomainError("Laguerre ratio is defined for n >= 1");
    std::lock_guard lock(mutex_);
    if (r_.empty()) r_.push_back((nu_ + 1) / (-x_ + 2 * nu_ + two_alpha_ + 1));
    while (r_.size() < n) {
      const T k(static_cast<long>(r_.size()));
      // L_{k+1}/L_k = [(-x+2k+2nu+2a+1) - (k+nu+2a) r_k] / (k+nu+1)
      const T next = (k + nu_ + 1) / ((-x_ + 2 * k + 2 * nu_ + two_alpha_ + 1) - (k + nu_ + two_alpha_) * r_.back());
      r_.push_back(next);
    }
    return r_[n - 1];
  }

 private:
  T x_, two_alpha_, nu_;
  mutable std::mutex mutex_;
  mutable std::deque<T> r_;
};

/// c_n through the Laguerre representation; used only as a cross-check.
template <class T>
class PollaczekLaguerreForm {
 public:
  explicit PollaczekLaguerreForm(const PollaczekParams<T>& p)
      : p_(p), ratios_(T(-2 * p.lambda), T(2 * p.alpha), p.nu) {}

  T c(std::size_t n) const {
    if (n == 0) return T(0);
    const T k(static_cast<long>(n));
    return (k + p_.nu + 2 * p_.alpha) / (2 * k + 2 * p_.nu + 2 * p_.alpha + 2 * p_.lambda + 1) * ratios_.ratio(n);
  }

 private:
  PollaczekParams<T> p_;
  LaguerreRatios<T> ratios_;
};

template <class T>
struct CriticalPoints {
  std::optional<real_t<T>> x_star;
  std::optional<real_t<T>> x_star_star;
  std::optional<real_t<T>> x0;
};

/// Stationary point of phi, zero of theta, and the crossing phi = 1/4, in the
/// band 0 < lambda < -|alpha| + 1/2.
template <class T>
CriticalPoints<T> critical_points(const PollaczekParams<T>& p) {
  using R = real_t<T>;
  const T bound = T(1) / 2 - abs_of(p.alpha);
  if (!(p.lambda > 0 && p.lambda < bound)) {
    throw DomainError("critical points need 0 < lambda < -|alpha| + 1/2");
  }
  const T s = 2 * p.alpha + 2 * p.lambda;
  const T d = p.d_squared();
  const R eight_l = to_real(T(8 * p.lambda));
  const R base = to_real(T(1 - s * s));
  CriticalPoints<T> out;
  out.x_star = R(-to_real(p.nu) + (base + sqrt_real(to_real(d))) / eight_l);
  out.x_star_star =
      R(-to_real(p.nu) / 2 + (base + sqrt_real(to_real(T(d + 16 * p.lambda * p.lambda * p.nu * p.nu)))) / eight_l);

  const R xs = *out.x_star;
  const R quarter = R(1) / 4;
  PollaczekParams<R> pr(to_real(p.alpha), to_real(p.lambda), to_real(p.nu));
  if (xs > 1 && pr.phi(R(1)) > quarter && pr.phi(xs) < quarter) {
    // phi is strictly decreasing on [1, x_*], so the bracket is monotone.
    R lo(1), hi = xs;
    const R tol = mp::ldexp(R(1), -64);
    while (hi - lo > tol) {
      const R mid = (lo + hi) / 2;
      if (pr.phi(mid) > quarter) lo = mid; else hi = mid;
    }
    out.x0 = hi;
  }
  return out;
}

// ---------------------------------------------------------------------------
// random walk families and the parameter transform

template <class T>
struct RandomWalkParams {
  T a;
  T b;
  T nu;
  bool tilde;

  RandomWalkParams(T a_, T b_, T nu_, bool tilde_) : a(std::move(a_)), b(std::move(b_)), nu(std::move(nu_)), tilde(tilde_) {
    if (!(a > 1)) throw DomainError("random walk parameters need a > 1");
    if (!(b > 0)) throw DomainError("random walk parameters need b > 0");
    if (nu < 0) throw DomainError("random walk parameters need nu >= 0");
  }

  T c_tilde(std::size_t n) const {
    if (n == 0) return T(0);
    const T k = T(static_cast<long>(n)) + nu;
    return k / ((a + 1) * k + b);
  }
  T a_tilde(std::size_t n) const { return n == 0 ? T(1) : T(1 - c_tilde(n)); }

  real_t<T> omega() const { return 2 * sqrt_real(to_real(a)) / to_real(T(a + 1)); }
};

template <class T>
SequencePtr<T> random_walk(const RandomWalkParams<T>& p) {
  auto gen = [p](std::size_t n, const std::deque<Coeff<T>>& prev) -> Coeff<T> {
    if (n == 0) return {T(1), T(0), T(0)};
    T c;
    if (p.tilde) {
      c = p.c_tilde(n);
    } else if (n == 1) {
      c = p.c_tilde(1) * (p.a * p.nu + p.b) / ((p.a + 1) * p.nu + p.b);
    } else {
      c = p.c_tilde(n) * p.a_tilde(n - 1) / (T(1) - prev[n - 1].c);
    }
    return {T(1 - c), T(0), c};
  };
  ParamList params{{"a", param_text(p.a)}, {"b", param_text(p.b)}, {"nu", param_text(p.nu)},
                   {"tilde", p.tilde ? "true" : "false"}};
  return std::make_shared<CoefficientSequence<T>>("randomwalk", std::move(params), gen);
}

/// Synthetic symmetric sequence with c_n = c for n >= 1.
template <class T>
SequencePtr<T> constant_family(const T& c) {
  if (!(c > 0 && c < 1)) throw DomainError("constant family needs 0 < c < 1");
  auto gen = [c](std::size_t n, const std::deque<Coeff<T>>&) -> Coeff<T> {
    if (n == 0) return {T(1), T(0), T(0)};
    return {T(1 - c), T(0), c};
  };
  return std::make_shared<CoefficientSequence<T>>("constant", ParamList{{"c", param_text(c)}}, gen);
}

template <class T>
struct TransformBundle {
  T alpha, lambda, nu;
  T a, b;
  real_t<T> omega, rho, gamma;

  T s(std::size_t n) const {
    const T k(static_cast<long>(n));
    return (2 * alpha + 2 * lambda + 1) * (k + nu + 2 * alpha + 1) / ((2 * alpha + 1) * (2 * k + 2 * nu + 2 * alpha + 2 * lambda + 1));
  }
  T t(std::size_t n) const {
    const T k(static_cast<long>(n));
    return (2 * alpha - 2 * lambda + 1) * (k + nu) / ((2 * alpha + 1) * (2 * k + 2 * nu + 2 * alpha + 2 * lambda + 1));
  }

  RandomWalkParams<T> random_walk_params(bool tilde) const { return {a, b, nu, tilde}; }
};

template <class T>
TransformBundle<T> transform_params(const T& alpha, const T& lambda, const T& nu = T(0)) {
  if (!(2 * alpha > -1)) throw DomainError("transform needs alpha > -1/2");
  if (!(lambda > 0 && lambda < alpha + T(1) / 2)) throw DomainError("transform needs 0 < lambda < alpha + 1/2");
  if (nu < 0) throw DomainError("transform needs nu >= 0");
  using R = real_t<T>;
  const T a = (2 * alpha + 2 * lambda + 1) / (2 * alpha - 2 * lambda + 1);
  const T b = (2 * alpha + 1) * a;
  const T ratio = 2 * lambda / (2 * alpha + 1);
  const R omega = 2 * sqrt_real(to_real(a)) / to_real(T(a + 1));
  const R rho = sqrt_real(to_real(T(1 - ratio * ratio)));
  const R gamma = sqrt_real(to_real(T((2 * alpha - 2 * lambda + 1) / (2 * alpha + 2 * lambda + 1))));
  return {alpha, lambda, nu, a, b, omega, rho, gamma};
}

// ---------------------------------------------------------------------------
// monic and orthonormal views

/// lambda_n of the monic recurrence q_{n+1} = (x - shift_n) q_n - lambda_n q_{n-1}, n >= 1.
template <class T>
T monic_lambda(const CoefficientSequence<T>& cs, std::size_t n) {
  if (n == 0) throw DomainError("monic lambda is defined for n >= 1");
  const T a0 = cs.a(0);
  if (n == 1) return a0 * a0 * cs.c(1);
  return a0 * a0 * cs.c(n) * cs.a(n - 1);
}

template <class T>
T monic_shift(const CoefficientSequence<T>& cs, std::size_t n) {
  if (n == 0) return cs.b(0);
  return cs.a(0) * cs.b(n) + cs.b(0);
}

template <class T>
struct OrthonormalEntry {
  real_t<T> diagonal;
  real_t<T> off_diagonal;  // couples n and n+1
  bool promoted;           // true when exact input was rounded to big-float
};

template <class T>
OrthonormalEntry<T> orthonormal_coefficients(const CoefficientSequence<T>& cs, std::size_t n) {
  return {to_real(monic_shift(cs, n)), sqrt_real(to_real(monic_lambda(cs, n + 1))), is_exact_v<T>};
}

}  // namespace hypergroup
