#pragma once

// Linearization coefficients g(m,n;k), Haar weights and the l^1(h) operations
// built on them: translation, convolution, norms, kappa_n, property-(P) scans.

#include <hypergroup/families.hpp>

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <ostream>
#include <shared_mutex>
#include <string>
#include <tuple>
#include <vector>

namespace hypergroup {

/// g(m,n;k) for k in [lo, lo + values.size()).
template <class T>
struct LinearizationRow {
  std::size_t lo = 0;
  std::vector<T> values;

  std::size_t hi() const { return lo + values.size() - 1; }
  T at(std::size_t k) const {
    if (k < lo || k > hi()) return T(0);
    return values[k - lo];
  }
  T sum() const {
    T s(0);
    for (const auto& v : values) s += v;
    return s;
  }
};

/// Finitely supported function on N_0. Only nonzero values are stored.
template <class T>
class HSequence {
 public:
  HSequence() = default;

  static HSequence delta(std::size_t n, const T& value = T(1)) {
    HSequence f;
    f.set(n, value);
    return f;
  }

  void set(std::size_t k, const T& v) {
    if (v == 0) values_.erase(k); else values_[k] = v;
  }
  void add(std::size_t k, const T& v) { set(k, T(get(k) + v)); }

  T get(std::size_t k) const {
    auto it = values_.find(k);
    return it == values_.end() ? T(0) : it->second;
  }
  T operator()(std::size_t k) const { return get(k); }

  bool empty() const { return values_.empty(); }
  std::size_t min_support() const { return values_.begin()->first; }
  std::size_t max_support() const { return values_.rbegin()->first; }
  std::vector<std::size_t> support() const {
    std::vector<std::size_t> out;
    for (const auto& [k, v] : values_) out.push_back(k);
    return out;
  }
  const std::map<std::size_t, T>& values() const { return values_; }

  HSequence& operator+=(const HSequence& o) {
    for (const auto& [k, v] : o.values_) add(k, v);
    return *this;
  }
  HSequence& operator-=(const HSequence& o) {
    for (const auto& [k, v] : o.values_) add(k, T(-v));
    return *this;
  }
  HSequence& operator*=(const T& s) {
    if (s == 0) { values_.clear(); return *this; }
    for (auto& [k, v] : values_) v *= s;
    return *this;
  }
  friend HSequence operator+(HSequence a, const HSequence& b) { return a += b; }
  friend HSequence operator-(HSequence a, const HSequence& b) { return a -= b; }
  friend HSequence operator*(HSequence a, const T& s) { return a *= s; }
  friend bool operator==(const HSequence& a, const HSequence& b) { return a.values_ == b.values_; }

 private:
  std::map<std::size_t, T> values_;
};

template <class T>
class LinearizationTable {
 public:
  explicit LinearizationTable(SequencePtr<T> cs, bool debug = false) : cs_(std::move(cs)), debug_(debug) {}

  const CoefficientSequence<T>& sequence() const { return *cs_; }
  SequencePtr<T> sequence_ptr() const { return cs_; }
  bool debug() const { return debug_; }

  /// Expansion of P_m P_n in the P-basis.
  const LinearizationRow<T>& linearize(std::size_t m, std::size_t n) const {
    const std::size_t lo = std::min(m, n), hi = std::max(m, n);
    {
      std::shared_lock lock(mutex_);
      auto it = rows_.find({lo, hi});
      if (it != rows_.end()) return it->second;
    }
    std::unique_lock lock(mutex_);
    return build_locked(lo, hi);
  }

  T g(std::size_t m, std::size_t n, std::size_t k) const { return linearize(m, n).at(k); }

  /// Haar weight by h(0)=1, h(1)=1/c_1, h(n+1)=a_n h(n)/c_{n+1}.
  T haar(std::size_t n) const {
    T value;
    {
      std::unique_lock lock(haar_mutex_);
      if (h_.empty()) h_.push_back(T(1));
      while (h_.size() <= n) {
        const std::size_t k = h_.size() - 1;
        if (k == 0) h_.push_back(T(1) / cs_->c(1));
        else h_.push_back(cs_->a(k) / cs_->c(k + 1) * h_[k]);
      }
      value = h_[n];
    }
    if (debug_) {
      const T check = value * g(n, n, 0);
      if constexpr (is_exact_v<T>) {
        if (check != 1) throw InternalError("h(n) g(n,n;0) != 1 at n=" + std::to_string(n));
      } else {
        if (abs_of(T(check - 1)) > mp::ldexp(T(1), 20) * epsilon_of(check)) {
          throw InternalError("h(n) g(n,n;0) deviates from 1 at n=" + std::to_string(n));
        }
      }
    }
    return value;
  }

  /// 1/g(n,n;0), the defining form of the Haar weight.
  T haar_from_linearization(std::size_t n) const { return T(1) / g(n, n, 0); }

 private:
  using Key = std::pair<std::size_t, std::size_t>;

  // Multiplication by P_1 in the P-basis, applied to a dense row.
  LinearizationRow<T> times_p1(const LinearizationRow<T>& r) const {
    LinearizationRow<T> out;
    out.lo = r.lo == 0 ? 0 : r.lo - 1;
    out.values.assign(r.hi() + 2 - out.lo, T(0));
    for (std::size_t i = 0; i < r.values.size(); ++i) {
      const T& v = r.values[i];
      if (v == 0) continue;
      const std::size_t k = r.lo + i;
      if (k == 0) {
        out.values[1 - out.lo] += v;
        continue;
      }
      const auto& e = cs_->at(k);
      out.values[k - 1 - out.lo] += e.c * v;
      out.values[k - out.lo] += e.b * v;
      out.values[k + 1 - out.lo] += e.a * v;
    }
    return out;
  }

  static void axpy(LinearizationRow<T>& y, const T& s, const LinearizationRow<T>& x) {
    for (std::size_t i = 0; i < x.values.size(); ++i) {
      const std::size_t k = x.lo + i;
      if (k < y.lo || k > y.hi()) {
        if (x.values[i] != 0) throw InternalError("linearization row support mismatch");
        continue;
      }
      y.values[k - y.lo] += s * x.values[i];
    }
  }

  static void trim(LinearizationRow<T>& r, std::size_t lo, std::size_t hi) {
    std::vector<T> v(r.values.begin() + static_cast<std::ptrdiff_t>(lo - r.lo),
                     r.values.begin() + static_cast<std::ptrdiff_t>(hi - r.lo + 1));
    r.values = std::move(v);
    r.lo = lo;
  }

  const LinearizationRow<T>& build_locked(std::size_t m, std::size_t n) const {
    auto found = rows_.find({m, n});
    if (found != rows_.end()) return found->second;
    // g(0,n) = delta_n; g(1,n) = P_1 delta_n; then the three-term step in m.
    std::size_t start = 0;
    while (start + 1 <= m && rows_.count({start + 1, n})) ++start;
    if (!rows_.count({0, n})) {
      LinearizationRow<T> unit;
      unit.lo = n;
      unit.values = {T(1)};
      rows_.emplace(Key{0, n}, std::move(unit));
    }
    for (std::size_t j = start; j < m; ++j) {
      const auto& cur = rows_.at({j, n});
      LinearizationRow<T> next = times_p1(cur);
      if (j >= 1) {
        const auto& e = cs_->at(j);
        axpy(next, T(-e.b), cur);
        axpy(next, T(-e.c), rows_.at({j - 1, n}));
        for (auto& v : next.values) v /= e.a;
      }
      trim(next, n - (j + 1), n + j + 1);
      rows_.emplace(Key{j + 1, n}, std::move(next));
    }
    return rows_.at({m, n});
  }

  SequencePtr<T> cs_;
  bool debug_;
  mutable std::shared_mutex mutex_;
  mutable std::map<Key, LinearizationRow<T>> rows_;
  mutable std::mutex haar_mutex_;
  mutable std::deque<T> h_;
};

/// epsilon_n = delta_n / h(n)
template <class T>
HSequence<T> epsilon(const LinearizationTable<T>& table, std::size_t n) {
  return HSequence<T>::delta(n, T(T(1) / table.haar(n)));
}

template <class T>
HSequence<T> translate(const LinearizationTable<T>& table, const HSequence<T>& f, std::size_t n) {
  HSequence<T> out;
  if (f.empty()) return out;
  const std::size_t lo = f.min_support() > n ? f.min_support() - n : 0;
  const std::size_t hi = f.max_support() + n;
  for (std::size_t m = lo; m <= hi; ++m) {
    const auto& row = table.linearize(m, n);
    T s(0);
    for (const auto& [k, v] : f.values()) s += row.at(k) * v;
    out.set(m, s);
  }
  return out;
}

template <class T>
struct Norms {
  T l1;
  T l2sq;
  T linf;
};

template <class T>
Norms<T> norms(const LinearizationTable<T>& table, const HSequence<T>& f) {
  Norms<T> out{T(0), T(0), T(0)};
  for (const auto& [k, v] : f.values()) {
    const T a = abs_of(v);
    const T h = table.haar(k);
    out.l1 += a * h;
    out.l2sq += a * a * h;
    if (a > out.linf) out.linf = a;
  }
  return out;
}

/// (f*g)(n) = sum_k (T_n f)(k) g(k) h(k)
template <class T>
HSequence<T> convolve(const LinearizationTable<T>& table, const HSequence<T>& f, const HSequence<T>& g) {
  HSequence<T> out;
  if (f.empty() || g.empty()) return out;
  const std::size_t hi = f.max_support() + g.max_support();
  for (std::size_t n = 0; n <= hi; ++n) {
    T s(0);
    for (const auto& [k, gv] : g.values()) {
      // (T_n f)(k) = sum_j g(k,n;j) f(j)
      const auto& row = table.linearize(k, n);
      T tf(0);
      for (const auto& [j, fv] : f.values()) tf += row.at(j) * fv;
      if (tf != 0) s += tf * gv * table.haar(k);
    }
    out.set(n, s);
  }
  if (table.debug()) {
    const auto nf = norms(table, f), ng = norms(table, g), nc = norms(table, out);
    bool ok;
    if constexpr (is_exact_v<T>) ok = nc.l1 <= nf.l1 * ng.l1;
    else ok = nc.l1 <= nf.l1 * ng.l1 * (1 + mp::ldexp(T(1), 20) * epsilon_of(nc.l1));
    if (!ok) throw InternalError("convolution violates ||f*g||_1 <= ||f||_1 ||g||_1");
  }
  return out;
}

/// Monomial coefficients of P_0..P_n (index = power of x).
template <class T>
std::vector<std::vector<T>> monomial_coefficients(const CoefficientSequence<T>& cs, std::size_t n) {
  std::vector<std::vector<T>> p;
  p.push_back({T(1)});
  if (n == 0) return p;
  const T a0 = cs.a(0), b0 = cs.b(0);
  p.push_back({T(-b0 / a0), T(T(1) / a0)});
  for (std::size_t k = 1; k < n; ++k) {
    // a_k P_{k+1} = (P_1 - b_k) P_k - c_k P_{k-1}
    const auto& e = cs.at(k);
    std::vector<T> next(k + 2, T(0));
    for (std::size_t i = 0; i < p[k].size(); ++i) {
      const T& v = p[k][i];
      next[i + 1] += v / a0;
      next[i] += (-b0 / a0 - e.b) * v;
    }
    for (std::size_t i = 0; i < p[k - 1].size(); ++i) next[i] -= e.c * p[k - 1][i];
    for (auto& v : next) v /= e.a;
    p.push_back(std::move(next));
  }
  return p;
}

/// kappa_n with P_n' = sum_{k<n} kappa_n(k) P_k h(k).
template <class T>
HSequence<T> kappa(const LinearizationTable<T>& table, std::size_t n) {
  HSequence<T> out;
  if (n == 0) return out;
  const auto p = monomial_coefficients(table.sequence(), n);
  std::vector<T> d(n, T(0));
  for (std::size_t i = 1; i <= n; ++i) d[i - 1] = p[n][i] * T(static_cast<long>(i));
  for (std::size_t deg = n; deg-- > 0;) {
    const T coef = d[deg] / p[deg][deg];
    if (coef == 0) continue;
    for (std::size_t i = 0; i <= deg; ++i) d[i] -= coef * p[deg][i];
    out.set(deg, T(coef / table.haar(deg)));
  }
  return out;
}

struct Witness {
  std::size_t m = 0, n = 0, k = 0;
};

template <class T>
struct PropertyPReport {
  std::size_t N = 0;
  T min_value;
  Witness min_witness;
  std::optional<Witness> first_violation;
  T max_sum_residual;
  bool sum_residual_ok = true;
  bool szwarc_premise = false;
  std::string szwarc_detail;
  bool point_derivation_premise = false;
  std::string point_derivation_detail;

  bool has_violation() const { return first_violation.has_value(); }
};

/// Scans all m <= n <= N; also reports the nondecreasing-c premise and the
/// c_n a_{n-1} <= 1/4 premise on [1, N].
template <class T>
PropertyPReport<T> property_p_check(const LinearizationTable<T>& table, std::size_t N) {
  if (N < 1) throw DomainError("property (P) scan needs N >= 1");
  const auto& cs = table.sequence();
  PropertyPReport<T> rep;
  rep.N = N;
  rep.min_value = T(1);
  rep.max_sum_residual = T(0);
  for (std::size_t n = 0; n <= N; ++n) {
    for (std::size_t m = 0; m <= n; ++m) {
      const auto& row = table.linearize(m, n);
      for (std::size_t i = 0; i < row.values.size(); ++i) {
        const T& v = row.values[i];
        const std::size_t k = row.lo + i;
        if (v < rep.min_value) {
          rep.min_value = v;
          rep.min_witness = {m, n, k};
        }
        if (v < 0 && !rep.first_violation) rep.first_violation = Witness{m, n, k};
      }
      const T res = abs_of(T(row.sum() - 1));
      if (res > rep.max_sum_residual) rep.max_sum_residual = res;
    }
  }
  if constexpr (is_exact_v<T>) {
    rep.sum_residual_ok = rep.max_sum_residual == 0;
  } else {
    const int p = static_cast<int>(precision_bits(rep.max_sum_residual));
    rep.sum_residual_ok = rep.max_sum_residual <= mp::ldexp(T(1), -(p - 10));
  }

  bool b_zero = true, c_monotone = true, c_half = true, pd = true;
  std::string why;
  for (std::size_t n = 0; n <= N; ++n) {
    if (cs.b(n) != 0 && b_zero) {
      b_zero = false;
      why += "b(" + std::to_string(n) + ") != 0; ";
    }
  }
  for (std::size_t n = 1; n <= N; ++n) {
    if (n >= 2 && cs.c(n) < cs.c(n - 1) && c_monotone) {
      c_monotone = false;
      why += "c decreases at n=" + std::to_string(n) + "; ";
    }
    if (cs.c(n) * 2 > 1 && c_half) {
      c_half = false;
      why += "c(" + std::to_string(n) + ") > 1/2; ";
    }
  }
  rep.szwarc_premise = b_zero && c_monotone && c_half;
  rep.szwarc_detail = rep.szwarc_premise ? "b = 0, c nondecreasing and <= 1/2 on [1,N]" : why;

  std::string pd_why;
  if (!b_zero) pd_why = "b is not identically 0; ";
  for (std::size_t n = 1; n <= N && pd; ++n) {
    if (cs.c(n) * cs.a(n - 1) * 4 > 1) {
      pd = false;
      pd_why += "c_n a_{n-1} > 1/4 at n=" + std::to_string(n);
    }
  }
  rep.point_derivation_premise = b_zero && pd;
  rep.point_derivation_detail = rep.point_derivation_premise
                                    ? "premise holds on [1,N]; each x in (-1,1) admits a nonzero bounded point derivation"
                                    : pd_why;
  return rep;
}

/// Closed form h(n) = q^{-n} (1 - q^{2n+1}) / (1 - q) for little q-Legendre.
template <class T>
T haar_qleg_closed(const T& q, std::size_t n) {
  const long k = static_cast<long>(n);
  return pow_int(q, -k) * (T(1) - pow_int(q, 2 * k + 1)) / (T(1) - q);
}

/// Rising factorial (x)_n.
template <class T>
T pochhammer(const T& x, std::size_t n) {
  T out(1);
  for (std::size_t i = 0; i < n; ++i) out *= x + T(static_cast<long>(i));
  return out;
}

/// Closed-form Haar weight for the associated Pollaczek family (Laguerre form).
template <class T>
T haar_pollaczek_closed(const PollaczekParams<T>& p, std::size_t n) {
  const T k(static_cast<long>(n));
  const T l = laguerre_eval(n, T(-2 * p.lambda), T(2 * p.alpha), p.nu);
  return (2 * k + 2 * p.nu + 2 * p.alpha + 2 * p.lambda + 1) * pochhammer(T(p.nu + 1), n) /
         ((2 * p.alpha + 2 * p.lambda + 2 * p.nu + 1) * pochhammer(T(2 * p.alpha + p.nu + 1), n)) * l * l;
}

template <class T>
struct PartialSumIdentity {
  T lhs;
  T rhs;
  T bound;   // h(n)/(1-q)
  T margin;  // bound - lhs
};

/// sum_{k<=n} h(k) against (1/(1-q)) (1-q^{n+1})^2/(1-q^{2n+1}) h(n).
template <class T>
PartialSumIdentity<T> haar_partial_sum_identity(const T& q, std::size_t n) {
  LinearizationTable<T> table(little_q_legendre(q));
  T lhs(0);
  for (std::size_t k = 0; k <= n; ++k) lhs += table.haar(k);
  const long e = static_cast<long>(n);
  const T hn = table.haar(n);
  const T one(1);
  const T qn1 = pow_int(q, e + 1);
  const T rhs = one / (one - q) * (one - qn1) * (one - qn1) / (one - pow_int(q, 2 * e + 1)) * hn;
  const T bound = hn / (one - q);
  return {lhs, rhs, bound, T(bound - lhs)};
}

// CSV export ----------------------------------------------------------------

template <class T>
void write_linearization_csv(std::ostream& os, const LinearizationTable<T>& table, std::size_t m, std::size_t n,
                             bool header = true) {
  const auto& row = table.linearize(m, n);
  if constexpr (is_exact_v<T>) {
    if (header) os << "m,n,k,g_num,g_den\n";
    for (std::size_t i = 0; i < row.values.size(); ++i) {
      const T& v = row.values[i];
      os << m << ',' << n << ',' << row.lo + i << ',' << mp::numerator(v).str() << ',' << mp::denominator(v).str() << '\n';
    }
  } else {
    if (header) os << "m,n,k,g_decimal\n";
    for (std::size_t i = 0; i < row.values.size(); ++i) {
      os << m << ',' << n << ',' << row.lo + i << ',' << to_string(row.values[i]) << '\n';
    }
  }
}

template <class T>
void write_haar_csv(std::ostream& os, const LinearizationTable<T>& table, std::size_t N) {
  if constexpr (is_exact_v<T>) {
    os << "n,h_num,h_den\n";
    for (std::size_t n = 0; n <= N; ++n) {
      const T h = table.haar(n);
      os << n << ',' << mp::numerator(h).str() << ',' << mp::denominator(h).str() << '\n';
    }
  } else {
    os << "n,h_decimal\n";
    for (std::size_t n = 0; n <= N; ++n) os << n << ',' << to_string(table.haar(n)) << '\n';
  }
}

}  // namespace hypergroup
