#pragma once

// Exact arithmetic in small cyclotomic fields Q(zeta_n), and the
// cotangent/cosecant sums built on top of it: signature defects of isolated
// fixed points, fixed-surface defect terms, and Spin-number contributions.

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <stdexcept>
#include <vector>

#include "k3sym/rational.hpp"

namespace k3sym::cyclo {

inline int euler_phi(int n) {
  int result = n;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

namespace detail {

using IPoly = std::vector<Int>;  // coefficients, ascending degree

inline IPoly ipoly_mul(const IPoly& a, const IPoly& b) {
  IPoly c(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

// Exact division of integer polynomials, divisor monic in practice here.
inline IPoly ipoly_div_exact(IPoly num, const IPoly& den) {
  IPoly q(num.size() - den.size() + 1);
  for (int i = int(q.size()) - 1; i >= 0; --i) {
    Int lead = num[i + den.size() - 1];
    if (lead % den.back() != 0) throw std::logic_error("ipoly_div_exact: not divisible");
    Int f = lead / den.back();
    q[i] = f;
    for (size_t j = 0; j < den.size(); ++j) num[i + j] -= f * den[j];
  }
  for (const Int& c : num)
    if (c != 0) throw std::logic_error("ipoly_div_exact: nonzero remainder");
  return q;
}

// Phi_n via x^n - 1 = prod_{d | n} Phi_d.
inline const IPoly& cyclotomic_polynomial(int n) {
  static std::map<int, IPoly> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  // iterative so recursion never re-enters the lock
  for (int m = 1; m <= n; ++m) {
    if (n % m != 0 || cache.count(m)) continue;
    IPoly num(m + 1);
    num[0] = -1;
    num[m] = 1;
    IPoly den{1};
    for (int d = 1; d < m; ++d)
      if (m % d == 0) den = ipoly_mul(den, cache.at(d));
    cache[m] = ipoly_div_exact(num, den);
  }
  return cache.at(n);
}

}  // namespace detail

// An exact element of Q(zeta_n), stored as a rational vector of length
// phi(n) in the power basis 1, zeta, ..., zeta^{phi(n)-1} mod Phi_n.
class CyclotomicNumber {
 public:
  static constexpr int kMaxConductor = 32;

  CyclotomicNumber() : n_(1), c_(1) {}
  explicit CyclotomicNumber(const Rat& r) : n_(1), c_{r} {}
  explicit CyclotomicNumber(long v) : n_(1), c_{Rat(v)} {}

  static CyclotomicNumber zeta(int n, long k = 1) {
    check_conductor(n);
    CyclotomicNumber z;
    z.n_ = n;
    z.c_.assign(euler_phi(n), Rat(0));
    long e = ((k % n) + n) % n;
    std::vector<Rat> raw(size_t(e) + 1, Rat(0));
    raw[size_t(e)] = 1;
    z.c_ = reduce(raw, n);
    return z;
  }

  int conductor() const { return n_; }
  const std::vector<Rat>& coefficients() const { return c_; }

  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rat& r) { return r == 0; });
  }
  bool is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
      if (c_[i] != 0) return false;
    return true;
  }
  Rat as_rational() const {
    if (!is_rational()) throw std::domain_error("CyclotomicNumber: value is not rational");
    return c_[0];
  }

  CyclotomicNumber lifted(int n) const {
    if (n == n_) return *this;
    if (n % n_ != 0) throw std::invalid_argument("lift: conductor not a multiple");
    check_conductor(n);
    int stride = n / n_;
    std::vector<Rat> raw(size_t(euler_phi(n_) - 1) * stride + 1, Rat(0));
    for (size_t i = 0; i < c_.size(); ++i) raw[i * stride] = c_[i];
    CyclotomicNumber out;
    out.n_ = n;
    out.c_ = reduce(raw, n);
    return out;
  }

  friend CyclotomicNumber operator+(const CyclotomicNumber& a, const CyclotomicNumber& b) {
    auto [x, y] = to_common(a, b);
    for (size_t i = 0; i < x.c_.size(); ++i) x.c_[i] += y.c_[i];
    return x;
  }
  friend CyclotomicNumber operator-(const CyclotomicNumber& a, const CyclotomicNumber& b) {
    auto [x, y] = to_common(a, b);
    for (size_t i = 0; i < x.c_.size(); ++i) x.c_[i] -= y.c_[i];
    return x;
  }
  friend CyclotomicNumber operator-(const CyclotomicNumber& a) {
    CyclotomicNumber x = a;
    for (auto& v : x.c_) v = -v;
    return x;
  }
  friend CyclotomicNumber operator*(const CyclotomicNumber& a, const CyclotomicNumber& b) {
    auto [x, y] = to_common(a, b);
    std::vector<Rat> raw(x.c_.size() + y.c_.size() - 1, Rat(0));
    for (size_t i = 0; i < x.c_.size(); ++i) {
      if (x.c_[i] == 0) continue;
      for (size_t j = 0; j < y.c_.size(); ++j)
        if (y.c_[j] != 0) raw[i + j] += x.c_[i] * y.c_[j];
    }
    CyclotomicNumber out;
    out.n_ = x.n_;
    out.c_ = reduce(raw, x.n_);
    return out;
  }
  friend CyclotomicNumber operator*(const Rat& s, const CyclotomicNumber& a) {
    CyclotomicNumber x = a;
    for (auto& v : x.c_) v *= s;
    return x;
  }

  CyclotomicNumber inverse() const {
    if (is_zero()) throw std::domain_error("CyclotomicNumber: division by zero");
    // extended euclid of (this, Phi_n) over Q[x]; Phi_n irreducible so gcd = 1
    std::vector<Rat> r0 = phi_rat(n_), r1(c_);
    trim(r1);
    std::vector<Rat> t0{Rat(0)}, t1{Rat(1)};
    while (true) {
      auto [q, rem] = poly_divmod(r0, r1);
      trim(rem);
      if (rem.empty()) break;
      std::vector<Rat> t2 = poly_sub(t0, poly_mul(q, t1));
      r0 = std::move(r1);
      r1 = std::move(rem);
      t0 = std::move(t1);
      t1 = std::move(t2);
    }
    // r1 is a nonzero constant multiple of gcd = 1
    if (r1.size() != 1) throw std::logic_error("cyclotomic inverse: gcd not constant");
    Rat scale = Rat(1) / r1[0];
    for (auto& v : t1) v *= scale;
    CyclotomicNumber out;
    out.n_ = n_;
    out.c_ = reduce(t1, n_);
    return out;
  }
  friend CyclotomicNumber operator/(const CyclotomicNumber& a, const CyclotomicNumber& b) {
    auto [x, y] = to_common(a, b);
    return x * y.inverse();
  }

  friend bool operator==(const CyclotomicNumber& a, const CyclotomicNumber& b) {
    auto [x, y] = to_common(a, b);
    return x.c_ == y.c_;
  }
  friend bool operator!=(const CyclotomicNumber& a, const CyclotomicNumber& b) { return !(a == b); }

 private:
  int n_;
  std::vector<Rat> c_;

  static void check_conductor(int n) {
    if (n < 1 || n > kMaxConductor)
      throw std::invalid_argument("cyclotomic conductor " + std::to_string(n) +
                                  " outside [1," + std::to_string(kMaxConductor) + "]");
  }
  static void trim(std::vector<Rat>& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
  }
  static std::vector<Rat> phi_rat(int n) {
    const auto& ip = detail::cyclotomic_polynomial(n);
    std::vector<Rat> out(ip.size());
    for (size_t i = 0; i < ip.size(); ++i) out[i] = Rat(ip[i]);
    return out;
  }
  static std::vector<Rat> poly_mul(const std::vector<Rat>& a, const std::vector<Rat>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<Rat> c(a.size() + b.size() - 1, Rat(0));
    for (size_t i = 0; i < a.size(); ++i)
      for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
  }
  static std::vector<Rat> poly_sub(std::vector<Rat> a, const std::vector<Rat>& b) {
    if (a.size() < b.size()) a.resize(b.size(), Rat(0));
    for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    trim(a);
    return a;
  }
  static std::pair<std::vector<Rat>, std::vector<Rat>> poly_divmod(std::vector<Rat> num,
                                                                   const std::vector<Rat>& den) {
    if (den.empty()) throw std::logic_error("poly_divmod: zero divisor");
    if (num.size() < den.size()) return {{}, num};
    std::vector<Rat> q(num.size() - den.size() + 1, Rat(0));
    for (int i = int(q.size()) - 1; i >= 0; --i) {
      Rat f = num[i + den.size() - 1] / den.back();
      q[i] = f;
      if (f == 0) continue;
      for (size_t j = 0; j < den.size(); ++j) num[i + j] -= f * den[j];
    }
    num.resize(den.size() - 1);
    return {q, num};
  }
  // reduce raw power-series coefficients mod Phi_n, pad to phi(n)
  static std::vector<Rat> reduce(std::vector<Rat> raw, int n) {
    auto phi = phi_rat(n);
    size_t deg = phi.size() - 1;  // = euler_phi(n)
    if (raw.size() > deg) {
      auto [q, rem] = poly_divmod(raw, phi);
      raw = rem;
    }
    raw.resize(deg, Rat(0));
    return raw;
  }

  static std::pair<CyclotomicNumber, CyclotomicNumber> to_common(const CyclotomicNumber& a,
                                                                 const CyclotomicNumber& b) {
    if (a.n_ == b.n_) return {a, b};
    int l = std::lcm(a.n_, b.n_);
    check_conductor(l);
    return {a.lifted(l), b.lifted(l)};
  }
};

// Conductor of the field containing cot(a*pi/p), csc(a*pi/p): needs both i
// and zeta_p, i.e. lcm(4, 2p).
inline int trig_conductor(int p) {
  int n = std::lcm(4, 2 * p);
  if (n > CyclotomicNumber::kMaxConductor)
    throw std::invalid_argument("cot/csc: conductor " + std::to_string(n) +
                                " exceeds cap (order " + std::to_string(p) + " too large)");
  return n;
}

// Exact cot(a*pi/p) = i (z + 1)/(z - 1) with z = e^{2 i a pi / p}.
inline CyclotomicNumber cot(long a, int p) {
  if (p < 2) throw std::invalid_argument("cot: order must be >= 2");
  long am = ((a % p) + p) % p;
  if (am == 0) throw std::domain_error("cot: pole at multiple of pi");
  int n = trig_conductor(p);
  auto z = CyclotomicNumber::zeta(n, long(n / p) * am);
  auto i = CyclotomicNumber::zeta(n, n / 4);
  auto one = CyclotomicNumber(Rat(1));
  return i * (z + one) / (z - one);
}

// Exact csc(a*pi/p) = 2i / (w - w^{-1}) with w = e^{i a pi / p}.
inline CyclotomicNumber csc(long a, int p) {
  if (p < 2) throw std::invalid_argument("csc: order must be >= 2");
  long am = ((a % p) + p) % p;
  if (am == 0) throw std::domain_error("csc: pole at multiple of pi");
  int n = trig_conductor(p);
  auto w = CyclotomicNumber::zeta(n, long(n / (2 * p)) * am);
  auto winv = CyclotomicNumber::zeta(n, -long(n / (2 * p)) * am);
  auto i = CyclotomicNumber::zeta(n, n / 4);
  return (Rat(2) * i) / (w - winv);
}

// Product cot(a*pi/p) cot(b*pi/p) computed inside Q(zeta_p) directly, so it
// stays available for orders whose single cotangent would exceed the
// conductor cap (cot itself needs zeta_{4p} when p is odd).
inline CyclotomicNumber cot_pair(long a, long b, int p) {
  if (p < 2) throw std::invalid_argument("cot_pair: order must be >= 2");
  long am = ((a % p) + p) % p, bm = ((b % p) + p) % p;
  if (am == 0 || bm == 0) throw std::domain_error("cot_pair: pole at multiple of pi");
  int n = p == 1 ? 1 : p;
  if (n > CyclotomicNumber::kMaxConductor)
    throw std::invalid_argument("cot_pair: conductor exceeds cap");
  auto za = CyclotomicNumber::zeta(n, am);
  auto zb = CyclotomicNumber::zeta(n, bm);
  auto one = CyclotomicNumber(Rat(1));
  return -((za + one) * (zb + one)) / ((za - one) * (zb - one));
}

// Product csc(a*pi/p) csc(b*pi/p) = -4 / ((w^a - w^-a)(w^b - w^-b)), w = zeta_{2p}.
inline CyclotomicNumber csc_pair(long a, long b, int p) {
  if (p < 2) throw std::invalid_argument("csc_pair: order must be >= 2");
  long am = ((a % p) + p) % p, bm = ((b % p) + p) % p;
  if (am == 0 || bm == 0) throw std::domain_error("csc_pair: pole at multiple of pi");
  int n = 2 * p;
  if (n > CyclotomicNumber::kMaxConductor)
    throw std::invalid_argument("csc_pair: conductor exceeds cap");
  auto d = [&](long e) {
    return CyclotomicNumber::zeta(n, e) - CyclotomicNumber::zeta(n, -e);
  };
  return CyclotomicNumber(Rat(-4)) / (d(am) * d(bm));
}

// Signature defect of an isolated fixed point of rotation type (a, b) under
// Z_p: -sum_{j=1}^{p-1} cot(pi j a / p) cot(pi j b / p).  The full sum is
// Galois invariant, hence rational.
inline Rat signature_defect(long a, long b, int p) {
  if (p < 2) throw std::invalid_argument("signature_defect: order must be >= 2");
  CyclotomicNumber sum;
  for (long j = 1; j < p; ++j) sum = sum + cot_pair(j * a, j * b, p);
  CyclotomicNumber defect = -sum;
  if (!defect.is_rational())
    throw std::logic_error("signature_defect: full cotangent sum failed to be rational");
  return defect.as_rational();
}

// 2-dimensional fixed components contribute (p^2-1)/3 * (self-intersection).
inline Rat surface_defect_term(int p, long self_intersection) {
  if (p < 2) throw std::invalid_argument("surface_defect_term: order must be >= 2");
  return Rat(Int(p) * p - 1, 3) * self_intersection;
}

// sum_{j=1}^{(p-1)/2} cot^2(j pi / p), evaluated exactly in Q(zeta_p).
inline Rat cot_square_half_sum(int p) {
  if (p < 3 || p % 2 == 0) throw std::invalid_argument("cot_square_half_sum: odd p >= 3");
  CyclotomicNumber sum;
  for (long j = 1; j <= (p - 1) / 2; ++j) sum = sum + cot_pair(j, j, p);
  if (!sum.is_rational()) throw std::logic_error("cot_square_half_sum: not rational");
  return sum.as_rational();
}

// Local Spin-number contribution of an isolated fixed point: weights (a, b)
// of the tangent representation, weight r on the line-bundle fiber, with
// 2r + a + b = 0 mod p; I = (-1)^{k+1} (1/4) csc(a pi/p) csc(b pi/p).
struct SpinContribution {
  int p = 2;
  long a = 0, b = 0, r = 0;
  long k = 0;  // (2r + a + b) / p
  CyclotomicNumber value;

  bool is_rational() const { return value.is_rational(); }
  Rat rational_value() const { return value.as_rational(); }
};

inline SpinContribution spin_contribution(int p, long a, long b, long r) {
  if (p < 2) throw std::invalid_argument("spin_contribution: order must be >= 2");
  if (((2 * r + a + b) % p + p) % p != 0)
    throw std::invalid_argument("spin_contribution: 2r + a + b != 0 mod p");
  SpinContribution out;
  out.p = p;
  out.a = a;
  out.b = b;
  out.r = r;
  out.k = (2 * r + a + b) / p;
  Rat sign = (out.k + 1) % 2 == 0 ? Rat(1) : Rat(-1);
  out.value = (sign / 4) * csc_pair(a, b, p);
  return out;
}

// Achievable Spin numbers for `num_points` local contributions of +-1/4,
// intersected with {d0 - d1 : d0 + d1 = -signX/8, d0 and d1 even}.  Both
// sides are enumerated by brute force.
inline std::set<long> spin_number_feasible(int num_points, long signX) {
  if (num_points < 0) throw std::invalid_argument("spin_number_feasible: num_points < 0");
  if (signX % 8 != 0) throw std::invalid_argument("spin_number_feasible: sign not divisible by 8");
  long q = -signX / 8;  // d0 + d1
  std::set<long> sums;
  for (int plus = 0; plus <= num_points; ++plus) {
    long numer = 2L * plus - num_points;  // (plus - minus)/4 = numer/4
    if (numer % 4 == 0) sums.insert(numer / 4);
  }
  std::set<long> splits;
  long bound = std::abs(q) + num_points + 8;
  for (long d0 = -2 * bound; d0 <= 2 * bound; d0 += 2) {
    long d1 = q - d0;
    if (d1 % 2 != 0) continue;
    splits.insert(d0 - d1);
  }
  std::set<long> out;
  std::set_intersection(sums.begin(), sums.end(), splits.begin(), splits.end(),
                        std::inserter(out, out.begin()));
  return out;
}

}  // namespace k3sym::cyclo
