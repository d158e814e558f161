#pragma once
/** @file finite_field.hpp
 *  Exact arithmetic in GF(p^n) with deterministic moduli and embeddings.
 *
 *  Elements are coded as integers sum c_k p^k where c_k is the coefficient of
 *  x^k in the residue modulo the field's modulus.
 */

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "quiverbench/error.hpp"

namespace qb {

using Elem = std::uint64_t;

struct FieldDesc {
  unsigned p = 2;
  unsigned n = 1;
  std::vector<unsigned> modulus;  // low-degree-first, monic, size n + 1

  bool operator==(const FieldDesc&) const = default;
};

namespace detail {

inline bool is_prime(unsigned p) {
  if (p < 2) return false;
  for (unsigned k = 2; k * k <= p; ++k)
    if (p % k == 0) return false;
  return true;
}

using Poly = std::vector<unsigned>;  // over F_p, low-degree-first

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline unsigned inv_mod(unsigned a, unsigned p) {
  unsigned r = 1;
  for (unsigned e = p - 2, b = a % p; e; e >>= 1, b = b * b % p)
    if (e & 1) r = r * b % p;
  return r;
}

inline Poly poly_mod(Poly a, const Poly& f, unsigned p) {
  trim(a);
  const std::size_t df = f.size() - 1;
  const unsigned lead_inv = inv_mod(f.back(), p);
  while (a.size() > df) {
    const unsigned c = a.back() * lead_inv % p;
    const std::size_t shift = a.size() - 1 - df;
    for (std::size_t k = 0; k <= df; ++k) a[shift + k] = (a[shift + k] + p - c * f[k] % p) % p;
    trim(a);
  }
  return a;
}

inline Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, unsigned p) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  return poly_mod(std::move(c), f, p);
}

inline Poly poly_powmod(Poly base, std::uint64_t e, const Poly& f, unsigned p) {
  Poly r{1};
  base = poly_mod(std::move(base), f, p);
  while (e) {
    if (e & 1) r = poly_mulmod(r, base, f, p);
    base = poly_mulmod(base, base, f, p);
    e >>= 1;
  }
  return r;
}

inline Poly poly_gcd(Poly a, Poly b, unsigned p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

/// Rabin's test: x^{p^n} = x mod f and gcd(x^{p^{n/r}} - x, f) = 1 for primes r | n.
inline bool is_irreducible(const Poly& f, unsigned p) {
  const unsigned n = static_cast<unsigned>(f.size() - 1);
  if (n == 1) return true;
  if (f[0] == 0) return false;
  auto frob_iter = [&](unsigned times) {
    Poly h{0, 1};
    for (unsigned k = 0; k < times; ++k) h = poly_powmod(h, p, f, p);
    return h;
  };
  Poly h = frob_iter(n);
  Poly x{0, 1};
  trim(h);
  if (h != x) return false;
  for (unsigned r = 2; r <= n; ++r) {
    if (n % r != 0 || !is_prime(r)) continue;
    Poly g = frob_iter(n / r);
    g.resize(std::max<std::size_t>(g.size(), 2), 0);
    g[1] = (g[1] + p - 1) % p;
    trim(g);
    Poly d = poly_gcd(f, g, p);
    if (d.size() != 1) return false;
  }
  return true;
}

inline std::uint64_t checked_order(unsigned p, unsigned n) {
  unsigned __int128 q = 1;
  for (unsigned k = 0; k < n; ++k) q *= p;
  if (q >= (static_cast<unsigned __int128>(1) << 63))
    fail(ErrorKind::DegreeTooLarge, "field order exceeds 2^63");
  return static_cast<std::uint64_t>(q);
}

}  // namespace detail

/// Lexicographically least monic irreducible of degree n over GF(p),
/// coefficient tuples compared low-degree-first; memoized.
inline FieldDesc gf_make(unsigned p, unsigned n) {
  if (!detail::is_prime(p)) fail(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  if (p > 17) fail(ErrorKind::NotPrime, "characteristic above 17 is not supported");
  if (n < 1 || n > 16) fail(ErrorKind::DegreeTooLarge, "degree must lie in 1..16");
  detail::checked_order(p, n);

  static std::mutex mu;
  static std::map<std::pair<unsigned, unsigned>, std::vector<unsigned>> memo;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find({p, n});
    if (it != memo.end()) return FieldDesc{p, n, it->second};
  }
  detail::Poly f(n + 1, 0);
  f[n] = 1;
  if (n > 1) {
    // c_0 is the most significant position of the tuple, c_{n-1} the least.
    while (!detail::is_irreducible(f, p)) {
      int k = static_cast<int>(n) - 1;
      while (k >= 0 && ++f[k] == p) f[k--] = 0;
    }
  }
  std::lock_guard<std::mutex> lock(mu);
  memo[{p, n}] = f;
  return FieldDesc{p, n, f};
}

/// Arithmetic in one field. Log/exp tables are built for orders up to 2^16.
class Field {
 public:
  explicit Field(FieldDesc d) : desc_(std::move(d)) {
    order_ = detail::checked_order(desc_.p, desc_.n);
    pw_.resize(desc_.n + 1);
    pw_[0] = 1;
    for (unsigned k = 1; k <= desc_.n; ++k) pw_[k] = pw_[k - 1] * desc_.p;
    if (order_ <= (1u << 16)) build_tables();
  }

  const FieldDesc& desc() const { return desc_; }
  unsigned p() const { return desc_.p; }
  unsigned degree() const { return desc_.n; }
  Elem order() const { return order_; }
  /// Residue of x (zero in a prime field, whose modulus is x).
  Elem gen() const { return desc_.n == 1 ? 0 : desc_.p; }
  Elem primitive() const {
    if (!exp_.empty()) return exp_.size() > 1 ? exp_[1] : 1;
    return find_primitive();
  }

  std::vector<unsigned> coeffs(Elem a) const {
    std::vector<unsigned> c(desc_.n);
    for (unsigned k = 0; k < desc_.n; ++k, a /= desc_.p) c[k] = static_cast<unsigned>(a % desc_.p);
    return c;
  }
  Elem from_coeffs(const std::vector<unsigned>& c) const {
    if (c.size() > desc_.n) fail(ErrorKind::InvalidInput, "too many coefficients for field element");
    Elem a = 0;
    for (std::size_t k = c.size(); k-- > 0;) {
      if (c[k] >= desc_.p) fail(ErrorKind::InvalidInput, "coefficient not reduced mod p");
      a = a * desc_.p + c[k];
    }
    return a;
  }
  unsigned digit(Elem a, unsigned k) const { return static_cast<unsigned>(a / pw_[k] % desc_.p); }

  Elem add(Elem a, Elem b) const {
    if (desc_.p == 2) return a ^ b;
    Elem r = 0;
    for (unsigned k = 0; k < desc_.n; ++k) {
      const Elem s = (a % desc_.p + b % desc_.p) % desc_.p;
      r += s * pw_[k];
      a /= desc_.p;
      b /= desc_.p;
    }
    return r;
  }
  Elem neg(Elem a) const {
    if (desc_.p == 2) return a;
    Elem r = 0;
    for (unsigned k = 0; k < desc_.n; ++k, a /= desc_.p) r += ((desc_.p - a % desc_.p) % desc_.p) * pw_[k];
    return r;
  }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }

  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    if (!log_.empty()) {
      std::uint64_t s = log_[a] + log_[b];
      if (s >= order_ - 1) s -= order_ - 1;
      return exp_[s];
    }
    return slow_mul(a, b);
  }
  Elem inv(Elem a) const {
    if (a == 0) fail(ErrorKind::DivisionByZero, "inverse of zero");
    if (!log_.empty()) return exp_[(order_ - 1 - log_[a]) % (order_ - 1)];
    return pow(a, order_ - 2);
  }
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const {
    Elem r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  /// a^(p^k), the k-th power of the absolute Frobenius.
  Elem frobenius(Elem a, unsigned k = 1) const {
    k %= desc_.n;
    for (unsigned j = 0; j < k; ++j) a = pow(a, desc_.p);
    return a;
  }
  /// Multiplicative order of a nonzero element.
  std::uint64_t mult_order(Elem a) const {
    std::uint64_t n = order_ - 1, r = n;
    for (std::uint64_t f = 2; f * f <= n; ++f) {
      if (n % f) continue;
      while (n % f == 0) n /= f;
      while (r % f == 0 && pow(a, r / f) == 1) r /= f;
    }
    if (n > 1 && r % n == 0 && pow(a, r / n) == 1) r /= n;
    return r;
  }

 private:
  Elem slow_mul(Elem a, Elem b) const {
    detail::Poly pa = coeffs(a), pb = coeffs(b);
    detail::Poly c = detail::poly_mulmod(pa, pb, desc_.modulus, desc_.p);
    c.resize(desc_.n, 0);
    return from_coeffs(c);
  }
  Elem find_primitive() const {
    for (Elem g = 1; g < order_; ++g)
      if (mult_order(g) == order_ - 1) return g;
    return 1;
  }
  void build_tables() {
    if (order_ == 2) {
      exp_ = {1};
      log_ = {0, 0};
      return;
    }
    const Elem g = find_primitive();
    exp_.resize(order_ - 1);
    log_.assign(order_, 0);
    Elem x = 1;
    for (std::uint64_t k = 0; k + 1 < order_; ++k) {
      exp_[k] = x;
      log_[x] = static_cast<std::uint32_t>(k);
      x = slow_mul(x, g);
    }
  }

  FieldDesc desc_;
  std::uint64_t order_ = 0;
  std::vector<std::uint64_t> pw_;
  std::vector<Elem> exp_;
  std::vector<std::uint32_t> log_;
};

using FieldPtr = std::shared_ptr<const Field>;

/// Shared, memoized field object for GF(p^n).
inline FieldPtr gf(unsigned p, unsigned n) {
  static std::mutex mu;
  static std::map<std::pair<unsigned, unsigned>, FieldPtr> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({p, n});
    if (it != cache.end()) return it->second;
  }
  auto f = std::make_shared<const Field>(gf_make(p, n));
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(std::make_pair(p, n), f).first->second;
}

/// Coefficient vectors compared low-degree-first.
inline bool coeff_less(const Field& f, Elem a, Elem b) {
  for (unsigned k = 0; k < f.degree(); ++k) {
    const unsigned x = f.digit(a, k), y = f.digit(b, k);
    if (x != y) return x < y;
  }
  return false;
}

/// Evaluate a polynomial over F_p (low-degree-first) at an element.
inline Elem eval_poly(const Field& f, const std::vector<unsigned>& poly, Elem z) {
  Elem r = 0;
  for (std::size_t k = poly.size(); k-- > 0;) r = f.add(f.mul(r, z), poly[k]);
  return r;
}

class Embedding {
 public:
  Embedding() = default;
  Embedding(FieldPtr src, FieldPtr dst, Elem image) : src_(std::move(src)), dst_(std::move(dst)), image_(image) {
    basis_.resize(src_->degree());
    Elem g = 1;
    for (unsigned k = 0; k < src_->degree(); ++k) {
      basis_[k] = g;
      g = dst_->mul(g, image_);
    }
    if (src_->order() <= 4096) {
      table_.resize(src_->order());
      for (Elem a = 0; a < src_->order(); ++a) table_[a] = slow_apply(a);
    }
  }

  const FieldPtr& source() const { return src_; }
  const FieldPtr& target() const { return dst_; }
  Elem image_of_generator() const { return image_; }
  Elem operator()(Elem a) const { return table_.empty() ? slow_apply(a) : table_[a]; }

 private:
  Elem slow_apply(Elem a) const {
    Elem r = 0;
    for (unsigned k = 0; k < src_->degree(); ++k) {
      const unsigned c = src_->digit(a, k);
      if (c) r = dst_->add(r, dst_->mul(c, basis_[k]));
    }
    return r;
  }

  FieldPtr src_, dst_;
  Elem image_ = 0;
  std::vector<Elem> basis_;
  std::vector<Elem> table_;
};

namespace detail {

/// Gaussian elimination over F_p on rows of digits; returns indices of independent rows.
inline std::vector<std::size_t> independent_rows(std::vector<std::vector<unsigned>> rows, unsigned p) {
  std::vector<std::size_t> keep;
  std::vector<std::vector<unsigned>> basis;
  std::vector<std::size_t> pivots;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    auto v = rows[r];
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const unsigned c = v[pivots[b]];
      if (!c) continue;
      for (std::size_t k = 0; k < v.size(); ++k) v[k] = (v[k] + p - c * basis[b][k] % p) % p;
    }
    auto it = std::find_if(v.begin(), v.end(), [](unsigned x) { return x != 0; });
    if (it == v.end()) continue;
    const std::size_t piv = static_cast<std::size_t>(it - v.begin());
    const unsigned inv = inv_mod(v[piv], p);
    for (auto& x : v) x = x * inv % p;
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const unsigned c = basis[b][piv];
      if (!c) continue;
      for (std::size_t k = 0; k < v.size(); ++k) basis[b][k] = (basis[b][k] + p - c * v[k] % p) % p;
    }
    basis.push_back(v);
    pivots.push_back(piv);
    keep.push_back(r);
  }
  return keep;
}

}  // namespace detail

/// Embedding of GF(p^a) into GF(p^b) sending the generator to the root of the
/// source modulus with the lexicographically least coefficient vector.
inline Embedding embed(const FieldPtr& src, const FieldPtr& dst) {
  if (src->p() != dst->p() || dst->degree() % src->degree() != 0)
    fail(ErrorKind::NotASubfield, "GF(" + std::to_string(src->p()) + "^" + std::to_string(src->degree()) +
                                      ") does not embed in GF(" + std::to_string(dst->p()) + "^" +
                                      std::to_string(dst->degree()) + ")");
  static std::mutex mu;
  static std::map<std::tuple<unsigned, unsigned, unsigned>, Elem> memo;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find({src->p(), src->degree(), dst->degree()});
    if (it != memo.end()) return Embedding(src, dst, it->second);
  }
  const unsigned a = src->degree(), N = dst->degree(), p = dst->p();
  Elem best = 0;
  if (a > 1) {
    // The subfield of order p^a is the image of the relative trace.
    auto rel_trace = [&](Elem y) {
      Elem s = 0;
      for (unsigned k = 0; k < N / a; ++k) s = dst->add(s, dst->frobenius(y, a * k));
      return s;
    };
    std::vector<Elem> traces;
    std::vector<std::vector<unsigned>> rows;
    Elem xk = 1;
    for (unsigned k = 0; k < N; ++k) {
      traces.push_back(rel_trace(xk));
      rows.push_back(dst->coeffs(traces.back()));
      xk = dst->mul(xk, dst->gen());
    }
    std::vector<Elem> sub_basis;
    for (std::size_t r : detail::independent_rows(rows, p)) sub_basis.push_back(traces[r]);
    bool found = false;
    std::vector<unsigned> digits(sub_basis.size(), 0);
    for (std::uint64_t idx = 0; idx < src->order(); ++idx) {
      std::uint64_t t = idx;
      Elem z = 0;
      for (std::size_t k = 0; k < sub_basis.size(); ++k, t /= p)
        if (t % p) z = dst->add(z, dst->mul(static_cast<Elem>(t % p), sub_basis[k]));
      if (eval_poly(*dst, src->desc().modulus, z) != 0) continue;
      if (!found || coeff_less(*dst, z, best)) best = z;
      found = true;
    }
    if (!found) fail(ErrorKind::NotASubfield, "no root of the source modulus found");
  }
  std::lock_guard<std::mutex> lock(mu);
  memo[{src->p(), src->degree(), dst->degree()}] = best;
  return Embedding(src, dst, best);
}

/// Splitting of F_{q^a} (x)_{F_q} F_{q^b}: gcd(a,b) factors, each F_{q^lcm(a,b)}.
struct TensorDecomposition {
  unsigned p = 2, e = 1, a = 1, b = 1;
  unsigned factor_count = 1;
  unsigned factor_degree = 1;  // over F_q

  /// Factor met by left idempotent i (in Z/a) and right idempotent j (in Z/b)
  /// after extending scalars to a common splitting field.
  unsigned factor_of(unsigned i, unsigned j) const {
    const long g = factor_count;
    return static_cast<unsigned>(((static_cast<long>(j) - static_cast<long>(i)) % g + g) % g);
  }
};

inline TensorDecomposition tensor_decompose(unsigned a, unsigned b, unsigned p, unsigned e) {
  if (a < 1 || b < 1 || a > 16 || b > 16) fail(ErrorKind::DegreeTooLarge, "degrees must lie in 1..16");
  const unsigned g = std::gcd(a, b);
  return TensorDecomposition{p, e, a, b, g, a / g * b};
}

}  // namespace qb
