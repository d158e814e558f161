#pragma once
/** @file hall.hpp
 *  Twisted Ringel-Hall algebra of a finite-field species with scalars in
 *  Q[v]/(v^2 - q), Green's comultiplication and bilinear form.
 */

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "quiverbench/forms.hpp"
#include "quiverbench/representations.hpp"

namespace qb {

/// a + b v with v^2 = q.
struct HallScalar {
  Rational a = 0, b = 0;
  std::int64_t q = 0;  // 0 while the scalar is a plain rational

  HallScalar() = default;
  HallScalar(Rational a_, Rational b_ = 0, std::int64_t q_ = 0) : a(std::move(a_)), b(std::move(b_)), q(q_) {}

  bool is_zero() const { return a == 0 && b == 0; }
  bool operator==(const HallScalar& o) const { return a == o.a && b == o.b; }

  static std::int64_t join(std::int64_t x, std::int64_t y) {
    if (x && y && x != y) fail(ErrorKind::InvalidInput, "scalars over different q");
    return x ? x : y;
  }
  friend HallScalar operator+(const HallScalar& x, const HallScalar& y) {
    return {x.a + y.a, x.b + y.b, join(x.q, y.q)};
  }
  friend HallScalar operator-(const HallScalar& x, const HallScalar& y) {
    return {x.a - y.a, x.b - y.b, join(x.q, y.q)};
  }
  friend HallScalar operator-(const HallScalar& x) { return {-x.a, -x.b, x.q}; }
  friend HallScalar operator*(const HallScalar& x, const HallScalar& y) {
    const auto q = join(x.q, y.q);
    const Rational bb = x.b * y.b;
    if (bb != 0 && q == 0) fail(ErrorKind::InvalidInput, "v*v needs q");
    return {x.a * y.a + Rational(q) * bb, x.a * y.b + x.b * y.a, q};
  }
  HallScalar& operator+=(const HallScalar& y) { return *this = *this + y; }
  HallScalar& operator*=(const HallScalar& y) { return *this = *this * y; }

  /// v^n, n of either sign.
  static HallScalar v_pow(std::int64_t q, std::int64_t n) {
    Rational qk = 1;
    const std::int64_t k = n >= 0 ? n / 2 : -((-n + 1) / 2);
    for (std::int64_t j = 0; j < (k >= 0 ? k : -k); ++j) qk *= q;
    if (k < 0) qk = 1 / qk;
    return (n - 2 * k) ? HallScalar{0, qk, q} : HallScalar{qk, 0, q};
  }

  std::string str() const {
    if (b == 0) return a.str();
    if (a == 0) return b.str() + "v";
    return a.str() + (b < 0 ? " - " + Rational(-b).str() : " + " + b.str()) + "v";
  }
};

using HallElement = std::map<IsoClassLabel, HallScalar>;
using HallTensor = std::map<std::pair<IsoClassLabel, IsoClassLabel>, HallScalar>;

template <class K>
void add_term(std::map<K, HallScalar>& m, const K& k, const HallScalar& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = m.try_emplace(k, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) m.erase(it);
  }
}

template <class K>
std::map<K, HallScalar> scale(const std::map<K, HallScalar>& m, const HallScalar& c) {
  std::map<K, HallScalar> out;
  for (const auto& [k, x] : m) add_term(out, k, x * c);
  return out;
}

template <class K>
std::map<K, HallScalar> add(std::map<K, HallScalar> x, const std::map<K, HallScalar>& y) {
  for (const auto& [k, c] : y) add_term(x, k, c);
  return x;
}

/// Gaussian binomial [m choose p] in t = v^d, built by the q-Pascal rule
/// [m p] = t^{m-p} [m-1 p-1] + t^{-p} [m-1 p] and evaluated at v.
inline HallScalar quantum_binomial(std::int64_t m, std::int64_t p, std::int64_t d, std::int64_t q) {
  if (p < 0 || p > m) fail(ErrorKind::InvalidInput, "need 0 <= p <= m");
  using Laurent = std::map<std::int64_t, BigInt>;
  std::vector<std::vector<Laurent>> tab(m + 1, std::vector<Laurent>(m + 1));
  for (std::int64_t r = 0; r <= m; ++r) {
    tab[r][0] = {{0, 1}};
    tab[r][r] = {{0, 1}};
    for (std::int64_t c = 1; c < r; ++c) {
      for (const auto& [e, x] : tab[r - 1][c - 1]) tab[r][c][e + r - c] += x;
      for (const auto& [e, x] : tab[r - 1][c]) tab[r][c][e - c] += x;
    }
  }
  HallScalar out{0, 0, q};
  for (const auto& [e, x] : tab[m][p]) out += HallScalar{Rational(x), 0, q} * HallScalar::v_pow(q, e * d);
  return out;
}

class HallAlgebra {
 public:
  explicit HallAlgebra(SpeciesRef ctx, std::uint64_t cap = kDefaultCap)
      : catalog_(ctx, cap), shape_(ctx->species().shape) {
    q_ = static_cast<std::int64_t>(ctx->species().q());
  }

  Catalog& catalog() { return catalog_; }
  const SpeciesRef& context() const { return catalog_.context(); }
  std::int64_t q() const { return q_; }
  const AbsValuedQuiver& shape() const { return shape_; }

  IsoClassLabel zero_label() const { return IsoClassLabel{DimVector(shape_.d.size(), 0), 0}; }
  HallElement one() const { return {{zero_label(), HallScalar{1, 0, q_}}}; }
  HallElement basis(const IsoClassLabel& l) const { return {{l, HallScalar{1, 0, q_}}}; }
  HallElement simple(std::size_t i) {
    return basis(catalog_.label(simple_representation(context(), i)));
  }
  HallElement of(const Representation& v) { return basis(catalog_.label(v)); }

  std::uint64_t aut(const IsoClassLabel& l) { return catalog_.aut_order(l); }

  std::int64_t euler(const DimVector& x, const DimVector& y) const { return euler_form(shape_, x, y); }
  std::int64_t symmetric(const DimVector& x, const DimVector& y) const { return symmetric_form(shape_, x, y); }

  /// Counts of (quotient class, sub class) over the submodules of c with dimension b.
  const std::map<std::pair<IsoClassLabel, IsoClassLabel>, std::uint64_t>& census(const IsoClassLabel& c,
                                                                                const DimVector& b) {
    auto key = std::make_pair(c, b);
    if (auto it = census_.find(key); it != census_.end()) return it->second;
    std::map<std::pair<IsoClassLabel, IsoClassLabel>, std::uint64_t> tally;
    for (const auto& x : submodules(catalog_.representative(c), b, catalog_.cap()))
      ++tally[{catalog_.label(x.quotient), catalog_.label(x.sub)}];
    return census_.emplace(key, std::move(tally)).first->second;
  }

  /// g^C_{AB}: submodules X of C with C/X = A and X = B.
  std::uint64_t hall_number(const IsoClassLabel& a, const IsoClassLabel& b, const IsoClassLabel& c) {
    const auto& t = census(c, b.dims);
    auto it = t.find({a, b});
    return it == t.end() ? 0 : it->second;
  }

  HallElement product(const IsoClassLabel& a, const IsoClassLabel& b) {
    auto key = std::make_pair(a, b);
    if (auto it = products_.find(key); it != products_.end()) return it->second;
    HallElement out;
    const auto tw = HallScalar::v_pow(q_, euler(a.dims, b.dims));
    for (const auto& c : catalog_.classes(sum(a.dims, b.dims))) {
      const auto g = hall_number(a, b, c);
      if (g) add_term(out, c, tw * HallScalar{Rational(g), 0, q_});
    }
    return products_.emplace(key, out).first->second;
  }

  HallElement product(const HallElement& x, const HallElement& y) {
    HallElement out;
    for (const auto& [a, ca] : x)
      for (const auto& [b, cb] : y) out = add(out, scale(product(a, b), ca * cb));
    return out;
  }

  HallElement power(const HallElement& x, std::int64_t n) {
    HallElement out = one();
    for (std::int64_t k = 0; k < n; ++k) out = product(out, x);
    return out;
  }

  HallTensor delta(const IsoClassLabel& a) {
    HallTensor out;
    const auto total = aut(a);
    DimVector b(a.dims.size(), 0);
    while (true) {
      const auto c = diff(a.dims, b);
      for (const auto& [key, g] : census(a, c)) {
        const auto& [B, C] = key;
        const Rational r = Rational(g) * aut(B) * aut(C) / total;
        add_term(out, {B, C}, HallScalar::v_pow(q_, euler(B.dims, C.dims)) * HallScalar{r, 0, q_});
      }
      std::size_t i = 0;
      while (i < b.size() && ++b[i] > a.dims[i]) b[i++] = 0;
      if (i == b.size()) break;
    }
    return out;
  }

  HallTensor delta(const HallElement& x) {
    HallTensor out;
    for (const auto& [a, c] : x) out = add(out, scale(delta(a), c));
    return out;
  }

  /// (a (x) b)(c (x) d) = v^{(deg b, deg c)} ac (x) bd.
  HallTensor product(const HallTensor& x, const HallTensor& y) {
    HallTensor out;
    for (const auto& [ab, s] : x)
      for (const auto& [cd, t] : y) {
        const auto tw = HallScalar::v_pow(q_, symmetric(ab.second.dims, cd.first.dims)) * s * t;
        const auto left = product(ab.first, cd.first);
        const auto right = product(ab.second, cd.second);
        for (const auto& [l, cl] : left)
          for (const auto& [r, cr] : right) add_term(out, {l, r}, tw * cl * cr);
      }
    return out;
  }

  HallScalar green_form(const HallElement& x, const HallElement& y) {
    HallScalar out{0, 0, q_};
    for (const auto& [a, ca] : x)
      if (auto it = y.find(a); it != y.end()) out += ca * it->second * HallScalar{Rational(1) / aut(a), 0, q_};
    return out;
  }

  HallScalar green_form(const HallTensor& x, const HallTensor& y) {
    HallScalar out{0, 0, q_};
    for (const auto& [ab, s] : x)
      if (auto it = y.find(ab); it != y.end())
        out += s * it->second * HallScalar{Rational(1) / (BigInt(aut(ab.first)) * aut(ab.second)), 0, q_};
    return out;
  }

  HallTensor tensor(const HallElement& x, const HallElement& y) const {
    HallTensor out;
    for (const auto& [a, ca] : x)
      for (const auto& [b, cb] : y) add_term(out, {a, b}, ca * cb);
    return out;
  }

  /// The quantum Serre element for (i, j); zero when the relation holds.
  HallElement serre_element(std::size_t i, std::size_t j) {
    if (i == j) fail(ErrorKind::InvalidInput, "Serre relation needs i != j");
    const auto c = cartan_matrix(shape_);
    const std::int64_t n = 1 - c.c.at(i).at(j);
    const auto Ei = simple(i), Ej = simple(j);
    HallElement out;
    for (std::int64_t p = 0; p <= n; ++p) {
      auto coeff = quantum_binomial(n, p, shape_.d[i], q_);
      if (p % 2) coeff = -coeff;
      out = add(out, scale(product(product(power(Ei, p), Ej), power(Ei, n - p)), coeff));
    }
    return out;
  }

  bool serre_check(std::size_t i, std::size_t j) { return serre_element(i, j).empty(); }

  static DimVector sum(const DimVector& x, const DimVector& y) {
    DimVector s(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) s[i] = x[i] + y[i];
    return s;
  }
  static DimVector diff(const DimVector& x, const DimVector& y) {
    DimVector s(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) s[i] = x[i] - y[i];
    return s;
  }

 private:
  Catalog catalog_;
  AbsValuedQuiver shape_;
  std::int64_t q_ = 2;
  std::map<std::pair<IsoClassLabel, DimVector>, std::map<std::pair<IsoClassLabel, IsoClassLabel>, std::uint64_t>>
      census_;
  std::map<std::pair<IsoClassLabel, IsoClassLabel>, HallElement> products_;
};

struct BialgebraReport {
  std::size_t associativity_checked = 0, associativity_failed = 0;
  std::size_t delta_checked = 0, delta_failed = 0;
  std::size_t adjoint_checked = 0, adjoint_failed = 0;
  std::size_t grading_checked = 0, grading_failed = 0;

  bool pass() const { return !associativity_failed && !delta_failed && !adjoint_failed && !grading_failed; }
};

namespace detail {

inline bool homogeneous_of(const HallElement& x, const DimVector& d) {
  for (const auto& [l, c] : x)
    if (l.dims != d) return false;
  return true;
}

}  // namespace detail

/// Largest total dimension among the terms of x.
inline std::int64_t degree(const HallElement& x) {
  std::int64_t d = 0;
  for (const auto& [l, c] : x) d = std::max(d, std::accumulate(l.dims.begin(), l.dims.end(), std::int64_t{0}));
  return d;
}

/// Checks the bialgebra conditions on every pair and triple drawn from a
/// sample of Hall elements whose total degree stays within max_degree.
inline BialgebraReport bialgebra_checks(HallAlgebra& H, const std::vector<HallElement>& sample,
                                        std::int64_t max_degree) {
  BialgebraReport r;
  std::set<IsoClassLabel> support;
  for (const auto& x : sample)
    for (const auto& [l, c] : x) support.insert(l);
  for (const auto& a : support) {
    ++r.grading_checked;
    for (const auto& [bc, c] : H.delta(a))
      if (HallAlgebra::sum(bc.first.dims, bc.second.dims) != a.dims) {
        ++r.grading_failed;
        break;
      }
    for (const auto& b : support) {
      if (degree(H.basis(a)) + degree(H.basis(b)) > max_degree) continue;
      ++r.grading_checked;
      if (!detail::homogeneous_of(H.product(a, b), HallAlgebra::sum(a.dims, b.dims))) ++r.grading_failed;
      ++r.grading_checked;
      if (a.dims != b.dims && !H.green_form(H.basis(a), H.basis(b)).is_zero()) ++r.grading_failed;
    }
  }
  for (const auto& a : sample)
    for (const auto& b : sample) {
      if (degree(a) + degree(b) > max_degree) continue;
      const auto ab = H.product(a, b);
      ++r.delta_checked;
      if (H.delta(ab) != H.product(H.delta(a), H.delta(b))) ++r.delta_failed;
      for (const auto& c : sample) {
        if (degree(a) + degree(b) + degree(c) > max_degree) continue;
        ++r.associativity_checked;
        if (H.product(ab, c) != H.product(a, H.product(b, c))) ++r.associativity_failed;
        ++r.adjoint_checked;
        if (!(H.green_form(H.delta(a), H.tensor(b, c)) == H.green_form(a, H.product(b, c)))) ++r.adjoint_failed;
      }
    }
  return r;
}

/// All words in the simples of length 1..n, as Hall elements.
inline std::vector<HallElement> simple_monomials(HallAlgebra& H, std::size_t n) {
  std::vector<HallElement> out, layer{H.one()};
  for (std::size_t deg = 0; deg < n; ++deg) {
    std::vector<HallElement> next;
    for (const auto& m : layer)
      for (std::size_t i = 0; i < H.shape().d.size(); ++i) next.push_back(H.product(m, H.simple(i)));
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

}  // namespace qb
