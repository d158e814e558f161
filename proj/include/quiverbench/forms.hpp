#pragma once
/** @file forms.hpp
 *  Euler, symmetric and Tits forms; Cartan matrices; Weyl reflections; real and
 *  imaginary roots; stable elements; representation-type classification.
 */

#include <algorithm>
#include <cstdint>
#include <deque>
#include <set>
#include <string>
#include <vector>

#include "quiverbench/quiver.hpp"

namespace qb {

using DimVector = std::vector<std::int64_t>;
using IntMatrix = std::vector<std::vector<std::int64_t>>;

enum class RepType { Finite, Affine, Indefinite };

inline const char* to_string(RepType t) {
  switch (t) {
    case RepType::Finite: return "Finite";
    case RepType::Affine: return "Affine";
    case RepType::Indefinite: return "Indefinite";
  }
  return "?";
}

namespace detail {

inline void check_index(const AbsValuedQuiver& g, const DimVector& x) {
  if (x.size() != g.quiver.vertices.size())
    fail(ErrorKind::IndexMismatch, "vector has " + std::to_string(x.size()) + " entries, quiver has " +
                                       std::to_string(g.quiver.vertices.size()) + " vertices");
}

}  // namespace detail

inline DimVector unit_vector(std::size_t n, std::size_t i) {
  DimVector e(n, 0);
  e[i] = 1;
  return e;
}

/// <x,y> = sum d_i x_i y_i - sum m_rho x_t y_h.
inline std::int64_t euler_form(const AbsValuedQuiver& g, const DimVector& x, const DimVector& y) {
  detail::check_index(g, x);
  detail::check_index(g, y);
  std::int64_t r = 0;
  for (std::size_t i = 0; i < x.size(); ++i) r += g.d[i] * x[i] * y[i];
  for (std::size_t k = 0; k < g.m.size(); ++k) r -= g.m[k] * x[g.quiver.tail(k)] * y[g.quiver.head(k)];
  return r;
}

inline std::int64_t symmetric_form(const AbsValuedQuiver& g, const DimVector& x, const DimVector& y) {
  return euler_form(g, x, y) + euler_form(g, y, x);
}

inline std::int64_t tits_form(const AbsValuedQuiver& g, const DimVector& x) { return euler_form(g, x, x); }

inline std::int64_t euler_form(const RelValuedQuiver& d, const DimVector& x, const DimVector& y) {
  return euler_form(lift_relative(d), x, y);
}
inline std::int64_t symmetric_form(const RelValuedQuiver& d, const DimVector& x, const DimVector& y) {
  return symmetric_form(lift_relative(d), x, y);
}
inline std::int64_t tits_form(const RelValuedQuiver& d, const DimVector& x) { return tits_form(lift_relative(d), x); }

/// Matrix of the symmetric form on the standard basis; equals diag(d) * C.
inline IntMatrix symmetric_matrix(const AbsValuedQuiver& g) {
  const std::size_t n = g.d.size();
  IntMatrix s(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) s[i][i] = 2 * g.d[i];
  for (std::size_t k = 0; k < g.m.size(); ++k) {
    const auto t = g.quiver.tail(k), h = g.quiver.head(k);
    s[t][h] -= g.m[k];
    if (t != h) s[h][t] -= g.m[k];
    else s[t][t] -= g.m[k];
  }
  return s;
}

struct CartanMatrix {
  IntMatrix c;
  std::vector<std::int64_t> symmetrizer;
};

inline CartanMatrix cartan_matrix(const AbsValuedQuiver& g) {
  require_valid(g);
  const std::size_t n = g.d.size();
  CartanMatrix out{IntMatrix(n, std::vector<std::int64_t>(n, 0)), g.d};
  for (std::size_t i = 0; i < n; ++i) out.c[i][i] = 2;
  for (std::size_t k = 0; k < g.m.size(); ++k) {
    const auto t = g.quiver.tail(k), h = g.quiver.head(k);
    if (t == h) fail(ErrorKind::LoopPresent, "arrow " + g.quiver.arrows[k].id + " is a loop");
    out.c[t][h] -= g.m[k] / g.d[t];
    out.c[h][t] -= g.m[k] / g.d[h];
  }
  return out;
}

/// r_i(x) = x - (sum_j c_ij x_j) e_i.
inline DimVector simple_reflection(const CartanMatrix& c, std::size_t i, DimVector x) {
  std::int64_t s = 0;
  for (std::size_t j = 0; j < x.size(); ++j) s += c.c[i][j] * x[j];
  x[i] -= s;
  return x;
}

inline DimVector simple_reflection(const AbsValuedQuiver& g, std::size_t i, const DimVector& x) {
  detail::check_index(g, x);
  if (i >= x.size()) fail(ErrorKind::IndexMismatch, "vertex index out of range");
  return simple_reflection(cartan_matrix(g), i, x);
}

inline bool within_bound(const DimVector& x, std::int64_t B) {
  return std::all_of(x.begin(), x.end(), [B](std::int64_t v) { return v <= B && v >= -B; });
}

inline bool is_positive(const DimVector& x) {
  return std::all_of(x.begin(), x.end(), [](std::int64_t v) { return v >= 0; }) &&
         std::any_of(x.begin(), x.end(), [](std::int64_t v) { return v > 0; });
}

struct RealRoots {
  std::vector<DimVector> roots;      // breadth-first discovery order
  std::vector<std::size_t> vertex;   // generating vertex class of each root

  std::vector<DimVector> positive() const {
    std::vector<DimVector> r;
    for (const auto& x : roots)
      if (is_positive(x)) r.push_back(x);
    std::sort(r.begin(), r.end());
    return r;
  }
};

/// Closure of {+-e_i} under simple reflections, pruned to max |coordinate| <= B.
inline RealRoots real_roots_up_to(const AbsValuedQuiver& g, std::int64_t B) {
  const auto c = cartan_matrix(g);
  const std::size_t n = g.d.size();
  RealRoots out;
  std::set<DimVector> seen;
  std::deque<std::size_t> frontier;
  auto visit = [&](DimVector x, std::size_t v) {
    if (!within_bound(x, B) || !seen.insert(x).second) return;
    out.roots.push_back(std::move(x));
    out.vertex.push_back(v);
    frontier.push_back(out.roots.size() - 1);
  };
  for (std::size_t i = 0; i < n; ++i) {
    visit(unit_vector(n, i), i);
    DimVector e = unit_vector(n, i);
    e[i] = -1;
    visit(e, i);
  }
  while (!frontier.empty()) {
    const auto k = frontier.front();
    frontier.pop_front();
    for (std::size_t i = 0; i < n; ++i) visit(simple_reflection(c, i, out.roots[k]), out.vertex[k]);
  }
  return out;
}

/// x >= 0, x != 0, (x, e_i) <= 0 for all i and supp(x) connected.
inline bool fundamental_set_member(const AbsValuedQuiver& g, const DimVector& x) {
  detail::check_index(g, x);
  if (!is_positive(x)) return false;
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i)
    if (symmetric_form(g, x, unit_vector(n, i)) > 0) return false;
  std::vector<bool> supp(n);
  for (std::size_t i = 0; i < n; ++i) supp[i] = x[i] != 0;
  return detail::connected_subset(g.quiver, supp);
}

/// W-orbit closure of +-F within the coordinate bound, sorted.
inline std::vector<DimVector> imaginary_roots_up_to(const AbsValuedQuiver& g, std::int64_t B,
                                                    std::uint64_t cap = kDefaultCap) {
  const auto c = cartan_matrix(g);
  const std::size_t n = g.d.size();
  long double box = 1;
  for (std::size_t i = 0; i < n; ++i) box *= static_cast<long double>(B + 1);
  if (box > static_cast<long double>(cap)) fail(ErrorKind::SizeLimitExceeded, "coordinate box too large");
  std::set<DimVector> seen;
  std::deque<DimVector> frontier;
  DimVector x(n, 0);
  while (true) {
    if (fundamental_set_member(g, x) && seen.insert(x).second) frontier.push_back(x);
    std::size_t i = 0;
    while (i < n && ++x[i] > B) x[i++] = 0;
    if (i == n) break;
  }
  while (!frontier.empty()) {
    auto y = frontier.front();
    frontier.pop_front();
    for (std::size_t i = 0; i < n; ++i) {
      auto z = simple_reflection(c, i, y);
      if (within_bound(z, B) && seen.insert(z).second) frontier.push_back(z);
    }
  }
  std::vector<DimVector> out(seen.begin(), seen.end());
  for (const auto& y : seen) {
    DimVector z = y;
    for (auto& v : z) v = -v;
    out.push_back(z);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Z-basis of the kernel of the symmetric form matrix, via unimodular row
/// reduction of [S | I].
inline std::vector<DimVector> stable_lattice(const AbsValuedQuiver& g) {
  require_valid(g);
  const auto s = symmetric_matrix(g);
  const std::size_t n = s.size();
  std::vector<std::vector<BigInt>> rows(n, std::vector<BigInt>(2 * n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) rows[i][j] = s[i][j];
    rows[i][n + i] = 1;
  }
  std::size_t r = 0;
  for (std::size_t col = 0; col < n && r < n; ++col) {
    while (true) {
      std::size_t best = n;
      for (std::size_t i = r; i < n; ++i)
        if (rows[i][col] != 0 && (best == n || abs(rows[i][col]) < abs(rows[best][col]))) best = i;
      if (best == n) break;
      std::swap(rows[r], rows[best]);
      bool done = true;
      for (std::size_t i = r + 1; i < n; ++i) {
        if (rows[i][col] == 0) continue;
        const BigInt qt = rows[i][col] / rows[r][col];
        for (std::size_t j = 0; j < 2 * n; ++j) rows[i][j] -= qt * rows[r][j];
        if (rows[i][col] != 0) done = false;
      }
      if (done) {
        ++r;
        break;
      }
    }
  }
  std::vector<DimVector> basis;
  for (std::size_t i = r; i < n; ++i) {
    DimVector v(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = static_cast<std::int64_t>(rows[i][n + j]);
    auto nz = std::find_if(v.begin(), v.end(), [](std::int64_t x) { return x != 0; });
    if (nz != v.end() && *nz < 0)
      for (auto& x : v) x = -x;
    basis.push_back(v);
  }
  std::sort(basis.begin(), basis.end());
  return basis;
}

namespace detail {

inline Rational determinant(std::vector<std::vector<Rational>> a) {
  const std::size_t n = a.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a[i][c] == 0) continue;
      const Rational f = a[i][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  return det;
}

inline Rational principal_minor(const IntMatrix& s, const std::vector<std::size_t>& idx) {
  std::vector<std::vector<Rational>> a(idx.size(), std::vector<Rational>(idx.size()));
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) a[i][j] = s[idx[i]][idx[j]];
  return determinant(std::move(a));
}

inline std::size_t rational_rank(const IntMatrix& s) {
  std::vector<std::vector<Rational>> a(s.size());
  for (std::size_t i = 0; i < s.size(); ++i)
    for (auto v : s[i]) a[i].push_back(v);
  std::size_t r = 0;
  const std::size_t cols = s.empty() ? 0 : s[0].size();
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < a.size(); ++i) {
      if (a[i][c] == 0) continue;
      const Rational f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

}  // namespace detail

/// Definiteness class of D*C: positive definite gives Finite, positive
/// semidefinite with one-dimensional radical gives Affine.
inline RepType classify_type(const AbsValuedQuiver& g) {
  require_valid(g);
  if (!is_connected(g.quiver)) fail(ErrorKind::NotConnected, "classification needs a connected quiver");
  cartan_matrix(g);
  const auto s = symmetric_matrix(g);
  const std::size_t n = s.size();
  bool definite = true;
  for (std::size_t k = 1; k <= n && definite; ++k) {
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    definite = detail::principal_minor(s, idx) > 0;
  }
  if (definite) return RepType::Finite;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) idx.push_back(i);
    if (detail::principal_minor(s, idx) < 0) return RepType::Indefinite;
  }
  return n - detail::rational_rank(s) == 1 ? RepType::Affine : RepType::Indefinite;
}

inline RepType classify_type(const RelValuedQuiver& d) { return classify_type(lift_relative(d)); }

}  // namespace qb
