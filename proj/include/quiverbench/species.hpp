#pragma once
/** @file species.hpp
 *  Finite-field species: validation, crushing, graded dimensions of the tensor
 *  ring, isomorphism tests, truncated path algebras, the Frobenius fixed-point
 *  algebra of a quiver with automorphism and scalar extension to a splitting
 *  field.
 *
 *  Every bimodule is a direct sum of fields GF(q^m) where lambda in K_h acts on
 *  the left through frob^l(embed(lambda)) and lambda in K_t acts on the right
 *  through frob^r(embed(lambda)), frob being the q-Frobenius.
 */

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "quiverbench/finite_field.hpp"
#include "quiverbench/linalg.hpp"
#include "quiverbench/quiver.hpp"

namespace qb {

struct Bimodule {
  std::int64_t m = 1;
  std::int64_t ltwist = 0;  // mod d_head
  std::int64_t rtwist = 0;  // mod d_tail
  auto operator<=>(const Bimodule&) const = default;
};

struct FqSpecies {
  unsigned p = 2;
  unsigned e = 1;
  AbsValuedQuiver shape;
  std::vector<std::vector<Bimodule>> summands;  // aligned with shape.quiver.arrows

  std::uint64_t q() const {
    std::uint64_t r = 1;
    for (unsigned k = 0; k < e; ++k) r *= p;
    return r;
  }
  bool operator==(const FqSpecies&) const = default;
};

using GradedDims = std::vector<std::int64_t>;

/// q = p^e.
inline std::pair<unsigned, unsigned> prime_power(std::uint64_t q) {
  for (unsigned p = 2; p <= q; ++p) {
    if (q % p) continue;
    unsigned e = 0;
    std::uint64_t r = q;
    while (r % p == 0) {
      r /= p;
      ++e;
    }
    if (r != 1) break;
    return {p, e};
  }
  fail(ErrorKind::NotPrime, std::to_string(q) + " is not a prime power");
}

/// Untwisted species with one field bimodule per arrow.
inline FqSpecies untwisted_species(const AbsValuedQuiver& shape, unsigned p, unsigned e = 1) {
  FqSpecies s{p, e, shape, {}};
  for (auto m : shape.m) s.summands.push_back({Bimodule{m, 0, 0}});
  return s;
}

inline FqSpecies trivial_species(const Quiver& q, unsigned p, unsigned e = 1) {
  return untwisted_species(trivially_valued(q), p, e);
}

struct SpeciesReport {
  std::vector<std::string> violations;
  std::vector<std::pair<std::int64_t, std::int64_t>> dims;  // per arrow: (dim over K_t, dim over K_h)
  bool duality = true;  // automatic for field modulations

  bool ok() const { return violations.empty(); }
};

inline SpeciesReport validate_species(const FqSpecies& s) {
  SpeciesReport r;
  const auto qr = validate_abs(s.shape);
  r.violations = qr.violations;
  if (qr.has_loops) r.violations.push_back("loops are not supported");
  if (!detail::is_prime(s.p) || s.p > 17) r.violations.push_back("base characteristic must be a prime <= 17");
  if (s.e < 1) r.violations.push_back("base degree must be positive");
  if (s.summands.size() != s.shape.quiver.arrows.size()) r.violations.push_back("summand lists do not match arrows");
  if (!r.ok()) return r;
  for (auto d : s.shape.d)
    if (d * s.e > 16) r.violations.push_back("vertex field degree exceeds 16");
  for (std::size_t k = 0; k < s.summands.size(); ++k) {
    const auto& id = s.shape.quiver.arrows[k].id;
    const auto dt = s.shape.d[s.shape.quiver.tail(k)], dh = s.shape.d[s.shape.quiver.head(k)];
    std::int64_t total = 0;
    if (s.summands[k].empty()) r.violations.push_back("arrow " + id + " has no bimodule");
    for (const auto& b : s.summands[k]) {
      total += b.m;
      if (b.m <= 0 || b.m % dt || b.m % dh)
        r.violations.push_back("arrow " + id + ": bimodule degree " + std::to_string(b.m) +
                               " is not a common multiple of " + std::to_string(dt) + " and " + std::to_string(dh));
      else if (b.m * s.e > 16)
        r.violations.push_back("arrow " + id + ": bimodule field degree exceeds 16");
      if (b.ltwist < 0 || b.ltwist >= dh || b.rtwist < 0 || b.rtwist >= dt)
        r.violations.push_back("arrow " + id + ": twist out of range");
    }
    if (total != s.shape.m[k]) r.violations.push_back("arrow " + id + ": summand degrees do not add up to m");
    r.dims.emplace_back(s.shape.m[k] / dt, s.shape.m[k] / dh);
  }
  return r;
}

inline void require_valid(const FqSpecies& s) {
  auto r = validate_species(s);
  if (!r.ok()) fail(ErrorKind::InvalidInput, r.violations.front());
}

inline FqSpecies crush_species(const FqSpecies& s) {
  require_valid(s);
  FqSpecies out{s.p, s.e, crush_abs(s.shape), {}};
  std::map<std::string, std::vector<Bimodule>> by_id;
  for (const auto& [ends, ks] : detail::parallel_classes(s.shape.quiver)) {
    auto& list = by_id[s.shape.quiver.arrows[ks.front()].id];
    for (auto k : ks) list.insert(list.end(), s.summands[k].begin(), s.summands[k].end());
    std::sort(list.begin(), list.end());
  }
  for (const auto& a : out.shape.quiver.arrows) out.summands.push_back(by_id[a.id]);
  return out;
}

/// dim over GF(q) of T^n(M) for n <= L: sum over paths of prod m / prod of
/// intermediate d.
inline GradedDims tensor_graded_dim(const AbsValuedQuiver& g, std::size_t L) {
  require_valid(g);
  const auto& q = g.quiver;
  GradedDims out;
  out.push_back(std::accumulate(g.d.begin(), g.d.end(), std::int64_t{0}));
  std::vector<Rational> ending(q.vertices.size(), 0);
  for (std::size_t n = 1; n <= L; ++n) {
    std::vector<Rational> next(q.vertices.size(), 0);
    for (std::size_t k = 0; k < q.arrows.size(); ++k) {
      const auto t = q.tail(k), h = q.head(k);
      next[h] += n == 1 ? Rational(g.m[k]) : ending[t] * g.m[k] / g.d[t];
    }
    ending = std::move(next);
    Rational total = std::accumulate(ending.begin(), ending.end(), Rational(0));
    if (denominator(total) != 1) fail(ErrorKind::InvalidInput, "non-integral tensor dimension");
    out.push_back(static_cast<std::int64_t>(numerator(total)));
  }
  return out;
}

inline GradedDims tensor_graded_dim(const FqSpecies& s, std::size_t L) {
  require_valid(s);
  return tensor_graded_dim(s.shape, L);
}

/// Multiplicities of the simple bimodule classes (r - l) mod gcd(d_t, d_h) in
/// one arrow's bimodule.
inline std::vector<std::int64_t> bimodule_classes(const std::vector<Bimodule>& bs, std::int64_t dt, std::int64_t dh) {
  const std::int64_t g = std::gcd(dt, dh), L = detail::lcm64(dt, dh);
  std::vector<std::int64_t> v(static_cast<std::size_t>(g), 0);
  for (const auto& b : bs) v[static_cast<std::size_t>(detail::mod(b.rtwist - b.ltwist, g))] += b.m / L;
  return v;
}

enum class IsoMode {
  FixedFields,     // vertex fields identified by the identity map
  GaloisTwisted,   // vertex fields may be identified through Frobenius powers
};

struct IsoCertificate {
  std::map<std::string, std::string> vertex_map;
  std::map<std::string, std::int64_t> frobenius_power;  // per source vertex
};

struct IsoResult {
  bool isomorphic = false;
  std::optional<IsoCertificate> certificate;
};

inline IsoResult species_iso_check(const FqSpecies& s1, const FqSpecies& s2, IsoMode mode = IsoMode::FixedFields,
                                   std::uint64_t cap = kDefaultCap) {
  require_valid(s1);
  require_valid(s2);
  IsoResult no;
  if (s1.p != s2.p || s1.e != s2.e) return no;
  const auto &q1 = s1.shape.quiver, &q2 = s2.shape.quiver;
  const std::size_t n = q1.vertices.size();
  if (n != q2.vertices.size() || q1.arrows.size() != q2.arrows.size()) return no;

  using Key = std::pair<std::size_t, std::size_t>;
  auto collect = [](const FqSpecies& s) {
    std::map<Key, std::vector<std::size_t>> arrows;
    const auto& q = s.shape.quiver;
    for (std::size_t k = 0; k < q.arrows.size(); ++k) arrows[{q.tail(k), q.head(k)}].push_back(k);
    return arrows;
  };
  const auto a1 = collect(s1), a2 = collect(s2);
  std::map<Key, std::vector<std::vector<std::int64_t>>> c2;
  for (const auto& [key, ks] : a2) {
    auto& list = c2[key];
    for (auto k : ks)
      list.push_back(bimodule_classes(s2.summands[k], s2.shape.d[key.first], s2.shape.d[key.second]));
    std::sort(list.begin(), list.end());
  }

  long double candidates = 1;
  for (std::size_t i = 2; i <= n; ++i) candidates *= i;
  if (mode == IsoMode::GaloisTwisted)
    for (auto d : s1.shape.d) candidates *= static_cast<long double>(d);
  if (candidates > static_cast<long double>(cap)) fail(ErrorKind::SizeLimitExceeded, "too many candidate isomorphisms");

  std::vector<std::size_t> pi(n);
  std::iota(pi.begin(), pi.end(), 0);
  do {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) ok = s1.shape.d[i] == s2.shape.d[pi[i]];
    if (!ok) continue;
    std::vector<std::int64_t> shift(n, 0);
    while (true) {
      bool match = true;
      for (const auto& [key, ks] : a1) {
        const Key img{pi[key.first], pi[key.second]};
        auto it = c2.find(img);
        if (it == c2.end() || it->second.size() != ks.size()) {
          match = false;
          break;
        }
        const auto dt = s1.shape.d[key.first], dh = s1.shape.d[key.second];
        const std::int64_t g = std::gcd(dt, dh);
        const std::int64_t delta = shift[key.second] - shift[key.first];
        std::vector<std::vector<std::int64_t>> list;
        for (auto k : ks) {
          const auto v = bimodule_classes(s1.summands[k], dt, dh);
          std::vector<std::int64_t> w(v.size());
          for (std::int64_t c = 0; c < g; ++c) w[static_cast<std::size_t>(detail::mod(c + delta, g))] = v[c];
          list.push_back(w);
        }
        std::sort(list.begin(), list.end());
        if (list != it->second) {
          match = false;
          break;
        }
      }
      if (match) {
        IsoCertificate cert;
        for (std::size_t i = 0; i < n; ++i) {
          cert.vertex_map[q1.vertices[i]] = q2.vertices[pi[i]];
          cert.frobenius_power[q1.vertices[i]] = shift[i];
        }
        return IsoResult{true, cert};
      }
      if (mode == IsoMode::FixedFields) break;
      std::size_t i = 0;
      while (i < n && ++shift[i] == s1.shape.d[i]) shift[i++] = 0;
      if (i == n) break;
    }
  } while (std::next_permutation(pi.begin(), pi.end()));
  return no;
}

/// Tensor rings of acyclic species are compared through their crushings, with
/// vertex fields identified up to Frobenius.
inline bool tensor_ring_iso_check(const FqSpecies& s1, const FqSpecies& s2, std::uint64_t cap = kDefaultCap) {
  if (!is_acyclic(s1.shape.quiver) || !is_acyclic(s2.shape.quiver))
    fail(ErrorKind::NotAcyclic, "tensor ring comparison needs acyclic species");
  return species_iso_check(crush_species(s1), crush_species(s2), IsoMode::GaloisTwisted, cap).isomorphic;
}

struct TruncatedAlgebra {
  FieldDesc field;
  Quiver quiver;
  std::size_t L = 0;
  std::vector<Path> basis;  // grouped by length
  std::map<Path, std::size_t> index;

  /// basis[a] * basis[b]: basis[b] is traversed first. Zero is nullopt.
  std::optional<std::size_t> product(std::size_t a, std::size_t b) const {
    const Path &x = basis[a], &y = basis[b];
    if (y.head != x.tail) return std::nullopt;
    if (x.length() + y.length() > L) return std::nullopt;
    Path r{y.tail, x.head, y.arrows};
    r.arrows.insert(r.arrows.end(), x.arrows.begin(), x.arrows.end());
    return index.at(r);
  }
  /// The identity is the sum of the trivial paths.
  std::vector<std::size_t> identity() const {
    std::vector<std::size_t> r;
    for (std::size_t k = 0; k < basis.size(); ++k)
      if (basis[k].arrows.empty()) r.push_back(k);
    return r;
  }
};

inline TruncatedAlgebra path_algebra_truncated(const Quiver& q, const FieldDesc& field, std::size_t L) {
  auto rep = validate_quiver(q);
  if (!rep.ok()) fail(ErrorKind::InvalidInput, rep.violations.front());
  TruncatedAlgebra a{field, q, L, {}, {}};
  for (auto& level : paths_up_to(q, L))
    for (auto& p : level) {
      a.index[p] = a.basis.size();
      a.basis.push_back(p);
    }
  return a;
}

namespace detail {

inline std::uint64_t lcm_u(std::uint64_t a, std::uint64_t b) { return a / std::gcd(a, b) * b; }

/// F_p-basis of the fixed field of frob_q^r inside E, i.e. of GF(q^r).
inline std::vector<Elem> fixed_subfield_basis(const Field& E, unsigned e, unsigned r) {
  const unsigned n = E.degree();
  const auto Fp = gf(E.p(), 1);
  Matrix a(n, n);
  Elem xj = 1;
  for (unsigned j = 0; j < n; ++j) {
    const Elem v = E.sub(E.frobenius(xj, e * r), xj);
    for (unsigned k = 0; k < n; ++k) a(k, j) = E.digit(v, k);
    xj = E.mul(xj, E.gen());
  }
  std::vector<Elem> out;
  for (const auto& v : nullspace(*Fp, a)) {
    Elem z = 0, xk = 1;
    for (unsigned k = 0; k < n; ++k) {
      if (v[k]) z = E.add(z, E.mul(v[k], xk));
      xk = E.mul(xk, E.gen());
    }
    out.push_back(z);
  }
  return out;
}

inline unsigned path_orbit_lcm(const std::vector<std::vector<std::vector<Path>>>& orbits) {
  std::uint64_t N = 1;
  for (const auto& level : orbits)
    for (const auto& o : level) N = lcm_u(N, o.size());
  return static_cast<unsigned>(std::min<std::uint64_t>(N, 1u << 20));
}

}  // namespace detail

/// Per degree, the GF(q)-dimension of the paths fixed by F(sum c_p p) =
/// sum c_p^q sigma(p), computed by solving the fixed-point equations over
/// GF(q^N); each orbit of size r contributes dim of {c : c^{q^r} = c}.
inline GradedDims frobenius_fixed_dims(const Quiver& q, const QuiverAutomorphism& s, std::uint64_t qsize,
                                       std::size_t L) {
  const auto [p, e] = prime_power(qsize);
  const auto orbits = path_orbits(q, s, L);
  const unsigned N = detail::path_orbit_lcm(orbits);
  std::map<unsigned, std::int64_t> by_size;
  GradedDims out;
  for (const auto& level : orbits) {
    std::int64_t total = 0;
    for (const auto& o : level) {
      const unsigned r = static_cast<unsigned>(o.size());
      auto it = by_size.find(r);
      if (it == by_size.end()) {
        // Work in GF(q^N) when it fits, else in GF(q^r) for this orbit alone.
        const unsigned deg = e * N <= 16 ? e * N : e * r;
        if (deg > 16) fail(ErrorKind::DegreeTooLarge, "orbit of size " + std::to_string(r) + " needs GF(q^r) too large");
        const auto E = gf(p, deg);
        const auto dim_p = static_cast<std::int64_t>(detail::fixed_subfield_basis(*E, e, r).size());
        it = by_size.emplace(r, dim_p / e).first;
      }
      total += it->second;
    }
    out.push_back(total);
  }
  return out;
}

/// Species of a folded quiver. Base points are the least ids in each orbit;
/// for the base arrow a of an orbit, h(a) = sigma^l(base head) and
/// t(a) = sigma^r(base tail) define the twists.
inline FqSpecies species_from_folding(const Quiver& q, const QuiverAutomorphism& s, std::uint64_t qsize) {
  const auto [p, e] = prime_power(qsize);
  const auto sigma = index_automorphism(q, s);
  const auto vorb = perm_orbits(sigma.v);
  std::vector<std::size_t> orbit_of(q.vertices.size());
  for (std::size_t o = 0; o < vorb.size(); ++o)
    for (auto i : vorb[o]) orbit_of[i] = o;
  for (std::size_t k = 0; k < q.arrows.size(); ++k)
    if (orbit_of[q.tail(k)] == orbit_of[q.head(k)])
      fail(ErrorKind::LoopInOrbit, "arrow " + q.arrows[k].id + " joins two vertices of one orbit");
  FqSpecies out{p, e, fold(q, s), {}};
  auto offset = [&](std::size_t v) {
    const auto& orb = vorb[orbit_of[v]];
    return static_cast<std::int64_t>(std::find(orb.begin(), orb.end(), v) - orb.begin());
  };
  for (std::size_t k = 0; k < out.shape.quiver.arrows.size(); ++k) {
    const auto base = q.arrow_index(out.shape.quiver.arrows[k].id);
    out.summands.push_back({Bimodule{out.shape.m[k], offset(q.head(base)), offset(q.tail(base))}});
  }
  return out;
}

struct FrobeniusReport {
  GradedDims fixed_dims;
  GradedDims tensor_dims;
  bool dims_equal = false;
  bool closure_ok = false;
  std::size_t products_checked = 0;

  bool pass() const { return dims_equal && closure_ok; }
};

namespace detail {

using Sparse = std::map<Path, Elem>;

inline Sparse frobenius_apply(const Field& E, unsigned e, const IndexAutomorphism& sigma, const Sparse& x) {
  Sparse r;
  for (const auto& [p, c] : x) r[apply_automorphism(sigma, p)] = E.frobenius(c, e);
  return r;
}

inline Sparse path_product(const Field& E, const Sparse& x, const Sparse& y, std::size_t L) {
  Sparse r;
  for (const auto& [a, ca] : x)
    for (const auto& [b, cb] : y) {
      if (b.head != a.tail || a.length() + b.length() > L) continue;
      Path ab{b.tail, a.head, b.arrows};
      ab.arrows.insert(ab.arrows.end(), a.arrows.begin(), a.arrows.end());
      Elem& slot = r[ab];
      slot = E.add(slot, E.mul(ca, cb));
    }
  for (auto it = r.begin(); it != r.end();) it = it->second ? std::next(it) : r.erase(it);
  return r;
}

}  // namespace detail

inline FrobeniusReport verify_frobenius_iso(const Quiver& q, const QuiverAutomorphism& s, std::uint64_t qsize,
                                            std::size_t L) {
  const auto [p, e] = prime_power(qsize);
  FrobeniusReport rep;
  rep.fixed_dims = frobenius_fixed_dims(q, s, qsize, L);
  rep.tensor_dims = tensor_graded_dim(species_from_folding(q, s, qsize), L);
  rep.dims_equal = rep.fixed_dims == rep.tensor_dims;

  const auto orbits = path_orbits(q, s, L);
  const unsigned N = detail::path_orbit_lcm(orbits);
  if (e * N > 16) fail(ErrorKind::DegreeTooLarge, "closure check needs GF(q^N) with eN <= 16");
  const auto E = gf(p, e * N);
  const auto sigma = index_automorphism(q, s);
  std::vector<std::pair<std::size_t, detail::Sparse>> fixed;  // (degree, element)
  std::map<unsigned, std::vector<Elem>> sub_basis;
  for (std::size_t n = 0; n <= L; ++n)
    for (const auto& o : orbits[n]) {
      const unsigned r = static_cast<unsigned>(o.size());
      if (!sub_basis.count(r)) sub_basis[r] = detail::fixed_subfield_basis(*E, e, r);
      for (Elem lambda : sub_basis[r]) {
        detail::Sparse x;
        Elem c = lambda;
        for (std::size_t j = 0; j < r; ++j, c = E->frobenius(c, e)) x[o[j]] = c;
        fixed.emplace_back(n, std::move(x));
      }
    }
  bool ok = true;
  for (const auto& [n, x] : fixed) ok = ok && detail::frobenius_apply(*E, e, sigma, x) == x;
  for (const auto& [n1, x] : fixed)
    for (const auto& [n2, y] : fixed) {
      if (n1 + n2 > L) continue;
      const auto xy = detail::path_product(*E, x, y, L);
      ++rep.products_checked;
      for (const auto& [path, c] : xy) ok = ok && path.length() == n1 + n2;
      ok = ok && detail::frobenius_apply(*E, e, sigma, xy) == xy;
    }
  rep.closure_ok = ok;
  return rep;
}

struct ScalarExtension {
  Quiver quiver;
  /// multiplicity[(i, c), (j, c')] for arrows from vertex (i, c) to (j, c').
  std::map<std::pair<std::string, std::string>, std::int64_t> multiplicity;
  unsigned N = 1;  // splitting field GF(q^N)
};

namespace detail {

inline std::string ext_vertex(const std::string& v, std::int64_t c) { return v + ":" + std::to_string(c); }

/// Idempotents of E (x)_{F_q} M for the action of the generator y of K,
/// labelled by the conjugate frob^c(root) of y in E.
inline std::vector<Matrix> idempotents(const Field& E, unsigned e, const Matrix& action, Elem root, std::int64_t d) {
  const std::size_t m = action.rows;
  std::vector<Elem> conj;
  for (std::int64_t c = 0; c < d; ++c) conj.push_back(E.frobenius(root, static_cast<unsigned>(e * c)));
  std::vector<Matrix> out;
  for (std::int64_t c = 0; c < d; ++c) {
    Matrix P = Matrix::identity(m);
    for (std::int64_t c2 = 0; c2 < d; ++c2) {
      if (c2 == c) continue;
      Matrix f = action;
      for (std::size_t i = 0; i < m; ++i) f(i, i) = E.sub(f(i, i), conj[c2]);
      P = mat_scale(E, E.inv(E.sub(conj[c], conj[c2])), mat_mul(E, P, f));
    }
    out.push_back(std::move(P));
  }
  return out;
}

/// Multiplicity table of one bimodule over E, together with the roots used
/// for the tail and head labels.
struct BimoduleExtension {
  std::vector<std::vector<std::int64_t>> mult;  // [tail class][head class]
};

inline BimoduleExtension extend_bimodule(unsigned p, unsigned e, const Bimodule& b, std::int64_t dt, std::int64_t dh,
                                         const FieldPtr& E, Elem root_t, Elem root_h) {
  const auto Fq = gf(p, e), M = gf(p, e * static_cast<unsigned>(b.m));
  const auto Kt = gf(p, e * static_cast<unsigned>(dt)), Kh = gf(p, e * static_cast<unsigned>(dh));
  const auto fq_m = embed(Fq, M), fq_e = embed(Fq, E);
  const RelativeCoords over_fq(Fq, M, [&](Elem a) { return fq_m(a); });
  const auto m = static_cast<std::size_t>(b.m);
  auto action = [&](Elem factor) {
    Matrix a(m, m);
    for (std::size_t s = 0; s < m; ++s) {
      const auto c = over_fq.coords(M->mul(factor, over_fq.basis(static_cast<unsigned>(s))));
      for (std::size_t r = 0; r < m; ++r) a(r, s) = fq_e(c[r]);
    }
    return a;
  };
  const Elem yl = M->frobenius(embed(Kh, M)(Kh->gen()), e * static_cast<unsigned>(b.ltwist));
  const Elem yr = M->frobenius(embed(Kt, M)(Kt->gen()), e * static_cast<unsigned>(b.rtwist));
  const auto P = dh > 1 ? idempotents(*E, e, action(yl), root_h, dh) : std::vector<Matrix>{Matrix::identity(m)};
  const auto Q = dt > 1 ? idempotents(*E, e, action(yr), root_t, dt) : std::vector<Matrix>{Matrix::identity(m)};
  BimoduleExtension out;
  out.mult.assign(static_cast<std::size_t>(dt), std::vector<std::int64_t>(static_cast<std::size_t>(dh), 0));
  for (std::size_t ct = 0; ct < Q.size(); ++ct)
    for (std::size_t ch = 0; ch < P.size(); ++ch)
      out.mult[ct][ch] = static_cast<std::int64_t>(rank(*E, mat_mul(*E, P[ch], Q[ct])));
  return out;
}

inline std::map<std::pair<std::string, std::string>, std::int64_t> extension_table(
    const FqSpecies& s, const FieldPtr& E, const std::vector<Elem>& roots) {
  std::map<std::pair<std::string, std::string>, std::int64_t> table;
  const auto& q = s.shape.quiver;
  for (std::size_t k = 0; k < q.arrows.size(); ++k) {
    const auto t = q.tail(k), h = q.head(k);
    for (const auto& b : s.summands[k]) {
      const auto ext = extend_bimodule(s.p, s.e, b, s.shape.d[t], s.shape.d[h], E, roots[t], roots[h]);
      for (std::size_t ct = 0; ct < ext.mult.size(); ++ct)
        for (std::size_t ch = 0; ch < ext.mult[ct].size(); ++ch)
          if (ext.mult[ct][ch])
            table[{ext_vertex(q.vertices[t], static_cast<std::int64_t>(ct)),
                   ext_vertex(q.vertices[h], static_cast<std::int64_t>(ch))}] += ext.mult[ct][ch];
    }
  }
  return table;
}

}  // namespace detail

/// Quiver of E (x) T(M) over a splitting field E = GF(q^N): vertices (i, c) are
/// the primitive idempotents of E (x) K_i, labelled by the conjugate
/// frob^c(embed(y_i)) of the generator y_i of K_i, and arrow multiplicities are
/// ranks of idempotent-cut pieces of E (x) M. The table is recomputed over
/// GF(q^{2N}) when that field fits and must agree after relabelling.
inline ScalarExtension scalar_extension_quiver(const FqSpecies& s) {
  require_valid(s);
  if (!is_acyclic(s.shape.quiver)) fail(ErrorKind::NotAcyclic, "scalar extension needs an acyclic species");
  const auto& q = s.shape.quiver;
  std::uint64_t N = 1;
  for (auto d : s.shape.d) N = detail::lcm_u(N, static_cast<std::uint64_t>(d));
  for (const auto& list : s.summands)
    for (const auto& b : list) N = detail::lcm_u(N, static_cast<std::uint64_t>(b.m));
  if (s.e * N > 16) fail(ErrorKind::DegreeTooLarge, "splitting field GF(q^N) exceeds degree 16");
  const unsigned n = static_cast<unsigned>(N);
  const auto E = gf(s.p, s.e * n);
  std::vector<Elem> roots;
  for (auto d : s.shape.d) {
    const auto K = gf(s.p, s.e * static_cast<unsigned>(d));
    roots.push_back(embed(K, E)(K->gen()));
  }
  ScalarExtension out;
  out.N = n;
  out.multiplicity = detail::extension_table(s, E, roots);

  std::uint64_t relabellings = 1;
  for (auto d : s.shape.d) relabellings *= static_cast<std::uint64_t>(d);
  if (2 * s.e * n <= 16 && relabellings <= 100000) {
    const auto E2 = gf(s.p, 2 * s.e * n);
    std::vector<Elem> roots2;
    for (auto d : s.shape.d) {
      const auto K = gf(s.p, s.e * static_cast<unsigned>(d));
      roots2.push_back(embed(K, E2)(K->gen()));
    }
    const auto table2 = detail::extension_table(s, E2, roots2);
    // The labels over the two fields differ by a cyclic shift at each vertex.
    auto move = [&](const std::string& label, const std::vector<std::int64_t>& shift) {
      const auto colon = label.rfind(':');
      const auto i = q.vertex_index(label.substr(0, colon));
      const auto c = std::stoll(label.substr(colon + 1));
      return detail::ext_vertex(q.vertices[i], detail::mod(c + shift[i], s.shape.d[i]));
    };
    std::vector<std::int64_t> shift(s.shape.d.size(), 0);
    bool agree = false;
    while (!agree) {
      std::map<std::pair<std::string, std::string>, std::int64_t> relabelled;
      for (const auto& [key, mult] : out.multiplicity) relabelled[{move(key.first, shift), move(key.second, shift)}] = mult;
      agree = relabelled == table2;
      std::size_t i = 0;
      while (i < shift.size() && ++shift[i] == s.shape.d[i]) shift[i++] = 0;
      if (i == shift.size()) break;
    }
    if (!agree) fail(ErrorKind::InvalidInput, "scalar extension differs between GF(q^N) and GF(q^2N)");
  }

  std::vector<std::string> vs;
  for (std::size_t i = 0; i < q.vertices.size(); ++i)
    for (std::int64_t c = 0; c < s.shape.d[i]; ++c) vs.push_back(detail::ext_vertex(q.vertices[i], c));
  std::vector<Arrow> as;
  std::size_t counter = 0;
  for (const auto& [key, mult] : out.multiplicity)
    for (std::int64_t k = 0; k < mult; ++k)
      as.push_back(Arrow{"x" + std::to_string(counter++), key.first, key.second});
  // Zero-pad arrow ids so that lexicographic and creation order agree.
  const auto width = std::to_string(counter).size();
  for (auto& a : as) a.id = "x" + std::string(width - (a.id.size() - 1), '0') + a.id.substr(1);
  out.quiver = Quiver::make(vs, as);
  return out;
}

}  // namespace qb
