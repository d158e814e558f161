#pragma once
/** @file quiver.hpp
 *  Quivers, valued quivers in the absolute and relative flavors, automorphisms,
 *  paths, folding and unfolding, the functor F and crushing.
 */

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "quiverbench/error.hpp"

namespace qb {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

struct Arrow {
  std::string id, tail, head;
  auto operator<=>(const Arrow&) const = default;
};

/// Vertices and arrows are kept sorted lexicographically by id.
struct Quiver {
  std::vector<std::string> vertices;
  std::vector<Arrow> arrows;

  static Quiver make(std::vector<std::string> vs, std::vector<Arrow> as) {
    std::sort(vs.begin(), vs.end());
    std::sort(as.begin(), as.end(), [](const Arrow& a, const Arrow& b) { return a.id < b.id; });
    return Quiver{std::move(vs), std::move(as)};
  }

  std::optional<std::size_t> find_vertex(const std::string& id) const {
    auto it = std::lower_bound(vertices.begin(), vertices.end(), id);
    if (it == vertices.end() || *it != id) return std::nullopt;
    return static_cast<std::size_t>(it - vertices.begin());
  }
  std::optional<std::size_t> find_arrow(const std::string& id) const {
    auto it = std::lower_bound(arrows.begin(), arrows.end(), id,
                               [](const Arrow& a, const std::string& s) { return a.id < s; });
    if (it == arrows.end() || it->id != id) return std::nullopt;
    return static_cast<std::size_t>(it - arrows.begin());
  }
  std::size_t vertex_index(const std::string& id) const {
    auto k = find_vertex(id);
    if (!k) fail(ErrorKind::InvalidInput, "unknown vertex " + id);
    return *k;
  }
  std::size_t arrow_index(const std::string& id) const {
    auto k = find_arrow(id);
    if (!k) fail(ErrorKind::InvalidInput, "unknown arrow " + id);
    return *k;
  }
  std::size_t tail(std::size_t a) const { return vertex_index(arrows[a].tail); }
  std::size_t head(std::size_t a) const { return vertex_index(arrows[a].head); }

  bool operator==(const Quiver&) const = default;
};

/// Values aligned with the sorted vertex and arrow lists of the quiver.
struct AbsValuedQuiver {
  Quiver quiver;
  std::vector<std::int64_t> d;
  std::vector<std::int64_t> m;

  bool operator==(const AbsValuedQuiver&) const = default;
};

struct RelValuedQuiver {
  Quiver quiver;
  std::vector<std::pair<std::int64_t, std::int64_t>> dval;  // (d_ij, d_ji) for an arrow i -> j

  bool operator==(const RelValuedQuiver&) const = default;
};

struct QuiverAutomorphism {
  std::map<std::string, std::string> vertex_map;
  std::map<std::string, std::string> arrow_map;

  bool operator==(const QuiverAutomorphism&) const = default;
};

/// A path stored in traversal order: arrows[0] is applied first, so as a
/// composition it reads arrows.back() ... arrows[0].
struct Path {
  std::size_t tail = 0, head = 0;
  std::vector<std::size_t> arrows;

  std::size_t length() const { return arrows.size(); }
  auto operator<=>(const Path&) const = default;
};

struct QuiverReport {
  std::vector<std::string> violations;
  bool connected = true;
  bool acyclic = true;
  bool has_loops = false;

  bool ok() const { return violations.empty(); }
};

namespace detail {

inline std::vector<std::vector<std::size_t>> undirected_adjacency(const Quiver& q) {
  std::vector<std::vector<std::size_t>> adj(q.vertices.size());
  for (const auto& a : q.arrows) {
    auto t = q.find_vertex(a.tail), h = q.find_vertex(a.head);
    if (!t || !h) continue;
    adj[*t].push_back(*h);
    adj[*h].push_back(*t);
  }
  return adj;
}

inline bool connected_subset(const Quiver& q, const std::vector<bool>& keep) {
  const auto adj = undirected_adjacency(q);
  std::size_t start = keep.size(), total = 0;
  for (std::size_t i = 0; i < keep.size(); ++i)
    if (keep[i]) {
      ++total;
      if (start == keep.size()) start = i;
    }
  if (total <= 1) return true;
  std::vector<bool> seen(keep.size(), false);
  std::vector<std::size_t> stack{start};
  seen[start] = true;
  std::size_t count = 0;
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    ++count;
    for (auto w : adj[v])
      if (keep[w] && !seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
  }
  return count == total;
}

inline std::int64_t lcm64(std::int64_t a, std::int64_t b) { return a / std::gcd(a, b) * b; }

inline std::int64_t mod(std::int64_t a, std::int64_t n) { return ((a % n) + n) % n; }

}  // namespace detail

inline bool is_connected(const Quiver& q) {
  return detail::connected_subset(q, std::vector<bool>(q.vertices.size(), true));
}

inline bool is_acyclic(const Quiver& q) {
  std::vector<std::size_t> indeg(q.vertices.size(), 0);
  std::vector<std::vector<std::size_t>> out(q.vertices.size());
  for (const auto& a : q.arrows) {
    auto t = q.find_vertex(a.tail), h = q.find_vertex(a.head);
    if (!t || !h) continue;
    out[*t].push_back(*h);
    ++indeg[*h];
  }
  std::vector<std::size_t> ready;
  for (std::size_t i = 0; i < indeg.size(); ++i)
    if (!indeg[i]) ready.push_back(i);
  std::size_t seen = 0;
  while (!ready.empty()) {
    const auto v = ready.back();
    ready.pop_back();
    ++seen;
    for (auto w : out[v])
      if (--indeg[w] == 0) ready.push_back(w);
  }
  return seen == q.vertices.size();
}

inline QuiverReport validate_quiver(const Quiver& q) {
  QuiverReport r;
  std::set<std::string> vs(q.vertices.begin(), q.vertices.end());
  if (vs.size() != q.vertices.size()) r.violations.push_back("duplicate vertex id");
  std::set<std::string> as;
  for (const auto& a : q.arrows) {
    if (!as.insert(a.id).second) r.violations.push_back("duplicate arrow id " + a.id);
    if (!vs.count(a.tail) || !vs.count(a.head)) r.violations.push_back("unknown endpoint on arrow " + a.id);
    if (a.tail == a.head) r.has_loops = true;
  }
  if (!std::is_sorted(q.vertices.begin(), q.vertices.end()) ||
      !std::is_sorted(q.arrows.begin(), q.arrows.end(), [](const Arrow& a, const Arrow& b) { return a.id < b.id; }))
    r.violations.push_back("ids not in canonical order");
  r.connected = is_connected(q);
  r.acyclic = is_acyclic(q);
  return r;
}

inline QuiverReport validate_abs(const AbsValuedQuiver& g) {
  QuiverReport r = validate_quiver(g.quiver);
  if (g.d.size() != g.quiver.vertices.size() || g.m.size() != g.quiver.arrows.size()) {
    r.violations.push_back("value vectors do not match the quiver");
    return r;
  }
  for (std::size_t i = 0; i < g.d.size(); ++i)
    if (g.d[i] <= 0) r.violations.push_back("vertex " + g.quiver.vertices[i] + ": value must be positive");
  if (!r.ok()) return r;
  for (std::size_t k = 0; k < g.m.size(); ++k) {
    const auto& a = g.quiver.arrows[k];
    const auto dt = g.d[g.quiver.tail(k)], dh = g.d[g.quiver.head(k)];
    if (g.m[k] <= 0)
      r.violations.push_back("arrow " + a.id + ": value must be positive");
    else if (g.m[k] % dt || g.m[k] % dh)
      r.violations.push_back("arrow " + a.id + ": m=" + std::to_string(g.m[k]) +
                             " is not a common multiple of " + std::to_string(dt) + " and " + std::to_string(dh));
  }
  return r;
}

inline void require_valid(const AbsValuedQuiver& g) {
  auto r = validate_abs(g);
  if (!r.ok()) fail(ErrorKind::InvalidInput, r.violations.front());
}

inline AbsValuedQuiver trivially_valued(const Quiver& q) {
  return AbsValuedQuiver{q, std::vector<std::int64_t>(q.vertices.size(), 1),
                         std::vector<std::int64_t>(q.arrows.size(), 1)};
}

/// For rho: i -> j, d_ij = m/d_j and d_ji = m/d_i.
inline RelValuedQuiver functor_F(const AbsValuedQuiver& g) {
  require_valid(g);
  RelValuedQuiver r{g.quiver, {}};
  for (std::size_t k = 0; k < g.m.size(); ++k)
    r.dval.emplace_back(g.m[k] / g.d[g.quiver.head(k)], g.m[k] / g.d[g.quiver.tail(k)]);
  return r;
}

namespace detail {

/// Positive rational solution of d_ij f_j = d_ji f_i propagated over a BFS
/// spanning tree from the least vertex; nullopt on cycle inconsistency.
inline std::optional<std::vector<Rational>> solve_f(const RelValuedQuiver& d) {
  const auto& q = d.quiver;
  const std::size_t n = q.vertices.size();
  std::vector<std::optional<Rational>> f(n);
  std::vector<std::vector<std::size_t>> inc(n);
  for (std::size_t k = 0; k < q.arrows.size(); ++k) {
    inc[q.tail(k)].push_back(k);
    inc[q.head(k)].push_back(k);
  }
  for (std::size_t root = 0; root < n; ++root) {
    if (f[root]) continue;
    f[root] = Rational(1);
    std::queue<std::size_t> bfs;
    bfs.push(root);
    while (!bfs.empty()) {
      const auto v = bfs.front();
      bfs.pop();
      for (auto k : inc[v]) {
        const auto i = q.tail(k), j = q.head(k);
        const auto [dij, dji] = d.dval[k];
        if (v == i && !f[j]) {
          f[j] = Rational(dji) * *f[i] / dij;
          bfs.push(j);
        } else if (v == j && !f[i]) {
          f[i] = Rational(dij) * *f[j] / dji;
          bfs.push(i);
        }
      }
    }
  }
  std::vector<Rational> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = *f[i];
  for (std::size_t k = 0; k < q.arrows.size(); ++k) {
    const auto [dij, dji] = d.dval[k];
    if (Rational(dij) * out[q.head(k)] != Rational(dji) * out[q.tail(k)]) return std::nullopt;
  }
  return out;
}

}  // namespace detail

inline QuiverReport validate_relative(const RelValuedQuiver& d) {
  QuiverReport r = validate_quiver(d.quiver);
  if (d.dval.size() != d.quiver.arrows.size()) {
    r.violations.push_back("value vector does not match the quiver");
    return r;
  }
  for (std::size_t k = 0; k < d.dval.size(); ++k)
    if (d.dval[k].first <= 0 || d.dval[k].second <= 0)
      r.violations.push_back("arrow " + d.quiver.arrows[k].id + ": values must be positive");
  if (r.ok() && !detail::solve_f(d)) r.violations.push_back("no positive solution f of the valuation system");
  return r;
}

inline AbsValuedQuiver lift_relative(const RelValuedQuiver& d) {
  auto rep = validate_quiver(d.quiver);
  if (!rep.ok()) fail(ErrorKind::InvalidInput, rep.violations.front());
  if (!rep.connected) fail(ErrorKind::NotConnected, "lift_relative needs a connected quiver");
  for (const auto& [a, b] : d.dval)
    if (a <= 0 || b <= 0) fail(ErrorKind::InvalidInput, "relative values must be positive");
  auto f = detail::solve_f(d);
  if (!f) fail(ErrorKind::InconsistentValuation, "cycle condition fails for the relative values");
  BigInt den = 1;
  for (const auto& x : *f) den = boost::multiprecision::lcm(den, boost::multiprecision::denominator(x));
  BigInt g = 0;
  std::vector<BigInt> ints;
  for (const auto& x : *f) {
    ints.push_back(boost::multiprecision::numerator(x) * (den / boost::multiprecision::denominator(x)));
    g = boost::multiprecision::gcd(g, ints.back());
  }
  AbsValuedQuiver out{d.quiver, {}, {}};
  for (auto& x : ints) out.d.push_back(static_cast<std::int64_t>(x / g));
  for (std::size_t k = 0; k < d.dval.size(); ++k) out.m.push_back(d.dval[k].first * out.d[d.quiver.head(k)]);
  return out;
}

inline void require_automorphism(const Quiver& q, const QuiverAutomorphism& s) {
  auto bad = [](const std::string& why) { fail(ErrorKind::InvalidAutomorphism, why); };
  if (s.vertex_map.size() != q.vertices.size() || s.arrow_map.size() != q.arrows.size())
    bad("maps must be defined on every vertex and arrow");
  std::set<std::string> vimg, aimg;
  for (const auto& v : q.vertices) {
    auto it = s.vertex_map.find(v);
    if (it == s.vertex_map.end() || !q.find_vertex(it->second)) bad("vertex map undefined at " + v);
    vimg.insert(it->second);
  }
  for (const auto& a : q.arrows) {
    auto it = s.arrow_map.find(a.id);
    if (it == s.arrow_map.end() || !q.find_arrow(it->second)) bad("arrow map undefined at " + a.id);
    aimg.insert(it->second);
    const auto& b = q.arrows[q.arrow_index(it->second)];
    if (s.vertex_map.at(a.tail) != b.tail || s.vertex_map.at(a.head) != b.head)
      bad("arrow " + a.id + " is not mapped compatibly with its endpoints");
  }
  if (vimg.size() != q.vertices.size() || aimg.size() != q.arrows.size()) bad("maps are not bijections");
}

struct IndexAutomorphism {
  std::vector<std::size_t> v, a;
};

inline IndexAutomorphism index_automorphism(const Quiver& q, const QuiverAutomorphism& s) {
  require_automorphism(q, s);
  IndexAutomorphism r;
  for (const auto& v : q.vertices) r.v.push_back(q.vertex_index(s.vertex_map.at(v)));
  for (const auto& a : q.arrows) r.a.push_back(q.arrow_index(s.arrow_map.at(a.id)));
  return r;
}

inline QuiverAutomorphism identity_automorphism(const Quiver& q) {
  QuiverAutomorphism s;
  for (const auto& v : q.vertices) s.vertex_map[v] = v;
  for (const auto& a : q.arrows) s.arrow_map[a.id] = a.id;
  return s;
}

/// Orbits of a permutation; each orbit lists its least element first and then
/// follows the permutation.
inline std::vector<std::vector<std::size_t>> perm_orbits(const std::vector<std::size_t>& perm) {
  std::vector<std::vector<std::size_t>> orbits;
  std::vector<bool> seen(perm.size(), false);
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (seen[i]) continue;
    std::vector<std::size_t> orb;
    for (std::size_t j = i; !seen[j]; j = perm[j]) {
      seen[j] = true;
      orb.push_back(j);
    }
    orbits.push_back(std::move(orb));
  }
  return orbits;
}

/// Folded quiver: vertices and arrows are orbits labelled by their least id.
inline AbsValuedQuiver fold(const Quiver& q, const QuiverAutomorphism& s) {
  const auto sigma = index_automorphism(q, s);
  const auto vorb = perm_orbits(sigma.v), aorb = perm_orbits(sigma.a);
  std::vector<std::size_t> vlabel(q.vertices.size());
  std::vector<std::string> vs;
  std::map<std::string, std::int64_t> dv;
  for (const auto& o : vorb) {
    for (auto i : o) vlabel[i] = o.front();
    vs.push_back(q.vertices[o.front()]);
    dv[vs.back()] = static_cast<std::int64_t>(o.size());
  }
  std::vector<Arrow> as;
  std::map<std::string, std::int64_t> mv;
  for (const auto& o : aorb) {
    const auto k = o.front();
    as.push_back(Arrow{q.arrows[k].id, q.vertices[vlabel[q.tail(k)]], q.vertices[vlabel[q.head(k)]]});
    mv[q.arrows[k].id] = static_cast<std::int64_t>(o.size());
  }
  AbsValuedQuiver g{Quiver::make(vs, as), {}, {}};
  for (const auto& v : g.quiver.vertices) g.d.push_back(dv[v]);
  for (const auto& a : g.quiver.arrows) g.m.push_back(mv[a.id]);
  return g;
}

inline std::string unfold_vertex_id(const std::string& v, std::int64_t j) {
  return "v:" + v + ":" + std::to_string(j);
}
inline std::string unfold_arrow_id(const std::string& a, std::int64_t k) {
  return "a:" + a + ":" + std::to_string(k);
}

/// Quiver with automorphism folding onto g. Indices are 1-based and
/// t(a_rho(k)) = v_{t(rho)}(k mod d_t) with representatives taken in 1..d_t.
inline std::pair<Quiver, QuiverAutomorphism> unfold(const AbsValuedQuiver& g) {
  require_valid(g);
  const auto& q = g.quiver;
  auto rep = [](std::int64_t x, std::int64_t y) { return detail::mod(x - 1, y) + 1; };
  std::vector<std::string> vs;
  std::vector<Arrow> as;
  QuiverAutomorphism s;
  for (std::size_t i = 0; i < q.vertices.size(); ++i)
    for (std::int64_t j = 1; j <= g.d[i]; ++j) {
      vs.push_back(unfold_vertex_id(q.vertices[i], j));
      s.vertex_map[vs.back()] = unfold_vertex_id(q.vertices[i], j % g.d[i] + 1);
    }
  for (std::size_t k = 0; k < q.arrows.size(); ++k) {
    const auto t = q.tail(k), h = q.head(k);
    for (std::int64_t j = 1; j <= g.m[k]; ++j) {
      as.push_back(Arrow{unfold_arrow_id(q.arrows[k].id, j), unfold_vertex_id(q.vertices[t], rep(j, g.d[t])),
                         unfold_vertex_id(q.vertices[h], rep(j, g.d[h]))});
      s.arrow_map[as.back().id] = unfold_arrow_id(q.arrows[k].id, j % g.m[k] + 1);
    }
  }
  return {Quiver::make(vs, as), s};
}

namespace detail {

/// Groups of parallel arrows keyed by (tail, head) index pairs.
inline std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> parallel_classes(const Quiver& q) {
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> groups;
  for (std::size_t k = 0; k < q.arrows.size(); ++k) groups[{q.tail(k), q.head(k)}].push_back(k);
  return groups;
}

}  // namespace detail

/// Merges parallel arrows; the merged arrow keeps the least id of its class.
inline AbsValuedQuiver crush_abs(const AbsValuedQuiver& g) {
  require_valid(g);
  std::vector<Arrow> as;
  std::map<std::string, std::int64_t> mv;
  for (const auto& [ends, ks] : detail::parallel_classes(g.quiver)) {
    as.push_back(g.quiver.arrows[ks.front()]);
    std::int64_t sum = 0;
    for (auto k : ks) sum += g.m[k];
    mv[as.back().id] = sum;
  }
  AbsValuedQuiver out{Quiver::make(g.quiver.vertices, as), g.d, {}};
  for (const auto& a : out.quiver.arrows) out.m.push_back(mv[a.id]);
  return out;
}

inline RelValuedQuiver crush_rel(const RelValuedQuiver& d) {
  std::vector<Arrow> as;
  std::map<std::string, std::pair<std::int64_t, std::int64_t>> vals;
  for (const auto& [ends, ks] : detail::parallel_classes(d.quiver)) {
    as.push_back(d.quiver.arrows[ks.front()]);
    std::pair<std::int64_t, std::int64_t> sum{0, 0};
    for (auto k : ks) {
      sum.first += d.dval[k].first;
      sum.second += d.dval[k].second;
    }
    vals[as.back().id] = sum;
  }
  RelValuedQuiver out{Quiver::make(d.quiver.vertices, as), {}};
  for (const auto& a : out.quiver.arrows) out.dval.push_back(vals[a.id]);
  return out;
}

namespace detail {

template <class Valued, class ArrowOk>
bool check_morphism_impl(const Valued& src, const Valued& dst, const std::map<std::string, std::string>& vmap,
                         const std::map<std::string, std::string>& amap, ArrowOk arrow_ok) {
  const auto &qs = src.quiver, &qd = dst.quiver;
  for (const auto& v : qs.vertices) {
    auto it = vmap.find(v);
    if (it == vmap.end() || !qd.find_vertex(it->second)) return false;
  }
  for (std::size_t k = 0; k < qs.arrows.size(); ++k) {
    auto it = amap.find(qs.arrows[k].id);
    if (it == amap.end()) return false;
    auto img = qd.find_arrow(it->second);
    if (!img) return false;
    const auto& b = qd.arrows[*img];
    if (vmap.at(qs.arrows[k].tail) != b.tail || vmap.at(qs.arrows[k].head) != b.head) return false;
    if (!arrow_ok(k, *img)) return false;
  }
  return true;
}

/// Counts morphisms: vertex maps are enumerated (bounded by cap), arrow
/// choices are independent given the vertex map and are counted by product.
template <class VertexOk, class ArrowOk>
std::uint64_t count_morphisms(const Quiver& qs, const Quiver& qd, std::uint64_t cap, VertexOk vertex_ok,
                              ArrowOk arrow_ok) {
  const std::size_t n = qs.vertices.size(), nd = qd.vertices.size();
  long double total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= static_cast<long double>(nd);
  if (total > static_cast<long double>(cap)) fail(ErrorKind::SizeLimitExceeded, "too many candidate vertex maps");
  if (n > 0 && nd == 0) return 0;
  std::vector<std::size_t> phi(n, 0);
  std::uint64_t count = 0;
  while (true) {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) ok = vertex_ok(i, phi[i]);
    if (ok) {
      std::uint64_t ways = 1;
      for (std::size_t k = 0; k < qs.arrows.size() && ways; ++k) {
        std::uint64_t c = 0;
        for (std::size_t b = 0; b < qd.arrows.size(); ++b)
          if (qd.tail(b) == phi[qs.tail(k)] && qd.head(b) == phi[qs.head(k)] && arrow_ok(k, b)) ++c;
        ways *= c;
      }
      count += ways;
    }
    std::size_t i = 0;
    while (i < n && ++phi[i] == nd) phi[i++] = 0;
    if (i == n) break;
  }
  return count;
}

}  // namespace detail

inline bool check_valued_morphism(const AbsValuedQuiver& src, const AbsValuedQuiver& dst,
                                  const std::map<std::string, std::string>& vmap,
                                  const std::map<std::string, std::string>& amap) {
  for (std::size_t i = 0; i < src.quiver.vertices.size(); ++i) {
    auto it = vmap.find(src.quiver.vertices[i]);
    if (it == vmap.end()) return false;
    auto j = dst.quiver.find_vertex(it->second);
    if (!j || dst.d[*j] != src.d[i]) return false;
  }
  return detail::check_morphism_impl(src, dst, vmap, amap,
                                     [&](std::size_t k, std::size_t b) { return src.m[k] == dst.m[b]; });
}

inline bool check_valued_morphism(const RelValuedQuiver& src, const RelValuedQuiver& dst,
                                  const std::map<std::string, std::string>& vmap,
                                  const std::map<std::string, std::string>& amap) {
  return detail::check_morphism_impl(src, dst, vmap, amap,
                                     [&](std::size_t k, std::size_t b) { return src.dval[k] == dst.dval[b]; });
}

inline std::uint64_t enumerate_valued_morphisms(const AbsValuedQuiver& src, const AbsValuedQuiver& dst,
                                                std::uint64_t cap = kDefaultCap) {
  return detail::count_morphisms(
      src.quiver, dst.quiver, cap, [&](std::size_t i, std::size_t j) { return src.d[i] == dst.d[j]; },
      [&](std::size_t k, std::size_t b) { return src.m[k] == dst.m[b]; });
}

inline std::uint64_t enumerate_valued_morphisms(const RelValuedQuiver& src, const RelValuedQuiver& dst,
                                                std::uint64_t cap = kDefaultCap) {
  return detail::count_morphisms(
      src.quiver, dst.quiver, cap, [](std::size_t, std::size_t) { return true; },
      [&](std::size_t k, std::size_t b) { return src.dval[k] == dst.dval[b]; });
}

/// All paths of length at most L, grouped by length; within a length, paths
/// are ordered by their arrow index sequence.
inline std::vector<std::vector<Path>> paths_up_to(const Quiver& q, std::size_t L) {
  std::vector<std::vector<Path>> out(L + 1);
  for (std::size_t i = 0; i < q.vertices.size(); ++i) out[0].push_back(Path{i, i, {}});
  std::vector<std::vector<std::size_t>> starting(q.vertices.size());
  for (std::size_t k = 0; k < q.arrows.size(); ++k) starting[q.tail(k)].push_back(k);
  for (std::size_t n = 1; n <= L; ++n)
    for (const auto& p : out[n - 1])
      for (auto k : starting[p.head]) {
        Path r = p;
        r.arrows.push_back(k);
        r.head = q.head(k);
        out[n].push_back(std::move(r));
      }
  for (auto& level : out) std::sort(level.begin(), level.end(), [](const Path& a, const Path& b) {
      return std::tie(a.arrows, a.tail) < std::tie(b.arrows, b.tail);
    });
  return out;
}

inline Path apply_automorphism(const IndexAutomorphism& s, const Path& p) {
  Path r{s.v[p.tail], s.v[p.head], {}};
  for (auto k : p.arrows) r.arrows.push_back(s.a[k]);
  return r;
}

/// Orbits of sigma acting on the paths of each length up to L.
inline std::vector<std::vector<std::vector<Path>>> path_orbits(const Quiver& q, const QuiverAutomorphism& s,
                                                               std::size_t L) {
  const auto sigma = index_automorphism(q, s);
  const auto paths = paths_up_to(q, L);
  std::vector<std::vector<std::vector<Path>>> out(L + 1);
  for (std::size_t n = 0; n <= L; ++n) {
    std::set<Path> seen;
    for (const auto& p : paths[n]) {
      if (seen.count(p)) continue;
      std::vector<Path> orb;
      for (Path x = p; !seen.count(x); x = apply_automorphism(sigma, x)) {
        seen.insert(x);
        orb.push_back(x);
      }
      out[n].push_back(std::move(orb));
    }
  }
  return out;
}

inline std::vector<std::size_t> sigma_orbit_count(const Quiver& q, const QuiverAutomorphism& s, std::size_t L) {
  std::vector<std::size_t> r;
  for (const auto& level : path_orbits(q, s, L)) r.push_back(level.size());
  return r;
}

inline std::string path_to_string(const Quiver& q, const Path& p) {
  if (p.arrows.empty()) return "e_" + q.vertices[p.tail];
  std::string s;
  for (std::size_t k = p.arrows.size(); k-- > 0;) {
    s += q.arrows[p.arrows[k]].id;
    if (k) s += "*";
  }
  return s;
}

}  // namespace qb
