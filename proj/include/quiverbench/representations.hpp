#pragma once
/** @file representations.hpp
 *  Representations of finite-field species, morphism spaces, canonical
 *  isomorphism-class labels, submodules and Hall numbers.
 *
 *  For an arrow rho: t -> h with field bimodule M = GF(q^m), the map
 *  f: M (x)_{K_t} V_t -> V_h is stored as an n_h x (r n_t) matrix over K_h,
 *  r = m/d_h, on the basis x^s (x) e_k ordered by index s*n_t + k, where
 *  x^s (s < r) is the K_h-basis of M.
 */

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "quiverbench/forms.hpp"
#include "quiverbench/linalg.hpp"
#include "quiverbench/species.hpp"

namespace qb {

/// Arithmetic data of a species shared by all of its representations. Each
/// bimodule summand of an arrow is one channel.
class SpeciesContext {
 public:
  struct Channel {
    std::size_t arrow = 0, summand = 0, tail = 0, head = 0;
    std::size_t rank = 1;  // dimension of M over K_head
    std::string label;
    RelativeCoords coords;             // K_head-coordinates of M
    Embedding tail_embed;              // K_tail -> M
    unsigned rshift = 0;               // absolute Frobenius power for the right action
    std::vector<Matrix> rbasis;        // R(x^k) for the F_p-basis of K_tail
    std::vector<Matrix> rtable;        // R(lambda) for every lambda, small fields only
  };

  explicit SpeciesContext(FqSpecies s) : species_(std::move(s)) {
    require_valid(species_);
    const auto& q = species_.shape.quiver;
    for (auto d : species_.shape.d) fields_.push_back(gf(species_.p, species_.e * static_cast<unsigned>(d)));
    for (std::size_t k = 0; k < q.arrows.size(); ++k) {
      for (std::size_t j = 0; j < species_.summands[k].size(); ++j) {
        const auto& b = species_.summands[k][j];
        Channel c;
        c.arrow = k;
        c.summand = j;
        c.tail = q.tail(k);
        c.head = q.head(k);
        c.rank = static_cast<std::size_t>(b.m / species_.shape.d[c.head]);
        c.label = species_.summands[k].size() == 1 ? q.arrows[k].id : q.arrows[k].id + "#" + std::to_string(j);
        const auto M = gf(species_.p, species_.e * static_cast<unsigned>(b.m));
        const auto head_embed = embed(fields_[c.head], M);
        const unsigned lshift = species_.e * static_cast<unsigned>(b.ltwist);
        c.coords = RelativeCoords(fields_[c.head], M,
                                  [&](Elem a) { return M->frobenius(head_embed(a), lshift); });
        c.tail_embed = embed(fields_[c.tail], M);
        c.rshift = species_.e * static_cast<unsigned>(b.rtwist);
        const auto& Kt = fields_[c.tail];
        Elem xk = 1;
        for (unsigned k2 = 0; k2 < Kt->degree(); ++k2) {
          c.rbasis.push_back(right_matrix_direct(c, xk));
          xk = Kt->mul(xk, Kt->gen());
        }
        if (Kt->order() <= 1024)
          for (Elem lam = 0; lam < Kt->order(); ++lam) c.rtable.push_back(right_matrix_direct(c, lam));
        channels_.push_back(std::move(c));
      }
    }
  }

  const FqSpecies& species() const { return species_; }
  const Quiver& quiver() const { return species_.shape.quiver; }
  std::size_t vertex_count() const { return fields_.size(); }
  const FieldPtr& field(std::size_t i) const { return fields_[i]; }
  const std::vector<Channel>& channels() const { return channels_; }
  bool trivial() const {
    return std::all_of(species_.shape.d.begin(), species_.shape.d.end(), [](auto d) { return d == 1; }) &&
           std::all_of(species_.shape.m.begin(), species_.shape.m.end(), [](auto m) { return m == 1; });
  }

  /// Matrix over K_head of right multiplication by lambda in K_tail on M.
  Matrix right_matrix(const Channel& c, Elem lambda) const {
    if (!c.rtable.empty()) return c.rtable[lambda];
    const auto& Kt = fields_[c.tail];
    const auto& Kh = *fields_[c.head];
    Matrix r(c.rank, c.rank);
    for (unsigned k = 0; k < Kt->degree(); ++k) {
      const unsigned dg = Kt->digit(lambda, k);
      if (dg) r = mat_add(Kh, r, mat_scale(Kh, dg, c.rbasis[k]));
    }
    return r;
  }

  /// id (x) phi on M (x) V_t for a K_tail-linear phi given as an n' x n matrix.
  Matrix tensor_id(const Channel& c, const Matrix& phi) const {
    const std::size_t r = c.rank;
    Matrix out(r * phi.rows, r * phi.cols);
    for (std::size_t l = 0; l < phi.rows; ++l)
      for (std::size_t k = 0; k < phi.cols; ++k) {
        if (!phi(l, k)) continue;
        const Matrix R = right_matrix(c, phi(l, k));
        for (std::size_t s2 = 0; s2 < r; ++s2)
          for (std::size_t s = 0; s < r; ++s) out(s2 * phi.rows + l, s * phi.cols + k) = R(s2, s);
      }
    return out;
  }

 private:
  Matrix right_matrix_direct(const Channel& c, Elem lambda) const {
    const auto& M = c.coords.big();
    const Elem img = M->frobenius(c.tail_embed(lambda), c.rshift);
    Matrix r(c.rank, c.rank);
    for (std::size_t s = 0; s < c.rank; ++s) {
      const auto col = c.coords.coords(M->mul(c.coords.basis(static_cast<unsigned>(s)), img));
      for (std::size_t s2 = 0; s2 < c.rank; ++s2) r(s2, s) = col[s2];
    }
    return r;
  }

  FqSpecies species_;
  std::vector<FieldPtr> fields_;
  std::vector<Channel> channels_;
};

using SpeciesRef = std::shared_ptr<const SpeciesContext>;

inline SpeciesRef make_context(const FqSpecies& s) { return std::make_shared<const SpeciesContext>(s); }

struct Representation {
  SpeciesRef ctx;
  std::vector<std::size_t> dims;
  std::vector<Matrix> maps;  // per channel

  bool operator==(const Representation& o) const { return ctx == o.ctx && dims == o.dims && maps == o.maps; }
};

inline Matrix channel_shape(const SpeciesContext::Channel& c,
                            const std::vector<std::size_t>& dims) {
  return Matrix(dims[c.head], c.rank * dims[c.tail]);
}

inline Representation zero_representation(const SpeciesRef& ctx, const std::vector<std::size_t>& dims) {
  if (dims.size() != ctx->vertex_count()) fail(ErrorKind::IndexMismatch, "dimension vector has the wrong length");
  Representation v{ctx, dims, {}};
  for (const auto& c : ctx->channels()) v.maps.push_back(channel_shape(c, dims));
  return v;
}

inline Representation simple_representation(const SpeciesRef& ctx, std::size_t i) {
  std::vector<std::size_t> dims(ctx->vertex_count(), 0);
  dims.at(i) = 1;
  return zero_representation(ctx, dims);
}

inline Representation make_representation(const SpeciesRef& ctx, const std::vector<std::size_t>& dims,
                                          std::vector<Matrix> maps) {
  Representation v = zero_representation(ctx, dims);
  if (maps.size() != v.maps.size()) fail(ErrorKind::IndexMismatch, "wrong number of arrow matrices");
  for (std::size_t k = 0; k < maps.size(); ++k) {
    if (maps[k].rows != v.maps[k].rows || maps[k].cols != v.maps[k].cols)
      fail(ErrorKind::IndexMismatch, "matrix for " + ctx->channels()[k].label + " has the wrong shape");
    const auto& K = *ctx->field(ctx->channels()[k].head);
    for (Elem x : maps[k].a)
      if (x >= K.order()) fail(ErrorKind::InvalidInput, "matrix entry outside the field");
  }
  v.maps = std::move(maps);
  return v;
}

inline DimVector dim_vector(const Representation& v) {
  return DimVector(v.dims.begin(), v.dims.end());
}

inline std::vector<std::size_t> to_dims(const DimVector& a) {
  std::vector<std::size_t> d;
  for (auto x : a) {
    if (x < 0) fail(ErrorKind::InvalidInput, "negative dimension");
    d.push_back(static_cast<std::size_t>(x));
  }
  return d;
}

inline void require_same_species(const Representation& v, const Representation& w) {
  if (v.ctx != w.ctx && !(v.ctx->species() == w.ctx->species()))
    fail(ErrorKind::SpeciesMismatch, "representations of different species");
}

inline Representation direct_sum(const Representation& v, const Representation& w) {
  require_same_species(v, w);
  std::vector<std::size_t> dims(v.dims.size());
  for (std::size_t i = 0; i < dims.size(); ++i) dims[i] = v.dims[i] + w.dims[i];
  Representation out = zero_representation(v.ctx, dims);
  const auto& chans = v.ctx->channels();
  for (std::size_t k = 0; k < chans.size(); ++k) {
    const auto& c = chans[k];
    const std::size_t nv = v.dims[c.tail], nw = w.dims[c.tail], n = nv + nw;
    for (std::size_t s = 0; s < c.rank; ++s) {
      for (std::size_t i = 0; i < v.dims[c.head]; ++i)
        for (std::size_t j = 0; j < nv; ++j) out.maps[k](i, s * n + j) = v.maps[k](i, s * nv + j);
      for (std::size_t i = 0; i < w.dims[c.head]; ++i)
        for (std::size_t j = 0; j < nw; ++j) out.maps[k](v.dims[c.head] + i, s * n + nv + j) = w.maps[k](i, s * nw + j);
    }
  }
  return out;
}

/// A morphism is one matrix per vertex, phi_i : V_i -> W_i over K_i.
using Morphism = std::vector<Matrix>;

/// phi_h f_rho - g_rho (id (x) phi_t) for every channel.
inline std::vector<Matrix> morphism_residual(const Representation& v, const Representation& w, const Morphism& phi) {
  std::vector<Matrix> out;
  const auto& ctx = *v.ctx;
  const auto& chans = ctx.channels();
  for (std::size_t k = 0; k < chans.size(); ++k) {
    const auto& c = chans[k];
    const auto& K = *ctx.field(c.head);
    out.push_back(mat_sub(K, mat_mul(K, phi[c.head], v.maps[k]), mat_mul(K, w.maps[k], ctx.tensor_id(c, phi[c.tail]))));
  }
  return out;
}

inline bool is_morphism(const Representation& v, const Representation& w, const Morphism& phi) {
  for (const auto& m : morphism_residual(v, w, phi))
    if (!m.is_zero()) return false;
  return true;
}

struct HomSpace {
  std::vector<Morphism> basis;  // over GF(p)
  unsigned p = 2, e = 1;

  std::size_t dim_p() const { return basis.size(); }
  /// Dimension over GF(q); Hom is a GF(q)-space because GF(q) acts centrally.
  std::size_t dim_q() const { return basis.size() / e; }
};

inline HomSpace hom_space(const Representation& v, const Representation& w) {
  require_same_species(v, w);
  const auto& ctx = *v.ctx;
  const std::size_t n = ctx.vertex_count();
  struct Unknown {
    std::size_t vertex, row, col;
    unsigned digit;
  };
  std::vector<Unknown> unknowns;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < w.dims[i]; ++a)
      for (std::size_t b = 0; b < v.dims[i]; ++b)
        for (unsigned t = 0; t < ctx.field(i)->degree(); ++t) unknowns.push_back({i, a, b, t});
  Morphism zero;
  for (std::size_t i = 0; i < n; ++i) zero.emplace_back(w.dims[i], v.dims[i]);
  auto unit = [&](const Unknown& u) {
    Morphism phi = zero;
    phi[u.vertex](u.row, u.col) = ctx.field(u.vertex)->pow(ctx.field(u.vertex)->gen() ? ctx.field(u.vertex)->gen() : 1, u.digit);
    return phi;
  };
  std::size_t eq_count = 0;
  const auto& chans = ctx.channels();
  for (const auto& c : chans) eq_count += w.dims[c.head] * c.rank * v.dims[c.tail] * ctx.field(c.head)->degree();
  const auto Fp = gf(ctx.species().p, 1);
  Matrix system(eq_count, unknowns.size());
  for (std::size_t u = 0; u < unknowns.size(); ++u) {
    const auto res = morphism_residual(v, w, unit(unknowns[u]));
    std::size_t row = 0;
    for (std::size_t k = 0; k < chans.size(); ++k) {
      const auto& K = *ctx.field(chans[k].head);
      for (Elem x : res[k].a)
        for (unsigned t = 0; t < K.degree(); ++t) system(row++, u) = K.digit(x, t);
    }
  }
  HomSpace out{{}, ctx.species().p, ctx.species().e};
  for (const auto& vec : nullspace(*Fp, system)) {
    Morphism phi = zero;
    for (std::size_t u = 0; u < unknowns.size(); ++u) {
      if (!vec[u]) continue;
      const auto& K = *ctx.field(unknowns[u].vertex);
      auto& slot = phi[unknowns[u].vertex](unknowns[u].row, unknowns[u].col);
      slot = K.add(slot, K.mul(vec[u], unit(unknowns[u])[unknowns[u].vertex](unknowns[u].row, unknowns[u].col)));
    }
    out.basis.push_back(std::move(phi));
  }
  return out;
}

/// Visits every element of a hom space; f returns false to stop early.
template <class F>
void for_each_morphism(const Representation& v, const HomSpace& h, std::uint64_t cap, F&& f) {
  const auto& ctx = *v.ctx;
  long double count = 1;
  for (std::size_t k = 0; k < h.basis.size(); ++k) count *= h.p;
  if (count > static_cast<long double>(cap)) fail(ErrorKind::SizeLimitExceeded, "hom space too large to enumerate");
  Morphism cur;
  if (h.basis.empty()) {
    // Only the zero morphism; shapes come from the caller's representations.
    return;
  }
  for (const auto& m : h.basis.front()) cur.emplace_back(m.rows, m.cols);
  std::vector<unsigned> digits(h.basis.size(), 0);
  while (true) {
    if (!f(static_cast<const Morphism&>(cur))) return;
    std::size_t j = 0;
    for (; j < digits.size(); ++j) {
      for (std::size_t i = 0; i < cur.size(); ++i) cur[i] = mat_add(*ctx.field(i), cur[i], h.basis[j][i]);
      if (++digits[j] < h.p) break;
      digits[j] = 0;
    }
    if (j == digits.size()) return;
  }
}

inline bool is_invertible_morphism(const SpeciesContext& ctx, const Morphism& phi) {
  for (std::size_t i = 0; i < phi.size(); ++i)
    if (!is_invertible(*ctx.field(i), phi[i])) return false;
  return true;
}

inline bool is_zero_rep(const Representation& v) {
  return std::all_of(v.dims.begin(), v.dims.end(), [](std::size_t d) { return d == 0; });
}

/// Indecomposable iff nonzero and End(V) has no idempotent besides 0 and 1,
/// checked by enumerating End(V).
inline bool is_indecomposable(const Representation& v, std::uint64_t cap = kDefaultCap) {
  if (is_zero_rep(v)) return false;
  const auto& ctx = *v.ctx;
  const auto end = hom_space(v, v);
  bool local = true;
  for_each_morphism(v, end, cap, [&](const Morphism& phi) {
    bool zero = true, one = true, idem = true;
    for (std::size_t i = 0; i < phi.size() && idem; ++i) {
      const auto& K = *ctx.field(i);
      idem = mat_mul(K, phi[i], phi[i]) == phi[i];
      zero = zero && phi[i].is_zero();
      one = one && phi[i] == Matrix::identity(phi[i].rows);
    }
    if (idem && !zero && !one) local = false;
    return local;
  });
  return local;
}

inline std::uint64_t aut_order(const Representation& v, std::uint64_t cap = kDefaultCap) {
  if (is_zero_rep(v)) return 1;
  std::uint64_t count = 0;
  for_each_morphism(v, hom_space(v, v), cap, [&](const Morphism& phi) {
    if (is_invertible_morphism(*v.ctx, phi)) ++count;
    return true;
  });
  return count;
}

inline bool is_isomorphic(const Representation& v, const Representation& w, std::uint64_t cap = kDefaultCap) {
  require_same_species(v, w);
  if (v.dims != w.dims) return false;
  if (is_zero_rep(v)) return true;
  bool iso = false;
  for_each_morphism(v, hom_space(v, w), cap, [&](const Morphism& phi) {
    iso = is_invertible_morphism(*v.ctx, phi);
    return !iso;
  });
  return iso;
}

/// Canonical isomorphism-class label: the least index, in mixed radix with the
/// first matrix entry most significant, over the base-change orbit.
struct IsoClassLabel {
  DimVector dims;
  std::uint64_t index = 0;

  auto operator<=>(const IsoClassLabel&) const = default;
  std::string str() const {
    std::string s;
    for (std::size_t i = 0; i < dims.size(); ++i) s += (i ? "," : "") + std::to_string(dims[i]);
    return s + "|" + std::to_string(index);
  }
  static IsoClassLabel parse(const std::string& s) {
    const auto bar = s.find('|');
    if (bar == std::string::npos) fail(ErrorKind::Parse, "class label must look like 1,0|0");
    IsoClassLabel l;
    std::size_t pos = 0;
    const std::string head = s.substr(0, bar);
    try {
      while (pos <= head.size()) {
        auto comma = head.find(',', pos);
        if (comma == std::string::npos) comma = head.size();
        l.dims.push_back(std::stoll(head.substr(pos, comma - pos)));
        pos = comma + 1;
      }
      l.index = std::stoull(s.substr(bar + 1));
    } catch (const std::exception&) {
      fail(ErrorKind::Parse, "malformed class label " + s);
    }
    return l;
  }
};

/// Orbit tables of the base-change action, one per dimension vector, built on
/// demand and memoized.
class Catalog {
 public:
  explicit Catalog(SpeciesRef ctx, std::uint64_t cap = kDefaultCap) : ctx_(std::move(ctx)), cap_(cap) {}

  const SpeciesRef& context() const { return ctx_; }
  std::uint64_t cap() const { return cap_; }

  IsoClassLabel label(const Representation& v) {
    const Table& t = table(dim_vector(v));
    return IsoClassLabel{dim_vector(v), t.orbit_min[t.orbit[encode(t, v)]]};
  }

  std::vector<IsoClassLabel> classes(const DimVector& a) {
    const Table& t = table(a);
    std::vector<IsoClassLabel> out;
    for (auto idx : t.orbit_min) out.push_back(IsoClassLabel{a, idx});
    return out;
  }

  Representation representative(const IsoClassLabel& l) { return decode(table(l.dims), l.index); }

  std::size_t class_count(const DimVector& a) { return table(a).orbit_min.size(); }

  std::uint64_t orbit_size(const IsoClassLabel& l) {
    const Table& t = table(l.dims);
    return t.orbit_size[t.orbit[l.index]];
  }

  /// |Aut V| = |prod GL(V_i)| / |orbit of V| by orbit-stabilizer.
  std::uint64_t aut_order(const IsoClassLabel& l) {
    BigInt g = 1;
    for (std::size_t i = 0; i < l.dims.size(); ++i) {
      const BigInt Q = ctx_->field(i)->order();
      BigInt qi = 1;
      for (std::int64_t k = 0; k < l.dims[i]; ++k) {
        g *= BigInt(pow(Q, static_cast<unsigned>(l.dims[i]))) - qi;
        qi *= Q;
      }
    }
    return static_cast<std::uint64_t>(g / orbit_size(l));
  }

  /// Results of enumerate_indecomposables, keyed by dimension vector.
  std::map<DimVector, std::vector<IsoClassLabel>>& indecomposable_cache() { return indecomposables_; }

 private:
  struct Table {
    DimVector dims;
    std::vector<std::size_t> radix_field;  // vertex whose field fills each channel
    std::uint64_t total = 1;
    std::vector<std::uint32_t> orbit;
    std::vector<std::uint64_t> orbit_min;
    std::vector<std::uint64_t> orbit_size;
  };

  std::uint64_t encode(const Table& t, const Representation& v) const {
    std::uint64_t idx = 0;
    for (std::size_t k = 0; k < v.maps.size(); ++k) {
      const auto Q = ctx_->field(t.radix_field[k])->order();
      for (Elem x : v.maps[k].a) idx = idx * Q + x;
    }
    return idx;
  }

  Representation decode(const Table& t, std::uint64_t idx) const {
    Representation v = zero_representation(ctx_, to_dims(t.dims));
    for (std::size_t k = v.maps.size(); k-- > 0;) {
      const auto Q = ctx_->field(t.radix_field[k])->order();
      for (std::size_t j = v.maps[k].a.size(); j-- > 0;) {
        v.maps[k].a[j] = idx % Q;
        idx /= Q;
      }
    }
    return v;
  }

  const Table& table(const DimVector& a) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = tables_.find(a);
    if (it != tables_.end()) return *it->second;
    auto t = build(a);
    return *tables_.emplace(a, std::move(t)).first->second;
  }

  std::unique_ptr<Table> build(const DimVector& a) const {
    if (a.size() != ctx_->vertex_count()) fail(ErrorKind::IndexMismatch, "dimension vector has the wrong length");
    auto t = std::make_unique<Table>();
    t->dims = a;
    const auto dims = to_dims(a);
    long double total = 1;
    for (const auto& c : ctx_->channels()) {
      t->radix_field.push_back(c.head);
      const auto entries = dims[c.head] * c.rank * dims[c.tail];
      for (std::size_t j = 0; j < entries; ++j) total *= static_cast<long double>(ctx_->field(c.head)->order());
    }
    if (total > static_cast<long double>(cap_))
      fail(ErrorKind::SizeLimitExceeded, "representation space has more than " + std::to_string(cap_) + " points");
    t->total = static_cast<std::uint64_t>(total);

    struct Gen {
      std::size_t vertex;
      Matrix g;
      std::vector<std::pair<std::size_t, Matrix>> right;  // channels with this tail: F -> F (id (x) g)
    };
    std::vector<Gen> gens;
    const auto& chans = ctx_->channels();
    for (std::size_t i = 0; i < dims.size(); ++i) {
      const auto& K = *ctx_->field(i);
      const std::size_t n = dims[i];
      std::vector<Matrix> mats;
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
          if (r == c) continue;
          Elem xk = 1;
          for (unsigned k = 0; k < K.degree(); ++k, xk = K.mul(xk, K.gen())) {
            Matrix g = Matrix::identity(n);
            g(r, c) = xk;
            mats.push_back(g);
          }
        }
      if (n > 0 && K.order() > 2) {
        Matrix g = Matrix::identity(n);
        g(0, 0) = K.primitive();
        mats.push_back(g);
      }
      for (auto& g : mats) {
        Gen gen{i, g, {}};
        for (std::size_t k = 0; k < chans.size(); ++k)
          if (chans[k].tail == i) gen.right.emplace_back(k, ctx_->tensor_id(chans[k], g));
        gens.push_back(std::move(gen));
      }
    }

    constexpr std::uint32_t unset = ~std::uint32_t{0};
    t->orbit.assign(t->total, unset);
    std::vector<std::uint64_t> queue;
    for (std::uint64_t seed = 0; seed < t->total; ++seed) {
      if (t->orbit[seed] != unset) continue;
      const auto id = static_cast<std::uint32_t>(t->orbit_min.size());
      t->orbit_min.push_back(seed);
      t->orbit_size.push_back(1);
      t->orbit[seed] = id;
      queue.assign(1, seed);
      for (std::size_t head = 0; head < queue.size(); ++head) {
        const Representation v = decode(*t, queue[head]);
        for (const auto& gen : gens) {
          Representation w = v;
          for (std::size_t k = 0; k < chans.size(); ++k) {
            const auto& K = *ctx_->field(chans[k].head);
            if (chans[k].head == gen.vertex) w.maps[k] = mat_mul(K, gen.g, w.maps[k]);
          }
          for (const auto& [k, tg] : gen.right) w.maps[k] = mat_mul(*ctx_->field(chans[k].head), w.maps[k], tg);
          const auto idx = encode(*t, w);
          if (t->orbit[idx] == unset) {
            t->orbit[idx] = id;
            ++t->orbit_size[id];
            queue.push_back(idx);
          }
        }
      }
    }
    return t;
  }

  SpeciesRef ctx_;
  std::uint64_t cap_;
  std::mutex mu_;
  std::map<DimVector, std::unique_ptr<Table>> tables_;
  std::map<DimVector, std::vector<IsoClassLabel>> indecomposables_;
};

inline std::vector<IsoClassLabel> enumerate_reps(Catalog& cat, const DimVector& a) { return cat.classes(a); }

/// Indecomposable classes of dimension a: the classes that are not of the form
/// X (+) Y with X indecomposable of dimension 0 < b < a. Recursion runs over
/// all smaller dimension vectors, so every orbit table involved must fit the cap.
inline std::vector<IsoClassLabel> enumerate_indecomposables(Catalog& cat, const DimVector& a) {
  auto& memo = cat.indecomposable_cache();
  if (auto it = memo.find(a); it != memo.end()) return it->second;
  const auto all = cat.classes(a);
  std::vector<IsoClassLabel> out;
  if (std::all_of(a.begin(), a.end(), [](auto x) { return x == 0; })) return out;
  std::set<IsoClassLabel> decomposable;
  DimVector b(a.size(), 0);
  while (true) {
    std::size_t i = 0;
    while (i < b.size() && ++b[i] > a[i]) b[i++] = 0;
    if (i == b.size()) break;
    if (b == a) continue;
    DimVector c(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) c[j] = a[j] - b[j];
    for (const auto& x : enumerate_indecomposables(cat, b)) {
      const auto X = cat.representative(x);
      for (const auto& y : cat.classes(c)) decomposable.insert(cat.label(direct_sum(X, cat.representative(y))));
    }
  }
  for (const auto& l : all)
    if (!decomposable.count(l)) out.push_back(l);
  memo[a] = out;
  return out;
}

/// Subspaces of K^n of dimension k as RREF row bases.
inline std::vector<Matrix> subspaces(const Field& K, std::size_t n, std::size_t k) {
  std::vector<Matrix> out;
  if (k > n) return out;
  std::vector<std::size_t> piv(k);
  std::iota(piv.begin(), piv.end(), 0);
  while (true) {
    // Free positions: (row r, column c) with c > piv[r] and c not a pivot.
    std::vector<std::pair<std::size_t, std::size_t>> free;
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = piv[r] + 1; c < n; ++c)
        if (!std::binary_search(piv.begin(), piv.end(), c)) free.emplace_back(r, c);
    std::vector<Elem> vals(free.size(), 0);
    while (true) {
      Matrix m(k, n);
      for (std::size_t r = 0; r < k; ++r) m(r, piv[r]) = 1;
      for (std::size_t f = 0; f < free.size(); ++f) m(free[f].first, free[f].second) = vals[f];
      out.push_back(std::move(m));
      std::size_t f = 0;
      while (f < vals.size() && ++vals[f] == K.order()) vals[f++] = 0;
      if (f == vals.size()) break;
    }
    std::size_t r = k;
    while (r > 0 && piv[r - 1] == n - k + r - 1) --r;
    if (r == 0) break;
    ++piv[r - 1];
    for (std::size_t j = r; j < k; ++j) piv[j] = piv[j - 1] + 1;
  }
  return out;
}

inline std::uint64_t gaussian_binomial(std::uint64_t q, std::size_t n, std::size_t k) {
  if (k > n) return 0;
  Rational r = 1;
  for (std::size_t j = 0; j < k; ++j) {
    Rational num = 1, den = 1;
    for (std::size_t t = 0; t < n - j; ++t) num *= q;
    for (std::size_t t = 0; t < j + 1; ++t) den *= q;
    r *= Rational(num - 1) / Rational(den - 1);
  }
  return static_cast<std::uint64_t>(numerator(r));
}

struct Submodule {
  std::vector<Matrix> basis;  // per vertex, RREF rows spanning U_i
  Representation sub;
  Representation quotient;
};

namespace detail {

/// Reduce a vector by RREF rows: returns the coordinates on the rows (taken at
/// the pivots) and leaves the residue in v.
inline std::vector<Elem> reduce_by(const Field& K, const Matrix& rows, std::vector<Elem>& v) {
  std::vector<Elem> coord(rows.rows, 0);
  for (std::size_t r = 0; r < rows.rows; ++r) {
    std::size_t piv = 0;
    while (rows(r, piv) == 0) ++piv;
    const Elem c = v[piv];
    coord[r] = c;
    if (!c) continue;
    for (std::size_t j = 0; j < rows.cols; ++j)
      if (rows(r, j)) v[j] = K.sub(v[j], K.mul(c, rows(r, j)));
  }
  return coord;
}

inline std::vector<std::size_t> non_pivots(const Matrix& rows) {
  std::vector<bool> piv(rows.cols, false);
  for (std::size_t r = 0; r < rows.rows; ++r) {
    std::size_t c = 0;
    while (rows(r, c) == 0) ++c;
    piv[c] = true;
  }
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < rows.cols; ++c)
    if (!piv[c]) out.push_back(c);
  return out;
}

}  // namespace detail

/// Sub and quotient of v for a tuple of RREF subspaces, or nullopt when the
/// tuple is not closed under the arrow maps.
inline std::optional<Submodule> make_submodule(const Representation& v, const std::vector<Matrix>& basis) {
  const auto& ctx = *v.ctx;
  std::vector<std::size_t> sd, qd;
  for (std::size_t i = 0; i < v.dims.size(); ++i) {
    sd.push_back(basis[i].rows);
    qd.push_back(v.dims[i] - basis[i].rows);
  }
  Representation sub = zero_representation(v.ctx, sd), quo = zero_representation(v.ctx, qd);
  const auto& chans = ctx.channels();
  for (std::size_t k = 0; k < chans.size(); ++k) {
    const auto& c = chans[k];
    const auto& K = *ctx.field(c.head);
    const std::size_t nt = v.dims[c.tail];
    const Matrix& F = v.maps[k];
    // Images of x^s (x) u for the basis vectors u of U_t.
    for (std::size_t s = 0; s < c.rank; ++s)
      for (std::size_t u = 0; u < sd[c.tail]; ++u) {
        std::vector<Elem> img(v.dims[c.head], 0);
        for (std::size_t l = 0; l < nt; ++l) {
          const Elem lam = basis[c.tail](u, l);
          if (!lam) continue;
          const Matrix R = ctx.right_matrix(c, lam);
          for (std::size_t s2 = 0; s2 < c.rank; ++s2) {
            if (!R(s2, s)) continue;
            for (std::size_t row = 0; row < img.size(); ++row)
              img[row] = K.add(img[row], K.mul(F(row, s2 * nt + l), R(s2, s)));
          }
        }
        const auto coord = detail::reduce_by(K, basis[c.head], img);
        if (std::any_of(img.begin(), img.end(), [](Elem x) { return x != 0; })) return std::nullopt;
        for (std::size_t r = 0; r < coord.size(); ++r) sub.maps[k](r, s * sd[c.tail] + u) = coord[r];
      }
    const auto comp_t = detail::non_pivots(basis[c.tail]);
    const auto comp_h = detail::non_pivots(basis[c.head]);
    for (std::size_t s = 0; s < c.rank; ++s)
      for (std::size_t u = 0; u < comp_t.size(); ++u) {
        std::vector<Elem> img(v.dims[c.head]);
        for (std::size_t row = 0; row < img.size(); ++row) img[row] = F(row, s * nt + comp_t[u]);
        detail::reduce_by(K, basis[c.head], img);
        for (std::size_t r = 0; r < comp_h.size(); ++r) quo.maps[k](r, s * qd[c.tail] + u) = img[comp_h[r]];
      }
  }
  return Submodule{basis, std::move(sub), std::move(quo)};
}

/// All submodules of dimension sub_dims (every dimension when empty).
inline std::vector<Submodule> submodules(const Representation& v, const DimVector& sub_dims = {},
                                         std::uint64_t cap = kDefaultCap) {
  const auto& ctx = *v.ctx;
  const std::size_t n = v.dims.size();
  std::vector<std::vector<Matrix>> choices(n);
  long double total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& K = *ctx.field(i);
    long double count = 0;
    for (std::size_t k = 0; k <= v.dims[i]; ++k)
      if (sub_dims.empty() || static_cast<std::int64_t>(k) == sub_dims[i])
        count += static_cast<long double>(gaussian_binomial(K.order(), v.dims[i], k));
    total *= count;
  }
  if (total > static_cast<long double>(cap)) fail(ErrorKind::SizeLimitExceeded, "too many subspace tuples");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k <= v.dims[i]; ++k)
      if (sub_dims.empty() || static_cast<std::int64_t>(k) == sub_dims[i])
        for (auto& m : subspaces(*ctx.field(i), v.dims[i], k)) choices[i].push_back(std::move(m));
  std::vector<Submodule> out;
  for (const auto& c : choices)
    if (c.empty()) return out;
  std::vector<std::size_t> pick(n, 0);
  while (true) {
    std::vector<Matrix> basis;
    for (std::size_t i = 0; i < n; ++i) basis.push_back(choices[i][pick[i]]);
    if (auto s = make_submodule(v, basis)) out.push_back(std::move(*s));
    std::size_t i = 0;
    while (i < n && ++pick[i] == choices[i].size()) pick[i++] = 0;
    if (i == n) break;
  }
  return out;
}

/// Number of submodules X of c with c/X isomorphic to a and X isomorphic to b.
inline std::uint64_t hall_number(const Representation& a, const Representation& b, const Representation& c,
                                 std::uint64_t cap = kDefaultCap) {
  require_same_species(a, c);
  require_same_species(b, c);
  for (std::size_t i = 0; i < c.dims.size(); ++i)
    if (a.dims[i] + b.dims[i] != c.dims[i]) return 0;
  std::uint64_t count = 0;
  for (const auto& x : submodules(c, dim_vector(b), cap))
    if (is_isomorphic(x.sub, b, cap) && is_isomorphic(x.quotient, a, cap)) ++count;
  return count;
}

/// Subrepresentation spanned by the columns of a morphism's image.
inline Representation image_summand(const Representation& v, const Morphism& e) {
  std::vector<Matrix> basis;
  for (std::size_t i = 0; i < e.size(); ++i) {
    const auto& K = *v.ctx->field(i);
    Matrix t(e[i].cols, e[i].rows);
    for (std::size_t r = 0; r < e[i].rows; ++r)
      for (std::size_t c = 0; c < e[i].cols; ++c) t(c, r) = e[i](r, c);
    const auto piv = rref(K, t);
    Matrix rows(piv.size(), e[i].rows);
    for (std::size_t r = 0; r < piv.size(); ++r)
      for (std::size_t c = 0; c < e[i].rows; ++c) rows(r, c) = t(r, c);
    basis.push_back(std::move(rows));
  }
  auto s = make_submodule(v, basis);
  if (!s) fail(ErrorKind::InvalidInput, "image of an endomorphism is not a subrepresentation");
  return s->sub;
}

/// Splits v into indecomposable summands by repeatedly cutting along a
/// nontrivial idempotent of End; `last` picks the last idempotent found
/// instead of the first, to exercise a different splitting order.
inline std::vector<Representation> decompose(const Representation& v, bool last = false,
                                             std::uint64_t cap = kDefaultCap) {
  if (is_zero_rep(v)) return {};
  const auto& ctx = *v.ctx;
  std::optional<Morphism> found;
  for_each_morphism(v, hom_space(v, v), cap, [&](const Morphism& phi) {
    bool zero = true, one = true, idem = true;
    for (std::size_t i = 0; i < phi.size() && idem; ++i) {
      idem = mat_mul(*ctx.field(i), phi[i], phi[i]) == phi[i];
      zero = zero && phi[i].is_zero();
      one = one && phi[i] == Matrix::identity(phi[i].rows);
    }
    if (idem && !zero && !one) {
      found = phi;
      return last;
    }
    return true;
  });
  if (!found) return {v};
  Morphism comp = *found;
  for (std::size_t i = 0; i < comp.size(); ++i)
    comp[i] = mat_sub(*ctx.field(i), Matrix::identity(comp[i].rows), comp[i]);
  auto out = decompose(image_summand(v, *found), last, cap);
  for (auto& w : decompose(image_summand(v, comp), last, cap)) out.push_back(std::move(w));
  return out;
}

namespace detail {

inline void require_trivial(const Representation& v) {
  if (!v.ctx->trivial()) fail(ErrorKind::SpeciesMismatch, "sigma twists need a representation of a plain quiver");
}

}  // namespace detail

/// V^sigma_i = V_{sigma^{-1}(i)} and f^sigma_rho = f_{sigma^{-1}(rho)}.
inline Representation sigma_twist(const Representation& v, const QuiverAutomorphism& s) {
  detail::require_trivial(v);
  const auto& q = v.ctx->quiver();
  const auto sigma = index_automorphism(q, s);
  Representation out = v;
  for (std::size_t i = 0; i < q.vertices.size(); ++i) out.dims[sigma.v[i]] = v.dims[i];
  for (std::size_t k = 0; k < q.arrows.size(); ++k) out.maps[sigma.a[k]] = v.maps[k];
  return out;
}

inline bool is_invariant(const Representation& v, const QuiverAutomorphism& s, std::uint64_t cap = kDefaultCap) {
  return is_isomorphic(sigma_twist(v, s), v, cap);
}

struct SigmaOrbit {
  Representation summand;                  // W
  std::size_t length = 1;                  // r with W^{sigma^r} isomorphic to W
  std::vector<std::size_t> members;        // positions in the summand list
};

struct InvariantDecomposition {
  std::vector<Representation> summands;
  std::vector<SigmaOrbit> orbits;
  bool invariant = true;  // every orbit is fully present among the summands
};

inline InvariantDecomposition invariant_decompose(const Representation& v, const QuiverAutomorphism& s,
                                                  std::uint64_t cap = kDefaultCap) {
  detail::require_trivial(v);
  InvariantDecomposition out;
  out.summands = decompose(v, false, cap);
  std::vector<bool> used(out.summands.size(), false);
  for (std::size_t k = 0; k < out.summands.size(); ++k) {
    if (used[k]) continue;
    SigmaOrbit orb{out.summands[k], 0, {}};
    Representation w = out.summands[k];
    do {
      std::size_t hit = out.summands.size();
      for (std::size_t j = 0; j < out.summands.size() && hit == out.summands.size(); ++j)
        if (!used[j] && is_isomorphic(out.summands[j], w, cap)) hit = j;
      if (hit == out.summands.size()) out.invariant = false;
      else {
        used[hit] = true;
        orb.members.push_back(hit);
      }
      ++orb.length;
      w = sigma_twist(w, s);
    } while (!is_isomorphic(w, out.summands[k], cap));
    out.orbits.push_back(std::move(orb));
  }
  return out;
}

/// Restriction of a sigma-constant vector to the orbit vertices of fold(q, s).
inline DimVector fold_dim_vector(const DimVector& a, const Quiver& q, const QuiverAutomorphism& s) {
  if (a.size() != q.vertices.size()) fail(ErrorKind::IndexMismatch, "vector length differs from the vertex count");
  const auto sigma = index_automorphism(q, s);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[sigma.v[i]] != a[i]) fail(ErrorKind::NotSigmaConstant, "vector is not constant on sigma-orbits");
  const auto g = fold(q, s);
  DimVector out;
  for (const auto& v : g.quiver.vertices) out.push_back(a[q.vertex_index(v)]);
  return out;
}

}  // namespace qb
