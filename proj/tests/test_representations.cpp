#include <gtest/gtest.h>

#include <random>

#include "generators.hpp"
#include "quiverbench/forms.hpp"
#include "quiverbench/json_io.hpp"
#include "quiverbench/representations.hpp"

using namespace qb;

namespace {

nlohmann::json load(const std::string& name) { return io::read_json(std::string(QB_DATA_DIR) + "/" + name); }
SpeciesRef plain(const std::string& name, unsigned p = 2) {
  return make_context(trivial_species(io::abs_quiver_from_json(load(name)).quiver, p));
}
SpeciesRef species(const std::string& name) { return make_context(io::species_from_json(load(name))); }

Matrix mat(std::size_t r, std::size_t c, std::vector<Elem> a) {
  Matrix m(r, c);
  m.a = std::move(a);
  return m;
}

std::int64_t mobius(std::int64_t n) {
  std::int64_t r = 1;
  for (std::int64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      r = -r;
    }
  return n > 1 ? -r : r;
}

/// Closed points of the projective line over GF(q) of degree k.
std::int64_t p1_points(std::int64_t q, std::int64_t k) {
  if (k == 1) return q + 1;
  std::int64_t s = 0;
  for (std::int64_t d = 1; d <= k; ++d)
    if (k % d == 0) {
      std::int64_t pw = 1;
      for (std::int64_t t = 0; t < k / d; ++t) pw *= q;
      s += mobius(d) * pw;
    }
  return s / k;
}

std::uint64_t q_pascal(std::uint64_t q, std::size_t n, std::size_t k) {
  if (k == 0 || k == n) return 1;
  if (k > n) return 0;
  std::uint64_t qk = 1;
  for (std::size_t t = 0; t < k; ++t) qk *= q;
  return q_pascal(q, n - 1, k - 1) + qk * q_pascal(q, n - 1, k);
}

std::vector<DimVector> box(const DimVector& top) {
  std::vector<DimVector> out;
  DimVector a(top.size(), 0);
  while (true) {
    std::size_t i = 0;
    while (i < a.size() && ++a[i] > top[i]) a[i++] = 0;
    if (i == a.size()) break;
    out.push_back(a);
  }
  return out;
}

}  // namespace

TEST(Representation, ShapesAreValidated) {
  const auto ctx = plain("a2.json");
  EXPECT_NO_THROW(make_representation(ctx, {1, 2}, {mat(2, 1, {1, 0})}));
  try {
    make_representation(ctx, {1, 2}, {mat(1, 2, {1, 0})});
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::IndexMismatch);
  }
  EXPECT_THROW(make_representation(ctx, {1, 1}, {mat(1, 1, {2})}), Error);
  EXPECT_THROW(direct_sum(simple_representation(ctx, 0), simple_representation(plain("a2.json", 3), 0)), Error);
}

TEST(Representation, ChannelsOfAProperBimodule) {
  // GF(4) over GF(2) on both sides: the arrow matrix has rank 2 blocks.
  const auto ctx = species("b2_species.json");
  ASSERT_EQ(ctx->channels().size(), 1u);
  const auto& c = ctx->channels()[0];
  EXPECT_EQ(c.rank, 1u);  // m / d_head = 2 / 2
  EXPECT_EQ(zero_representation(ctx, {2, 1}).maps[0].cols, 2u);
}

TEST(Hom, MatchesHandCountsOnA2) {
  const auto ctx = plain("a2.json");
  const auto s1 = simple_representation(ctx, 0), s2 = simple_representation(ctx, 1);
  const auto p = make_representation(ctx, {1, 1}, {mat(1, 1, {1})});
  EXPECT_EQ(hom_space(s2, p).dim_q(), 1u);
  EXPECT_EQ(hom_space(p, s1).dim_q(), 1u);
  EXPECT_EQ(hom_space(s1, p).dim_q(), 0u);
  EXPECT_EQ(hom_space(p, s2).dim_q(), 0u);
  EXPECT_EQ(hom_space(p, p).dim_q(), 1u);
}

TEST(Hom, BasisElementsAreMorphisms) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 30; ++t) {
    const auto s = qbtest::random_species(rng, 3, 2);
    const auto ctx = make_context(s);
    Catalog cat(ctx);
    DimVector a(s.shape.d.size());
    for (auto& x : a) x = static_cast<std::int64_t>(rng() % 2);
    DimVector b(s.shape.d.size());
    for (auto& x : b) x = static_cast<std::int64_t>(rng() % 2);
    const auto va = cat.representative(cat.classes(a).back());
    const auto vb = cat.representative(cat.classes(b).front());
    const auto h = hom_space(va, vb);
    for (const auto& phi : h.basis) EXPECT_TRUE(is_morphism(va, vb, phi));
    // End of a simple is its vertex field
    for (std::size_t i = 0; i < s.shape.d.size(); ++i) {
      const auto si = simple_representation(ctx, i);
      EXPECT_EQ(hom_space(si, si).dim_p(), static_cast<std::size_t>(s.shape.d[i]));
    }
  }
}

TEST(Catalog, OrbitsPartitionAllRepresentations) {
  for (auto name : {"kronecker.json", "a2.json"}) {
    const auto ctx = plain(name);
    Catalog cat(ctx);
    for (const auto& a : box({2, 2})) {
      std::uint64_t total = 0;
      for (const auto& l : cat.classes(a)) total += cat.orbit_size(l);
      const std::uint64_t arrows = ctx->quiver().arrows.size();
      EXPECT_EQ(total, std::uint64_t{1} << (arrows * a[0] * a[1]));
    }
  }
}

TEST(Catalog, AutomorphismGroupsAgreeWithEndomorphismCounts) {
  for (auto ctx : {plain("kronecker.json"), species("b2_species.json")}) {
    Catalog cat(ctx);
    for (const auto& a : box({2, 2}))
      for (const auto& l : cat.classes(a)) {
        const auto v = cat.representative(l);
        EXPECT_EQ(cat.label(v), l);
        EXPECT_EQ(cat.aut_order(l), aut_order(v)) << l.str();
      }
  }
}

TEST(Catalog, LabelsRoundTripThroughText) {
  const IsoClassLabel l{{2, 0, 1}, 17};
  EXPECT_EQ(l.str(), "2,0,1|17");
  EXPECT_EQ(IsoClassLabel::parse(l.str()), l);
  EXPECT_THROW(IsoClassLabel::parse("2,0"), Error);
  EXPECT_THROW(IsoClassLabel::parse("x|1"), Error);
}

TEST(Indecomposables, KroneckerCountsFollowProjectiveLinePoints) {
  const auto ctx = plain("kronecker.json");
  Catalog cat(ctx);
  for (std::int64_t n = 1; n <= 3; ++n) {
    std::int64_t regular = 0;
    for (std::int64_t k = 1; k <= n; ++k)
      if (n % k == 0) regular += p1_points(2, k);
    EXPECT_EQ(static_cast<std::int64_t>(enumerate_indecomposables(cat, {n, n}).size()), regular);
  }
  for (const auto& a : box({3, 3}))
    if (std::abs(a[0] - a[1]) == 1) {
      EXPECT_EQ(enumerate_indecomposables(cat, a).size(), 1u);
    } else if (a[0] != a[1]) {
      EXPECT_TRUE(enumerate_indecomposables(cat, a).empty());
    }
}

TEST(Indecomposables, SieveAgreesWithTheEndomorphismRing) {
  for (auto ctx : {plain("kronecker.json"), species("b2_species.json"), plain("mirror.json")}) {
    Catalog cat(ctx);
    DimVector top(ctx->vertex_count(), 2);
    if (top.size() == 3) top = {1, 2, 1};
    for (const auto& a : box(top)) {
      const auto ind = enumerate_indecomposables(cat, a);
      const std::set<IsoClassLabel> in(ind.begin(), ind.end());
      for (const auto& l : cat.classes(a)) EXPECT_EQ(in.count(l) == 1, is_indecomposable(cat.representative(l))) << l.str();
    }
  }
}

TEST(Indecomposables, FiniteTypeSpeciesHitExactlyThePositiveRoots) {
  for (auto name : {"b2_species.json", "a2_species.json"}) {
    const auto ctx = species(name);
    Catalog cat(ctx);
    const auto roots = real_roots_up_to(ctx->species().shape, 4).positive();
    for (const auto& a : box({2, 2})) {
      const bool is_root = std::find(roots.begin(), roots.end(), a) != roots.end();
      EXPECT_EQ(enumerate_indecomposables(cat, a).size(), is_root ? 1u : 0u) << name;
    }
  }
}

TEST(Submodules, GaussianBinomialsCountSubspaces) {
  for (unsigned q : {2u, 3u, 4u})
    for (std::size_t n = 0; n <= 4; ++n)
      for (std::size_t k = 0; k <= n; ++k) {
        EXPECT_EQ(gaussian_binomial(q, n, k), q_pascal(q, n, k));
        if (q < 4 || n < 4) EXPECT_EQ(subspaces(*gf(q == 4 ? 2 : q, q == 4 ? 2 : 1), n, k).size(), q_pascal(q, n, k));
      }
}

TEST(Submodules, HallNumbersOnA2) {
  const auto ctx = plain("a2.json");
  const auto s1 = simple_representation(ctx, 0), s2 = simple_representation(ctx, 1);
  const auto p = make_representation(ctx, {1, 1}, {mat(1, 1, {1})});
  EXPECT_EQ(hall_number(s1, s2, p), 1u);
  EXPECT_EQ(hall_number(s2, s1, p), 0u);
  EXPECT_EQ(hall_number(s1, s2, direct_sum(s1, s2)), 1u);
  EXPECT_EQ(hall_number(s1, s1, direct_sum(s1, s1)), 3u);  // lines in a plane over GF(2)
}

TEST(Submodules, HallNumbersSumToSubmoduleCounts) {
  const auto ctx = plain("kronecker.json");
  Catalog cat(ctx);
  for (const auto& c : cat.classes({2, 2})) {
    const auto C = cat.representative(c);
    for (const auto& b : box({2, 2})) {
      const DimVector a{2 - b[0], 2 - b[1]};
      if (a[0] < 0 || a[1] < 0) continue;
      std::uint64_t total = 0;
      for (const auto& x : cat.classes(a))
        for (const auto& y : cat.classes(b)) total += hall_number(cat.representative(x), cat.representative(y), C);
      EXPECT_EQ(total, submodules(C, b).size());
    }
  }
}

TEST(Submodules, QuotientAndSubAreRepresentations) {
  const auto ctx = species("b2_species.json");
  Catalog cat(ctx);
  for (const auto& l : cat.classes({2, 1}))
    for (const auto& s : submodules(cat.representative(l))) {
      EXPECT_EQ(dim_vector(s.sub)[0] + dim_vector(s.quotient)[0], 2);
      EXPECT_EQ(dim_vector(s.sub)[1] + dim_vector(s.quotient)[1], 1);
    }
}

TEST(Decompose, KrullSchmidtMultisetsDoNotDependOnTheSplitting) {
  const auto ctx = plain("kronecker.json");
  Catalog cat(ctx);
  std::mt19937_64 rng(33);
  for (int t = 0; t < 20; ++t) {
    std::vector<IsoClassLabel> parts;
    Representation v = zero_representation(ctx, {0, 0});
    for (int k = 0; k < 2; ++k) {
      const auto inds = enumerate_indecomposables(cat, {static_cast<std::int64_t>(rng() % 2), 1});
      if (inds.empty()) continue;
      parts.push_back(inds[rng() % inds.size()]);
      v = direct_sum(v, cat.representative(parts.back()));
    }
    auto labels = [&](const std::vector<Representation>& rs) {
      std::multiset<IsoClassLabel> m;
      for (const auto& r : rs) m.insert(cat.label(r));
      return m;
    };
    const auto first = labels(decompose(v)), last = labels(decompose(v, true));
    EXPECT_EQ(first, last);
    EXPECT_EQ(first, std::multiset<IsoClassLabel>(parts.begin(), parts.end()));
  }
}

TEST(SigmaTwist, MirrorSymmetryActsOnSimples) {
  const auto ctx = plain("mirror.json");
  const auto s = io::automorphism_from_json(load("mirror_sigma.json"));
  const auto e1 = simple_representation(ctx, 0), e3 = simple_representation(ctx, 2);
  EXPECT_TRUE(is_isomorphic(sigma_twist(e1, s), e3));
  EXPECT_FALSE(is_invariant(e1, s));
  const auto both = direct_sum(e1, e3);
  const auto d = invariant_decompose(both, s);
  EXPECT_TRUE(d.invariant);
  ASSERT_EQ(d.orbits.size(), 1u);
  EXPECT_EQ(d.orbits[0].length, 2u);
  EXPECT_EQ(fold_dim_vector({1, 2, 1}, ctx->quiver(), s), (DimVector{1, 2}));
  try {
    fold_dim_vector({1, 0, 0}, ctx->quiver(), s);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotSigmaConstant);
  }
}

TEST(SigmaTwist, TwistingTwiceByAnInvolutionIsTheIdentity) {
  const auto ctx = plain("mirror.json");
  const auto s = io::automorphism_from_json(load("mirror_sigma.json"));
  Catalog cat(ctx);
  for (const auto& l : cat.classes({1, 1, 1})) {
    const auto v = cat.representative(l);
    EXPECT_EQ(sigma_twist(sigma_twist(v, s), s), v);
    EXPECT_EQ(is_invariant(v, s), cat.label(sigma_twist(v, s)) == l);
  }
}
