#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "quiverbench/hall.hpp"
#include "quiverbench/json_io.hpp"

using namespace qb;

namespace {

nlohmann::json load(const std::string& name) { return io::read_json(std::string(QB_DATA_DIR) + "/" + name); }
SpeciesRef plain(const std::string& name) {
  return make_context(trivial_species(io::abs_quiver_from_json(load(name)).quiver, 2));
}
SpeciesRef species(const std::string& name) { return make_context(io::species_from_json(load(name))); }

HallScalar rat(Rational a, std::int64_t q) { return HallScalar{std::move(a), 0, q}; }

double value(const HallScalar& s) {
  return static_cast<double>(s.a) + static_cast<double>(s.b) * std::sqrt(static_cast<double>(s.q));
}

/// Balanced quantum binomial from [n] = (t^n - t^-n) / (t - t^-1) in floating point.
double balanced_binomial(std::int64_t m, std::int64_t p, double t) {
  auto qint = [t](std::int64_t n) { return (std::pow(t, n) - std::pow(t, -n)) / (t - 1 / t); };
  double r = 1;
  for (std::int64_t k = 1; k <= p; ++k) r *= qint(m - p + k) / qint(k);
  return r;
}

std::vector<DimVector> box(const DimVector& top) {
  std::vector<DimVector> out;
  DimVector a(top.size(), 0);
  while (true) {
    out.push_back(a);
    std::size_t i = 0;
    while (i < a.size() && ++a[i] > top[i]) a[i++] = 0;
    if (i == a.size()) break;
  }
  return out;
}

}  // namespace

TEST(HallScalar, SquareRootOfQ) {
  const auto v = HallScalar::v_pow(5, 1), vinv = HallScalar::v_pow(5, -1);
  EXPECT_EQ(v * v, rat(5, 5));
  EXPECT_EQ(v * vinv, rat(1, 5));
  for (std::int64_t n = -6; n <= 6; ++n)
    for (std::int64_t m = -6; m <= 6; ++m)
      EXPECT_EQ(HallScalar::v_pow(3, n) * HallScalar::v_pow(3, m), HallScalar::v_pow(3, n + m));
  EXPECT_EQ(HallScalar::v_pow(4, -3), (HallScalar{0, Rational(1, 16), 4}));  // v / q^2
  EXPECT_EQ((HallScalar{1, -2, 2}).str(), "1 - 2v");
}

TEST(HallScalar, MixingDifferentQIsAnError) {
  EXPECT_THROW(HallScalar::v_pow(2, 1) + HallScalar::v_pow(3, 1), Error);
}

TEST(QuantumBinomial, MatchesTheBalancedProductFormula) {
  EXPECT_EQ(quantum_binomial(3, 1, 1, 2), rat(Rational(7, 2), 2));
  for (std::int64_t q : {2, 3, 4})
    for (std::int64_t d : {1, 2, 3})
      for (std::int64_t m = 0; m <= 5; ++m)
        for (std::int64_t p = 0; p <= m; ++p) {
          const double expect = balanced_binomial(m, p, std::pow(std::sqrt(static_cast<double>(q)), d));
          EXPECT_NEAR(value(quantum_binomial(m, p, d, q)), expect, 1e-9 * expect);
        }
}

TEST(Hall, ProductsOnA2) {
  HallAlgebra H(plain("a2.json"));
  auto& cat = H.catalog();
  const auto s1 = H.simple(0), s2 = H.simple(1);
  const auto p = cat.label(make_representation(H.context(), {1, 1}, {[] {
                                                 Matrix m(1, 1);
                                                 m(0, 0) = 1;
                                                 return m;
                                               }()}));
  const auto split = cat.label(direct_sum(simple_representation(H.context(), 0), simple_representation(H.context(), 1)));
  const auto vinv = HallScalar::v_pow(2, -1);
  EXPECT_EQ(H.product(s1, s2), (HallElement{{split, vinv}, {p, vinv}}));
  EXPECT_EQ(H.product(s2, s1), (HallElement{{split, rat(1, 2)}}));
  const auto s11 = cat.label(direct_sum(simple_representation(H.context(), 0), simple_representation(H.context(), 0)));
  EXPECT_EQ(H.product(s1, s1), (HallElement{{s11, HallScalar{0, 3, 2}}}));
}

TEST(Hall, RiedtmannExtensionCount) {
  // sum_C g^C_{AB} |Aut A| |Aut B| / |Aut C| = |Ext(A,B)| / |Hom(A,B)| = q^{-<a,b>}
  for (auto ctx : {plain("kronecker.json"), species("b2_species.json"), plain("a2.json")}) {
    HallAlgebra H(ctx);
    auto& cat = H.catalog();
    for (const auto& a : box({1, 2}))
      for (const auto& b : box({1, 1}))
        for (const auto& A : cat.classes(a))
          for (const auto& B : cat.classes(b)) {
            Rational total = 0;
            for (const auto& C : cat.classes(HallAlgebra::sum(a, b)))
              total += Rational(H.hall_number(A, B, C)) * H.aut(A) * H.aut(B) / H.aut(C);
            const auto e = H.euler(a, b);
            Rational expect = 1;
            for (std::int64_t k = 0; k < std::abs(e); ++k) expect *= H.q();
            if (e > 0) expect = 1 / expect;
            EXPECT_EQ(total, expect) << A.str() << " " << B.str();
          }
  }
}

TEST(Hall, CoproductHasTheTrivialSplittings) {
  HallAlgebra H(plain("kronecker.json"));
  for (const auto& a : H.catalog().classes({2, 1})) {
    const auto d = H.delta(a);
    EXPECT_EQ(d.at({a, H.zero_label()}), rat(1, 2));
    EXPECT_EQ(d.at({H.zero_label(), a}), rat(1, 2));
  }
}

TEST(Hall, BialgebraIdentitiesOnSmallDegrees) {
  for (auto ctx : {plain("kronecker.json"), species("b2_species.json")}) {
    HallAlgebra H(ctx);
    std::vector<HallElement> sample;
    for (const auto& a : box({1, 1}))
      for (const auto& l : H.catalog().classes(a))
        if (l.dims != DimVector{0, 0}) sample.push_back(H.basis(l));
    const auto r = bialgebra_checks(H, sample, 3);
    EXPECT_TRUE(r.pass());
    EXPECT_GT(r.associativity_checked, 0u);
    EXPECT_GT(r.adjoint_checked, 0u);
    EXPECT_GT(r.delta_checked, 0u);
  }
}

TEST(Hall, GreenFormIsSymmetricAndDiagonal) {
  HallAlgebra H(plain("kronecker.json"));
  const auto cls = H.catalog().classes({1, 1});
  for (const auto& a : cls)
    for (const auto& b : cls) {
      const auto g = H.green_form(H.basis(a), H.basis(b));
      EXPECT_EQ(g, a == b ? rat(Rational(1, H.aut(a)), 2) : rat(0, 2));
    }
}

TEST(Serre, RelationsHoldInBothOrders) {
  for (auto ctx : {plain("a2.json"), plain("kronecker.json"), species("b2_species.json")}) {
    HallAlgebra H(ctx);
    EXPECT_TRUE(H.serre_check(0, 1));
    EXPECT_TRUE(H.serre_check(1, 0));
  }
}

TEST(Serre, PlainCommutatorDoesNotVanish) {
  HallAlgebra H(plain("a2.json"));
  const auto x = H.product(H.simple(0), H.simple(1)), y = H.product(H.simple(1), H.simple(0));
  EXPECT_FALSE(add(x, scale(y, rat(-1, 2))).empty());
  EXPECT_THROW(H.serre_element(0, 0), Error);
}
