#include <gtest/gtest.h>

#include <random>

#include "generators.hpp"
#include "quiverbench/json_io.hpp"

using namespace qb;
using nlohmann::json;

namespace {

json load(const std::string& name) { return io::read_json(std::string(QB_DATA_DIR) + "/" + name); }

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::InvalidInput;
}

}  // namespace

TEST(Json, ValuedQuiversRoundTrip) {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 100; ++t) {
    const auto g = qbtest::random_valued_quiver(rng, 5, 6);
    EXPECT_EQ(io::abs_quiver_from_json(io::to_json(g)), g);
    EXPECT_EQ(io::abs_quiver_from_json(json::parse(io::to_json(g).dump())), g);
    if (is_connected(g.quiver)) {
      const auto r = functor_F(g);
      EXPECT_TRUE(io::is_relative(io::to_json(r)));
      EXPECT_EQ(io::rel_quiver_from_json(io::to_json(r)), r);
    }
  }
  const auto r = io::rel_quiver_from_json(load("relative_2_1.json"));
  EXPECT_EQ(r.dval, (std::vector<std::pair<std::int64_t, std::int64_t>>{{2, 1}}));
}

TEST(Json, SpeciesRoundTripInBothArrowForms) {
  std::mt19937_64 rng(42);
  for (int t = 0; t < 100; ++t) {
    const auto s = qbtest::random_species(rng);
    EXPECT_EQ(io::species_from_json(io::to_json(s)), s);
  }
  const auto multi = load("ext_bipartite.json");
  EXPECT_EQ(io::species_from_json(multi).summands[0].size(), 2u);
  EXPECT_EQ(io::to_json(io::species_from_json(multi)), multi);
  const auto single = load("b2_species.json");
  EXPECT_EQ(io::to_json(io::species_from_json(single)), single);
}

TEST(Json, PlainQuiverBecomesAnUntwistedSpecies) {
  const auto s = io::species_or_quiver_from_json(load("b2.json"), 9);
  EXPECT_EQ(s.p, 3u);
  EXPECT_EQ(s.e, 2u);
  EXPECT_EQ(s.summands, (std::vector<std::vector<Bimodule>>{{Bimodule{2, 0, 0}}}));
  EXPECT_EQ(kind_of([] { io::species_or_quiver_from_json(load("b2.json"), 6); }), ErrorKind::NotPrime);
}

TEST(Json, AutomorphismRoundTrip) {
  const auto s = io::automorphism_from_json(load("bipartite_sigma.json"));
  EXPECT_EQ(s.vertex_map.at("s2"), "s0");
  EXPECT_EQ(io::automorphism_from_json(io::to_json(s)), s);
}

TEST(Json, RepresentationsOverExtensionFields) {
  const auto ctx = make_context(io::species_from_json(load("b2_species.json")));
  Catalog cat(ctx);
  for (const auto& l : cat.classes({2, 1})) {
    const auto v = cat.representative(l);
    EXPECT_EQ(io::representation_from_json(ctx, io::to_json(v)), v);
  }
  const json j = json::parse(R"({"dims": {"1": 1, "2": 1}, "matrices": {"a": [[[0, 1]]]}})");
  const auto v = io::representation_from_json(ctx, j);
  EXPECT_EQ(v.maps[0](0, 0), ctx->field(1)->gen());
}

TEST(Json, RepresentationErrors) {
  const auto ctx = make_context(io::species_from_json(load("a2_species.json")));
  auto parse = [&](const char* text) { io::representation_from_json(ctx, json::parse(text)); };
  EXPECT_EQ(kind_of([&] { parse(R"({"dims": {"1": 1, "2": 1}, "matrices": {"a": [[1, 0]]}})"); }), ErrorKind::IndexMismatch);
  EXPECT_EQ(kind_of([&] { parse(R"({"dims": {"1": 1, "2": 1}, "matrices": {"a": [[2]]}})"); }), ErrorKind::Parse);
  EXPECT_EQ(kind_of([&] { parse(R"({"dims": {"1": 1, "2": 1}, "matrices": {}})"); }), ErrorKind::Parse);
  EXPECT_EQ(kind_of([&] { parse(R"({"dims": {"9": 1}, "matrices": {}})"); }), ErrorKind::Parse);
  EXPECT_EQ(kind_of([&] { parse(R"({"dims": {}, "matrices": {}, "extra": 1})"); }), ErrorKind::Parse);
}

TEST(Json, UnknownAndMissingFieldsAreRejected) {
  auto j = load("a2.json");
  j["colour"] = "red";
  EXPECT_EQ(kind_of([&] { io::abs_quiver_from_json(j); }), ErrorKind::Parse);
  j = load("a2.json");
  j["vertices"][0].erase("d");
  EXPECT_EQ(kind_of([&] { io::abs_quiver_from_json(j); }), ErrorKind::Parse);
  j = load("a2.json");
  j["arrows"][0]["m"] = "one";
  EXPECT_EQ(kind_of([&] { io::abs_quiver_from_json(j); }), ErrorKind::Parse);
  auto s = load("b2_species.json");
  s["base"]["n"] = 1;
  EXPECT_EQ(kind_of([&] { io::species_from_json(s); }), ErrorKind::Parse);
  EXPECT_EQ(kind_of([] { io::read_json(std::string(QB_DATA_DIR) + "/missing.json"); }), ErrorKind::Parse);
}

TEST(Json, HallElementsRoundTrip) {
  HallElement x;
  add_term(x, IsoClassLabel{{1, 1}, 0}, HallScalar{Rational(3, 2), Rational(-1, 4), 2});
  add_term(x, IsoClassLabel{{2, 0}, 1}, HallScalar{1, 0, 2});
  const auto j = io::to_json(x);
  EXPECT_EQ(j["terms"][0]["a"], "3/2");
  EXPECT_EQ(j["terms"][1]["b"], "0/1");
  EXPECT_EQ(io::hall_element_from_json(j, 2), x);
  EXPECT_EQ(kind_of([] { io::hall_element_from_json(json::parse(R"({"terms": [{"class": "1,0|0", "a": "x", "b": "0"}]})"), 2); }),
            ErrorKind::Parse);
}
