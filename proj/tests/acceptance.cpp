// Acceptance suite: one line per criterion, exit status 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>

#include "generators.hpp"
#include "quiverbench/quiverbench.hpp"

using namespace qb;

namespace {

nlohmann::json load(const std::string& name) { return io::read_json(std::string(QB_DATA_DIR) + "/" + name); }
AbsValuedQuiver abs(const std::string& name) { return io::abs_quiver_from_json(load(name)); }
QuiverAutomorphism autom(const std::string& name) { return io::automorphism_from_json(load(name)); }
FqSpecies spec(const std::string& name) { return io::species_from_json(load(name)); }

std::string notes;

bool check(bool ok, const std::string& what) {
  if (!ok) notes += (notes.empty() ? "" : "; ") + what;
  return ok;
}

AbsValuedQuiver strip_unfold_labels(const AbsValuedQuiver& g) {
  auto strip = [](const std::string& s) { return s.substr(2, s.rfind(':') - 2); };
  std::vector<std::string> vs;
  std::vector<Arrow> as;
  std::map<std::string, std::int64_t> d, m;
  for (std::size_t i = 0; i < g.d.size(); ++i) d[vs.emplace_back(strip(g.quiver.vertices[i]))] = g.d[i];
  for (std::size_t k = 0; k < g.m.size(); ++k) {
    const auto& a = g.quiver.arrows[k];
    as.push_back({strip(a.id), strip(a.tail), strip(a.head)});
    m[as.back().id] = g.m[k];
  }
  AbsValuedQuiver out{Quiver::make(vs, as), {}, {}};
  for (const auto& v : out.quiver.vertices) out.d.push_back(d[v]);
  for (const auto& a : out.quiver.arrows) out.m.push_back(m[a.id]);
  return out;
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

bool folding() {
  bool ok = true;
  for (auto [q, s] : {std::pair{"fold_q.json", "fold_q_sigma.json"}, std::pair{"fold_qprime.json", "fold_qprime_sigma.json"}}) {
    const auto g = fold(abs(q).quiver, autom(s));
    ok &= check(g.d == DimVector{1, 2, 2} && g.m == DimVector{2, 2, 2}, std::string("fold of ") + q);
  }
  std::mt19937_64 rng(1001);
  int good = 0;
  for (int t = 0; t < 200; ++t) {
    const auto g = qbtest::random_valued_quiver(rng, 6, 6);
    const auto [q, s] = unfold(g);
    good += strip_unfold_labels(fold(q, s)) == g;
  }
  return ok & check(good == 200, "fold after unfold on " + std::to_string(200 - good) + " quivers");
}

bool functor_f() {
  const auto g = abs("f_gamma.json"), h = abs("f_gamma_prime.json"), chain = abs("f_chain.json");
  const std::vector<std::pair<std::int64_t, std::int64_t>> arrow{{2, 1}};
  bool ok = check(functor_F(g).dval == arrow && functor_F(h).dval == arrow, "images differ from (2,1)");
  ok &= check(enumerate_valued_morphisms(g, h) == 0, "absolute morphisms exist");
  ok &= check(enumerate_valued_morphisms(functor_F(g), functor_F(h)) > 0, "no relative morphism");
  ok &= check(enumerate_valued_morphisms(g, chain) == 1, "absolute count on the chain");
  ok &= check(enumerate_valued_morphisms(functor_F(g), functor_F(chain)) == 2, "relative count on the chain");
  return ok;
}

bool crush_iso() {
  bool ok = check(tensor_ring_iso_check(spec("species_double.json"), spec("species_quadratic.json")), "pair not isomorphic");
  std::mt19937_64 rng(1003);
  int good = 0;
  for (int t = 0; t < 100; ++t) {
    const auto s = qbtest::random_species(rng);
    good += tensor_graded_dim(s, 4) == tensor_graded_dim(crush_species(s), 4);
  }
  return ok & check(good == 100, "dimension invariant");
}

bool frobenius() {
  bool ok = true;
  for (auto [q, s] : {std::pair{"fold_q.json", "fold_q_sigma.json"}, std::pair{"bipartite.json", "bipartite_sigma.json"}})
    for (std::uint64_t f : {2, 3}) {
      const auto r = verify_frobenius_iso(abs(q).quiver, autom(s), f, 3);
      ok &= check(r.pass(), std::string("Frobenius on ") + q);
      if (std::string(q) == "fold_q.json") ok &= check(r.fixed_dims == GradedDims{5, 6, 4, 0}, "graded dims 5,6,4,0");
    }
  const auto mq = abs("mirror.json").quiver;
  const auto ms = autom("mirror_sigma.json");
  std::size_t naive = 0;
  for (auto c : sigma_orbit_count(mq, ms, 3)) naive += c;
  std::int64_t tensor = 0;
  for (auto d : tensor_graded_dim(species_from_folding(mq, ms, 2), 3)) tensor += d;
  ok &= check(naive == 3 && tensor == 5, "fixed dimension 3 against tensor dimension 5");
  return ok;
}

bool scalar_extension() {
  bool ok = true;
  const auto dbl = scalar_extension_quiver(spec("ext_double.json"));
  std::set<std::string> tails, heads;
  bool doubles = dbl.multiplicity.size() == 2;
  for (const auto& [k, m] : dbl.multiplicity) {
    doubles &= m == 2 && k.first.rfind("1:", 0) == 0 && k.second.rfind("2:", 0) == 0;
    tails.insert(k.first);
    heads.insert(k.second);
  }
  ok &= check(dbl.quiver.vertices.size() == 4 && doubles && tails.size() == 2 && heads.size() == 2, "two double arrows");
  const auto bip = scalar_extension_quiver(spec("ext_bipartite.json"));
  bool complete = bip.multiplicity.size() == 4;
  for (const auto& [k, m] : bip.multiplicity) complete &= m == 1 && k.first.rfind("1:", 0) == 0 && k.second.rfind("2:", 0) == 0;
  ok &= check(bip.quiver.vertices.size() == 4 && complete, "complete bipartite");
  std::mt19937_64 rng(1005);
  int good = 0;
  for (int t = 0; t < 100; ++t) {
    const auto s = qbtest::random_species(rng, 3, 3);
    const auto e = scalar_extension_quiver(s);
    std::size_t dv = 0, ma = 0;
    for (auto d : s.shape.d) dv += static_cast<std::size_t>(d);
    for (auto m : s.shape.m) ma += static_cast<std::size_t>(m);
    good += e.quiver.vertices.size() == dv && e.quiver.arrows.size() == ma;
  }
  return ok & check(good == 100, "vertex and arrow counts");
}

bool roots_cartan() {
  const auto a2 = abs("a2.json"), kr = abs("kronecker.json"), b2 = abs("b2.json"), g2 = abs("g2.json"),
             g362 = abs("gamma_3_6_2.json");
  bool ok = check(cartan_matrix(a2).c == IntMatrix{{2, -1}, {-1, 2}}, "A2 Cartan");
  ok &= check(cartan_matrix(kr).c == IntMatrix{{2, -2}, {-2, 2}}, "Kronecker Cartan");
  ok &= check(cartan_matrix(b2).c == IntMatrix{{2, -2}, {-1, 2}}, "B2 Cartan");
  ok &= check(cartan_matrix(g2).c == IntMatrix{{2, -3}, {-1, 2}}, "G2 Cartan");
  ok &= check(cartan_matrix(g362).c == IntMatrix{{2, -2}, {-3, 2}}, "(3)-(6)-(2) Cartan");
  ok &= check(real_roots_up_to(a2, 8).positive().size() == 3, "A2 roots");
  ok &= check(real_roots_up_to(b2, 8).positive().size() == 4, "B2 roots");
  ok &= check(real_roots_up_to(g2, 8).positive().size() == 6, "G2 roots");
  for (std::int64_t B = 1; B <= 6; ++B)
    ok &= check(real_roots_up_to(kr, B).positive().size() == static_cast<std::size_t>(2 * B), "Kronecker roots grow with the bound");
  const auto im = imaginary_roots_up_to(g362, 3);
  ok &= check(fundamental_set_member(g362, {1, 1}) && std::count(im.begin(), im.end(), DimVector{1, 1}), "(1,1) imaginary");
  ok &= check(stable_lattice(kr) == std::vector<DimVector>{{1, 1}} && stable_lattice(a2).empty(), "stable lattices");
  ok &= check(classify_type(a2) == RepType::Finite && classify_type(b2) == RepType::Finite &&
                  classify_type(g2) == RepType::Finite && classify_type(kr) == RepType::Affine &&
                  classify_type(g362) == RepType::Indefinite,
              "classification");
  std::mt19937_64 rng(1006);
  const std::vector<AbsValuedQuiver> shapes{a2, kr, b2, g2, g362};
  int good = 0;
  for (int t = 0; t < 10000; ++t) {
    const auto g = t % 2 ? shapes[rng() % shapes.size()] : qbtest::random_valued_quiver(rng, 5, 6);
    const std::size_t i = rng() % g.d.size();
    DimVector x(g.d.size());
    for (auto& v : x) v = std::uniform_int_distribution<std::int64_t>(-6, 6)(rng);
    good += tits_form(g, simple_reflection(g, i, x)) == tits_form(g, x);
  }
  return ok & check(good == 10000, "Tits form invariance");
}

bool dlab_ringel() {
  bool ok = true;
  for (auto name : {"a2_species.json", "b2_species.json"}) {
    const auto s = spec(name);
    Catalog cat(make_context(s));
    const auto roots = real_roots_up_to(s.shape, 3).positive();
    std::vector<DimVector> found;
    bool single = true;
    for (const auto& a : box({3, 3})) {
      const auto ind = enumerate_indecomposables(cat, a);
      if (!ind.empty()) found.push_back(a);
      single &= ind.size() <= 1;
    }
    std::sort(found.begin(), found.end());
    ok &= check(found == roots && single, std::string("indecomposables of ") + name);
  }
  Catalog kr(make_context(trivial_species(abs("kronecker.json").quiver, 2)));
  ok &= check(enumerate_indecomposables(kr, {1, 1}).size() == 3, "three classes at (1,1)");
  for (const DimVector& a : {DimVector{1, 0}, DimVector{0, 1}, DimVector{2, 1}, DimVector{1, 2}})
    ok &= check(enumerate_indecomposables(kr, a).size() == 1, "unique class at a real root");
  return ok;
}

bool deng_xiao() {
  Catalog cat(make_context(untwisted_species(abs("gamma_2_6_3.json"), 2)));
  bool ok = check(!enumerate_indecomposables(cat, {1, 1}).empty(), "indecomposable at (1,1)");
  ok &= check(enumerate_indecomposables(cat, {1, 0}).size() == 1, "unique at e1");
  ok &= check(enumerate_indecomposables(cat, {0, 1}).size() == 1, "unique at e2");
  return ok;
}

HallScalar rat(Rational a, std::int64_t q) { return HallScalar{std::move(a), 0, q}; }

bool hall() {
  bool ok = true;
  const auto a2 = abs("a2.json");
  {
    HallAlgebra H(make_context(trivial_species(a2.quiver, 2)));
    auto& cat = H.catalog();
    const auto ctx = H.context();
    Matrix one(1, 1);
    one(0, 0) = 1;
    const auto P = cat.label(make_representation(ctx, {1, 1}, {one}));
    const auto S1 = cat.label(simple_representation(ctx, 0)), S2 = cat.label(simple_representation(ctx, 1));
    const auto S12 = cat.label(direct_sum(simple_representation(ctx, 0), simple_representation(ctx, 1)));
    const auto S11 = cat.label(direct_sum(simple_representation(ctx, 0), simple_representation(ctx, 0)));
    const auto vinv = HallScalar::v_pow(2, -1);
    ok &= check(H.product(S1, S2) == HallElement{{S12, vinv}, {P, vinv}}, "[S1][S2]");
    ok &= check(H.product(S2, S1) == HallElement{{S12, rat(1, 2)}}, "[S2][S1]");
    ok &= check(H.product(S1, S1) == HallElement{{S11, HallScalar{0, 3, 2}}}, "[S1]^2");
    const auto zero = H.zero_label();
    ok &= check(H.delta(P) == HallTensor{{{P, zero}, rat(1, 2)}, {{S1, S2}, vinv}, {{zero, P}, rat(1, 2)}}, "delta([P])");
  }
  const std::vector<FqSpecies> shapes{trivial_species(a2.quiver, 2), trivial_species(abs("kronecker.json").quiver, 2),
                                      spec("b2_species.json")};
  for (const auto& s : shapes) {
    HallAlgebra H(make_context(s));
    const auto words = simple_monomials(H, 4);
    const auto r = bialgebra_checks(H, words, 4);
    ok &= check(r.associativity_failed == 0 && r.associativity_checked > 0, "associativity");
    ok &= check(r.adjoint_failed == 0 && r.adjoint_checked > 0, "adjointness");
    ok &= check(r.delta_failed == 0 && r.grading_failed == 0, "coproduct and grading");
  }
  for (const auto& s : {trivial_species(a2.quiver, 2), trivial_species(a2.quiver, 3), spec("b2_species.json")}) {
    HallAlgebra H(make_context(s));
    ok &= check(H.serre_check(0, 1) && H.serre_check(1, 0), "Serre relations");
  }
  return ok;
}

}  // namespace

int main() {
  struct Criterion {
    int number;
    const char* name;
    double budget;
    std::function<bool()> run;
  };
  bool hall_ok = false;
  const std::vector<Criterion> criteria{
      {1, "folding", 1, folding},
      {2, "functor F", 1, functor_f},
      {3, "crush and tensor-ring isomorphism", 5, crush_iso},
      {4, "Frobenius fixed points", 10, frobenius},
      {5, "scalar extension", 5, scalar_extension},
      {6, "roots and Cartan matrices", 5, roots_cartan},
      {7, "indecomposables of finite and tame shapes", 60, dlab_ringel},
      {8, "indecomposables at an imaginary root", 60, deng_xiao},
      {9, "Hall algebra", 120, [&] { return hall_ok = hall(); }},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    notes.clear();
    const auto start = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = c.run();
    } catch (const std::exception& e) {
      notes = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (ok && secs >= c.budget) {
      ok = false;
      notes = "over the time budget";
    }
    failures += !ok;
    std::printf("criterion %d: %s: %s (%.3f s, budget %.0f s)%s%s\n", c.number, c.name, ok ? "PASS" : "FAIL", secs,
                c.budget, notes.empty() ? "" : ": ", notes.c_str());
  }
  std::printf("criterion 10: reproducibility caveat: %s (the generic composition algebra and the Kac-Moody "
              "identification are not checked directly; criterion 9 covers their per-q consequences)\n",
              hall_ok ? "PASS" : "FAIL");
  failures += !hall_ok;
  std::fflush(stdout);
  return failures ? 1 : 0;
}
