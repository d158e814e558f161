// Command-line front end: one verb per operation, JSON in and JSON out.

#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "quiverbench/quiverbench.hpp"

using namespace qb;
using io::json;

namespace {

struct Options {
  std::string quiver, target, automorphism, species, x, y, dim, i, j, format = "json", mode = "fixed";
  std::int64_t max_coord = -1;
  std::int64_t length = -1;
  std::int64_t degree = -1;
  std::uint64_t q = 0;
  std::uint64_t cap = 0;
};

std::uint64_t effective_cap(const Options& o) {
  if (o.cap) return o.cap;
  if (const char* env = std::getenv("WORKBENCH_CAP")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      fail(ErrorKind::Parse, "WORKBENCH_CAP must be a positive integer");
    }
  }
  return kDefaultCap;
}

void require(const std::string& value, const char* flag) {
  if (value.empty()) fail(ErrorKind::Parse, std::string("missing ") + flag);
}

void require(std::int64_t value, const char* flag) {
  if (value < 0) fail(ErrorKind::Parse, std::string("missing or negative ") + flag);
}

json load(const std::string& path, const char* flag) {
  require(path, flag);
  return io::read_json(path);
}

DimVector parse_dim(const std::string& s, std::size_t n) {
  DimVector out;
  std::stringstream ss(s);
  std::string item;
  try {
    while (std::getline(ss, item, ',')) out.push_back(std::stoll(item));
  } catch (const std::exception&) {
    fail(ErrorKind::Parse, "malformed dimension vector " + s);
  }
  if (out.size() != n) fail(ErrorKind::IndexMismatch, "dimension vector needs " + std::to_string(n) + " entries");
  return out;
}

FqSpecies load_species(const Options& o) {
  const std::string& path = o.species.empty() ? o.quiver : o.species;
  const json j = load(path, "--species");
  if (j.is_object() && j.contains("base")) {
    auto s = io::species_from_json(j);
    if (o.q && o.q != s.q()) fail(ErrorKind::InvalidInput, "--q disagrees with the species base field");
    return s;
  }
  if (!o.q) fail(ErrorKind::Parse, "a plain valued quiver needs --q");
  return io::species_or_quiver_from_json(j, o.q);
}

HallElement load_element(HallAlgebra& H, const std::string& spec) {
  require(spec, "--x/--y");
  const auto& q = H.context()->quiver();
  if (spec.rfind("word:", 0) == 0) {
    HallElement out = H.one();
    std::stringstream ss(spec.substr(5));
    std::string v;
    while (std::getline(ss, v, ','))
      if (!v.empty()) out = H.product(out, H.simple(q.vertex_index(v)));
    return out;
  }
  if (spec.rfind("class:", 0) == 0) return H.basis(IsoClassLabel::parse(spec.substr(6)));
  return io::hall_element_from_json(io::read_json(spec), H.q());
}

json report_json(const QuiverReport& r) {
  return {{"valid", r.ok()}, {"violations", r.violations}, {"connected", r.connected},
          {"acyclic", r.acyclic}, {"has_loops", r.has_loops}};
}

json roots_json(const std::vector<DimVector>& rs) {
  json a = json::array();
  for (const auto& r : rs) a.push_back(io::to_json(r));
  return a;
}

json classes_json(Catalog& cat, const std::vector<IsoClassLabel>& ls) {
  json a = json::array();
  for (const auto& l : ls)
    a.push_back({{"class", l.str()}, {"aut", cat.aut_order(l)}, {"representative", io::to_json(cat.representative(l))}});
  return a;
}

void emit(const json& out, const std::string& format) {
  if (format == "text") {
    for (const auto& [k, v] : out.items()) std::cout << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
  } else {
    std::cout << out.dump(2) << "\n";
  }
}

using Handler = std::function<json(const Options&)>;

std::map<std::string, Handler> handlers() {
  std::map<std::string, Handler> h;
  h["fold"] = [](const Options& o) {
    const auto g = io::abs_quiver_from_json(load(o.quiver, "--quiver"));
    if (!trivially_valued(g.quiver).d.empty() && g != trivially_valued(g.quiver))
      fail(ErrorKind::InvalidInput, "fold takes a plain quiver (all values 1)");
    return io::to_json(fold(g.quiver, io::automorphism_from_json(load(o.automorphism, "--auto"))));
  };
  h["unfold"] = [](const Options& o) {
    const auto [q, s] = unfold(io::abs_quiver_from_json(load(o.quiver, "--quiver")));
    return json{{"quiver", io::to_json(q)}, {"automorphism", io::to_json(s)}};
  };
  h["crush"] = [](const Options& o) {
    const auto j = load(o.quiver, "--quiver");
    return io::is_relative(j) ? io::to_json(crush_rel(io::rel_quiver_from_json(j)))
                              : io::to_json(crush_abs(io::abs_quiver_from_json(j)));
  };
  h["functor-f"] = [](const Options& o) { return io::to_json(functor_F(io::abs_quiver_from_json(load(o.quiver, "--quiver")))); };
  h["lift"] = [](const Options& o) { return io::to_json(lift_relative(io::rel_quiver_from_json(load(o.quiver, "--quiver")))); };
  h["morphisms"] = [](const Options& o) {
    const auto a = load(o.quiver, "--quiver"), b = load(o.target, "--target");
    if (io::is_relative(a) != io::is_relative(b)) fail(ErrorKind::InvalidInput, "both quivers must use the same flavor");
    const auto n = io::is_relative(a)
                       ? enumerate_valued_morphisms(io::rel_quiver_from_json(a), io::rel_quiver_from_json(b), effective_cap(o))
                       : enumerate_valued_morphisms(io::abs_quiver_from_json(a), io::abs_quiver_from_json(b), effective_cap(o));
    return json{{"count", n}};
  };
  h["cartan"] = [](const Options& o) {
    const auto c = cartan_matrix(io::abs_quiver_from_json(load(o.quiver, "--quiver")));
    return json{{"matrix", c.c}, {"symmetrizer", c.symmetrizer}};
  };
  h["forms"] = [](const Options& o) {
    const auto g = io::abs_quiver_from_json(load(o.quiver, "--quiver"));
    const std::size_t n = g.d.size();
    IntMatrix euler(n, std::vector<std::int64_t>(n));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) euler[a][b] = euler_form(g, unit_vector(n, a), unit_vector(n, b));
    json out{{"euler", euler}, {"symmetric", symmetric_matrix(g)}};
    if (!o.x.empty()) {
      const auto x = parse_dim(o.x, n);
      out["tits"] = tits_form(g, x);
      if (!o.y.empty()) {
        const auto y = parse_dim(o.y, n);
        out["euler_xy"] = euler_form(g, x, y);
        out["symmetric_xy"] = symmetric_form(g, x, y);
      }
    }
    return out;
  };
  h["roots"] = [](const Options& o) {
    require(o.max_coord, "--max-coord");
    const auto g = io::abs_quiver_from_json(load(o.quiver, "--quiver"));
    return json{{"real", roots_json(real_roots_up_to(g, o.max_coord).positive())},
                {"imaginary", roots_json(imaginary_roots_up_to(g, o.max_coord, effective_cap(o)))}};
  };
  h["classify"] = [](const Options& o) {
    const auto j = load(o.quiver, "--quiver");
    const auto t = io::is_relative(j) ? classify_type(io::rel_quiver_from_json(j)) : classify_type(io::abs_quiver_from_json(j));
    return json{{"type", to_string(t)}};
  };
  h["stable"] = [](const Options& o) {
    return json{{"lattice", roots_json(stable_lattice(io::abs_quiver_from_json(load(o.quiver, "--quiver"))))}};
  };
  h["species-validate"] = [](const Options& o) {
    const auto s = io::species_from_json(load(o.species, "--species"));
    const auto r = validate_species(s);
    json dims = json::array();
    for (const auto& [a, b] : r.dims) dims.push_back({a, b});
    return json{{"valid", r.ok()}, {"violations", r.violations}, {"dims", dims}, {"duality", r.duality}};
  };
  h["tensor-dims"] = [](const Options& o) {
    require(o.length, "--length");
    const auto j = load(o.species.empty() ? o.quiver : o.species, "--species");
    const auto L = static_cast<std::size_t>(o.length);
    const auto d = j.contains("base") ? tensor_graded_dim(io::species_from_json(j), L)
                                      : tensor_graded_dim(io::abs_quiver_from_json(j), L);
    return json{{"dims", d}};
  };
  h["crush-species"] = [](const Options& o) { return io::to_json(crush_species(io::species_from_json(load(o.species, "--species")))); };
  h["iso-check"] = [](const Options& o) {
    const auto a = io::species_from_json(load(o.species, "--species"));
    const auto b = io::species_from_json(load(o.target, "--target"));
    if (o.mode == "tensor") return json{{"isomorphic", tensor_ring_iso_check(a, b, effective_cap(o))}};
    if (o.mode != "fixed" && o.mode != "twisted") fail(ErrorKind::Parse, "--mode must be fixed, twisted or tensor");
    const auto r = species_iso_check(a, b, o.mode == "fixed" ? IsoMode::FixedFields : IsoMode::GaloisTwisted, effective_cap(o));
    json out{{"isomorphic", r.isomorphic}};
    if (r.certificate)
      out["certificate"] = {{"vertex_map", r.certificate->vertex_map}, {"frobenius_power", r.certificate->frobenius_power}};
    return out;
  };
  h["frobenius-verify"] = [](const Options& o) {
    require(o.length, "--length");
    if (!o.q) fail(ErrorKind::Parse, "missing --q");
    const auto g = io::abs_quiver_from_json(load(o.quiver, "--quiver"));
    const auto r = verify_frobenius_iso(g.quiver, io::automorphism_from_json(load(o.automorphism, "--auto")), o.q,
                                        static_cast<std::size_t>(o.length));
    return json{{"fixed_dims", r.fixed_dims}, {"tensor_dims", r.tensor_dims}, {"dims_equal", r.dims_equal},
                {"closure_ok", r.closure_ok}, {"products_checked", r.products_checked}, {"pass", r.pass()}};
  };
  h["unfold-closure"] = [](const Options& o) {
    const auto s = load_species(o);
    const auto e = scalar_extension_quiver(s);
    return json{{"quiver", io::to_json(e.quiver)}, {"vertex_count", e.quiver.vertices.size()},
                {"arrow_count", e.quiver.arrows.size()}, {"splitting_degree", e.N}};
  };
  h["reps-enumerate"] = [](const Options& o) {
    require(o.dim, "--dim");
    Catalog cat(make_context(load_species(o)), effective_cap(o));
    const auto a = parse_dim(o.dim, cat.context()->vertex_count());
    return json{{"dim", io::to_json(a)}, {"classes", classes_json(cat, enumerate_reps(cat, a))}};
  };
  h["indecomposables"] = [](const Options& o) {
    require(o.dim, "--dim");
    Catalog cat(make_context(load_species(o)), effective_cap(o));
    const auto a = parse_dim(o.dim, cat.context()->vertex_count());
    return json{{"dim", io::to_json(a)}, {"classes", classes_json(cat, enumerate_indecomposables(cat, a))}};
  };
  h["hall-product"] = [](const Options& o) {
    HallAlgebra H(make_context(load_species(o)), effective_cap(o));
    return io::to_json(H.product(load_element(H, o.x), load_element(H, o.y)));
  };
  h["hall-delta"] = [](const Options& o) {
    HallAlgebra H(make_context(load_species(o)), effective_cap(o));
    return io::to_json(H.delta(load_element(H, o.x)));
  };
  h["hall-form"] = [](const Options& o) {
    HallAlgebra H(make_context(load_species(o)), effective_cap(o));
    return io::to_json(H.green_form(load_element(H, o.x), load_element(H, o.y)));
  };
  h["serre-check"] = [](const Options& o) {
    require(o.i, "--i");
    require(o.j, "--j");
    HallAlgebra H(make_context(load_species(o)), effective_cap(o));
    const auto& q = H.context()->quiver();
    const auto rest = H.serre_element(q.vertex_index(o.i), q.vertex_index(o.j));
    return json{{"holds", rest.empty()}, {"residue", io::to_json(rest)["terms"]}};
  };
  h["bialgebra-check"] = [](const Options& o) {
    require(o.degree, "--degree");
    HallAlgebra H(make_context(load_species(o)), effective_cap(o));
    const auto r = bialgebra_checks(H, simple_monomials(H, static_cast<std::size_t>(o.degree)), o.degree);
    auto pair = [](std::size_t c, std::size_t f) { return json{{"checked", c}, {"failed", f}}; };
    return json{{"associativity", pair(r.associativity_checked, r.associativity_failed)},
                {"comultiplication", pair(r.delta_checked, r.delta_failed)},
                {"adjointness", pair(r.adjoint_checked, r.adjoint_failed)},
                {"grading", pair(r.grading_checked, r.grading_failed)},
                {"pass", r.pass()}};
  };
  return h;
}

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::SizeLimitExceeded:
      return 3;
    case ErrorKind::Parse:
      return 4;
    default:
      return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quiver, species and Hall algebra workbench"};
  app.require_subcommand(1);
  Options o;
  const auto table = handlers();
  for (const auto& [verb, fn] : table) {
    auto* sub = app.add_subcommand(verb);
    sub->add_option("--quiver", o.quiver, "quiver JSON file, - for stdin");
    sub->add_option("--target", o.target, "second quiver or species");
    sub->add_option("--auto", o.automorphism, "automorphism JSON file");
    sub->add_option("--species", o.species, "species JSON file, - for stdin");
    sub->add_option("--x", o.x, "vector, or Hall element as file, word:i,j or class:label");
    sub->add_option("--y", o.y, "vector, or Hall element");
    sub->add_option("--dim", o.dim, "dimension vector, comma separated in vertex order");
    sub->add_option("--i", o.i, "vertex id");
    sub->add_option("--j", o.j, "vertex id");
    sub->add_option("--q", o.q, "field size");
    sub->add_option("--length", o.length, "path length bound");
    sub->add_option("--max-coord", o.max_coord, "coordinate bound");
    sub->add_option("--degree", o.degree, "total degree bound");
    sub->add_option("--cap", o.cap, "enumeration cap");
    sub->add_option("--mode", o.mode, "iso-check mode: fixed, twisted or tensor");
    sub->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 4;
  }
  const std::string verb = app.get_subcommands().front()->get_name();
  try {
    emit(table.at(verb)(o), o.format);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
