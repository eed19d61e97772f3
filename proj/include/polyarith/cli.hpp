#pragma once

// Command-line front end. run() is callable in-process so tests can drive it.
// Exit codes: 0 ok, 1 malformed input or usage, 2 precondition, 3 consistency.

#include <CLI11.hpp>
#include <openssl/evp.h>

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "polyarith/arithmeticity.hpp"
#include "polyarith/json_io.hpp"

#ifndef POLYARITH_VERSION
#define POLYARITH_VERSION "0.0.0"
#endif

namespace polyarith::cli {

using io::json;

inline std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw ConsistencyError("SHA-256 digest failed");
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return hex.str();
}

/// Inputs that feed the digest: scalar arguments plus parsed file contents,
/// so the digest ignores file paths and whitespace.
struct Inputs {
  json arguments = json::object();
  json files = json::array();

  json load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError(path + ": cannot read file");
    std::stringstream buf;
    buf << in.rdbuf();
    json j;
    try {
      j = json::parse(buf.str());
    } catch (const json::parse_error& e) {
      throw InputError(path + ": invalid JSON: " + e.what());
    }
    files.push_back(j);
    return j;
  }

  std::string digest(const std::string& command) const {
    return sha256_hex(json{{"command", command}, {"arguments", arguments}, {"files", files}}.dump());
  }
};

inline Integer parse_integer_argument(const std::string& text, const std::string& name) {
  try {
    Rational r = parse_rational(text);
    if (is_integral(r)) return r.get_num();
  } catch (const InputError&) {
  }
  throw InputError("argument <" + name + ">: expected an integer, got '" + text + "'");
}

inline json poly_json(const Polynomial& p) { return p.to_string(); }

inline json word_json(const Presentation& p, const Word& w) { return w.empty() ? std::string("1") : p.format(w); }

inline const std::string& necessary_only_note() {
  static const std::string note =
      "only the necessary condition is tested: FailsNecessaryCondition rules out arithmeticity, "
      "the other classes do not prove it";
  return note;
}

// ---------------------------------------------------------------------------
// Commands. Each returns the "results" object.

inline json pell_results(const Integer& d) {
  QuadElem e = fundamental_pell(QuadOrder(d));
  return {{"a", io::integer_to_json(e.x)}, {"b", io::integer_to_json(e.y)}, {"d", io::integer_to_json(d)}};
}

inline io::GroupSpec gamma_epsilon_spec(const GammaEpsilon& ge) {
  io::GroupSpec g{ge.group.presentation(), ge.group.action().matrices(), ge.group.rank(), ge.group.engine().name()};
  return g;
}

inline json gamma_epsilon_results(const Integer& d) {
  GammaEpsilon ge = build_gamma_epsilon(d);
  json out = io::group_to_json(gamma_epsilon_spec(ge));
  out["epsilon"] = {{"a", io::integer_to_json(ge.epsilon.x)},
                    {"b", io::integer_to_json(ge.epsilon.y)},
                    {"d", io::integer_to_json(d)}};
  out["l"] = io::integer_to_json(ge.l);
  return out;
}

struct LoadedGroup {
  io::GroupSpec spec;
  ModuleAction action;
};

inline LoadedGroup load_group(const json& j) {
  io::GroupSpec spec = io::parse_group(j, "", max_lie_dimension());
  ModuleAction m(spec.presentation, spec.matrices, spec.rank);
  return {std::move(spec), std::move(m)};
}

inline json derivation_json(const Presentation& p, const Derivation& d) {
  json out = json::object();
  for (std::size_t g = 0; g < d.values.size(); ++g) out[p.generator_names()[g]] = io::vector_to_json(d.values[g]);
  return out;
}

inline json lattice_json(const Presentation& p, const DerivationLattice& l) {
  json basis = json::array();
  for (std::size_t i = 0; i < l.size(); ++i) basis.push_back(derivation_json(p, l.element(i)));
  return basis;
}

inline json derivations_results(const LoadedGroup& g) {
  const auto& p = g.spec.presentation;
  DerivationLattice der = derivation_space(p, g.action);
  DerivationLattice inner = principal_derivations(g.action);
  return {{"rank", der.size()},
          {"module_rank", g.action.rank()},
          {"basis", lattice_json(p, der)},
          {"basis_matrix", io::matrix_to_json(der.basis())},
          {"principal_rank", inner.size()},
          {"principal_basis_matrix", io::matrix_to_json(inner.basis())}};
}

inline std::string describe_group(const CohomologyGroup& h) {
  std::string s;
  if (h.free_rank > 0) s = "Z" + (h.free_rank > 1 ? "^" + std::to_string(h.free_rank) : std::string());
  for (const auto& t : h.torsion) s += (s.empty() ? "" : " + ") + ("Z/" + to_string(t));
  return s.empty() ? "0" : s;
}

inline json h1_results(const LoadedGroup& g) {
  CohomologyGroup h = h1(g.spec.presentation, g.action);
  json torsion = json::array();
  for (const auto& t : h.torsion) torsion.push_back(io::integer_to_json(t));
  return {{"free_rank", h.free_rank},
          {"torsion", torsion},
          {"group", describe_group(h)},
          {"derivation_rank", derivation_space(g.spec.presentation, g.action).size()},
          {"principal_rank", principal_derivations(g.action).size()}};
}

inline json der_action_results(const LoadedGroup& g, const std::string& element) {
  const auto& p = g.spec.presentation;
  NormalFormEngine engine = io::make_engine(g.spec);
  Word w;
  try {
    w = p.parse_word(element);
  } catch (const InputError& e) {
    throw InputError(std::string("--element: ") + e.what());
  }
  w = engine.normalize(w);
  DerivationLattice der = derivation_space(p, g.action);
  IntegerMatrix m = conjugation_action(p, g.action, w, der, &engine);
  return {{"element", word_json(p, w)},
          {"derivation_basis", lattice_json(p, der)},
          {"matrix", io::matrix_to_json(m)},
          {"orientation", "row i holds the coordinates of g*d_i"}};
}

inline json equivariant_units_results(const LoadedGroup& g, const Integer& bound) {
  auto units = equivariant_units(g.action, bound);
  json list = json::array();
  for (const auto& u : units) list.push_back(io::matrix_to_json(u));
  return {{"bound", io::integer_to_json(bound)},
          {"count", units.size()},
          {"units", list},
          {"note", "bounded enumeration of GL(n,Z) elements commuting with the action, not a finiteness proof"}};
}

inline json jordan_results(const RationalMatrix& a) {
  JordanPair jc = jordan_chevalley(a);
  if (jc.semisimple * jc.unipotent != a || jc.semisimple * jc.unipotent != jc.unipotent * jc.semisimple)
    throw ConsistencyError("Jordan-Chevalley factors do not recombine");
  return {{"semisimple_part", io::matrix_to_json(jc.semisimple)},
          {"unipotent_part", io::matrix_to_json(jc.unipotent)},
          {"char_poly", poly_json(char_poly(a))},
          {"min_poly", poly_json(min_poly(a))},
          {"semisimple_min_poly", poly_json(min_poly(jc.semisimple))}};
}

inline json verdict_json(const ArithVerdict& v) {
  return {{"classification", to_string(v.classification)},
          {"order", v.order ? io::integer_to_json(*v.order) : json(nullptr)},
          {"semisimple_part", io::matrix_to_json(v.witness.semisimple)},
          {"unipotent_part", io::matrix_to_json(v.witness.unipotent)},
          {"note", necessary_only_note()}};
}

inline json teob_results(const Integer& d, std::uint64_t seed) {
  InnerActionReport r = inner_action_report(d);
  json out = verdict_json(r.verdict);
  out["d"] = io::integer_to_json(r.d);
  out["a"] = io::integer_to_json(r.a);
  out["b"] = io::integer_to_json(r.b);
  out["l"] = io::integer_to_json(r.l);
  out["derivation_rank"] = r.derivation_rank;
  json factors = json::array();
  for (const auto& f : r.reference_change_of_basis) factors.push_back(io::integer_to_json(f));
  out["reference_change_of_basis"] = factors;
  out["inn_a"] = io::matrix_to_json(r.inn_a);
  out["upper_rows_match"] = r.upper_rows_match;
  out["lower_block"] = io::matrix_to_json(r.lower_block);
  out["lower_block_trace"] = io::integer_to_json(r.lower_block(0, 0) + r.lower_block(1, 1));
  out["lower_block_det"] = io::integer_to_json(determinant(r.lower_block));
  out["reference_lower_block"] = io::matrix_to_json(r.reference_lower_block);
  out["reference_block_relation"] = r.reference_block_relation;
  out["resolved_g"] = io::integer_to_json(r.l);
  out["semisimple_char_poly"] = poly_json(r.semisimple_char_poly);
  out["hyperbolic_factor"] = poly_json(r.hyperbolic_factor);

  CompatibilitySample s = conjugation_compatibility(build_gamma_epsilon(d), seed, 50);
  out["compatibility"] = {{"seed", s.seed},
                          {"samples", 50},
                          {"checks", s.checks},
                          {"failures", s.failures},
                          {"first_failure", s.first_failure.empty() ? json(nullptr) : json(s.first_failure)}};
  if (s.failures > 0)
    throw ConsistencyError("Inn_g o phi_d o Inn_g^-1 != phi_{g*d}: " + s.first_failure);
  return out;
}

inline json ints_json(const std::vector<std::size_t>& v) { return json(v); }

inline json invariants_json(const LieAlgebraQ& lie, const std::vector<RationalMatrix>& mats) {
  std::vector<LieAutomorphism> gens;
  for (const auto& m : mats) gens.emplace_back(lie, m);
  InvariantCohomology inv = invariant_subcomplex(lie, gens);
  std::vector<std::size_t> cochain_dims;
  for (const auto& c : inv.cochains) cochain_dims.push_back(c.size());
  return {{"cochain_dims", ints_json(cochain_dims)},
          {"betti", ints_json(inv.betti)},
          {"cohomology_invariants", ints_json(inv.cohomology_invariants)},
          {"agree", inv.betti == inv.cohomology_invariants}};
}

inline json lie_cohomology_results(const LieAlgebraQ& lie, const std::optional<RationalMatrix>& automorphism,
                                   const std::optional<std::vector<RationalMatrix>>& invariants) {
  KoszulComplex k = build_koszul(lie);
  GradedCohomology h = cohomology(k);
  const std::size_t n = lie.dim();
  long euler = 0;
  bool duality = true;
  for (std::size_t p = 0; p <= n; ++p) {
    euler += (p % 2 ? -1 : 1) * static_cast<long>(h.betti[p]);
    duality = duality && h.betti[p] == h.betti[n - p];
  }
  LowerCentralSeries lcs = lower_central_series(lie);
  std::vector<std::size_t> lcs_dims;
  for (const auto& t : lcs.terms) lcs_dims.push_back(t.size());
  H1Check h1c = h1_annihilator_check(lie);

  json out{{"dim", n},
           {"betti", ints_json(h.betti)},
           {"euler_characteristic", euler},
           {"poincare_duality", duality},
           {"lower_central_series", ints_json(lcs_dims)},
           {"nilpotency_class", lcs.nilpotency_class ? json(*lcs.nilpotency_class) : json(nullptr)},
           {"h1_annihilates_derived", {{"ok", h1c.ok}, {"h1_dim", h1c.h1_dim}, {"derived_dim", h1c.derived_dim}}}};

  if (automorphism) {
    LieAutomorphism phi(lie, *automorphism);
    json actions = json::array();
    for (std::size_t p = 0; p <= n; ++p) actions.push_back(io::matrix_to_json(action_on_cohomology(k, h, phi, p)));
    const bool semisimple = is_semisimple(phi.matrix());
    json rigidity = nullptr;
    if (semisimple && lcs.nilpotency_class) {
      RigidityResult r = semisimple_rigidity_check(lie, phi);
      if (!r.ok) throw ConsistencyError("semisimple automorphism acts trivially on H^1 but is not the identity");
      rigidity = {{"trivial_on_h1", r.hypothesis_holds}, {"is_identity", phi.matrix().is_identity()}};
    }
    out["automorphism"] = {{"semisimple", semisimple},
                           {"min_poly", poly_json(min_poly(phi.matrix()))},
                           {"action_on_cohomology", actions},
                           {"rigidity", rigidity}};
  }
  if (invariants) out["invariants"] = invariants_json(lie, *invariants);
  return out;
}

// ---------------------------------------------------------------------------
// Text rendering for --pretty

inline bool is_matrix_json(const json& j) {
  return j.is_object() && j.size() == 3 && j.contains("rows") && j.contains("cols") && j.contains("entries");
}

inline std::string scalar_text(const json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

inline void render_matrix(std::ostream& out, const json& m, const std::string& indent) {
  std::size_t width = 1;
  for (const auto& row : m["entries"])
    for (const auto& e : row) width = std::max(width, scalar_text(e).size());
  for (const auto& row : m["entries"]) {
    out << indent << "[";
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "  " : "") << std::setw(int(width)) << scalar_text(row[c]);
    out << "]\n";
  }
}

inline void render(std::ostream& out, const json& j, const std::string& label, const std::string& indent) {
  if (is_matrix_json(j)) {
    out << indent << label << ":\n";
    render_matrix(out, j, indent + "  ");
  } else if (j.is_object()) {
    out << indent << label << ":\n";
    for (auto it = j.begin(); it != j.end(); ++it) render(out, it.value(), it.key(), indent + "  ");
  } else if (j.is_array() && std::any_of(j.begin(), j.end(), [](const json& e) { return e.is_structured(); })) {
    out << indent << label << ":\n";
    for (std::size_t i = 0; i < j.size(); ++i) render(out, j[i], "[" + std::to_string(i) + "]", indent + "  ");
  } else if (j.is_array()) {
    out << indent << label << ": (";
    for (std::size_t i = 0; i < j.size(); ++i) out << (i ? ", " : "") << scalar_text(j[i]);
    out << ")\n";
  } else {
    out << indent << label << ": " << scalar_text(j) << "\n";
  }
}

/// Header lines, then results with the classification (if any) last.
inline void render_report(std::ostream& out, const json& report) {
  out << "command: " << scalar_text(report["command"]) << "\n";
  out << "version: " << scalar_text(report["version"]) << "\n";
  out << "inputs_digest: " << scalar_text(report["inputs_digest"]) << "\n";
  if (report.contains("timestamp")) out << "timestamp: " << scalar_text(report["timestamp"]) << "\n";
  const json& results = report["results"];
  for (auto it = results.begin(); it != results.end(); ++it)
    if (it.key() != "classification") render(out, it.value(), it.key(), "");
  if (results.contains("classification")) out << "classification: " << scalar_text(results["classification"]) << "\n";
}

inline std::string utc_timestamp() {
  std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

// ---------------------------------------------------------------------------

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact arithmetic for polycyclic semidirect products", "polyarith"};
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", std::string(POLYARITH_VERSION));
  bool pretty = false, timestamps = false;
  app.add_flag("--pretty", pretty, "Human-readable tables instead of JSON");
  app.add_flag("--timestamps", timestamps, "Add a UTC timestamp to the report");
  app.fallthrough();  // let subcommands accept the global flags after their arguments

  std::string d_text, spec_path, matrix_path, algebra_path, matrices_path, element, bound_text = "10";
  std::string automorphism_path, invariants_path;
  std::uint64_t seed = 1;

  auto* pell = app.add_subcommand("pell", "Fundamental solution of a^2 - d b^2 = 1");
  pell->add_option("d", d_text, "Non-square integer d >= 2")->required();
  auto* gamma = app.add_subcommand("gamma-epsilon", "Group spec of Z[sqrt d] x Z semidirect the infinite dihedral group");
  gamma->add_option("d", d_text, "Non-square integer d >= 2")->required();
  auto* derivs = app.add_subcommand("derivations", "Z-basis of the derivation lattice");
  derivs->add_option("spec", spec_path, "Group spec JSON")->required();
  auto* h1c = app.add_subcommand("h1", "First cohomology H^1(D, F)");
  h1c->add_option("spec", spec_path, "Group spec JSON")->required();
  auto* dact = app.add_subcommand("der-action", "Matrix of d -> g*d on the derivation basis");
  dact->add_option("spec", spec_path, "Group spec JSON")->required();
  dact->add_option("--element", element, "Word in the generators, e.g. \"A t\"")->required();
  auto* units = app.add_subcommand("equivariant-units", "GL(n,Z) elements commuting with the action, entries bounded");
  units->add_option("spec", spec_path, "Group spec JSON")->required();
  units->add_option("--bound", bound_text, "Entry bound (default 10)");
  auto* jordan = app.add_subcommand("jordan", "Multiplicative Jordan-Chevalley decomposition");
  jordan->add_option("matrix", matrix_path, "Matrix JSON")->required();
  auto* arith = app.add_subcommand("arith-check", "Necessary arithmeticity condition for an integral matrix");
  arith->add_option("matrix", matrix_path, "Matrix JSON")->required();
  auto* teob = app.add_subcommand("teob", "Inn_A on Der(D, F) for Gamma(epsilon), with its verdict");
  teob->add_option("d", d_text, "Non-square integer d >= 2")->required();
  teob->add_option("--seed", seed, "Seed for the compatibility sample (default 1)");
  auto* lie = app.add_subcommand("lie-cohomology", "Koszul cohomology of a rational Lie algebra");
  lie->add_option("algebra", algebra_path, "Lie algebra JSON")->required();
  lie->add_option("--automorphism", automorphism_path, "Automorphism matrix JSON (columns are images)");
  lie->add_option("--invariants", invariants_path, "Commuting semisimple automorphisms JSON");
  auto* kinv = app.add_subcommand("koszul-invariants", "Cohomology of the subcomplex fixed by automorphisms");
  kinv->add_option("algebra", algebra_path, "Lie algebra JSON")->required();
  kinv->add_option("matrices", matrices_path, "Commuting semisimple automorphisms JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : 1;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();
  Inputs inputs;
  try {
    json results;
    if (sub == pell || sub == gamma || sub == teob) {
      Integer d = parse_integer_argument(d_text, "d");
      inputs.arguments["d"] = d_text;
      if (sub == pell) results = pell_results(d);
      else if (sub == gamma) results = gamma_epsilon_results(d);
      else {
        inputs.arguments["seed"] = seed;
        results = teob_results(d, seed);
      }
    } else if (sub == derivs || sub == h1c || sub == dact || sub == units) {
      LoadedGroup g = load_group(inputs.load(spec_path));
      if (sub == derivs) results = derivations_results(g);
      else if (sub == h1c) results = h1_results(g);
      else if (sub == dact) {
        inputs.arguments["element"] = element;
        results = der_action_results(g, element);
      } else {
        Integer bound = parse_integer_argument(bound_text, "bound");
        inputs.arguments["bound"] = to_string(bound);
        results = equivariant_units_results(g, bound);
      }
    } else if (sub == jordan) {
      results = jordan_results(io::parse_rational_matrix(inputs.load(matrix_path), ""));
    } else if (sub == arith) {
      results = verdict_json(check_gamma_A(io::parse_integer_matrix(inputs.load(matrix_path), "")));
    } else if (sub == lie) {
      LieAlgebraQ algebra = io::parse_lie(inputs.load(algebra_path), "");
      std::optional<RationalMatrix> phi;
      std::optional<std::vector<RationalMatrix>> inv;
      if (!automorphism_path.empty()) {
        inputs.arguments["automorphism"] = true;
        phi = io::parse_rational_matrix(inputs.load(automorphism_path), "");
      }
      if (!invariants_path.empty()) {
        inputs.arguments["invariants"] = true;
        inv = io::parse_matrix_list(inputs.load(invariants_path), "");
      }
      results = lie_cohomology_results(algebra, phi, inv);
    } else {
      LieAlgebraQ algebra = io::parse_lie(inputs.load(algebra_path), "");
      auto mats = io::parse_matrix_list(inputs.load(matrices_path), "");
      results = invariants_json(algebra, mats);
      std::vector<std::size_t> b = betti(algebra);
      results["complex_betti"] = ints_json(b);
    }

    json report{{"command", command},
                {"inputs_digest", inputs.digest(command)},
                {"results", std::move(results)},
                {"version", POLYARITH_VERSION}};
    if (timestamps) report["timestamp"] = utc_timestamp();
    if (pretty)
      render_report(out, report);
    else
      out << report.dump(2) << "\n";
    return 0;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return 1;
  } catch (const json::exception& e) {
    err << "input error: " << e.what() << "\n";
    return 1;
  } catch (const PreconditionError& e) {
    err << "precondition failed: " << e.what() << "\n";
    return 2;
  } catch (const ConsistencyError& e) {
    err << "internal consistency failure: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace polyarith::cli
