#pragma once

// JSON forms of matrices, presentations, module actions and Lie algebras.
// Parse errors are InputError with the JSON pointer of the offending field.

#include <json.hpp>

#include <limits>
#include <string>
#include <vector>

#include "polyarith/lie_cohomology.hpp"
#include "polyarith/presentation.hpp"

namespace polyarith::io {

using nlohmann::json;

[[noreturn]] inline void fail(const std::string& path, const std::string& what) {
  throw InputError((path.empty() ? std::string("/") : path) + ": " + what);
}

inline std::string child(const std::string& path, const std::string& key) {
  std::string escaped;
  for (char c : key) {
    if (c == '~') escaped += "~0";
    else if (c == '/') escaped += "~1";
    else escaped += c;
  }
  return path + "/" + escaped;
}
inline std::string child(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

inline const json& field(const json& j, const std::string& path, const std::string& key) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(child(path, key), "missing required field");
  return *it;
}

inline void only_fields(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || it.key() == a;
    if (!ok) fail(child(path, it.key()), "unexpected field");
  }
}

inline std::size_t parse_size(const json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 0) fail(path, "expected a non-negative integer");
  return j.get<std::size_t>();
}

/// Rationals are strings "p" or "p/q"; plain JSON integers are accepted too.
inline Rational parse_rational(const json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(Integer(j.dump()));
  if (!j.is_string()) fail(path, "expected a rational as a string such as \"-3/7\"");
  try {
    return polyarith::parse_rational(j.get<std::string>());
  } catch (const InputError& e) {
    fail(path, e.what());
  }
}

inline Integer parse_integer(const json& j, const std::string& path) {
  Rational r = parse_rational(j, path);
  if (!is_integral(r)) fail(path, "expected an integer, got " + to_string(r));
  return r.get_num();
}

/// Integers that fit a machine word become JSON numbers, larger ones strings.
inline json integer_to_json(const Integer& z) {
  if (z.fits_slong_p()) return z.get_si();
  return to_string(z);
}

template <class T>
json matrix_to_json(const Matrix<T>& m) {
  json entries = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    entries.push_back(std::move(row));
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

template <class T>
json vector_to_json(const std::vector<T>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

inline RationalMatrix parse_rational_matrix(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected a matrix object {\"rows\", \"cols\", \"entries\"}");
  only_fields(j, path, {"rows", "cols", "entries"});
  const std::size_t rows = parse_size(field(j, path, "rows"), child(path, "rows"));
  const std::size_t cols = parse_size(field(j, path, "cols"), child(path, "cols"));
  const json& entries = field(j, path, "entries");
  const std::string ep = child(path, "entries");
  if (!entries.is_array()) fail(ep, "expected an array of rows");
  if (entries.size() != rows) fail(ep, "expected " + std::to_string(rows) + " rows, got " + std::to_string(entries.size()));
  RationalMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const json& row = entries[i];
    if (!row.is_array()) fail(child(ep, i), "expected an array");
    if (row.size() != cols)
      fail(child(ep, i), "expected " + std::to_string(cols) + " entries, got " + std::to_string(row.size()));
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = parse_rational(row[c], child(child(ep, i), c));
  }
  return m;
}

inline IntegerMatrix parse_integer_matrix(const json& j, const std::string& path) {
  RationalMatrix r = parse_rational_matrix(j, path);
  IntegerMatrix m(r.rows(), r.cols());
  for (std::size_t i = 0; i < r.rows(); ++i)
    for (std::size_t c = 0; c < r.cols(); ++c) {
      if (!is_integral(r(i, c)))
        fail(child(child(child(path, "entries"), i), c), "expected an integer entry, got " + to_string(r(i, c)));
      m(i, c) = r(i, c).get_num();
    }
  return m;
}

/// A list of matrices: either a JSON array or {"matrices": [...]}.
inline std::vector<RationalMatrix> parse_matrix_list(const json& j, const std::string& path) {
  const json* arr = &j;
  std::string ap = path;
  if (j.is_object()) {
    only_fields(j, path, {"matrices"});
    arr = &field(j, path, "matrices");
    ap = child(path, "matrices");
  }
  if (!arr->is_array()) fail(ap, "expected an array of matrices");
  std::vector<RationalMatrix> out;
  for (std::size_t i = 0; i < arr->size(); ++i) out.push_back(parse_rational_matrix((*arr)[i], child(ap, i)));
  return out;
}

// ---------------------------------------------------------------------------
// Presentations and group specs

inline json word_to_json(const Presentation& p, const Word& w) {
  json out = json::array();
  for (std::size_t i = 0; i < w.size();) {
    std::size_t j = i;
    long long e = 0;
    while (j < w.size() && w[j].gen == w[i].gen && w[j].sign == w[i].sign) e += w[j++].sign;
    out.push_back(json::array({p.generator_names()[w[i].gen], e}));
    i = j;
  }
  return out;
}

inline json presentation_to_json(const Presentation& p) {
  json rels = json::array();
  for (const auto& r : p.relators()) rels.push_back(word_to_json(p, r));
  return {{"generators", p.generator_names()}, {"relators", std::move(rels)}};
}

inline Presentation parse_presentation(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected a presentation object");
  only_fields(j, path, {"generators", "relators"});
  const json& gens = field(j, path, "generators");
  const std::string gp = child(path, "generators");
  if (!gens.is_array()) fail(gp, "expected an array of generator names");
  std::vector<std::string> names;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (!gens[i].is_string() || gens[i].get<std::string>().empty()) fail(child(gp, i), "expected a non-empty string");
    std::string name = gens[i].get<std::string>();
    for (char c : name)
      if (c == ' ' || c == '^' || c == '*') fail(child(gp, i), "generator names may not contain spaces, '^' or '*'");
    if (name == "1") fail(child(gp, i), "\"1\" is reserved for the empty word");
    for (const auto& prev : names)
      if (prev == name) fail(child(gp, i), "duplicate generator name '" + name + "'");
    names.push_back(name);
  }
  std::vector<Word> relators;
  const std::string rp = child(path, "relators");
  const json& rels = j.contains("relators") ? j.at("relators") : json::array();
  if (!rels.is_array()) fail(rp, "expected an array of relators");
  for (std::size_t r = 0; r < rels.size(); ++r) {
    const std::string rpath = child(rp, r);
    if (!rels[r].is_array()) fail(rpath, "expected an array of [generator, exponent] pairs");
    Word w;
    for (std::size_t l = 0; l < rels[r].size(); ++l) {
      const json& letter = rels[r][l];
      const std::string lp = child(rpath, l);
      if (!letter.is_array() || letter.size() != 2 || !letter[0].is_string() || !letter[1].is_number_integer())
        fail(lp, "expected [generator, exponent]");
      auto it = std::find(names.begin(), names.end(), letter[0].get<std::string>());
      if (it == names.end()) fail(child(lp, 0), "unknown generator '" + letter[0].get<std::string>() + "'");
      long long e = letter[1].get<long long>();
      if (e == 0) fail(child(lp, 1), "exponent must be nonzero");
      auto p = generator_power(static_cast<std::size_t>(it - names.begin()), e);
      w.insert(w.end(), p.begin(), p.end());
    }
    relators.push_back(std::move(w));
  }
  return Presentation(std::move(names), std::move(relators));
}

/// A presented group D with an integral action on Z^rank and a normal-form engine name.
struct GroupSpec {
  Presentation presentation;
  std::vector<IntegerMatrix> matrices;
  std::size_t rank = 0;
  std::string engine = "free";

  friend bool operator==(const GroupSpec& a, const GroupSpec& b) {
    return a.presentation.generator_names() == b.presentation.generator_names() &&
           a.presentation.relators() == b.presentation.relators() && a.matrices == b.matrices &&
           a.rank == b.rank && a.engine == b.engine;
  }
};

inline const std::vector<std::string>& engine_names() {
  static const std::vector<std::string> names{"dinf", "free", "free_abelian"};
  return names;
}

inline NormalFormEngine make_engine(const GroupSpec& g) {
  if (g.engine == "dinf") {
    if (g.presentation.num_generators() != 2)
      throw PreconditionError("engine dinf needs exactly two generators (A, then tau)");
    return dinf_engine(0, 1);
  }
  if (g.engine == "free_abelian") return free_abelian_engine(g.presentation.num_generators());
  return free_reduction_engine();
}

inline json group_to_json(const GroupSpec& g) {
  json mats = json::object();
  for (std::size_t i = 0; i < g.matrices.size(); ++i)
    mats[g.presentation.generator_names()[i]] = matrix_to_json(g.matrices[i]);
  return {{"presentation", presentation_to_json(g.presentation)},
          {"action", {{"rank", g.rank}, {"matrices", std::move(mats)}}},
          {"engine", g.engine}};
}

inline GroupSpec parse_group(const json& j, const std::string& path, std::size_t max_rank) {
  if (!j.is_object()) fail(path, "expected a group object with \"presentation\" and \"action\"");
  // "epsilon" and "l" annotate generated Gamma(epsilon) specs and are ignored here.
  only_fields(j, path, {"presentation", "action", "engine", "epsilon", "l"});
  GroupSpec g;
  g.presentation = parse_presentation(field(j, path, "presentation"), child(path, "presentation"));
  if (j.contains("engine")) {
    const std::string ep = child(path, "engine");
    if (!j.at("engine").is_string()) fail(ep, "expected a string");
    g.engine = j.at("engine").get<std::string>();
    const auto& ok = engine_names();
    if (std::find(ok.begin(), ok.end(), g.engine) == ok.end())
      fail(ep, "unknown engine '" + g.engine + "' (expected dinf, free or free_abelian)");
  }
  const json& action = field(j, path, "action");
  const std::string ap = child(path, "action");
  if (!action.is_object()) fail(ap, "expected an object with \"rank\" and \"matrices\"");
  only_fields(action, ap, {"rank", "matrices"});
  g.rank = parse_size(field(action, ap, "rank"), child(ap, "rank"));
  if (g.rank > max_rank)
    throw PreconditionError("module rank " + std::to_string(g.rank) + " exceeds the cap " + std::to_string(max_rank) +
                            " (set POLYARITH_MAX_DIM)");
  const json& mats = field(action, ap, "matrices");
  const std::string mp = child(ap, "matrices");
  if (!mats.is_object()) fail(mp, "expected an object keyed by generator name");
  for (auto it = mats.begin(); it != mats.end(); ++it)
    if (!g.presentation.index_of(it.key())) fail(child(mp, it.key()), "not a generator of the presentation");
  for (const auto& name : g.presentation.generator_names()) {
    const json& m = field(mats, mp, name);
    IntegerMatrix im = parse_integer_matrix(m, child(mp, name));
    if (im.rows() != g.rank || im.cols() != g.rank)
      fail(child(mp, name), "expected a " + std::to_string(g.rank) + " x " + std::to_string(g.rank) + " matrix");
    g.matrices.push_back(std::move(im));
  }
  return g;
}

// ---------------------------------------------------------------------------
// Lie algebras, 1-based on the wire

inline json lie_to_json(const LieAlgebraQ& lie) {
  json br = json::array();
  for (const auto& e : lie.entries())
    br.push_back({{"i", e.i + 1}, {"j", e.j + 1}, {"k", e.k + 1}, {"c", to_string(e.c)}});
  return {{"dim", lie.dim()}, {"brackets", std::move(br)}};
}

inline LieAlgebraQ parse_lie(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected a Lie algebra object with \"dim\" and \"brackets\"");
  only_fields(j, path, {"dim", "brackets"});
  const std::size_t n = parse_size(field(j, path, "dim"), child(path, "dim"));
  if (n > max_lie_dimension())
    throw PreconditionError("Lie algebra dimension " + std::to_string(n) + " exceeds the cap " +
                            std::to_string(max_lie_dimension()) + " (set POLYARITH_MAX_DIM)");
  std::vector<StructureConstant> entries;
  const std::string bp = child(path, "brackets");
  const json& br = j.contains("brackets") ? j.at("brackets") : json::array();
  if (!br.is_array()) fail(bp, "expected an array of {i, j, k, c}");
  for (std::size_t t = 0; t < br.size(); ++t) {
    const std::string tp = child(bp, t);
    if (!br[t].is_object()) fail(tp, "expected an object {i, j, k, c}");
    only_fields(br[t], tp, {"i", "j", "k", "c"});
    std::size_t idx[3];
    const char* keys[3] = {"i", "j", "k"};
    for (int q = 0; q < 3; ++q) {
      idx[q] = parse_size(field(br[t], tp, keys[q]), child(tp, keys[q]));
      if (idx[q] < 1 || idx[q] > n) fail(child(tp, keys[q]), "index must lie in 1.." + std::to_string(n));
    }
    if (idx[0] >= idx[1]) fail(child(tp, "j"), "brackets are listed with i < j");
    for (const auto& e : entries)
      if (e.i == idx[0] - 1 && e.j == idx[1] - 1 && e.k == idx[2] - 1) fail(tp, "duplicate (i, j, k)");
    Rational c = parse_rational(field(br[t], tp, "c"), child(tp, "c"));
    if (c != 0) entries.push_back({idx[0] - 1, idx[1] - 1, idx[2] - 1, c});
  }
  return LieAlgebraQ(n, entries);
}

}  // namespace polyarith::io
