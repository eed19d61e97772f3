#pragma once

#include <cctype>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "polyarith/linear_algebra.hpp"

namespace polyarith {

/// A generator or its inverse.
struct Letter {
  std::size_t gen = 0;
  int sign = 1;  // +1 or -1
  friend bool operator==(const Letter&, const Letter&) = default;
};

using Word = std::vector<Letter>;

inline Word inverse(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back({it->gen, -it->sign});
  return out;
}

inline Word concat(Word a, const Word& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

inline Word concat(const Word& a, const Word& b, const Word& c) { return concat(concat(a, b), c); }

/// Cancels adjacent x x^-1 pairs.
inline Word free_reduce(const Word& w) {
  Word out;
  for (const auto& l : w) {
    if (!out.empty() && out.back().gen == l.gen && out.back().sign == -l.sign)
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

/// g^k as a word (k may be negative).
inline Word generator_power(std::size_t gen, long long k) {
  Word w;
  for (long long i = 0; i < (k < 0 ? -k : k); ++i) w.push_back({gen, k < 0 ? -1 : 1});
  return w;
}

class Presentation {
public:
  Presentation() = default;
  Presentation(std::vector<std::string> generators, std::vector<Word> relators)
      : generators_(std::move(generators)), relators_(std::move(relators)) {
    for (std::size_t i = 0; i < generators_.size(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (generators_[i] == generators_[j])
          throw InputError("duplicate generator name '" + generators_[i] + "'");
    for (const auto& r : relators_)
      for (const auto& l : r) {
        if (l.gen >= generators_.size())
          throw InputError("relator letter refers to undeclared generator");
        if (l.sign != 1 && l.sign != -1) throw InputError("letter exponent must be +1 or -1");
      }
  }

  std::size_t num_generators() const { return generators_.size(); }
  const std::vector<std::string>& generator_names() const { return generators_; }
  const std::vector<Word>& relators() const { return relators_; }

  std::optional<std::size_t> index_of(const std::string& name) const {
    for (std::size_t i = 0; i < generators_.size(); ++i)
      if (generators_[i] == name) return i;
    return std::nullopt;
  }

  Word generator(std::size_t i) const { return Word{{i, 1}}; }

  std::string format(const Word& w) const {
    if (w.empty()) return "1";
    std::string out;
    for (std::size_t i = 0; i < w.size();) {
      std::size_t j = i;
      long long e = 0;
      while (j < w.size() && w[j].gen == w[i].gen && w[j].sign == w[i].sign) e += w[j++].sign;
      if (!out.empty()) out += " ";
      out += generators_[w[i].gen];
      if (e != 1) out += "^" + std::to_string(e);
      i = j;
    }
    return out;
  }

  /// Parses "A t A^-1", "A*t^2" or "1" (the empty word).
  Word parse_word(const std::string& text) const {
    std::string s = text;
    for (auto& c : s)
      if (c == '*') c = ' ';
    std::istringstream in(s);
    std::string tok;
    Word w;
    while (in >> tok) {
      if (tok == "1") continue;
      long long e = 1;
      auto caret = tok.find('^');
      std::string name = tok.substr(0, caret);
      if (caret != std::string::npos) {
        std::string exp = tok.substr(caret + 1);
        try {
          std::size_t used = 0;
          e = std::stoll(exp, &used);
          if (used != exp.size()) throw std::invalid_argument(exp);
        } catch (const std::exception&) {
          throw InputError("bad exponent in word token '" + tok + "'");
        }
      }
      auto idx = index_of(name);
      if (!idx) throw InputError("unknown generator '" + name + "' in word '" + text + "'");
      auto p = generator_power(*idx, e);
      w.insert(w.end(), p.begin(), p.end());
    }
    return w;
  }

private:
  std::vector<std::string> generators_;
  std::vector<Word> relators_;
};

/// Result of checking generator matrices against the relators.
struct ActionCheck {
  bool ok = true;
  std::optional<std::size_t> violated_relator;
};

namespace detail {
inline IntegerMatrix word_product(const std::vector<IntegerMatrix>& mats,
                                  const std::vector<IntegerMatrix>& invs, std::size_t rank,
                                  const Word& w) {
  IntegerMatrix p = IntegerMatrix::identity(rank);
  for (const auto& l : w) p = p * (l.sign > 0 ? mats[l.gen] : invs[l.gen]);
  return p;
}

inline void check_shapes(const Presentation& p, const std::vector<IntegerMatrix>& mats) {
  if (mats.size() != p.num_generators())
    throw PreconditionError("module action: expected " + std::to_string(p.num_generators()) +
                            " matrices, got " + std::to_string(mats.size()));
  std::size_t n = mats.empty() ? 0 : mats.front().rows();
  for (const auto& m : mats)
    if (m.rows() != n || m.cols() != n)
      throw PreconditionError("module action: generator matrices must all be n x n");
}
}  // namespace detail

/// Checks every relator evaluates to the identity; returns the first violation.
inline ActionCheck validate_action(const Presentation& p, const std::vector<IntegerMatrix>& mats) {
  detail::check_shapes(p, mats);
  std::vector<IntegerMatrix> invs;
  for (const auto& m : mats) invs.push_back(unimodular_inverse(m));
  std::size_t n = mats.empty() ? 0 : mats.front().rows();
  for (std::size_t r = 0; r < p.relators().size(); ++r)
    if (!detail::word_product(mats, invs, n, p.relators()[r]).is_identity()) return {false, r};
  return {};
}

/// A left action of the presented group on Z^n by invertible integer matrices.
class ModuleAction {
public:
  ModuleAction() = default;
  ModuleAction(const Presentation& p, std::vector<IntegerMatrix> mats, std::size_t rank_if_empty = 0)
      : mats_(std::move(mats)) {
    rank_ = mats_.empty() ? rank_if_empty : mats_.front().rows();
    ActionCheck check = validate_action(p, mats_);
    if (!check.ok)
      throw PreconditionError("module action violates relator " +
                              std::to_string(*check.violated_relator) + ": " +
                              p.format(p.relators()[*check.violated_relator]));
    for (const auto& m : mats_) invs_.push_back(unimodular_inverse(m));
  }

  std::size_t rank() const { return rank_; }
  std::size_t num_generators() const { return mats_.size(); }
  const IntegerMatrix& matrix(std::size_t g) const { return mats_[g]; }
  const IntegerMatrix& inverse_matrix(std::size_t g) const { return invs_[g]; }
  const std::vector<IntegerMatrix>& matrices() const { return mats_; }
  const IntegerMatrix& letter_matrix(const Letter& l) const {
    return l.sign > 0 ? mats_[l.gen] : invs_[l.gen];
  }

private:
  std::size_t rank_ = 0;
  std::vector<IntegerMatrix> mats_;
  std::vector<IntegerMatrix> invs_;
};

/// Ordered product of generator matrices (and inverses) along w.
inline IntegerMatrix evaluate_word(const ModuleAction& m, const Word& w) {
  IntegerMatrix p = IntegerMatrix::identity(m.rank());
  for (const auto& l : w) {
    if (l.gen >= m.num_generators()) throw InputError("word letter out of range");
    p = p * m.letter_matrix(l);
  }
  return p;
}

/// w . v without forming the product matrix.
inline IntVector act(const ModuleAction& m, const Word& w, IntVector v) {
  for (auto it = w.rbegin(); it != w.rend(); ++it) v = m.letter_matrix(*it) * v;
  return v;
}

// ---------------------------------------------------------------------------
// Normal forms

/// A^k tau^t in the infinite dihedral group <A, tau | tau^2, (A tau)^2>.
struct DihedralElement {
  long long k = 0;
  int t = 0;
  friend bool operator==(const DihedralElement&, const DihedralElement&) = default;
};

/// (k1, t1)(k2, t2) = (k1 + (-1)^t1 k2, t1 xor t2).
inline DihedralElement operator*(const DihedralElement& a, const DihedralElement& b) {
  return {a.k + (a.t ? -b.k : b.k), a.t ^ b.t};
}

inline DihedralElement dinf_normal_form(const Word& w, std::size_t a_gen = 0, std::size_t t_gen = 1) {
  DihedralElement acc;
  for (const auto& l : w) {
    if (l.gen == a_gen)
      acc = acc * DihedralElement{l.sign, 0};
    else if (l.gen == t_gen)
      acc = acc * DihedralElement{0, 1};
    else
      throw InputError("dihedral normal form: letter is neither A nor tau");
  }
  return acc;
}

inline Word to_word(const DihedralElement& e, std::size_t a_gen = 0, std::size_t t_gen = 1) {
  Word w = generator_power(a_gen, e.k);
  if (e.t) w.push_back({t_gen, 1});
  return w;
}

/// Canonicalizes words of a group D. Built-in engines cover the infinite
/// dihedral group and free abelian groups; anything else is a callback.
class NormalFormEngine {
public:
  using Normalizer = std::function<Word(const Word&)>;

  NormalFormEngine(std::string name, Normalizer fn) : name_(std::move(name)), fn_(std::move(fn)) {}

  const std::string& name() const { return name_; }
  Word normalize(const Word& w) const { return fn_(w); }
  bool equal(const Word& a, const Word& b) const { return normalize(a) == normalize(b); }

private:
  std::string name_;
  Normalizer fn_;
};

inline NormalFormEngine dinf_engine(std::size_t a_gen = 0, std::size_t t_gen = 1) {
  return {"dinf", [=](const Word& w) { return to_word(dinf_normal_form(w, a_gen, t_gen), a_gen, t_gen); }};
}

/// Z^k with generators 0..k-1; normal form g0^e0 g1^e1 ...
inline NormalFormEngine free_abelian_engine(std::size_t k) {
  return {"free_abelian", [=](const Word& w) {
            std::vector<long long> e(k, 0);
            for (const auto& l : w) {
              if (l.gen >= k) throw InputError("free abelian normal form: letter out of range");
              e[l.gen] += l.sign;
            }
            Word out;
            for (std::size_t g = 0; g < k; ++g) {
              auto p = generator_power(g, e[g]);
              out.insert(out.end(), p.begin(), p.end());
            }
            return out;
          }};
}

/// Free reduction only: a valid normal form when D is free on its generators.
inline NormalFormEngine free_reduction_engine() { return {"free", free_reduce}; }

inline Presentation dinf_presentation() {
  // generators A (0), t (1); relators t^2 and (A t)^2
  return Presentation({"A", "t"}, {Word{{1, 1}, {1, 1}}, Word{{0, 1}, {1, 1}, {0, 1}, {1, 1}}});
}

}  // namespace polyarith
