#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "lpk/core.hpp"
#include "lpk/semantics.hpp"

namespace lpk {

/// Node of an and/or tree over literals. An empty And is TRUE, an empty Or
/// is FALSE.
struct FormulaNode {
  enum class Kind : std::uint8_t { And, Or, Lit };

  Kind kind = Kind::And;
  Literal literal{atom("x"), true};  // meaningful for Lit only
  std::vector<FormulaNode> children;

  static FormulaNode lit(Literal l) { return {Kind::Lit, std::move(l), {}}; }
  static FormulaNode pos(const Atom& a) { return lit({a, true}); }
  static FormulaNode neg(const Atom& a) { return lit({a, false}); }
  static FormulaNode conj(std::vector<FormulaNode> cs) { return {Kind::And, {atom("x"), true}, std::move(cs)}; }
  static FormulaNode disj(std::vector<FormulaNode> cs) { return {Kind::Or, {atom("x"), true}, std::move(cs)}; }

  bool is_lit() const noexcept { return kind == Kind::Lit; }

  friend bool operator==(const FormulaNode& a, const FormulaNode& b);
};

/// An and/or tree with strict alternation along every path: a connective
/// never has a child of its own kind (such nesting is merged on
/// construction). Unary connectives are kept as written.
class NormalizedFormula {
 public:
  NormalizedFormula() : NormalizedFormula(FormulaNode::conj({})) {}
  explicit NormalizedFormula(FormulaNode root);

  const FormulaNode& root() const noexcept { return root_; }
  /// At(Phi), sorted.
  const std::vector<Atom>& atoms() const noexcept { return atoms_; }

  friend bool operator==(const NormalizedFormula& a, const NormalizedFormula& b) { return a.root_ == b.root_; }

 private:
  FormulaNode root_;
  std::vector<Atom> atoms_;
};

using Clause = std::vector<Literal>;
/// Disjunction of conjunctions of literals.
using Block = std::vector<std::vector<Literal>>;

/// Builds the two-level formula AND(OR(lits)...).
NormalizedFormula make_cnf(const std::vector<Clause>& clauses);
/// Builds the three-level formula AND(OR(AND(lits)...)...).
NormalizedFormula make_3n(const std::vector<Block>& blocks);

std::vector<Atom> atoms_of(const NormalizedFormula& f);

struct FormulaClass {
  int t = 1;  ///< minimal normalization depth
  bool monotone = true;
  bool antimonotone = true;
  std::size_t max_clause_width = 0;  ///< widest disjunction

  bool in_tn(int depth) const noexcept { return t <= depth; }
  bool in_2n3() const noexcept { return t <= 2 && max_clause_width <= 3; }
};

/// Throws PreconditionError when `m` has atoms outside At(Phi).
bool evaluate(const NormalizedFormula& f, const Interpretation& m);

FormulaClass classify_formula(const NormalizedFormula& f);

/// Merge same-kind nesting and collapse unary connectives until neither
/// applies. Logically equivalent to the input.
NormalizedFormula canonicalize(const NormalizedFormula& f);

/// Reads `f` as a conjunction of clauses. Literals or conjunctions sitting at
/// clause level become unit clauses. Throws PreconditionError when `f` is
/// deeper than two levels even after canonicalization.
std::vector<Clause> as_clauses(const NormalizedFormula& f);

/// Reads `f` as AND over OR over AND. Shallower parts are padded with unary
/// levels; the structure as written is kept when it fits, so the block count
/// is the number of top-level conjuncts.
std::vector<Block> as_blocks(const NormalizedFormula& f);

/// Gadget twin x~ of an atom: the rendered name plus "~", gadget namespace.
Atom barred(const Atom& a);

struct DualizedFormula {
  NormalizedFormula formula;
  int k = 0;  ///< |At(Phi)| - k
  /// original atom -> its barred twin
  std::vector<std::pair<Atom, Atom>> renaming;
};

/// Replaces each literal x by not x~ and each not x by x~. M models Phi iff
/// the barred complement of M models the result.
DualizedFormula dualize(const NormalizedFormula& f, int k);

/// A 3-normalized formula with exactly the models of the completion over
/// its atoms. Each equivalence p <=> OR_j AND_l lit contributes the block
/// (not p) v AND(c_1) v ... and one clause (p v not c_j) per disjunct.
NormalizedFormula completion_to_3normalized(const Completion& c);

}  // namespace lpk
