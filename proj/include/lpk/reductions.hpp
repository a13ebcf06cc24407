#pragma once

#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "lpk/core.hpp"
#include "lpk/formula.hpp"

namespace lpk {

/// A program or a formula. Formula queries always use Semantics::Model.
using Instance = std::variant<Program, NormalizedFormula>;

std::vector<Atom> atoms_of(const Instance& x);
/// Class names of an instance: program tags, or formula tags such as
/// "2N", "2N3", "3N", "M", "A" (monotone / antimonotone).
std::vector<std::string> instance_tags(const Instance& x);

/// A source query on the input and the target query it maps to. For large
/// bounds the k field is the offset from |At|, so it never depends on the
/// instance size.
struct QueryPair {
  Query source;
  Query target;
};

struct ReductionRecord {
  std::string name;
  Instance input;
  Instance output;
  int k = 0;
  int k_target = 0;
  /// Every pair whose answers the construction preserves; the first is the
  /// headline one.
  std::vector<QueryPair> queries;
  /// gadget atom (rendered) -> what it stands for
  std::map<std::string, std::string> atom_map;
  std::vector<std::string> class_tags;  // of the output
};

/// Q_k: atoms y_{i,j} (1 <= j <= i <= k+1) rendered "__qk.y.i.j"; rule
/// y_{i,j} <- not y_{1,1}, ..., not y_{k+1,1} with y_{i,1} itself left out.
Program build_qk(int k);

/// P u Q_k. Small: (stable|supported, le, k) -> (same, eq, k+1).
/// Large: (same, le, large, k) -> (same, eq, large, k(k+3)/2).
ReductionRecord reduce_le_to_eq_via_qk(const Program& p, int k, Bound bound);

/// One rule per clause of a monotone CNF: the first atom of the clause is
/// the head, the rest appear negated. Same models.
ReductionRecord mono_cnf_to_neg_program(const NormalizedFormula& f, int k);

/// pr(P): one clause (not q_1 v ... v s_1 v ... v p) per rule. Same models.
ReductionRecord program_to_cnf(const Program& p, int k);

enum class SwapDirection { EqToLe, LeToEq };
/// Identity when k <= |At|, else the one-clause formula (a) with k' = 0
/// (eq to le) or k' = 1 (le to eq).
ReductionRecord eq_le_swap_2nm(const NormalizedFormula& f, int k, SwapDirection d);

/// Model of size k iff the barred formula has one of size |At| - k.
ReductionRecord dualize_2n(const NormalizedFormula& f, int k);

/// Adds facts __pf.y.i for i = 1..k: a stable (supported) model exists iff
/// one of size >= k exists.
ReductionRecord pad_facts(const Program& p, int k);

/// Adds the pairs __pc.y.i <- not __pc.z.i and back: a stable (supported)
/// model exists iff one with at least k false atoms exists.
ReductionRecord pad_choice_pairs(const Program& p, int k);

/// For each clause (a_1 v .. v a_p v -b_1 v .. v -b_r) and each atom x_i the
/// rule x_i <- b_1..b_r, not a_1..not a_p. Requires k >= 1.
ReductionRecord cnf_large_to_program(const NormalizedFormula& f, int k);

/// Antimonotone CNF to Horn: a_0 <- x_1..x_p per clause plus a_i <- a_j for
/// all i != j in 0..k. Atoms __clq.a.i.
ReductionRecord anti2n_to_horn_eq(const NormalizedFormula& f, int k);

/// Horn program to a CNF with at most three literals per clause: copies
/// x[i], prefix atoms u[B] for subsets B of bodies, and 2^k free atoms so the
/// target size (k+1)2^k + k can always be met.
ReductionRecord horn_to_2n3(const Program& p, int k);

/// Monotone CNF to an N1 program: k copies x_j[l] competing per column l and
/// one atom f_C per clause that kills every stable model missing C.
ReductionRecord mono2n_le_to_stable_neg(const NormalizedFormula& f, int k);

/// Supported model of size k iff CNF model of size 2k, using one selector
/// u[i,j] per rule.
ReductionRecord supported_eq_to_cnf(const Program& p, int k);

/// Adds x <- x for every atom.
Program add_self_loops(const Program& p);

/// anti2n_to_horn_eq followed by add_self_loops; targets supported models.
ReductionRecord anti2n_to_supported_horn(const NormalizedFormula& f, int k);

/// Monotone CNF to Horn: x_i <- a, and a <- (atoms of C) per clause.
/// Model of size k iff model of size (n + 1) - (k + 1).
ReductionRecord mono2n_eq_to_large_horn(const NormalizedFormula& f, int k);

/// Monotone 3-normalized formula to Horn (supported, large, eq).
ReductionRecord mono3n_large_to_supported_horn(const NormalizedFormula& f, int k);

/// 3-normalized formula to a tight program (stable or supported, large, le),
/// k' = 2k. For k >= 1 every stable model of the plain construction leaves
/// at least one formula atom false, so by default one spare atom __tgt.d is
/// added to the column universe. `pad_universe = false` builds the plain
/// version, which answers wrongly when At(Phi) is the only large model.
ReductionRecord threeN_large_to_stable(const NormalizedFormula& f, int k);
ReductionRecord threeN_large_to_stable(const NormalizedFormula& f, int k, bool pad_universe);

/// Purely negative program to CNF (supported, large, eq) -> (model, large,
/// eq) with offset (k+1)2^k + k.
ReductionRecord supported_large_neg_to_cnf(const Program& p, int k);

/// Completion as a 3-normalized formula: (supported, large, eq) to (model,
/// large, eq) over the same atoms.
ReductionRecord completion_to_3n(const Program& p, int k);

/// G(P): vertices At(P), an edge (y, x) per negative body occurrence of y in
/// a rule with head x, kept in rule order.
struct Digraph {
  std::vector<Atom> vertices;
  std::vector<std::pair<Atom, Atom>> edges;

  /// Edges sorted without repeats.
  std::vector<std::pair<Atom, Atom>> edge_set() const;
  friend bool operator==(const Digraph& a, const Digraph& b) {
    return a.vertices == b.vertices && a.edge_set() == b.edge_set();
  }
};

/// Requires P in N1 or N2.
Digraph program_digraph(const Program& p);

/// S independent, and every vertex outside S has an in-edge from S.
bool kernel_check(const Digraph& g, const Interpretation& s);

/// The N2 program with the same digraph: x <- not y per edge (y, x). A
/// vertex with no edges at all gets a pendant rule __pend.w.i <- not x so it
/// stays in the universe; the kernels are unchanged.
/// (stable|supported, le, small, k) -> (same, le, large, k).
ReductionRecord n1_to_n2_same_digraph(const Program& p, int k);

}  // namespace lpk
