#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "lpk/core.hpp"
#include "lpk/formula.hpp"

namespace lpk {

struct DecideOptions {
  /// Largest universe enumerated subset by subset.
  std::size_t atom_cap = 24;
  /// Try polynomial_shortcuts before searching.
  bool use_shortcuts = true;
};

struct DecideResult {
  bool yes = false;
  std::optional<Interpretation> witness;  // set exactly when yes
  /// Which procedure settled the query: "shortcut", "empty-range",
  /// "exhaustive", "guess" or "search".
  std::string method;
};

/// Does P have a model of the requested semantics whose size lies in
/// size_range(q, |At(P)|)? Exhaustive witnesses are the least by size, then
/// lexicographically by atom order.
///
/// Past the atom cap: stable and supported queries enumerate guesses over
/// the negative-body (resp. body) atoms instead, and plain model queries run
/// a clause search. CapacityError when the guess space itself exceeds the cap.
DecideResult decide(const Query& q, const Program& p, const DecideOptions& opts = {});

/// Subsets of At(P) by increasing size up to k (LE) or of size exactly k
/// (EQ). Requires bound small and comparison le or eq.
DecideResult bounded_subset_search(const Query& q, const Program& p);

/// Answers in polynomial time when a structural argument applies, nothing
/// otherwise. See decide.cpp for the cases.
std::optional<DecideResult> polynomial_shortcuts(const Query& q, const Program& p);

/// Weighted satisfiability: a model of Phi with size in the range given by
/// (cmp, bound, k) over |At(Phi)| atoms. Monotone and antimonotone formulas
/// reduce to a single size. Past the cap, two-level formulas go to the clause
/// search; deeper ones raise CapacityError.
DecideResult ws_t(const NormalizedFormula& f, int k, Comparison cmp, Bound bound,
                  const DecideOptions& opts = {});

}  // namespace lpk
