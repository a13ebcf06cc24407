#pragma once

// Index-based view of a program used by the semantics checks and the
// enumeration loops. Atoms are numbered in At(P) order.

#include <cstddef>
#include <vector>

#include "lpk/core.hpp"

namespace lpk::detail {

/// Truth values indexed by atom number.
using Bits = std::vector<char>;

struct IndexedRule {
  int head;
  std::vector<int> pos;  // sorted, unique
  std::vector<int> neg;  // sorted, unique
};

class IndexedProgram {
 public:
  explicit IndexedProgram(const Program& p);

  std::size_t atom_count() const noexcept { return atoms_.size(); }
  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  const std::vector<IndexedRule>& rules() const noexcept { return rules_; }
  /// -1 when the atom does not occur.
  int index_of(const Atom& a) const;

  /// Throws PreconditionError when `m` has atoms outside At(P).
  Bits to_bits(const Interpretation& m) const;
  Interpretation to_interpretation(const Bits& bits) const;

  /// Least model of the rules not blocked by `blocker` with negative bodies
  /// dropped; with `blocker == nullptr` every rule participates. Counter
  /// based, linear in program size.
  Bits least_model(const Bits* blocker) const;
  /// One application of the immediate-consequence operator.
  Bits tp(const Bits& in) const;

  bool is_model(const Bits& m) const;
  bool is_supported(const Bits& m) const;
  bool is_stable(const Bits& m) const;

  /// Atoms occurring in some negative body, ascending.
  std::vector<int> negative_atoms() const;
  /// Atoms occurring in some body, ascending.
  std::vector<int> body_atoms() const;

 private:
  std::vector<Atom> atoms_;
  std::vector<IndexedRule> rules_;
  std::vector<std::vector<int>> pos_occurrences_;
};

}  // namespace lpk::detail
