#pragma once

#include <vector>

#include "lpk/core.hpp"

namespace lpk {

/// head <=> c(r_1) v ... v c(r_m) over the rules with that head. An empty
/// disjunct list is the constant FALSE; an empty conjunction is TRUE.
struct Equivalence {
  Atom head;
  std::vector<std::vector<Literal>> disjuncts;

  friend bool operator==(const Equivalence&, const Equivalence&) = default;
};

/// Clark completion: exactly one equivalence per atom of At(P), in atom order.
struct Completion {
  std::vector<Equivalence> equivalences;

  std::vector<Atom> atoms() const;
  friend bool operator==(const Completion&, const Completion&) = default;
};

/// The checks below reject interpretations with atoms outside At(P).
bool is_model(const Program& p, const Interpretation& m);
bool is_supported(const Program& p, const Interpretation& m);
bool is_stable(const Program& p, const Interpretation& m);

/// Least model of a Horn program; throws PreconditionError otherwise.
Interpretation least_model(const Program& p);

/// {h(r) : b+(r) subset of I} for a Horn program.
Interpretation tp_step(const Program& p, const Interpretation& in);

/// Greatest fixpoint of tp_step, reached by iterating down from At(P).
/// Every supported model of a Horn program is a subset of it.
Interpretation greatest_supported_model(const Program& p);

/// Drop rules blocked by M, then strip the remaining negative bodies.
Program gl_reduct(const Program& p, const Interpretation& m);

Completion clark_completion(const Program& p);

/// Evaluates every equivalence against M directly.
bool satisfies(const Completion& c, const Interpretation& m);

bool has_positive_cycles(const Program& p);

}  // namespace lpk
