#include "lpk/core.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "lpk/error.hpp"

namespace lpk {

Atom Atom::user(std::string name) {
  if (name.empty()) throw PreconditionError("atom name must not be empty");
  if (name.starts_with(kGadgetPrefix))
    throw PreconditionError("atom '" + name + "' uses the reserved prefix '__'");
  return Atom(Namespace::User, std::move(name));
}

Atom Atom::gadget(std::string name) {
  if (name.empty()) throw PreconditionError("gadget name must not be empty");
  return Atom(Namespace::Gadget, std::move(name));
}

std::string Atom::str() const {
  if (ns_ == Namespace::User) return name_;
  return std::string(kGadgetPrefix) + name_;
}

Atom atom(std::string_view text) {
  if (text.starts_with(kGadgetPrefix)) return Atom::gadget(std::string(text.substr(kGadgetPrefix.size())));
  return Atom::user(std::string(text));
}

Rule normalize_rule(const Rule& r) {
  Rule out = r;
  std::sort(out.pos.begin(), out.pos.end());
  out.pos.erase(std::unique(out.pos.begin(), out.pos.end()), out.pos.end());
  std::sort(out.neg.begin(), out.neg.end());
  out.neg.erase(std::unique(out.neg.begin(), out.neg.end()), out.neg.end());
  return out;
}

bool has_contradictory_body(const Rule& r) {
  return std::any_of(r.pos.begin(), r.pos.end(), [&](const Atom& a) {
    return std::find(r.neg.begin(), r.neg.end(), a) != r.neg.end();
  });
}

Program::Program(std::vector<Rule> rules) : rules_(std::move(rules)) {
  std::set<Atom> seen;
  for (const Rule& r : rules_) {
    seen.insert(r.head);
    seen.insert(r.pos.begin(), r.pos.end());
    seen.insert(r.neg.begin(), r.neg.end());
  }
  atoms_.assign(seen.begin(), seen.end());
}

bool Program::contains_atom(const Atom& a) const {
  return std::binary_search(atoms_.begin(), atoms_.end(), a);
}

Program operator+(const Program& a, const Program& b) {
  std::vector<Rule> rules = a.rules_;
  rules.insert(rules.end(), b.rules_.begin(), b.rules_.end());
  return Program(std::move(rules));
}

bool Interpretation::is_subset_of(const Interpretation& other) const {
  return std::includes(other.members_.begin(), other.members_.end(), members_.begin(), members_.end());
}

std::string to_string(const Interpretation& m) {
  std::string out = "{";
  bool first = true;
  for (const Atom& a : m) {
    if (!first) out += ", ";
    out += a.str();
    first = false;
  }
  return out + "}";
}

std::vector<Atom> atoms_of(const Program& p) { return p.atoms(); }

bool is_horn(const Program& p) {
  return std::all_of(p.rules().begin(), p.rules().end(), [](const Rule& r) { return r.neg.empty(); });
}

bool is_negative(const Program& p) {
  return std::all_of(p.rules().begin(), p.rules().end(), [](const Rule& r) { return r.pos.empty(); });
}

ClassTags classify_program(const Program& p) {
  ClassTags tags;
  if (is_horn(p)) tags.add(ProgramClass::Horn);
  if (!is_negative(p)) return tags;
  tags.add(ProgramClass::Negative);

  std::map<Atom, int> head_count;
  for (const Rule& r : p.rules()) ++head_count[r.head];
  bool n1 = std::all_of(p.atoms().begin(), p.atoms().end(), [&](const Atom& a) {
    auto it = head_count.find(a);
    return it != head_count.end() && it->second == 1;
  });
  if (n1) tags.add(ProgramClass::N1);

  // |neg_body| = 1 counts body atoms as a set.
  bool n2 = std::all_of(p.rules().begin(), p.rules().end(),
                        [](const Rule& r) { return normalize_rule(r).neg.size() == 1; });
  if (n2) tags.add(ProgramClass::N2);
  return tags;
}

std::vector<std::string> tag_names(const ClassTags& tags) {
  std::vector<std::string> out;
  if (tags.has(ProgramClass::Horn)) out.emplace_back("HORN");
  if (tags.has(ProgramClass::Negative)) out.emplace_back("NEG");
  if (tags.has(ProgramClass::N1)) out.emplace_back("N1");
  if (tags.has(ProgramClass::N2)) out.emplace_back("N2");
  return out;
}

std::vector<LintIssue> lint_program(const Program& p) {
  std::vector<LintIssue> issues;
  std::map<Rule, std::size_t, bool (*)(const Rule&, const Rule&)> first_seen(
      [](const Rule& a, const Rule& b) {
        return std::tie(a.head, a.pos, a.neg) < std::tie(b.head, b.pos, b.neg);
      });
  for (std::size_t i = 0; i < p.rules().size(); ++i) {
    const Rule norm = normalize_rule(p.rules()[i]);
    auto [it, inserted] = first_seen.emplace(norm, i);
    if (!inserted)
      issues.push_back({LintIssue::Kind::DuplicateRule, i,
                        "rule " + std::to_string(i) + " duplicates rule " + std::to_string(it->second)});
    if (has_contradictory_body(norm))
      issues.push_back({LintIssue::Kind::ContradictoryBody, i,
                        "rule " + std::to_string(i) + " has an atom in both bodies"});
  }
  return issues;
}

SizeRange size_range(const Query& q, std::size_t universe) {
  const long n = static_cast<long>(universe);
  const long k = q.k;
  if (q.bound == Bound::Small) {
    switch (q.comparison) {
      case Comparison::Le: return {0, std::min(k, n)};
      case Comparison::Eq: return {k, k <= n ? k : -1};
      case Comparison::Ge: return {k, n};
    }
  }
  const long t = n - k;
  switch (q.comparison) {
    case Comparison::Le: return {std::max(t, 0L), n};
    case Comparison::Eq: return t >= 0 ? SizeRange{t, t} : SizeRange{1, 0};
    case Comparison::Ge: return {0, t};
  }
  return {1, 0};
}

std::string to_string(Semantics s) {
  switch (s) {
    case Semantics::Model: return "model";
    case Semantics::Supported: return "supported";
    case Semantics::Stable: return "stable";
  }
  return "?";
}

std::string to_string(Comparison c) {
  switch (c) {
    case Comparison::Le: return "le";
    case Comparison::Eq: return "eq";
    case Comparison::Ge: return "ge";
  }
  return "?";
}

std::string to_string(Bound b) { return b == Bound::Small ? "small" : "large"; }

std::string to_string(const Query& q) {
  return to_string(q.semantics) + "/" + to_string(q.comparison) + "/" + to_string(q.bound) +
         "/k=" + std::to_string(q.k);
}

Semantics parse_semantics(std::string_view s) {
  if (s == "model") return Semantics::Model;
  if (s == "supported") return Semantics::Supported;
  if (s == "stable") return Semantics::Stable;
  throw PreconditionError("unknown semantics '" + std::string(s) + "'");
}

Comparison parse_comparison(std::string_view s) {
  if (s == "le") return Comparison::Le;
  if (s == "eq") return Comparison::Eq;
  if (s == "ge") return Comparison::Ge;
  throw PreconditionError("unknown comparison '" + std::string(s) + "'");
}

Bound parse_bound(std::string_view s) {
  if (s == "small") return Bound::Small;
  if (s == "large") return Bound::Large;
  throw PreconditionError("unknown bound '" + std::string(s) + "'");
}

}  // namespace lpk
