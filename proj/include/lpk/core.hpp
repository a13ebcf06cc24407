#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace lpk {

/// Distinguishes atoms written by a user from atoms minted by a reduction.
enum class Namespace : std::uint8_t { User, Gadget };

/// Prefix reserved for gadget atoms in every textual rendering.
inline constexpr std::string_view kGadgetPrefix = "__";

/// A propositional atom. Equality and ordering are by (namespace, name), so
/// user atoms sort before gadget atoms.
class Atom {
 public:
  /// Throws PreconditionError if `name` is empty or carries the reserved prefix.
  static Atom user(std::string name);
  /// `name` is stored without the prefix; `str()` adds it back.
  static Atom gadget(std::string name);

  Namespace ns() const noexcept { return ns_; }
  const std::string& name() const noexcept { return name_; }
  bool is_gadget() const noexcept { return ns_ == Namespace::Gadget; }

  /// Textual form: the bare name for user atoms, "__" + name for gadgets.
  std::string str() const;

  friend auto operator<=>(const Atom&, const Atom&) = default;
  friend bool operator==(const Atom&, const Atom&) = default;

 private:
  Atom(Namespace ns, std::string name) : ns_(ns), name_(std::move(name)) {}

  Namespace ns_ = Namespace::User;
  std::string name_;
};

/// Convenience for tests and examples: "__foo" parses as a gadget atom,
/// anything else as a user atom.
Atom atom(std::string_view text);

/// An atom with a polarity.
struct Literal {
  Atom atom;
  bool positive = true;

  friend auto operator<=>(const Literal&, const Literal&) = default;
  friend bool operator==(const Literal&, const Literal&) = default;
};

/// p <- q_1, ..., q_m, not s_1, ..., not s_n. Bodies are kept as written
/// (possibly with repeats) until normalize_rule.
struct Rule {
  Atom head;
  std::vector<Atom> pos;
  std::vector<Atom> neg;

  friend bool operator==(const Rule&, const Rule&) = default;
};

/// Collapses both bodies to sorted duplicate-free sets. Idempotent.
Rule normalize_rule(const Rule& r);

/// True when some atom occurs in both the positive and the negative body.
bool has_contradictory_body(const Rule& r);

/// An ordered list of rules. The atom universe is derived from the rules
/// and cannot be declared independently.
class Program {
 public:
  Program() = default;
  explicit Program(std::vector<Rule> rules);
  Program(std::initializer_list<Rule> rules) : Program(std::vector<Rule>(rules)) {}

  const std::vector<Rule>& rules() const noexcept { return rules_; }
  /// At(P), sorted.
  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  std::size_t size() const noexcept { return rules_.size(); }
  bool empty() const noexcept { return rules_.empty(); }
  bool contains_atom(const Atom& a) const;

  /// Rule-list concatenation.
  friend Program operator+(const Program& a, const Program& b);
  friend bool operator==(const Program& a, const Program& b) { return a.rules_ == b.rules_; }

 private:
  std::vector<Rule> rules_;
  std::vector<Atom> atoms_;
};

/// A set of atoms read as the true atoms of a valuation.
class Interpretation {
 public:
  using const_iterator = std::set<Atom>::const_iterator;

  Interpretation() = default;
  Interpretation(std::initializer_list<Atom> atoms) : members_(atoms) {}
  template <class It>
  Interpretation(It first, It last) : members_(first, last) {}
  explicit Interpretation(std::set<Atom> members) : members_(std::move(members)) {}

  bool contains(const Atom& a) const { return members_.count(a) != 0; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  void insert(const Atom& a) { members_.insert(a); }
  void erase(const Atom& a) { members_.erase(a); }
  const std::set<Atom>& members() const noexcept { return members_; }
  const_iterator begin() const { return members_.begin(); }
  const_iterator end() const { return members_.end(); }

  bool is_subset_of(const Interpretation& other) const;

  friend bool operator==(const Interpretation&, const Interpretation&) = default;

 private:
  std::set<Atom> members_;
};

std::string to_string(const Interpretation& m);

/// Atoms of P, in sorted order.
std::vector<Atom> atoms_of(const Program& p);

enum class ProgramClass : std::uint8_t { Horn, Negative, N1, N2 };

/// Set of class tags a program carries.
class ClassTags {
 public:
  bool has(ProgramClass c) const noexcept { return (bits_ >> static_cast<unsigned>(c)) & 1u; }
  void add(ProgramClass c) noexcept { bits_ |= 1u << static_cast<unsigned>(c); }
  bool empty() const noexcept { return bits_ == 0; }
  friend bool operator==(const ClassTags&, const ClassTags&) = default;

 private:
  unsigned bits_ = 0;
};

ClassTags classify_program(const Program& p);
std::vector<std::string> tag_names(const ClassTags& tags);

bool is_horn(const Program& p);
bool is_negative(const Program& p);

struct LintIssue {
  enum class Kind { DuplicateRule, ContradictoryBody } kind;
  std::size_t rule_index;
  std::string message;
};

/// Reports duplicate rules and rules with an atom in both bodies. Neither is
/// an error; both are harmless for every semantics here.
std::vector<LintIssue> lint_program(const Program& p);

enum class Semantics : std::uint8_t { Model, Supported, Stable };
enum class Comparison : std::uint8_t { Le, Eq, Ge };
/// Small: |M| cmp k. Large: (|At| - k) cmp |M|.
enum class Bound : std::uint8_t { Small, Large };

struct Query {
  Semantics semantics = Semantics::Model;
  Comparison comparison = Comparison::Eq;
  Bound bound = Bound::Small;
  int k = 0;

  friend bool operator==(const Query&, const Query&) = default;
};

/// Inclusive range of admissible model sizes for `q` over `universe` atoms.
/// `lo > hi` means no size qualifies.
struct SizeRange {
  long lo;
  long hi;
  bool contains(long s) const noexcept { return lo <= s && s <= hi; }
  bool empty() const noexcept { return lo > hi; }
};
SizeRange size_range(const Query& q, std::size_t universe);

std::string to_string(Semantics s);
std::string to_string(Comparison c);
std::string to_string(Bound b);
std::string to_string(const Query& q);
Semantics parse_semantics(std::string_view s);
Comparison parse_comparison(std::string_view s);
Bound parse_bound(std::string_view s);

}  // namespace lpk
