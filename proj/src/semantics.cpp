#include "lpk/semantics.hpp"

#include <algorithm>
#include <set>

#include "lpk/detail/indexed.hpp"
#include "lpk/error.hpp"

namespace lpk {
namespace detail {

namespace {

std::vector<int> unique_sorted(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

IndexedProgram::IndexedProgram(const Program& p) : atoms_(p.atoms()) {
  rules_.reserve(p.size());
  pos_occurrences_.assign(atoms_.size(), {});
  for (const Rule& r : p.rules()) {
    IndexedRule ir;
    ir.head = index_of(r.head);
    for (const Atom& a : r.pos) ir.pos.push_back(index_of(a));
    for (const Atom& a : r.neg) ir.neg.push_back(index_of(a));
    ir.pos = unique_sorted(std::move(ir.pos));
    ir.neg = unique_sorted(std::move(ir.neg));
    for (int a : ir.pos) pos_occurrences_[a].push_back(static_cast<int>(rules_.size()));
    rules_.push_back(std::move(ir));
  }
}

int IndexedProgram::index_of(const Atom& a) const {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), a);
  if (it == atoms_.end() || *it != a) return -1;
  return static_cast<int>(it - atoms_.begin());
}

Bits IndexedProgram::to_bits(const Interpretation& m) const {
  Bits bits(atoms_.size(), 0);
  for (const Atom& a : m) {
    const int i = index_of(a);
    if (i < 0) throw PreconditionError("interpretation atom '" + a.str() + "' is not in At(P)");
    bits[i] = 1;
  }
  return bits;
}

Interpretation IndexedProgram::to_interpretation(const Bits& bits) const {
  Interpretation m;
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) m.insert(atoms_[i]);
  return m;
}

Bits IndexedProgram::least_model(const Bits* blocker) const {
  Bits model(atoms_.size(), 0);
  std::vector<int> missing(rules_.size(), -1);  // -1: rule blocked
  std::vector<int> queue;
  queue.reserve(atoms_.size());
  auto derive = [&](int a) {
    if (!model[a]) {
      model[a] = 1;
      queue.push_back(a);
    }
  };
  for (std::size_t r = 0; r < rules_.size(); ++r) {
    const IndexedRule& rule = rules_[r];
    if (blocker != nullptr &&
        std::any_of(rule.neg.begin(), rule.neg.end(), [&](int a) { return (*blocker)[a] != 0; }))
      continue;
    missing[r] = static_cast<int>(rule.pos.size());
    if (missing[r] == 0) derive(rule.head);
  }
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    for (int r : pos_occurrences_[queue[qi]]) {
      if (missing[r] <= 0) continue;
      if (--missing[r] == 0) derive(rules_[r].head);
    }
  }
  return model;
}

Bits IndexedProgram::tp(const Bits& in) const {
  Bits out(atoms_.size(), 0);
  for (const IndexedRule& r : rules_) {
    if (out[r.head]) continue;
    const bool fires = std::all_of(r.pos.begin(), r.pos.end(), [&](int a) { return in[a] != 0; }) &&
                       std::none_of(r.neg.begin(), r.neg.end(), [&](int a) { return in[a] != 0; });
    if (fires) out[r.head] = 1;
  }
  return out;
}

bool IndexedProgram::is_model(const Bits& m) const {
  for (const IndexedRule& r : rules_) {
    if (m[r.head]) continue;
    const bool fires = std::all_of(r.pos.begin(), r.pos.end(), [&](int a) { return m[a] != 0; }) &&
                       std::none_of(r.neg.begin(), r.neg.end(), [&](int a) { return m[a] != 0; });
    if (fires) return false;
  }
  return true;
}

bool IndexedProgram::is_supported(const Bits& m) const { return tp(m) == m; }

bool IndexedProgram::is_stable(const Bits& m) const { return least_model(&m) == m; }

std::vector<int> IndexedProgram::negative_atoms() const {
  std::vector<int> out;
  for (const IndexedRule& r : rules_) out.insert(out.end(), r.neg.begin(), r.neg.end());
  return unique_sorted(std::move(out));
}

std::vector<int> IndexedProgram::body_atoms() const {
  std::vector<int> out;
  for (const IndexedRule& r : rules_) {
    out.insert(out.end(), r.pos.begin(), r.pos.end());
    out.insert(out.end(), r.neg.begin(), r.neg.end());
  }
  return unique_sorted(std::move(out));
}

}  // namespace detail

namespace {

void require_horn(const Program& p, const char* op) {
  if (!is_horn(p)) throw PreconditionError(std::string(op) + " requires a Horn program");
}

bool holds(const std::vector<Literal>& conj, const Interpretation& m) {
  return std::all_of(conj.begin(), conj.end(),
                     [&](const Literal& l) { return m.contains(l.atom) == l.positive; });
}

}  // namespace

std::vector<Atom> Completion::atoms() const {
  std::set<Atom> out;
  for (const Equivalence& e : equivalences) {
    out.insert(e.head);
    for (const auto& conj : e.disjuncts)
      for (const Literal& l : conj) out.insert(l.atom);
  }
  return {out.begin(), out.end()};
}

bool is_model(const Program& p, const Interpretation& m) {
  detail::IndexedProgram ip(p);
  return ip.is_model(ip.to_bits(m));
}

bool is_supported(const Program& p, const Interpretation& m) {
  detail::IndexedProgram(p).to_bits(m);  // universe check
  return satisfies(clark_completion(p), m);
}

bool is_stable(const Program& p, const Interpretation& m) {
  detail::IndexedProgram ip(p);
  return ip.is_stable(ip.to_bits(m));
}

Interpretation least_model(const Program& p) {
  require_horn(p, "least_model");
  detail::IndexedProgram ip(p);
  return ip.to_interpretation(ip.least_model(nullptr));
}

Interpretation tp_step(const Program& p, const Interpretation& in) {
  require_horn(p, "tp_step");
  detail::IndexedProgram ip(p);
  return ip.to_interpretation(ip.tp(ip.to_bits(in)));
}

Interpretation greatest_supported_model(const Program& p) {
  require_horn(p, "greatest_supported_model");
  detail::IndexedProgram ip(p);
  detail::Bits current(ip.atom_count(), 1);
  // T_P is monotone, so the sequence from At(P) descends to the gfp.
  for (;;) {
    detail::Bits next = ip.tp(current);
    if (next == current) break;
    current = std::move(next);
  }
  return ip.to_interpretation(current);
}

Program gl_reduct(const Program& p, const Interpretation& m) {
  std::vector<Rule> kept;
  for (const Rule& r : p.rules()) {
    const bool blocked = std::any_of(r.neg.begin(), r.neg.end(), [&](const Atom& a) { return m.contains(a); });
    if (!blocked) kept.push_back(Rule{r.head, r.pos, {}});
  }
  return Program(std::move(kept));
}

Completion clark_completion(const Program& p) {
  Completion c;
  c.equivalences.reserve(p.atoms().size());
  for (const Atom& a : p.atoms()) c.equivalences.push_back(Equivalence{a, {}});
  for (const Rule& r : p.rules()) {
    std::vector<Literal> conj;
    for (const Atom& q : r.pos) conj.push_back({q, true});
    for (const Atom& s : r.neg) conj.push_back({s, false});
    auto it = std::lower_bound(p.atoms().begin(), p.atoms().end(), r.head);
    c.equivalences[it - p.atoms().begin()].disjuncts.push_back(std::move(conj));
  }
  return c;
}

bool satisfies(const Completion& c, const Interpretation& m) {
  return std::all_of(c.equivalences.begin(), c.equivalences.end(), [&](const Equivalence& e) {
    const bool rhs = std::any_of(e.disjuncts.begin(), e.disjuncts.end(),
                                 [&](const std::vector<Literal>& conj) { return holds(conj, m); });
    return m.contains(e.head) == rhs;
  });
}

bool has_positive_cycles(const Program& p) {
  detail::IndexedProgram ip(p);
  const std::size_t n = ip.atom_count();
  std::vector<std::vector<int>> succ(n);
  for (const auto& r : ip.rules())
    for (int b : r.pos) succ[b].push_back(r.head);

  enum : char { White, Grey, Black };
  std::vector<char> colour(n, White);
  std::vector<std::pair<int, std::size_t>> stack;
  for (std::size_t root = 0; root < n; ++root) {
    if (colour[root] != White) continue;
    stack.emplace_back(static_cast<int>(root), 0);
    colour[root] = Grey;
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      if (next < succ[v].size()) {
        const int w = succ[v][next++];
        if (colour[w] == Grey) return true;
        if (colour[w] == White) {
          colour[w] = Grey;
          stack.emplace_back(w, 0);
        }
      } else {
        colour[v] = Black;
        stack.pop_back();
      }
    }
  }
  return false;
}

}  // namespace lpk
