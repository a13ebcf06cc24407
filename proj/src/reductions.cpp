#include "lpk/reductions.hpp"

#include <algorithm>
#include <set>

#include "lpk/error.hpp"
#include "lpk/semantics.hpp"

namespace lpk {

namespace {

const Semantics kSemantics[] = {Semantics::Model, Semantics::Supported, Semantics::Stable};
const Comparison kComparisons[] = {Comparison::Le, Comparison::Eq, Comparison::Ge};
const Bound kBounds[] = {Bound::Small, Bound::Large};

Query q(Semantics s, Comparison c, Bound b, int k) { return Query{s, c, b, k}; }

void require_k(int k) {
  if (k < 0) throw PreconditionError("k must be non-negative");
}

// Mints gadget atoms, refusing names already used by the input or by an
// earlier mint.
class Minter {
 public:
  Minter(const std::vector<Atom>& input, std::map<std::string, std::string>& atom_map)
      : taken_(input.begin(), input.end()), map_(atom_map) {}

  Atom operator()(const std::string& name, const std::string& what) {
    Atom a = Atom::gadget(name);
    if (!taken_.insert(a).second) throw PreconditionError("gadget atom '" + a.str() + "' is not fresh");
    map_[a.str()] = what;
    return a;
  }

 private:
  std::set<Atom> taken_;
  std::map<std::string, std::string>& map_;
};

std::string idx(std::size_t i) { return std::to_string(i + 1); }

void require_formula(const NormalizedFormula& f, int max_t, bool monotone, bool antimonotone, const char* op) {
  const FormulaClass c = classify_formula(f);
  if (c.t > max_t) throw PreconditionError(std::string(op) + ": formula is too deep");
  if (monotone && !c.monotone) throw PreconditionError(std::string(op) + ": formula must be monotone");
  if (antimonotone && !c.antimonotone) throw PreconditionError(std::string(op) + ": formula must be antimonotone");
}

std::size_t atom_index(const std::vector<Atom>& atoms, const Atom& a) {
  return static_cast<std::size_t>(std::lower_bound(atoms.begin(), atoms.end(), a) - atoms.begin());
}

std::vector<Atom> clause_atoms(const Clause& c) {
  std::vector<Atom> out;
  for (const Literal& l : c) out.push_back(l.atom);
  return out;
}

std::vector<Literal> body_literals(const Rule& r) {
  const Rule n = normalize_rule(r);
  std::vector<Literal> out;
  for (const Atom& a : n.pos) out.push_back({a, true});
  for (const Atom& a : n.neg) out.push_back({a, false});
  return out;
}

ReductionRecord finish(ReductionRecord r) {
  r.class_tags = instance_tags(r.output);
  return r;
}

// All six (cmp, bound) pairs for reductions that keep the model set and the
// atom universe.
std::vector<QueryPair> same_models(Semantics from, Semantics to, int k) {
  std::vector<QueryPair> out;
  for (Comparison c : kComparisons)
    for (Bound b : kBounds) out.push_back({q(from, c, b, k), q(to, c, b, k)});
  return out;
}

}  // namespace

std::vector<Atom> atoms_of(const Instance& x) {
  return std::visit([](const auto& v) { return v.atoms(); }, x);
}

std::vector<std::string> instance_tags(const Instance& x) {
  if (const auto* p = std::get_if<Program>(&x)) return tag_names(classify_program(*p));
  const FormulaClass c = classify_formula(std::get<NormalizedFormula>(x));
  std::vector<std::string> out;
  if (c.t <= 2) out.emplace_back("2N");
  if (c.in_2n3()) out.emplace_back("2N3");
  if (c.t <= 3) out.emplace_back("3N");
  if (c.monotone) out.emplace_back("M");
  if (c.antimonotone) out.emplace_back("A");
  return out;
}

Program build_qk(int k) {
  require_k(k);
  auto y = [](int i, int j) { return Atom::gadget("qk.y." + std::to_string(i) + "." + std::to_string(j)); };
  std::vector<Rule> rules;
  for (int i = 1; i <= k + 1; ++i) {
    std::vector<Atom> neg;
    for (int i2 = 1; i2 <= k + 1; ++i2)
      if (i2 != i) neg.push_back(y(i2, 1));
    for (int j = 1; j <= i; ++j) rules.push_back(Rule{y(i, j), {}, neg});
  }
  return Program(std::move(rules));
}

ReductionRecord reduce_le_to_eq_via_qk(const Program& p, int k, Bound bound) {
  require_k(k);
  ReductionRecord r{bound == Bound::Small ? "qk-pad-small" : "qk-pad-large", p, Program{}, k, 0, {}, {}, {}};
  Minter mint(p.atoms(), r.atom_map);
  const Program qk = build_qk(k);
  for (const Atom& a : qk.atoms()) mint(a.name(), "y_{" + a.name().substr(5) + "} of Q_k");
  r.output = p + qk;
  r.k_target = bound == Bound::Small ? k + 1 : k * (k + 3) / 2;
  for (Semantics s : {Semantics::Stable, Semantics::Supported})
    r.queries.push_back({q(s, Comparison::Le, bound, k), q(s, Comparison::Eq, bound, r.k_target)});
  return finish(std::move(r));
}

ReductionRecord mono_cnf_to_neg_program(const NormalizedFormula& f, int k) {
  require_k(k);
  require_formula(f, 2, true, false, "mono_cnf_to_neg_program");
  std::vector<Rule> rules;
  for (const Clause& c : as_clauses(f)) {
    if (c.empty()) throw PreconditionError("mono_cnf_to_neg_program: empty clause has no head");
    std::vector<Atom> neg;
    for (std::size_t i = 1; i < c.size(); ++i) neg.push_back(c[i].atom);
    rules.push_back(Rule{c.front().atom, {}, std::move(neg)});
  }
  ReductionRecord r{"neg-program-from-2nm", f, Program(std::move(rules)), k, k, same_models(Semantics::Model, Semantics::Model, k), {}, {}};
  return finish(std::move(r));
}

ReductionRecord program_to_cnf(const Program& p, int k) {
  require_k(k);
  std::vector<Clause> clauses;
  for (const Rule& rule : p.rules()) {
    Clause c;
    for (const Atom& a : rule.pos) c.push_back({a, false});
    for (const Atom& a : rule.neg) c.push_back({a, true});
    c.push_back({rule.head, true});
    clauses.push_back(std::move(c));
  }
  ReductionRecord r{"program-to-cnf", p, make_cnf(clauses), k, k, same_models(Semantics::Model, Semantics::Model, k), {}, {}};
  return finish(std::move(r));
}

ReductionRecord eq_le_swap_2nm(const NormalizedFormula& f, int k, SwapDirection d) {
  require_k(k);
  require_formula(f, 2, true, false, "eq_le_swap_2nm");
  for (const Clause& c : as_clauses(f))
    if (c.empty()) throw PreconditionError("eq_le_swap_2nm: empty clause");
  const bool eq_to_le = d == SwapDirection::EqToLe;
  ReductionRecord r{eq_to_le ? "eq-to-le-2nm" : "le-to-eq-2nm", f, f, k, k, {}, {}, {}};
  if (k > static_cast<int>(f.atoms().size())) {
    Minter mint(f.atoms(), r.atom_map);
    const Atom a = mint("swap.a", "single-atom clause");
    r.output = make_cnf({{Literal{a, true}}});
    r.k_target = eq_to_le ? 0 : 1;
  }
  const Comparison from = eq_to_le ? Comparison::Eq : Comparison::Le;
  const Comparison to = eq_to_le ? Comparison::Le : Comparison::Eq;
  r.queries.push_back({q(Semantics::Model, from, Bound::Small, k), q(Semantics::Model, to, Bound::Small, r.k_target)});
  return finish(std::move(r));
}

ReductionRecord dualize_2n(const NormalizedFormula& f, int k) {
  require_k(k);
  DualizedFormula d = dualize(f, k);
  ReductionRecord r{"dualize-2n", f, d.formula, k, k, {}, {}, {}};
  for (const auto& [from, to] : d.renaming) r.atom_map[to.str()] = "bar of " + from.str();
  // Complementing M turns |M| cmp k into (|At| - k) cmp |complement|.
  for (Comparison c : kComparisons)
    r.queries.push_back({q(Semantics::Model, c, Bound::Small, k), q(Semantics::Model, c, Bound::Large, k)});
  return finish(std::move(r));
}

ReductionRecord pad_facts(const Program& p, int k) {
  require_k(k);
  ReductionRecord r{"pad-facts", p, Program{}, k, k, {}, {}, {}};
  Minter mint(p.atoms(), r.atom_map);
  std::vector<Rule> extra;
  for (int i = 0; i < k; ++i) extra.push_back(Rule{mint("pf.y." + idx(i), "padding fact"), {}, {}});
  r.output = p + Program(std::move(extra));
  for (Semantics s : {Semantics::Stable, Semantics::Supported})
    r.queries.push_back({q(s, Comparison::Ge, Bound::Small, 0), q(s, Comparison::Ge, Bound::Small, k)});
  return finish(std::move(r));
}

ReductionRecord pad_choice_pairs(const Program& p, int k) {
  require_k(k);
  ReductionRecord r{"pad-choice-pairs", p, Program{}, k, k, {}, {}, {}};
  Minter mint(p.atoms(), r.atom_map);
  std::vector<Rule> extra;
  for (int i = 0; i < k; ++i) {
    const Atom y = mint("pc.y." + idx(i), "choice pair, left");
    const Atom z = mint("pc.z." + idx(i), "choice pair, right");
    extra.push_back(Rule{y, {}, {z}});
    extra.push_back(Rule{z, {}, {y}});
  }
  r.output = p + Program(std::move(extra));
  for (Semantics s : {Semantics::Stable, Semantics::Supported})
    r.queries.push_back({q(s, Comparison::Ge, Bound::Small, 0), q(s, Comparison::Ge, Bound::Large, k)});
  return finish(std::move(r));
}

ReductionRecord cnf_large_to_program(const NormalizedFormula& f, int k) {
  require_k(k);
  if (k == 0) throw PreconditionError("cnf_large_to_program needs k >= 1");
  require_formula(f, 2, false, false, "cnf_large_to_program");
  std::vector<Rule> rules;
  for (const Clause& c : as_clauses(f)) {
    std::vector<Atom> pos, neg;
    for (const Literal& l : c) (l.positive ? neg : pos).push_back(l.atom);
    for (const Atom& x : f.atoms()) rules.push_back(Rule{x, pos, neg});
  }
  ReductionRecord r{"cnf-large-to-program", f, Program(std::move(rules)), k, k, {}, {}, {}};
  r.queries.push_back({q(Semantics::Model, Comparison::Ge, Bound::Large, k), q(Semantics::Model, Comparison::Ge, Bound::Large, k)});
  return finish(std::move(r));
}

ReductionRecord anti2n_to_horn_eq(const NormalizedFormula& f, int k) {
  require_k(k);
  require_formula(f, 2, false, true, "anti2n_to_horn_eq");
  ReductionRecord r{"anti2n-to-horn-eq", f, Program{}, k, k, {}, {}, {}};
  Minter mint(f.atoms(), r.atom_map);
  std::vector<Atom> a;
  for (int i = 0; i <= k; ++i) a.push_back(mint("clq.a." + std::to_string(i), "a_" + std::to_string(i)));
  std::vector<Rule> rules;
  for (const Clause& c : as_clauses(f)) rules.push_back(Rule{a[0], clause_atoms(c), {}});
  for (int i = 0; i <= k; ++i)
    for (int j = 0; j <= k; ++j)
      if (i != j) rules.push_back(Rule{a[i], {a[j]}, {}});
  r.output = Program(std::move(rules));
  r.queries.push_back({q(Semantics::Model, Comparison::Eq, Bound::Small, k), q(Semantics::Model, Comparison::Eq, Bound::Small, k)});
  return finish(std::move(r));
}

ReductionRecord horn_to_2n3(const Program& p, int k) {
  require_k(k);
  if (!is_horn(p)) throw PreconditionError("horn_to_2n3 requires a Horn program");
  if (k > 20) throw PreconditionError("horn_to_2n3: k too large");
  const std::vector<Atom>& at = p.atoms();
  const std::size_t copies = std::size_t{1} << k;
  ReductionRecord r{"horn-to-2n3", p, NormalizedFormula{}, k, static_cast<int>((k + 1) * copies + k), {}, {}, {}};
  Minter mint(at, r.atom_map);

  // Bodies as sorted index sets; rules wider than k cannot fire in a model
  // of size k without forcing a (k+1)-th atom... they are simply dropped.
  std::vector<std::pair<std::size_t, std::vector<std::size_t>>> rules;
  for (const Rule& rule : p.rules()) {
    const Rule n = normalize_rule(rule);
    if (n.pos.size() > static_cast<std::size_t>(k)) continue;
    std::vector<std::size_t> body;
    for (const Atom& b : n.pos) body.push_back(atom_index(at, b));
    rules.emplace_back(atom_index(at, n.head), std::move(body));
  }
  std::set<std::vector<std::size_t>> family{{}};
  for (const auto& [head, body] : rules) {
    const std::size_t w = body.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << w); ++mask) {
      std::vector<std::size_t> sub;
      for (std::size_t i = 0; i < w; ++i)
        if ((mask >> i) & 1u) sub.push_back(body[i]);
      family.insert(std::move(sub));
    }
  }
  std::map<std::vector<std::size_t>, Atom> u;
  for (const auto& b : family) {
    std::string name = "hw.u", what = "u[{";
    for (std::size_t i = 0; i < b.size(); ++i) {
      name += "." + idx(b[i]);
      what += (i ? "," : "") + at[b[i]].str();
    }
    u.emplace(b, mint(name, what + "}]"));
  }

  std::vector<Clause> clauses;
  for (std::size_t x = 0; x < at.size(); ++x)
    for (std::size_t i = 0; i < copies; ++i) {
      const Atom xi = mint("hw.x." + idx(x) + "." + idx(i), at[x].str() + "[" + idx(i) + "]");
      clauses.push_back({{at[x], false}, {xi, true}});
      clauses.push_back({{at[x], true}, {xi, false}});
    }
  for (const auto& [b, ub] : u)
    for (std::size_t pos = 0; pos < b.size(); ++pos) {
      std::vector<std::size_t> rest = b;
      rest.erase(rest.begin() + static_cast<long>(pos));
      const Atom& x = at[b[pos]];
      clauses.push_back({{x, false}, {u.at(rest), false}, {ub, true}});  // E(B, x)
      clauses.push_back({{ub, false}, {x, true}});                       // F(B, x)
    }
  for (const auto& [head, body] : rules) clauses.push_back({{u.at(body), false}, {at[head], true}});  // G(r)
  clauses.push_back({{u.at({}), true}});
  for (std::size_t t = 0; t < copies; ++t) {
    const Atom z = mint("hw.z." + idx(t), "free padding atom");
    clauses.push_back({{z, true}, {z, false}});
  }
  r.output = make_cnf(clauses);
  r.queries.push_back(
      {q(Semantics::Model, Comparison::Eq, Bound::Small, k), q(Semantics::Model, Comparison::Eq, Bound::Small, r.k_target)});
  return finish(std::move(r));
}

ReductionRecord mono2n_le_to_stable_neg(const NormalizedFormula& f, int k) {
  require_k(k);
  require_formula(f, 2, true, false, "mono2n_le_to_stable_neg");
  const std::vector<Atom>& at = f.atoms();
  ReductionRecord r{"mono2n-le-to-stable-neg", f, Program{}, k, k, {}, {}, {}};
  Minter mint(at, r.atom_map);
  std::vector<std::vector<Atom>> copy(at.size());
  for (std::size_t j = 0; j < at.size(); ++j)
    for (int l = 0; l < k; ++l)
      copy[j].push_back(mint("col.x." + idx(j) + "." + idx(l), at[j].str() + "[" + idx(l) + "]"));

  std::vector<Rule> rules;
  for (std::size_t j = 0; j < at.size(); ++j)
    for (int l = 0; l < k; ++l) {
      std::vector<Atom> neg;
      for (std::size_t j2 = 0; j2 < at.size(); ++j2)
        if (j2 != j) neg.push_back(copy[j2][l]);
      rules.push_back(Rule{copy[j][l], {}, std::move(neg)});
    }
  const std::vector<Clause> clauses = as_clauses(f);
  for (std::size_t c = 0; c < clauses.size(); ++c) {
    const Atom fc = mint("col.f." + idx(c), "clause " + idx(c));
    std::vector<Atom> neg;
    for (const Literal& lit : clauses[c])
      for (const Atom& xl : copy[atom_index(at, lit.atom)]) neg.push_back(xl);
    neg.push_back(fc);
    rules.push_back(Rule{fc, {}, std::move(neg)});
  }
  r.output = Program(std::move(rules));
  for (Semantics s : {Semantics::Stable, Semantics::Supported})
    r.queries.push_back({q(Semantics::Model, Comparison::Le, Bound::Small, k), q(s, Comparison::Le, Bound::Small, k)});
  return finish(std::move(r));
}

ReductionRecord supported_eq_to_cnf(const Program& p, int k) {
  require_k(k);
  const std::vector<Atom>& at = p.atoms();
  ReductionRecord r{"supported-eq-to-cnf", p, NormalizedFormula{}, k, 2 * k, {}, {}, {}};
  Minter mint(at, r.atom_map);
  std::vector<std::vector<const Rule*>> by_head(at.size());
  for (const Rule& rule : p.rules()) by_head[atom_index(at, rule.head)].push_back(&rule);

  std::vector<Clause> clauses;
  for (std::size_t i = 0; i < at.size(); ++i) {
    const Atom& x = at[i];
    std::vector<Atom> u;
    for (std::size_t j = 0; j < by_head[i].size(); ++j)
      u.push_back(mint("sel.u." + idx(i) + "." + idx(j), "rule " + idx(j) + " for " + x.str()));
    Clause g{{x, false}};
    for (const Atom& uj : u) g.push_back({uj, true});
    clauses.push_back(std::move(g));                                    // G_i
    for (const Atom& uj : u) clauses.push_back({{x, true}, {uj, false}});  // G'_i
    for (std::size_t j = 0; j < u.size(); ++j)
      for (std::size_t j2 = j + 1; j2 < u.size(); ++j2) clauses.push_back({{u[j], false}, {u[j2], false}});  // H_i
    for (std::size_t j = 0; j < u.size(); ++j) {
      const std::vector<Literal> body = body_literals(*by_head[i][j]);
      for (const Literal& l : body) clauses.push_back({{u[j], false}, l});  // I_i
      Clause jc{{x, true}};
      for (const Literal& l : body) jc.push_back({l.atom, !l.positive});
      clauses.push_back(std::move(jc));  // J_i
    }
  }
  r.output = make_cnf(clauses);
  r.queries.push_back(
      {q(Semantics::Supported, Comparison::Eq, Bound::Small, k), q(Semantics::Model, Comparison::Eq, Bound::Small, 2 * k)});
  return finish(std::move(r));
}

Program add_self_loops(const Program& p) {
  std::vector<Rule> loops;
  for (const Atom& a : p.atoms()) loops.push_back(Rule{a, {a}, {}});
  return p + Program(std::move(loops));
}

ReductionRecord anti2n_to_supported_horn(const NormalizedFormula& f, int k) {
  ReductionRecord r = anti2n_to_horn_eq(f, k);
  r.name = "anti2n-to-supported-horn";
  r.output = add_self_loops(std::get<Program>(r.output));
  r.queries = {{q(Semantics::Model, Comparison::Eq, Bound::Small, k), q(Semantics::Supported, Comparison::Eq, Bound::Small, k)}};
  return finish(std::move(r));
}

ReductionRecord mono2n_eq_to_large_horn(const NormalizedFormula& f, int k) {
  require_k(k);
  require_formula(f, 2, true, false, "mono2n_eq_to_large_horn");
  if (f.atoms().empty()) throw PreconditionError("mono2n_eq_to_large_horn: formula has no atoms");
  ReductionRecord r{"mono2n-eq-to-large-horn", f, Program{}, k, k + 1, {}, {}, {}};
  Minter mint(f.atoms(), r.atom_map);
  const Atom a = mint("m2h.a", "atom a");
  std::vector<Rule> rules;
  for (const Atom& x : f.atoms()) rules.push_back(Rule{x, {a}, {}});
  for (const Clause& c : as_clauses(f)) rules.push_back(Rule{a, clause_atoms(c), {}});
  r.output = Program(std::move(rules));
  r.queries.push_back({q(Semantics::Model, Comparison::Eq, Bound::Small, k), q(Semantics::Model, Comparison::Eq, Bound::Large, k + 1)});
  return finish(std::move(r));
}

ReductionRecord mono3n_large_to_supported_horn(const NormalizedFormula& f, int k) {
  require_k(k);
  require_formula(f, 3, true, false, "mono3n_large_to_supported_horn");
  const std::vector<Block> blocks = as_blocks(f);
  ReductionRecord r{"mono3n-large-to-supported-horn", f, Program{}, k, k, {}, {}, {}};
  Minter mint(f.atoms(), r.atom_map);
  std::vector<Rule> rules;
  for (const Atom& x : f.atoms()) rules.push_back(Rule{x, {x}, {}});
  std::vector<Atom> u;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    u.push_back(mint("blk.u." + idx(i), "block " + idx(i)));
    for (const auto& conj : blocks[i]) rules.push_back(Rule{u.back(), clause_atoms(conj), {}});
  }
  for (int qi = 0; qi <= k; ++qi) rules.push_back(Rule{mint("blk.v." + idx(qi), "all blocks hold"), u, {}});
  r.output = Program(std::move(rules));
  r.queries.push_back({q(Semantics::Model, Comparison::Eq, Bound::Large, k), q(Semantics::Supported, Comparison::Eq, Bound::Large, k)});
  return finish(std::move(r));
}

ReductionRecord threeN_large_to_stable(const NormalizedFormula& f, int k, bool pad_universe) {
  require_k(k);
  require_formula(f, 3, false, false, "threeN_large_to_stable");
  const std::vector<Block> blocks = as_blocks(f);
  ReductionRecord r{"3n-large-to-stable", f, Program{}, k, 2 * k, {}, {}, {}};
  Minter mint(f.atoms(), r.atom_map);
  std::vector<Atom> xs = f.atoms();
  if (pad_universe) xs.push_back(mint("tgt.d", "spare atom that may always be false"));
  std::vector<std::vector<Atom>> copy(xs.size());
  for (std::size_t j = 0; j < xs.size(); ++j)
    for (int s = 0; s < k; ++s)
      copy[j].push_back(mint("tgt.x." + idx(j) + "." + idx(s), xs[j].str() + "[" + idx(s) + "]"));

  std::vector<Rule> rules;
  for (int s = 0; s < k; ++s)
    for (std::size_t x = 0; x < xs.size(); ++x)
      for (std::size_t y = 0; y < xs.size(); ++y)
        if (x != y) rules.push_back(Rule{copy[x][s], {}, {copy[y][s]}});  // A(x, y, s)
  for (std::size_t x = 0; x < xs.size(); ++x) rules.push_back(Rule{xs[x], copy[x], {}});  // B(x)
  std::vector<Atom> u;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    u.push_back(mint("tgt.u." + idx(i), "block " + idx(i)));
    for (const auto& conj : blocks[i]) {
      Rule c{u.back(), {}, {}};
      for (const Literal& l : conj) (l.positive ? c.pos : c.neg).push_back(l.atom);
      rules.push_back(std::move(c));  // C(i, j)
    }
  }
  for (int qi = 0; qi < 2 * k + 1; ++qi) rules.push_back(Rule{mint("tgt.v." + idx(qi), "all blocks hold"), u, {}});
  r.output = Program(std::move(rules));
  for (Semantics s : {Semantics::Stable, Semantics::Supported})
    r.queries.push_back({q(Semantics::Model, Comparison::Le, Bound::Large, k), q(s, Comparison::Le, Bound::Large, 2 * k)});
  return finish(std::move(r));
}

ReductionRecord threeN_large_to_stable(const NormalizedFormula& f, int k) { return threeN_large_to_stable(f, k, true); }

ReductionRecord supported_large_neg_to_cnf(const Program& p, int k) {
  require_k(k);
  if (!is_negative(p)) throw PreconditionError("supported_large_neg_to_cnf requires a purely negative program");
  if (k > 20) throw PreconditionError("supported_large_neg_to_cnf: k too large");
  const std::vector<Atom>& at = p.atoms();
  const std::size_t copies = std::size_t{1} << k;
  ReductionRecord r{"supported-large-neg-to-cnf", p, NormalizedFormula{}, k, static_cast<int>((k + 1) * copies + k), {}, {}, {}};
  Minter mint(at, r.atom_map);

  std::vector<Clause> clauses;
  for (std::size_t i = 0; i < at.size(); ++i)
    for (std::size_t t = 0; t < copies; ++t) {
      const Atom xt = mint("nsc.x." + idx(i) + "." + idx(t), at[i].str() + "[" + idx(t) + "]");
      clauses.push_back({{at[i], false}, {xt, true}});  // A(i, t)
      clauses.push_back({{at[i], true}, {xt, false}});
    }
  // One u atom per distinct body set, numbered by first occurrence.
  std::map<std::vector<Atom>, Atom> u;
  std::vector<std::vector<std::vector<Atom>>> bodies(at.size());
  for (const Rule& rule : p.rules()) {
    std::vector<Atom> body = normalize_rule(rule).neg;
    if (!u.count(body)) {
      std::string what = "u[{";
      for (std::size_t i = 0; i < body.size(); ++i) what += (i ? "," : "") + body[i].str();
      u.emplace(body, mint("nsc.u." + idx(u.size()), what + "}]"));
      for (const Atom& x : body) clauses.push_back({{x, false}, {u.at(body), true}});  // B(x, U)
    }
    bodies[atom_index(at, rule.head)].push_back(std::move(body));
  }
  for (std::size_t i = 0; i < at.size(); ++i) {
    Clause c{{at[i], false}};
    for (const auto& b : bodies[i]) c.push_back({u.at(b), false});
    clauses.push_back(std::move(c));  // C(i)
    for (const auto& b : bodies[i]) {
      Clause d{{at[i], true}};
      for (const Atom& x : b) d.push_back({x, true});
      clauses.push_back(std::move(d));  // D(i)
    }
  }
  for (std::size_t t = 0; t < copies; ++t) {
    const Atom z = mint("nsc.z." + idx(t), "free padding atom");
    clauses.push_back({{z, true}, {z, false}});  // E(t)
  }
  r.output = make_cnf(clauses);
  r.queries.push_back(
      {q(Semantics::Supported, Comparison::Eq, Bound::Large, k), q(Semantics::Model, Comparison::Eq, Bound::Large, r.k_target)});
  return finish(std::move(r));
}

ReductionRecord completion_to_3n(const Program& p, int k) {
  require_k(k);
  ReductionRecord r{"completion-to-3n", p, completion_to_3normalized(clark_completion(p)), k, k,
                    same_models(Semantics::Supported, Semantics::Model, k), {}, {}};
  return finish(std::move(r));
}

std::vector<std::pair<Atom, Atom>> Digraph::edge_set() const {
  std::vector<std::pair<Atom, Atom>> out = edges;
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Digraph program_digraph(const Program& p) {
  const ClassTags tags = classify_program(p);
  if (!tags.has(ProgramClass::N1) && !tags.has(ProgramClass::N2))
    throw PreconditionError("program_digraph requires a program in N1 or N2");
  Digraph g{p.atoms(), {}};
  for (const Rule& r : p.rules())
    for (const Atom& y : normalize_rule(r).neg) g.edges.emplace_back(y, r.head);
  return g;
}

bool kernel_check(const Digraph& g, const Interpretation& s) {
  for (const Atom& a : s)
    if (!std::binary_search(g.vertices.begin(), g.vertices.end(), a))
      throw PreconditionError("kernel_check: '" + a.str() + "' is not a vertex");
  std::set<Atom> covered;
  for (const auto& [from, to] : g.edges) {
    if (!s.contains(from)) continue;
    if (s.contains(to)) return false;
    covered.insert(to);
  }
  return std::all_of(g.vertices.begin(), g.vertices.end(),
                     [&](const Atom& v) { return s.contains(v) || covered.count(v); });
}

ReductionRecord n1_to_n2_same_digraph(const Program& p, int k) {
  require_k(k);
  if (!classify_program(p).has(ProgramClass::N1)) throw PreconditionError("n1_to_n2_same_digraph requires an N1 program");
  const Digraph g = program_digraph(p);
  ReductionRecord r{"n1-to-n2-same-digraph", p, Program{}, k, k, {}, {}, {}};
  Minter mint(p.atoms(), r.atom_map);
  std::vector<Rule> rules;
  std::set<Atom> touched;
  std::set<std::pair<Atom, Atom>> seen;
  for (const auto& [y, x] : g.edges) {
    if (!seen.emplace(y, x).second) continue;
    rules.push_back(Rule{x, {}, {y}});
    touched.insert(x);
    touched.insert(y);
  }
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    const Atom& v = g.vertices[i];
    if (touched.count(v)) continue;
    rules.push_back(Rule{mint("pend.w." + idx(i), "pendant for isolated " + v.str()), {}, {v}});
  }
  r.output = Program(std::move(rules));
  for (Semantics s : {Semantics::Stable, Semantics::Supported})
    r.queries.push_back({q(s, Comparison::Le, Bound::Small, k), q(s, Comparison::Le, Bound::Large, k)});
  return finish(std::move(r));
}

}  // namespace lpk
