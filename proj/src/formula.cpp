#include "lpk/formula.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <set>

#include "lpk/error.hpp"

namespace lpk {

using Kind = FormulaNode::Kind;

bool operator==(const FormulaNode& a, const FormulaNode& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == Kind::Lit) return a.literal == b.literal;
  return a.children == b.children;
}

namespace {

FormulaNode merge_same_kind(FormulaNode node) {
  if (node.is_lit()) return node;
  std::vector<FormulaNode> merged;
  merged.reserve(node.children.size());
  for (FormulaNode& child : node.children) {
    FormulaNode c = merge_same_kind(std::move(child));
    if (c.kind == node.kind) {
      for (FormulaNode& g : c.children) merged.push_back(std::move(g));
    } else {
      merged.push_back(std::move(c));
    }
  }
  node.children = std::move(merged);
  return node;
}

FormulaNode collapse(const FormulaNode& node) {
  if (node.is_lit()) return node;
  FormulaNode out{node.kind, node.literal, {}};
  for (const FormulaNode& child : node.children) {
    FormulaNode c = collapse(child);
    if (c.kind == node.kind) {
      for (FormulaNode& g : c.children) out.children.push_back(std::move(g));
    } else {
      out.children.push_back(std::move(c));
    }
  }
  if (out.children.size() == 1) return std::move(out.children.front());
  return out;
}

void collect_atoms(const FormulaNode& node, std::set<Atom>& out) {
  if (node.is_lit()) {
    out.insert(node.literal.atom);
    return;
  }
  for (const FormulaNode& c : node.children) collect_atoms(c, out);
}

bool eval(const FormulaNode& node, const Interpretation& m) {
  switch (node.kind) {
    case Kind::Lit: return m.contains(node.literal.atom) == node.literal.positive;
    case Kind::And:
      return std::all_of(node.children.begin(), node.children.end(),
                         [&](const FormulaNode& c) { return eval(c, m); });
    case Kind::Or:
      return std::any_of(node.children.begin(), node.children.end(),
                         [&](const FormulaNode& c) { return eval(c, m); });
  }
  return false;
}

int depth(const FormulaNode& node) {
  if (node.is_lit()) return 0;
  int d = 0;
  for (const FormulaNode& c : node.children) d = std::max(d, depth(c));
  return d + 1;
}

std::size_t widest_or(const FormulaNode& node) {
  if (node.is_lit()) return 0;
  std::size_t w = node.kind == Kind::Or ? node.children.size() : 0;
  for (const FormulaNode& c : node.children) w = std::max(w, widest_or(c));
  return w;
}

std::optional<std::vector<Clause>> try_clauses(const FormulaNode& root) {
  auto clause_of = [](const FormulaNode& n) -> std::optional<Clause> {
    if (n.is_lit()) return Clause{n.literal};
    if (n.kind != Kind::Or) return std::nullopt;
    Clause c;
    for (const FormulaNode& l : n.children) {
      if (!l.is_lit()) return std::nullopt;
      c.push_back(l.literal);
    }
    return c;
  };
  std::vector<Clause> out;
  if (root.kind != Kind::And) {
    auto c = clause_of(root);
    if (!c) return std::nullopt;
    out.push_back(std::move(*c));
    return out;
  }
  for (const FormulaNode& child : root.children) {
    auto c = clause_of(child);
    if (!c) return std::nullopt;
    out.push_back(std::move(*c));
  }
  return out;
}

std::optional<std::vector<Block>> try_blocks(const FormulaNode& root) {
  auto conj_of = [](const FormulaNode& n) -> std::optional<std::vector<Literal>> {
    if (n.is_lit()) return std::vector<Literal>{n.literal};
    if (n.kind != Kind::And) return std::nullopt;
    std::vector<Literal> c;
    for (const FormulaNode& l : n.children) {
      if (!l.is_lit()) return std::nullopt;
      c.push_back(l.literal);
    }
    return c;
  };
  auto block_of = [&](const FormulaNode& n) -> std::optional<Block> {
    if (n.kind != Kind::Or) {
      auto c = conj_of(n);
      if (!c) return std::nullopt;
      return Block{std::move(*c)};
    }
    Block b;
    for (const FormulaNode& d : n.children) {
      auto c = conj_of(d);
      if (!c) return std::nullopt;
      b.push_back(std::move(*c));
    }
    return b;
  };
  std::vector<Block> out;
  if (root.kind != Kind::And) {
    auto b = block_of(root);
    if (!b) return std::nullopt;
    out.push_back(std::move(*b));
    return out;
  }
  for (const FormulaNode& child : root.children) {
    // A literal directly under the root is a one-conjunct block.
    auto b = child.is_lit() ? std::optional<Block>(Block{{child.literal}}) : block_of(child);
    if (!b) return std::nullopt;
    out.push_back(std::move(*b));
  }
  return out;
}

}  // namespace

NormalizedFormula::NormalizedFormula(FormulaNode root) : root_(merge_same_kind(std::move(root))) {
  std::set<Atom> atoms;
  collect_atoms(root_, atoms);
  atoms_.assign(atoms.begin(), atoms.end());
}

NormalizedFormula make_cnf(const std::vector<Clause>& clauses) {
  std::vector<FormulaNode> cs;
  cs.reserve(clauses.size());
  for (const Clause& c : clauses) {
    std::vector<FormulaNode> lits;
    for (const Literal& l : c) lits.push_back(FormulaNode::lit(l));
    cs.push_back(FormulaNode::disj(std::move(lits)));
  }
  return NormalizedFormula(FormulaNode::conj(std::move(cs)));
}

NormalizedFormula make_3n(const std::vector<Block>& blocks) {
  std::vector<FormulaNode> bs;
  bs.reserve(blocks.size());
  for (const Block& b : blocks) {
    std::vector<FormulaNode> conjs;
    for (const auto& conj : b) {
      std::vector<FormulaNode> lits;
      for (const Literal& l : conj) lits.push_back(FormulaNode::lit(l));
      conjs.push_back(FormulaNode::conj(std::move(lits)));
    }
    bs.push_back(FormulaNode::disj(std::move(conjs)));
  }
  return NormalizedFormula(FormulaNode::conj(std::move(bs)));
}

std::vector<Atom> atoms_of(const NormalizedFormula& f) { return f.atoms(); }

bool evaluate(const NormalizedFormula& f, const Interpretation& m) {
  for (const Atom& a : m)
    if (!std::binary_search(f.atoms().begin(), f.atoms().end(), a))
      throw PreconditionError("interpretation atom '" + a.str() + "' is not in At(formula)");
  return eval(f.root(), m);
}

NormalizedFormula canonicalize(const NormalizedFormula& f) { return NormalizedFormula(collapse(f.root())); }

FormulaClass classify_formula(const NormalizedFormula& f) {
  const FormulaNode canon = collapse(f.root());
  FormulaClass cls;
  int levels = depth(canon);
  if (canon.kind == Kind::Or) ++levels;  // a bare disjunction sits under an implicit unary AND
  cls.t = std::max(levels, 1);

  std::function<void(const FormulaNode&)> scan = [&](const FormulaNode& n) {
    if (n.is_lit()) {
      if (n.literal.positive) cls.antimonotone = false;
      else cls.monotone = false;
      return;
    }
    for (const FormulaNode& c : n.children) scan(c);
  };
  scan(canon);

  if (cls.t <= 2) {
    const auto clauses = try_clauses(canon);
    for (const Clause& c : *clauses) cls.max_clause_width = std::max(cls.max_clause_width, c.size());
  } else {
    cls.max_clause_width = widest_or(canon);
  }
  return cls;
}

std::vector<Clause> as_clauses(const NormalizedFormula& f) {
  if (auto raw = try_clauses(f.root())) return *raw;
  if (auto canon = try_clauses(collapse(f.root()))) return *canon;
  throw PreconditionError("formula is not 2-normalized");
}

std::vector<Block> as_blocks(const NormalizedFormula& f) {
  if (auto raw = try_blocks(f.root())) return *raw;
  if (auto canon = try_blocks(collapse(f.root()))) return *canon;
  throw PreconditionError("formula is not 3-normalized");
}

Atom barred(const Atom& a) { return Atom::gadget(a.str() + "~"); }

DualizedFormula dualize(const NormalizedFormula& f, int k) {
  std::function<FormulaNode(const FormulaNode&)> flip = [&](const FormulaNode& n) {
    if (n.is_lit()) return FormulaNode::lit({barred(n.literal.atom), !n.literal.positive});
    FormulaNode out{n.kind, n.literal, {}};
    out.children.reserve(n.children.size());
    for (const FormulaNode& c : n.children) out.children.push_back(flip(c));
    return out;
  };
  DualizedFormula out{NormalizedFormula(flip(f.root())), static_cast<int>(f.atoms().size()) - k, {}};
  for (const Atom& a : f.atoms()) out.renaming.emplace_back(a, barred(a));
  return out;
}

NormalizedFormula completion_to_3normalized(const Completion& c) {
  std::vector<Block> blocks;
  for (const Equivalence& e : c.equivalences) {
    Block forward{{Literal{e.head, false}}};
    for (const auto& conj : e.disjuncts) forward.push_back(conj);
    blocks.push_back(std::move(forward));
    for (const auto& conj : e.disjuncts) {
      Block backward{{Literal{e.head, true}}};
      for (const Literal& l : conj) backward.push_back({Literal{l.atom, !l.positive}});
      blocks.push_back(std::move(backward));
    }
  }
  return make_3n(blocks);
}

}  // namespace lpk
