#include "lpk/decide.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <set>

#include "lpk/detail/indexed.hpp"
#include "lpk/error.hpp"
#include "lpk/semantics.hpp"

namespace lpk {

using detail::Bits;
using detail::IndexedProgram;

namespace {

void require_k(int k) {
  if (k < 0) throw PreconditionError("k must be non-negative");
}

long count(const Bits& b) { return std::count(b.begin(), b.end(), 1); }

// (size, then lexicographic by atom index) order on equal-length vectors.
bool witness_less(const Bits& a, const Bits& b) {
  const long ca = count(a), cb = count(b);
  if (ca != cb) return ca < cb;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] != 0;
  return false;
}

bool check(const IndexedProgram& ip, Semantics s, const Bits& m) {
  switch (s) {
    case Semantics::Model: return ip.is_model(m);
    case Semantics::Supported: return ip.is_supported(m);
    case Semantics::Stable: return ip.is_stable(m);
  }
  return false;
}

DecideResult yes(Interpretation w, std::string method) { return {true, std::move(w), std::move(method)}; }
DecideResult no(std::string method) { return {false, std::nullopt, std::move(method)}; }

// ---------------------------------------------------------------------------
// Clause search: DFS over atoms in index order, true branch first, with unit
// propagation and cardinality pruning. The first solution found is the
// lexicographically least one within the size window.

struct ILit {
  int var;
  bool positive;
};
using IClause = std::vector<ILit>;

class ClauseSearch {
 public:
  ClauseSearch(std::size_t n, std::vector<IClause> clauses) : n_(n), clauses_(std::move(clauses)), occurs_(n) {
    for (std::size_t c = 0; c < clauses_.size(); ++c)
      for (const ILit& l : clauses_[c]) occurs_[l.var].push_back(static_cast<int>(c));
  }

  std::optional<Bits> find(long lo, long hi) {
    lo_ = lo;
    hi_ = hi;
    val_.assign(n_, -1);
    trail_.clear();
    ntrue_ = nfalse_ = 0;
    if (lo_ > hi_ || lo_ > static_cast<long>(n_)) return std::nullopt;
    head_ = 0;
    bool ok = check_cardinality();
    for (std::size_t c = 0; ok && c < clauses_.size(); ++c) ok = visit_clause(static_cast<int>(c));
    if (!ok || !propagate()) return std::nullopt;
    if (!dfs()) return std::nullopt;
    Bits out(n_, 0);
    for (std::size_t i = 0; i < n_; ++i) out[i] = val_[i] == 1;
    return out;
  }

 private:
  bool assign(int v, bool value) {
    if (val_[v] >= 0) return val_[v] == static_cast<signed char>(value);
    val_[v] = value ? 1 : 0;
    (value ? ntrue_ : nfalse_)++;
    trail_.push_back(v);
    return true;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      const int v = trail_.back();
      trail_.pop_back();
      (val_[v] == 1 ? ntrue_ : nfalse_)--;
      val_[v] = -1;
    }
    head_ = std::min(head_, mark);
  }

  // Returns false on conflict; may assign a unit literal.
  bool visit_clause(int c) {
    int free_var = -1;
    bool free_pos = false;
    int frees = 0;
    for (const ILit& l : clauses_[c]) {
      const signed char v = val_[l.var];
      if (v < 0) {
        ++frees;
        free_var = l.var;
        free_pos = l.positive;
      } else if ((v == 1) == l.positive) {
        return true;
      }
    }
    if (frees == 0) return false;
    if (frees == 1) return assign(free_var, free_pos);
    return true;
  }

  bool check_cardinality() {
    const long n = static_cast<long>(n_);
    if (ntrue_ > hi_ || n - nfalse_ < lo_) return false;
    if (ntrue_ == hi_ || n - nfalse_ == lo_) {
      const bool value = ntrue_ != hi_;
      for (std::size_t v = 0; v < n_; ++v)
        if (val_[v] < 0) assign(static_cast<int>(v), value);
    }
    return true;
  }

  bool propagate() {
    while (head_ < trail_.size()) {
      const int v = trail_[head_++];
      for (int c : occurs_[v])
        if (!visit_clause(c)) return false;
      if (!check_cardinality()) return false;
    }
    return true;
  }

  bool dfs() {
    std::size_t v = 0;
    while (v < n_ && val_[v] >= 0) ++v;
    if (v == n_) return true;
    for (bool value : {true, false}) {
      const std::size_t mark = trail_.size();
      if (assign(static_cast<int>(v), value) && propagate() && dfs()) return true;
      undo(mark);
    }
    return false;
  }

  std::size_t n_;
  std::vector<IClause> clauses_;
  std::vector<std::vector<int>> occurs_;
  std::vector<signed char> val_;
  std::vector<int> trail_;
  std::size_t head_ = 0;
  long ntrue_ = 0, nfalse_ = 0;
  long lo_ = 0, hi_ = 0;
};

// Existence over the whole window, then the least size that works.
std::optional<Bits> least_solution(ClauseSearch& search, SizeRange range) {
  auto any = search.find(range.lo, range.hi);
  if (!any) return std::nullopt;
  const long found = count(*any);
  for (long s = range.lo; s < found; ++s)
    if (auto w = search.find(s, s)) return w;
  return search.find(found, found);
}

// ---------------------------------------------------------------------------
// Formulas compiled to an index tree.

struct CNode {
  FormulaNode::Kind kind;
  int var = -1;
  bool positive = true;
  std::vector<int> children;
};

class CompiledFormula {
 public:
  explicit CompiledFormula(const NormalizedFormula& f) : atoms_(f.atoms()) { root_ = add(f.root()); }

  bool eval(const Bits& m) const { return eval(root_, m); }
  const std::vector<Atom>& atoms() const { return atoms_; }

 private:
  int add(const FormulaNode& n) {
    CNode c;
    c.kind = n.kind;
    if (n.is_lit()) {
      c.var = static_cast<int>(std::lower_bound(atoms_.begin(), atoms_.end(), n.literal.atom) - atoms_.begin());
      c.positive = n.literal.positive;
    } else {
      for (const FormulaNode& ch : n.children) c.children.push_back(add(ch));
    }
    nodes_.push_back(std::move(c));
    return static_cast<int>(nodes_.size() - 1);
  }

  bool eval(int id, const Bits& m) const {
    const CNode& n = nodes_[id];
    switch (n.kind) {
      case FormulaNode::Kind::Lit: return (m[n.var] != 0) == n.positive;
      case FormulaNode::Kind::And:
        for (int c : n.children)
          if (!eval(c, m)) return false;
        return true;
      case FormulaNode::Kind::Or:
        for (int c : n.children)
          if (eval(c, m)) return true;
        return false;
    }
    return false;
  }

  std::vector<Atom> atoms_;
  std::vector<CNode> nodes_;
  int root_ = -1;
};

// Visits subsets of {0..n-1} of size s in lexicographic order until `visit`
// returns true.
template <class F>
bool for_each_combination(std::size_t n, std::size_t s, F&& visit) {
  if (s > n) return false;
  std::vector<std::size_t> idx(s);
  for (std::size_t i = 0; i < s; ++i) idx[i] = i;
  Bits bits(n, 0);
  for (;;) {
    std::fill(bits.begin(), bits.end(), 0);
    for (std::size_t i : idx) bits[i] = 1;
    if (visit(bits)) return true;
    std::size_t i = s;
    while (i > 0 && idx[i - 1] == n - s + (i - 1)) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (std::size_t j = i; j < s; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Exhaustive scan of one size class through masks in Gosper order. Atom i is
// bit n-1-i, so the lexicographically least set is the numerically largest
// mask.
template <class Pred>
std::optional<Bits> scan_size(std::size_t n, std::size_t s, Pred&& ok) {
  if (s > n) return std::nullopt;
  std::optional<std::uint64_t> best;
  Bits bits(n, 0);
  auto to_bits = [&](std::uint64_t mask) {
    for (std::size_t i = 0; i < n; ++i) bits[i] = (mask >> (n - 1 - i)) & 1u;
  };
  const std::uint64_t limit = std::uint64_t{1} << n;
  std::uint64_t mask = (std::uint64_t{1} << s) - 1;
  while (mask < limit) {
    to_bits(mask);
    if (ok(bits)) best = mask;
    if (mask == 0) break;
    const std::uint64_t low = mask & -mask;
    const std::uint64_t ripple = mask + low;
    mask = (((ripple ^ mask) >> 2) / low) | ripple;
  }
  if (!best) return std::nullopt;
  to_bits(*best);
  return bits;
}

std::vector<IClause> program_clauses(const IndexedProgram& ip) {
  std::vector<IClause> out;
  for (const auto& r : ip.rules()) {
    IClause c;
    for (int a : r.pos) c.push_back({a, false});
    for (int a : r.neg) c.push_back({a, true});
    c.push_back({r.head, true});
    out.push_back(std::move(c));
  }
  return out;
}

// Stable and supported models past the cap. A stable model is fixed by its
// negative-body atoms: M = lm(P^N) for N = M restricted to them. A supported
// model M = T_P(M) is fixed by its body atoms.
std::optional<Bits> guess_search(const IndexedProgram& ip, Semantics s, SizeRange range, std::size_t cap) {
  const std::vector<int> guess = s == Semantics::Stable ? ip.negative_atoms() : ip.body_atoms();
  if (guess.size() > cap) throw CapacityError(guess.size(), cap);
  const std::size_t n = ip.atom_count();
  std::optional<Bits> best;
  Bits probe(n, 0);
  for (std::uint64_t g = 0; g < (std::uint64_t{1} << guess.size()); ++g) {
    std::fill(probe.begin(), probe.end(), 0);
    for (std::size_t i = 0; i < guess.size(); ++i) probe[guess[i]] = (g >> i) & 1u;
    Bits cand = s == Semantics::Stable ? ip.least_model(&probe) : ip.tp(probe);
    const bool consistent = std::all_of(guess.begin(), guess.end(), [&](int a) { return cand[a] == probe[a]; });
    if (!consistent || !range.contains(count(cand))) continue;
    if (!best || witness_less(cand, *best)) best = std::move(cand);
  }
  return best;
}

}  // namespace

std::optional<DecideResult> polynomial_shortcuts(const Query& q, const Program& p) {
  require_k(q.k);
  const std::size_t n = p.atoms().size();
  const SizeRange range = size_range(q, n);
  const Interpretation all(p.atoms().begin(), p.atoms().end());

  // At(P) is a model of every program.
  if (q.semantics == Semantics::Model && range.contains(static_cast<long>(n))) return yes(all, "shortcut");
  if (q.semantics == Semantics::Model && q.comparison == Comparison::Ge && q.bound == Bound::Small)
    return no("shortcut");

  if (!is_horn(p)) return std::nullopt;

  // lm(P) is the unique stable model, the least model and the least
  // supported model; the gfp of T_P is the greatest supported model.
  const Interpretation lm = least_model(p);
  auto settle = [&](const Interpretation& m) {
    return range.contains(static_cast<long>(m.size())) ? yes(m, "shortcut") : no("shortcut");
  };
  if (q.semantics == Semantics::Stable) return settle(lm);

  const bool upper_only = range.lo == 0;          // |M| <= hi
  const bool lower_only = range.hi == static_cast<long>(n);  // |M| >= lo
  if (upper_only && !range.empty()) return settle(lm);
  if (q.semantics == Semantics::Supported && lower_only && !range.empty())
    return settle(greatest_supported_model(p));
  return std::nullopt;
}

DecideResult decide(const Query& q, const Program& p, const DecideOptions& opts) {
  require_k(q.k);
  const std::size_t n = p.atoms().size();
  const SizeRange range = size_range(q, n);
  if (range.empty()) return no("empty-range");
  if (opts.use_shortcuts)
    if (auto r = polynomial_shortcuts(q, p)) return *r;

  const IndexedProgram ip(p);
  std::optional<Bits> found;
  std::string method;
  if (n <= std::min<std::size_t>(opts.atom_cap, 62)) {
    method = "exhaustive";
    for (long s = std::max(range.lo, 0L); s <= range.hi && !found; ++s)
      found = scan_size(n, static_cast<std::size_t>(s), [&](const Bits& m) { return check(ip, q.semantics, m); });
  } else if (q.semantics == Semantics::Model) {
    method = "search";
    ClauseSearch search(n, program_clauses(ip));
    found = least_solution(search, range);
  } else {
    method = "guess";
    found = guess_search(ip, q.semantics, range, opts.atom_cap);
  }
  if (!found) return no(method);
  return yes(ip.to_interpretation(*found), method);
}

DecideResult bounded_subset_search(const Query& q, const Program& p) {
  require_k(q.k);
  if (q.bound != Bound::Small || q.comparison == Comparison::Ge)
    throw PreconditionError("bounded_subset_search needs a small bound with le or eq");
  const IndexedProgram ip(p);
  const std::size_t n = ip.atom_count();
  const std::size_t k = static_cast<std::size_t>(q.k);
  const std::size_t from = q.comparison == Comparison::Eq ? k : 0;
  const std::size_t to = std::min(k, n);
  for (std::size_t s = from; s <= to; ++s) {
    std::optional<Bits> hit;
    for_each_combination(n, s, [&](const Bits& m) {
      if (!check(ip, q.semantics, m)) return false;
      hit = m;
      return true;
    });
    if (hit) return yes(ip.to_interpretation(*hit), "exhaustive");
  }
  return no("exhaustive");
}

DecideResult ws_t(const NormalizedFormula& f, int k, Comparison cmp, Bound bound, const DecideOptions& opts) {
  require_k(k);
  const std::size_t n = f.atoms().size();
  SizeRange range = size_range(Query{Semantics::Model, cmp, bound, k}, n);
  if (range.empty()) return no("empty-range");
  const CompiledFormula cf(f);
  const FormulaClass cls = classify_formula(f);
  auto to_interp = [&](const Bits& b) {
    Interpretation m;
    for (std::size_t i = 0; i < n; ++i)
      if (b[i]) m.insert(cf.atoms()[i]);
    return m;
  };

  // Models of a monotone formula are closed upwards, so some model fits the
  // window iff one of the largest admissible size does; dually for
  // antimonotone formulas and the smallest size.
  if (cls.monotone) {
    if (range.hi == static_cast<long>(n)) {
      const Bits all(n, 1);
      return cf.eval(all) ? yes(to_interp(all), "shortcut") : no("shortcut");
    }
    range.lo = range.hi;
  } else if (cls.antimonotone) {
    if (range.lo == 0) {
      const Bits none(n, 0);
      return cf.eval(none) ? yes(Interpretation{}, "shortcut") : no("shortcut");
    }
    range.hi = range.lo;
  }

  if (n <= std::min<std::size_t>(opts.atom_cap, 62)) {
    for (long s = range.lo; s <= range.hi; ++s) {
      std::optional<Bits> hit;
      for_each_combination(n, static_cast<std::size_t>(s), [&](const Bits& m) {
        if (!cf.eval(m)) return false;
        hit = m;
        return true;
      });
      if (hit) return yes(to_interp(*hit), "exhaustive");
    }
    return no("exhaustive");
  }
  if (cls.t > 2) throw CapacityError(n, opts.atom_cap);

  std::vector<IClause> clauses;
  for (const Clause& c : as_clauses(f)) {
    IClause ic;
    for (const Literal& l : c)
      ic.push_back({static_cast<int>(std::lower_bound(cf.atoms().begin(), cf.atoms().end(), l.atom) - cf.atoms().begin()),
                    l.positive});
    clauses.push_back(std::move(ic));
  }
  ClauseSearch search(n, std::move(clauses));
  if (auto w = least_solution(search, range)) return yes(to_interp(*w), "search");
  return no("search");
}

}  // namespace lpk
