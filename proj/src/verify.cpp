#include "lpk/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>

#include <json.hpp>

#include "lpk/decide.hpp"
#include "lpk/io.hpp"

namespace lpk {

namespace {

using Build = std::function<ReductionRecord(const Instance&, int)>;

template <class F>
Build on_program(F f) {
  return [f](const Instance& x, int k) { return f(std::get<Program>(x), k); };
}
template <class F>
Build on_formula(F f) {
  return [f](const Instance& x, int k) { return f(std::get<NormalizedFormula>(x), k); };
}

RegistryEntry entry(std::string name, std::string cls, std::size_t atoms, Build build, std::string drop, int shift = 1) {
  RegistryEntry e;
  e.name = std::move(name);
  e.input_class = std::move(cls);
  e.max_atoms = atoms;
  e.build = std::move(build);
  e.drop_prefix = std::move(drop);
  e.k_shift = shift;
  if (e.input_class == "N1") e.max_rules = atoms;
  if (!is_program_class(e.input_class)) {
    e.min_rules = 1;
    e.max_rules = 6;
  }
  return e;
}

std::vector<RegistryEntry> make_registry() {
  std::vector<RegistryEntry> r;
  r.push_back(entry("qk-pad-small", "ALL", 8,
                    on_program([](const Program& p, int k) { return reduce_le_to_eq_via_qk(p, k, Bound::Small); }),
                    "__qk."));
  r.push_back(entry("qk-pad-large", "ALL", 8,
                    on_program([](const Program& p, int k) { return reduce_le_to_eq_via_qk(p, k, Bound::Large); }),
                    "__qk."));
  r.push_back(entry("neg-program-from-2nm", "2NM", 6, on_formula(mono_cnf_to_neg_program), ""));
  r.push_back(entry("program-to-cnf", "ALL", 8, on_program(program_to_cnf), ""));
  r.push_back(entry("eq-to-le-2nm", "2NM", 6,
                    on_formula([](const NormalizedFormula& f, int k) { return eq_le_swap_2nm(f, k, SwapDirection::EqToLe); }),
                    ""));
  r.push_back(entry("le-to-eq-2nm", "2NM", 6,
                    on_formula([](const NormalizedFormula& f, int k) { return eq_le_swap_2nm(f, k, SwapDirection::LeToEq); }),
                    ""));
  r.push_back(entry("dualize-2n", "2N", 6, on_formula(dualize_2n), ""));
  r.push_back(entry("pad-facts", "ALL", 8, on_program(pad_facts), "__pf."));
  r.push_back(entry("pad-choice-pairs", "ALL", 8, on_program(pad_choice_pairs), "__pc."));
  RegistryEntry cnf_large = entry("cnf-large-to-program", "2N", 6, on_formula(cnf_large_to_program), "");
  cnf_large.k_min = 1;
  r.push_back(cnf_large);
  r.push_back(entry("anti2n-to-horn-eq", "2NA", 6, on_formula(anti2n_to_horn_eq), "__clq."));
  r.push_back(entry("horn-to-2n3", "HORN", 5, on_program(horn_to_2n3), "__hw.u", -1));
  r.push_back(entry("mono2n-le-to-stable-neg", "2NM", 6, on_formula(mono2n_le_to_stable_neg), "__col.f", -1));
  RegistryEntry selector = entry("supported-eq-to-cnf", "ALL", 8, on_program(supported_eq_to_cnf), "__sel.");
  // Dropping a clause that picks, forbids or pairs selectors never changes an
  // even-size answer; drop the first clause tying a selector to one of its
  // body literals instead.
  selector.drop = [](Instance& x) {
    auto& f = std::get<NormalizedFormula>(x);
    FormulaNode root = f.root();
    auto is_link = [](const FormulaNode& c) {
      return c.children.size() == 2 && !c.children[0].literal.positive &&
             c.children[0].literal.atom.str().starts_with("__sel.u") &&
             !c.children[1].literal.atom.str().starts_with("__sel.u");
    };
    auto it = std::find_if(root.children.begin(), root.children.end(), is_link);
    if (it == root.children.end()) return;
    root.children.erase(it);
    f = NormalizedFormula(std::move(root));
  };
  r.push_back(selector);
  r.push_back(entry("anti2n-to-supported-horn", "2NA", 6, on_formula(anti2n_to_supported_horn), "__clq."));
  r.push_back(entry("mono2n-eq-to-large-horn", "2NM", 6, on_formula(mono2n_eq_to_large_horn), "__m2h."));
  r.push_back(entry("mono3n-large-to-supported-horn", "3NM", 6, on_formula(mono3n_large_to_supported_horn), "__blk.u"));
  r.push_back(entry("3n-large-to-stable", "3N", 6,
                    on_formula([](const NormalizedFormula& f, int k) { return threeN_large_to_stable(f, k); }),
                    "__tgt.u", -1));
  r.push_back(entry("supported-large-neg-to-cnf", "NEG", 5, on_program(supported_large_neg_to_cnf), "__nsc.u"));
  r.push_back(entry("completion-to-3n", "ALL", 8, on_program(completion_to_3n), ""));
  r.push_back(entry("n1-to-n2-same-digraph", "N1", 8, on_program(n1_to_n2_same_digraph), ""));
  return r;
}

bool mentions(const Rule& r, const std::string& prefix) {
  auto hit = [&](const Atom& a) { return a.str().starts_with(prefix); };
  return hit(r.head) || std::any_of(r.pos.begin(), r.pos.end(), hit) || std::any_of(r.neg.begin(), r.neg.end(), hit);
}

bool mentions(const FormulaNode& n, const std::string& prefix) {
  if (n.is_lit()) return n.literal.atom.str().starts_with(prefix);
  return std::any_of(n.children.begin(), n.children.end(), [&](const FormulaNode& c) { return mentions(c, prefix); });
}

void drop_first(Instance& x, const std::string& prefix) {
  if (auto* p = std::get_if<Program>(&x)) {
    std::vector<Rule> rules = p->rules();
    auto it = std::find_if(rules.begin(), rules.end(), [&](const Rule& r) { return mentions(r, prefix); });
    if (it == rules.end()) return;
    rules.erase(it);
    *p = Program(std::move(rules));
    return;
  }
  auto& f = std::get<NormalizedFormula>(x);
  FormulaNode root = f.root();
  if (root.kind != FormulaNode::Kind::And) {
    if (mentions(root, prefix)) f = NormalizedFormula{};
    return;
  }
  auto it = std::find_if(root.children.begin(), root.children.end(),
                         [&](const FormulaNode& c) { return mentions(c, prefix); });
  if (it == root.children.end()) return;
  root.children.erase(it);
  f = NormalizedFormula(std::move(root));
}

struct TrialOutcome {
  bool agree = true;
  std::optional<Counterexample> counterexample;
};

TrialOutcome run_trial(const RegistryEntry& e, const VerifyConfig& cfg, const Oracle& oracle, std::uint64_t seed,
                       std::size_t trial) {
  Rng rng(mix_seed(seed, trial));
  GeneratorConfig g;
  g.cls = e.input_class;
  g.atoms = rng.between(1, cfg.max_atoms ? cfg.max_atoms : e.max_atoms);
  const std::size_t max_rules = cfg.max_rules ? cfg.max_rules : e.max_rules;
  g.rules = g.cls == "N1" ? g.atoms : rng.between(std::min(e.min_rules, max_rules), max_rules);
  g.max_width = e.max_width;
  g.seed = rng.below(~std::uint64_t{0});
  const int k_lo = cfg.k_max >= 0 ? cfg.k_min : e.k_min;
  const int k_hi = cfg.k_max >= 0 ? cfg.k_max : e.k_max;
  const int k = static_cast<int>(rng.between(static_cast<std::size_t>(k_lo), static_cast<std::size_t>(k_hi)));

  const Instance input = generate(g);
  ReductionRecord rec = e.build(input, k);
  mutate(rec, e, cfg.mutation);

  TrialOutcome out;
  for (const QueryPair& qp : rec.queries) {
    bool s = false, t = false;
    try {
      s = oracle(input, qp.source);
      t = oracle(rec.output, qp.target);
    } catch (const CapacityError& err) {
      throw TrialCapacityError(err, trial, serialize_instance(input));
    }
    if (s != t) {
      out.agree = false;
      out.counterexample = Counterexample{trial, k, serialize_instance(input), serialize_instance(rec.output), qp, s, t};
      break;
    }
  }
  return out;
}

nlohmann::json query_json(const Query& q) {
  return {{"semantics", to_string(q.semantics)}, {"cmp", to_string(q.comparison)},
          {"bound", to_string(q.bound)}, {"k", q.k}};
}

}  // namespace

bool library_oracle(const Instance& x, const Query& q) {
  DecideOptions opts;
  opts.use_shortcuts = false;
  if (const auto* p = std::get_if<Program>(&x)) {
    opts.atom_cap = 62;  // enumerates only the admissible sizes
    return decide(q, *p, opts).yes;
  }
  opts.atom_cap = 20;  // past this, two-level formulas go to the clause search
  return ws_t(std::get<NormalizedFormula>(x), q.k, q.comparison, q.bound, opts).yes;
}

const std::vector<RegistryEntry>& registry() {
  static const std::vector<RegistryEntry> r = make_registry();
  return r;
}

const RegistryEntry& registry_entry(const std::string& name) {
  for (const RegistryEntry& e : registry())
    if (e.name == name) return e;
  throw PreconditionError("unknown reduction '" + name + "'");
}

void mutate(ReductionRecord& r, const RegistryEntry& e, Mutation m) {
  switch (m) {
    case Mutation::None: return;
    case Mutation::OffByOneK:
      for (QueryPair& qp : r.queries) {
        qp.target.k += e.k_shift;
        if (qp.target.k < 0) qp.target.k += 2 * std::abs(e.k_shift);
      }
      r.k_target += e.k_shift;
      return;
    case Mutation::DropGadget:
      if (e.drop) e.drop(r.output);
      else drop_first(r.output, e.drop_prefix);
      return;
  }
}

VerificationReport verify_reduction(const std::string& name, std::size_t trials, const VerifyConfig& cfg,
                                    std::uint64_t seed) {
  const RegistryEntry& e = registry_entry(name);
  const Oracle oracle = cfg.oracle ? cfg.oracle : Oracle(library_oracle);
  const auto start = std::chrono::steady_clock::now();

  std::vector<TrialOutcome> outcomes(trials);
  unsigned workers = cfg.workers ? cfg.workers : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(trials, 1)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t t; (t = next.fetch_add(1)) < trials;) {
      try {
        outcomes[t] = run_trial(e, cfg, oracle, seed, t);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = trials;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (std::thread& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  VerificationReport report;
  report.name = name;
  report.trials = trials;
  for (TrialOutcome& o : outcomes) {
    if (o.agree) ++report.agreements;
    else report.disagreements.push_back(std::move(*o.counterexample));
  }
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::string report_json(const VerificationReport& r) {
  nlohmann::json cases = nlohmann::json::array();
  for (const Counterexample& c : r.disagreements)
    cases.push_back({{"trial", c.trial},
                     {"k", c.k},
                     {"input", c.input},
                     {"output", c.output},
                     {"source_query", query_json(c.queries.source)},
                     {"target_query", query_json(c.queries.target)},
                     {"source_answer", c.source_answer},
                     {"target_answer", c.target_answer}});
  nlohmann::json j{{"name", r.name},
                   {"trials", r.trials},
                   {"agreements", r.agreements},
                   {"disagreements", cases},
                   {"wall_seconds", r.wall_seconds}};
  return j.dump();
}

}  // namespace lpk
