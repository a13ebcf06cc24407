// Acceptance checks. One PASS/FAIL line per criterion; the process fails if
// any criterion fails other than the ones listed in kKnownUnreachable.
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "lpk/decide.hpp"
#include "lpk/generate.hpp"
#include "lpk/io.hpp"
#include "lpk/reductions.hpp"
#include "lpk/semantics.hpp"
#include "lpk/verify.hpp"
#include "oracle.hpp"

using namespace lpk;

namespace {

constexpr std::uint64_t kSeed = 20240601;
constexpr std::size_t kTrials = 200;
constexpr double kSoundnessBudgetSeconds = 300.0;

// Drop-gadget mutations that cannot change any answer. Dropping either rule
// of a choice pair y <- not z, z <- not y leaves the other rule, which still
// makes exactly one of the two atoms false, so every size query keeps its
// answer.
const std::set<std::string> kKnownUnreachable = {"pad-choice-pairs/drop"};

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> known;  // failures listed in kKnownUnreachable
};

std::vector<std::string> g_failures;

void report(int id, const std::string& title, const Outcome& o) {
  const bool only_known = !o.pass && !o.known.empty() && o.detail.empty();
  std::printf("%s  criterion %d: %s", o.pass ? "PASS" : "FAIL", id, title.c_str());
  if (!o.detail.empty()) std::printf("  [%s]", o.detail.c_str());
  for (const auto& k : o.known) std::printf("  [known unreachable: %s]", k.c_str());
  std::printf("\n");
  std::fflush(stdout);
  if (!o.pass && !only_known) g_failures.push_back(title);
}

void note(Outcome& o, const std::string& what) {
  o.pass = false;
  if (o.detail.size() < 400) o.detail += (o.detail.empty() ? "" : "; ") + what;
}

Program random_program(Rng& rng, const std::string& cls, std::size_t max_atoms, std::size_t max_rules) {
  GeneratorConfig g;
  g.cls = cls;
  g.atoms = rng.between(1, max_atoms);
  g.rules = cls == "N1" ? g.atoms : rng.between(0, max_rules);
  g.max_width = 3;
  g.seed = rng.below(~0ULL);
  return std::get<Program>(generate(g));
}

Outcome soundness() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  std::size_t total = 0;
  for (const RegistryEntry& e : registry()) {
    VerifyConfig cfg;
    cfg.oracle = oracle::answer;
    const VerificationReport r = verify_reduction(e.name, kTrials, cfg, kSeed);
    total += r.trials;
    if (r.agreements != kTrials) note(o, e.name + " " + std::to_string(r.disagreement_count()) + " disagreements");
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (secs >= kSoundnessBudgetSeconds) note(o, "took " + std::to_string(secs) + " s");
  if (o.pass)
    o.detail = std::to_string(registry().size()) + " reductions, " + std::to_string(total) + " trials, " +
               std::to_string(static_cast<int>(secs)) + " s";
  return o;
}

Outcome qk_structure() {
  Outcome o;
  for (int k = 0; k <= 5; ++k) {
    const Program q = build_qk(k);
    const oracle::Masks m(q);
    if (m.atoms.size() != static_cast<std::size_t>((k + 1) * (k + 2) / 2)) note(o, "k=" + std::to_string(k) + " atom count");
    std::vector<std::uint32_t> stable, supported;
    for (std::uint32_t s = 0; s <= m.full(); ++s) {
      if (m.stable(s)) stable.push_back(s);
      if (m.supported(s)) supported.push_back(s);
    }
    if (stable != supported) note(o, "k=" + std::to_string(k) + " stable != supported");
    if (stable.size() != static_cast<std::size_t>(k + 1)) note(o, "k=" + std::to_string(k) + " model count");
    std::set<oracle::AtomSet> expected;
    for (int i = 1; i <= k + 1; ++i) {
      oracle::AtomSet row;
      for (int j = 1; j <= i; ++j) row.insert(atom("__qk.y." + std::to_string(i) + "." + std::to_string(j)));
      expected.insert(row);
    }
    std::set<oracle::AtomSet> got;
    for (std::uint32_t s : stable) got.insert(m.to_set(s));
    if (got != expected) note(o, "k=" + std::to_string(k) + " model shapes");
  }
  return o;
}

Outcome implication_chain() {
  Outcome o;
  Rng rng(mix_seed(kSeed, 3));
  std::size_t tight_or_neg = 0, interpretations = 0;
  auto check = [&](const Program& p) {
    const oracle::Masks m(p);
    const bool coincide = is_negative(p) || !has_positive_cycles(p);
    if (coincide != (is_negative(p) || !oracle::has_positive_cycle(p))) note(o, "positive cycle detection differs");
    tight_or_neg += coincide;
    for (std::uint32_t s = 0; s <= m.full(); ++s) {
      ++interpretations;
      const Interpretation i = Interpretation(m.to_set(s));
      const bool st = is_stable(p, i), su = is_supported(p, i), mo = is_model(p, i);
      if (st != m.stable(s) || su != m.supported(s) || mo != m.model(s)) note(o, "library check differs from oracle");
      if ((st && !su) || (su && !mo)) note(o, "implication violated:\n" + serialize_program(p));
      if (coincide && st != su) note(o, "stable != supported on tight program:\n" + serialize_program(p));
    }
  };
  for (int t = 0; t < 1000; ++t) check(random_program(rng, "ALL", 6, 10));
  for (int t = 0; t < 1000; ++t) check(random_program(rng, "NEG", 6, 10));
  if (o.pass)
    o.detail = "2000 programs, " + std::to_string(interpretations) + " interpretations, " +
               std::to_string(tight_or_neg) + " tight or negative";
  return o;
}

Outcome horn_algorithms() {
  Outcome o;
  Rng rng(mix_seed(kSeed, 4));
  for (int t = 0; t < 1000; ++t) {
    const Program p = random_program(rng, "HORN", 8, 10);
    const oracle::Masks m(p);
    const std::uint32_t lm = m.to_mask(least_model(p).members());
    const std::uint32_t gsm = m.to_mask(greatest_supported_model(p).members());
    if (!m.model(lm)) note(o, "least_model is not a model");
    if (!m.supported(gsm)) note(o, "greatest_supported_model is not supported");
    for (std::uint32_t s = 0; s <= m.full(); ++s) {
      if (m.model(s) && (lm & ~s)) note(o, "least_model not below a model");
      if (m.stable(s) != (s == lm)) note(o, "stable models are not exactly {lm}");
      if (m.supported(s) && (s & ~gsm)) note(o, "supported model above greatest_supported_model");
    }
  }
  if (o.pass) o.detail = "1000 programs";
  return o;
}

Outcome parameter_mappings() {
  Outcome o;
  auto expect = [&](bool ok, const std::string& what) {
    if (!ok) note(o, what);
  };
  const Program p = parse_program("a :- not b. b :- not a. c :- a.");
  for (int k = 0; k <= 5; ++k) {
    expect(reduce_le_to_eq_via_qk(p, k, Bound::Small).k_target == k + 1, "qk small");
    expect(reduce_le_to_eq_via_qk(p, k, Bound::Large).k_target == k * (k + 3) / 2, "qk large");
  }
  const int spot[] = {1, 5, 14};
  Rng rng(mix_seed(kSeed, 5));
  for (int k = 0; k <= 2; ++k) {
    const Program horn = random_program(rng, "HORN", 5, 6);
    expect(horn_to_2n3(horn, k).k_target == spot[k], "horn_to_2n3 spot value");
    expect(horn_to_2n3(horn, k).k_target == (k + 1) * (1 << k) + k, "horn_to_2n3 formula");
  }
  for (int t = 0; t < 200; ++t) {
    const int k = static_cast<int>(rng.between(0, 2));
    const Program any = random_program(rng, "ALL", 8, 8);
    expect(supported_eq_to_cnf(any, k).k_target == 2 * k, "supported-eq-to-cnf k'");

    GeneratorConfig g{"3NM", rng.between(1, 6), rng.between(1, 6), 3, rng.below(~0ULL)};
    const auto mono = std::get<NormalizedFormula>(generate(g));
    const std::size_t n = mono.atoms().size(), m = as_blocks(mono).size();
    expect(atoms_of(mono3n_large_to_supported_horn(mono, k).output).size() == n + m + k + 1, "mono3n-large-to-supported-horn atom count");

    g.cls = "3N";
    g.seed = rng.below(~0ULL);
    const auto f = std::get<NormalizedFormula>(generate(g));
    const std::size_t n3 = f.atoms().size(), m3 = as_blocks(f).size();
    const std::size_t uk = static_cast<std::size_t>(k);
    expect(atoms_of(threeN_large_to_stable(f, k, false).output).size() == n3 * uk + n3 + m3 + 2 * uk + 1,
           "3n-large-to-stable atom count");
    expect(atoms_of(threeN_large_to_stable(f, k).output).size() == (n3 + 1) * uk + (n3 + 1) + m3 + 2 * uk + 1,
           "3n-large-to-stable padded atom count");

    // The count assumes one u atom per rule, so keep one rule per body set.
    const Program neg = random_program(rng, "NEG", 5, 6);
    std::vector<Rule> distinct;
    std::set<std::vector<Atom>> bodies;
    for (const Rule& r : neg.rules())
      if (bodies.insert(normalize_rule(r).neg).second) distinct.push_back(r);
    const Program dp(distinct);
    const std::size_t n12 = dp.atoms().size(), two_k = std::size_t{1} << k;
    expect(atoms_of(supported_large_neg_to_cnf(dp, k).output).size() == n12 * (two_k + 1) + distinct.size() + two_k,
           "supported-large-neg-to-cnf atom count");
  }
  return o;
}

Outcome kernels() {
  Outcome o;
  std::size_t programs = 0;
  auto check_n1 = [&](const Program& p) {
    ++programs;
    const Digraph g = program_digraph(p);
    const oracle::Masks m(p);
    for (std::uint32_t s = 0; s <= m.full(); ++s) {
      const oracle::AtomSet set = m.to_set(s);
      const bool st = m.stable(s);
      if (st != kernel_check(g, Interpretation(set)) || st != oracle::is_kernel(g.vertices, g.edges, set))
        note(o, "N1 correspondence:\n" + serialize_program(p));
    }
  };
  auto check_n2 = [&](const Program& p) {
    ++programs;
    const Digraph g = program_digraph(p);
    const oracle::Masks m(p);
    for (std::uint32_t s = 0; s <= m.full(); ++s) {
      const oracle::AtomSet rest = m.to_set(m.full() & ~s);
      const bool st = m.stable(s);
      if (st != kernel_check(g, Interpretation(rest)) || st != oracle::is_kernel(g.vertices, g.edges, rest))
        note(o, "N2 correspondence:\n" + serialize_program(p));
    }
  };

  for (std::size_t n = 1; n <= 4; ++n) {
    std::vector<Atom> at;
    for (std::size_t i = 1; i <= n; ++i) at.push_back(atom("x" + std::to_string(i)));
    // N1: one body subset per atom.
    const std::uint64_t per = std::uint64_t{1} << n;
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= per;
    for (std::uint64_t code = 0; code < total; ++code) {
      std::vector<Rule> rules;
      std::uint64_t c = code;
      for (std::size_t h = 0; h < n; ++h, c /= per) {
        Rule r{at[h], {}, {}};
        for (std::size_t b = 0; b < n; ++b)
          if ((c % per >> b) & 1u) r.neg.push_back(at[b]);
        rules.push_back(r);
      }
      check_n1(Program(rules));
    }
    // N2: any set of edges y -> x, each the rule x <- not y.
    const std::size_t e = n * n;
    for (std::uint64_t code = 1; code < (std::uint64_t{1} << e); ++code) {
      std::vector<Rule> rules;
      for (std::size_t i = 0; i < e; ++i)
        if ((code >> i) & 1u) rules.push_back(Rule{at[i / n], {}, {at[i % n]}});
      check_n2(Program(rules));
    }
  }
  Rng rng(mix_seed(kSeed, 6));
  for (int t = 0; t < 500; ++t) check_n1(random_program(rng, "N1", 7, 7));
  for (int t = 0; t < 500; ++t) check_n2(random_program(rng, "N2", 7, 10));

  for (int len = 1; len <= 9; len += 2) {
    std::vector<Rule> cycle;
    for (int i = 0; i < len; ++i)
      cycle.push_back(Rule{atom("c" + std::to_string(i)), {}, {atom("c" + std::to_string((i + 1) % len))}});
    const Program p(cycle);
    const oracle::Masks m(p);
    for (std::uint32_t s = 0; s <= m.full(); ++s)
      if (m.stable(s)) note(o, "odd cycle of length " + std::to_string(len) + " has a stable model");
    if (decide(Query{Semantics::Stable, Comparison::Ge, Bound::Small, 0}, p).yes) note(o, "decide finds odd-cycle model");
  }
  if (o.pass) o.detail = std::to_string(programs) + " programs";
  return o;
}

Outcome decider_crosscheck() {
  Outcome o;
  Rng rng(mix_seed(kSeed, 7));
  const char* classes[] = {"ALL", "HORN", "NEG", "N1", "N2"};
  std::size_t shortcut_hits = 0, bounded = 0, witnesses = 0, past_cap = 0;
  for (Semantics s : {Semantics::Model, Semantics::Supported, Semantics::Stable}) {
    for (int t = 0; t < 500; ++t) {
      const Program p = random_program(rng, classes[rng.below(5)], 8, 10);
      const Query q{s, static_cast<Comparison>(rng.below(3)), static_cast<Bound>(rng.below(2)),
                    static_cast<int>(rng.between(0, 5))};
      const bool truth = oracle::program_answer(p, q);
      const oracle::Window w = oracle::window(q, p.atoms().size());
      auto sound = [&](const DecideResult& r, const char* who) {
        if (r.yes != truth) note(o, std::string(who) + " answer on " + to_string(q) + "\n" + serialize_program(p));
        if (r.yes != r.witness.has_value()) note(o, std::string(who) + " witness presence");
        if (r.witness) {
          ++witnesses;
          const long size = static_cast<long>(r.witness->size());
          if (!oracle::satisfies(p, s, r.witness->members()) || size < w.lo || size > w.hi)
            note(o, std::string(who) + " unsound witness");
        }
      };
      sound(decide(q, p), "decide");
      sound(decide(q, p, DecideOptions{24, false}), "decide without shortcuts");
      try {
        sound(decide(q, p, DecideOptions{4, false}), "decide past the cap");
        ++past_cap;
      } catch (const CapacityError&) {
        // the guess space itself is over the cap
      }
      if (auto sc = polynomial_shortcuts(q, p)) {
        ++shortcut_hits;
        sound(*sc, "polynomial_shortcuts");
      }
      if (q.bound == Bound::Small && q.comparison != Comparison::Ge) {
        ++bounded;
        sound(bounded_subset_search(q, p), "bounded_subset_search");
      }
    }
  }
  if (o.pass)
    o.detail = "1500 queries, " + std::to_string(bounded) + " bounded, " + std::to_string(shortcut_hits) +
               " shortcut, " + std::to_string(past_cap) + " past the cap, " +
               std::to_string(witnesses) + " witnesses";
  return o;
}

Outcome mutation_sensitivity() {
  Outcome o;
  for (const RegistryEntry& e : registry()) {
    for (Mutation m : {Mutation::OffByOneK, Mutation::DropGadget}) {
      const std::string tag = e.name + (m == Mutation::OffByOneK ? "/k" : "/drop");
      VerifyConfig cfg;
      cfg.oracle = oracle::answer;
      cfg.mutation = m;
      const VerificationReport r = verify_reduction(e.name, kTrials, cfg, kSeed);
      if (r.disagreement_count() > 0) continue;
      o.pass = false;
      if (kKnownUnreachable.count(tag)) o.known.push_back(tag);
      else note(o, tag + " undetected");
    }
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"reduction soundness, 200 trials per registered reduction", soundness},
      {"Q_k atom count and stable models, k = 0..5", qk_structure},
      {"stable => supported => model; stable = supported when tight or negative", implication_chain},
      {"Horn least model and greatest supported model", horn_algorithms},
      {"parameter mappings and atom counts", parameter_mappings},
      {"stable models and kernels of N1 and N2 programs", kernels},
      {"decide, bounded_subset_search and shortcuts agree; witnesses sound", decider_crosscheck},
      {"off-by-one k' and dropped gadget are detected", mutation_sensitivity},
  };
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    report(static_cast<int>(i + 1), criteria[i].first, o);
  }
  return g_failures.empty() ? 0 : 1;
}
