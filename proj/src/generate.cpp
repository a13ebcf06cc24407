#include "lpk/generate.hpp"

#include <algorithm>
#include <numeric>

#include "lpk/error.hpp"

namespace lpk {

namespace {

const char* const kProgramClasses[] = {"HORN", "NEG", "N1", "N2", "ALL"};
const char* const kFormulaClasses[] = {"2N", "2N3", "2NM", "2NA", "3N", "3NM", "3NA"};

std::vector<Atom> universe(std::size_t n) {
  std::vector<Atom> out;
  for (std::size_t i = 1; i <= n; ++i) out.push_back(Atom::user("x" + std::to_string(i)));
  return out;
}

/// Up to `count` distinct atoms, in draw order.
std::vector<Atom> pick(Rng& rng, std::vector<Atom> at, std::size_t count) {
  count = std::min(count, at.size());
  for (std::size_t i = 0; i < count; ++i) std::swap(at[i], at[i + rng.below(at.size() - i)]);
  at.erase(at.begin() + static_cast<std::ptrdiff_t>(count), at.end());
  return at;
}

Program gen_program(const GeneratorConfig& cfg, Rng& rng) {
  const std::vector<Atom> at = universe(cfg.atoms);
  const std::string& c = cfg.cls;
  std::vector<Rule> rules;
  if (c == "N1") {
    if (cfg.rules > cfg.atoms) throw PreconditionError("N1 needs at most as many rules as atoms");
    // Heads are a permutation of the atoms; bodies use only heads so every
    // atom heads exactly one rule.
    std::vector<std::size_t> order(at.size());
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
    for (std::size_t i : order) rules.push_back(Rule{at[i], {}, pick(rng, at, rng.between(0, cfg.max_width))});
    return Program(std::move(rules));
  }
  if (cfg.atoms == 0 && cfg.rules > 0) throw PreconditionError("rules need at least one atom");
  for (std::size_t r = 0; r < cfg.rules; ++r) {
    Rule rule{at[rng.below(at.size())], {}, {}};
    if (c == "N2") {
      rule.neg = pick(rng, at, 1);
    } else {
      for (const Atom& a : pick(rng, at, rng.between(0, cfg.max_width))) {
        bool positive = c == "HORN" || (c == "ALL" && rng.coin());
        (positive ? rule.pos : rule.neg).push_back(a);
      }
    }
    rules.push_back(std::move(rule));
  }
  return Program(std::move(rules));
}

Literal lit(Rng& rng, const std::vector<Atom>& at, const std::string& c) {
  const bool mono = c.back() == 'M', anti = c.back() == 'A';
  const bool positive = mono || (!anti && rng.coin());
  return {at[rng.below(at.size())], positive};
}

NormalizedFormula gen_formula(const GeneratorConfig& cfg, Rng& rng) {
  const std::vector<Atom> at = universe(cfg.atoms);
  if (at.empty() && cfg.rules > 0) throw PreconditionError("clauses need at least one atom");
  const std::string& c = cfg.cls;
  const std::size_t width = c == "2N3" ? std::min<std::size_t>(cfg.max_width, 3) : cfg.max_width;
  if (width == 0 && cfg.rules > 0) throw PreconditionError("max_width must be positive for formulas");
  if (c[0] == '2') {
    std::vector<Clause> clauses;
    for (std::size_t i = 0; i < cfg.rules; ++i) {
      Clause cl;
      const std::size_t w = rng.between(1, width);
      for (std::size_t j = 0; j < w; ++j) cl.push_back(lit(rng, at, c));
      clauses.push_back(std::move(cl));
    }
    return make_cnf(clauses);
  }
  std::vector<Block> blocks;
  for (std::size_t i = 0; i < cfg.rules; ++i) {
    Block b;
    const std::size_t m = rng.between(1, width);
    for (std::size_t j = 0; j < m; ++j) {
      std::vector<Literal> conj;
      const std::size_t w = rng.between(1, width);
      for (std::size_t l = 0; l < w; ++l) conj.push_back(lit(rng, at, c));
      b.push_back(std::move(conj));
    }
    blocks.push_back(std::move(b));
  }
  return make_3n(blocks);
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

bool is_program_class(const std::string& cls) {
  return std::find(std::begin(kProgramClasses), std::end(kProgramClasses), cls) != std::end(kProgramClasses);
}

bool is_known_class(const std::string& cls) {
  return is_program_class(cls) ||
         std::find(std::begin(kFormulaClasses), std::end(kFormulaClasses), cls) != std::end(kFormulaClasses);
}

Instance generate(const GeneratorConfig& cfg) {
  if (!is_known_class(cfg.cls)) throw PreconditionError("unknown class '" + cfg.cls + "'");
  Rng rng(cfg.seed);
  if (is_program_class(cfg.cls)) return gen_program(cfg, rng);
  return gen_formula(cfg, rng);
}

bool satisfies_class(const Instance& x, const std::string& cls) {
  if (const auto* p = std::get_if<Program>(&x)) {
    const ClassTags t = classify_program(*p);
    if (cls == "ALL") return true;
    if (cls == "HORN") return t.has(ProgramClass::Horn);
    if (cls == "NEG") return t.has(ProgramClass::Negative);
    if (cls == "N1") return t.has(ProgramClass::N1);
    if (cls == "N2") return t.has(ProgramClass::N2);
    return false;
  }
  if (is_program_class(cls) || !is_known_class(cls)) return false;
  const FormulaClass fc = classify_formula(std::get<NormalizedFormula>(x));
  const int depth = cls[0] - '0';
  if (!fc.in_tn(depth)) return false;
  if (cls == "2N3") return fc.in_2n3();
  if (cls.back() == 'M') return fc.monotone;
  if (cls.back() == 'A') return fc.antimonotone;
  return true;
}

}  // namespace lpk
