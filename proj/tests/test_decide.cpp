#include <gtest/gtest.h>

#include "lpk/decide.hpp"
#include "lpk/error.hpp"
#include "lpk/generate.hpp"
#include "lpk/io.hpp"
#include "lpk/reductions.hpp"
#include "lpk/semantics.hpp"
#include "oracle.hpp"

using namespace lpk;

namespace {

constexpr auto MOD = Semantics::Model;
constexpr auto SUP = Semantics::Supported;
constexpr auto STB = Semantics::Stable;
constexpr auto LE = Comparison::Le;
constexpr auto EQ = Comparison::Eq;
constexpr auto GE = Comparison::Ge;
constexpr auto S = Bound::Small;
constexpr auto L = Bound::Large;

Program P(const char* text) { return parse_program(text, {true}); }
Interpretation I(std::initializer_list<const char*> names) {
  Interpretation out;
  for (const char* n : names) out.insert(atom(n));
  return out;
}

Program random_program(Rng& rng, const char* cls, std::size_t atoms, std::size_t rules) {
  GeneratorConfig g{cls, rng.between(1, atoms), rng.between(0, rules), 3, rng.below(~0ULL)};
  if (std::string(cls) == "N1") g.rules = g.atoms;
  return std::get<Program>(generate(g));
}

}  // namespace

TEST(Decide, TwoCycleWitnessIsLeast) {
  const DecideResult r = decide({STB, LE, S, 1}, P("p :- not q. q :- not p."));
  EXPECT_TRUE(r.yes);
  EXPECT_EQ(*r.witness, I({"p"}));
}

TEST(Decide, AllAtomsMakeGeQueriesTrivial) {
  const Program p = P("a :- not b. c :- a, d.");
  for (int k = 0; k <= 6; ++k) EXPECT_EQ(decide({MOD, GE, S, k}, p).yes, k <= 4) << k;
}

TEST(Decide, QkHasTwoElementStableModel) {
  const DecideResult r = decide({STB, EQ, S, 2}, build_qk(1));
  EXPECT_TRUE(r.yes);
  EXPECT_EQ(*r.witness, I({"__qk.y.2.1", "__qk.y.2.2"}));
}

TEST(Decide, NegativeKRejected) { EXPECT_THROW(decide({STB, EQ, S, -1}, P("a.")), PreconditionError); }

TEST(Decide, EmptyRange) {
  const DecideResult r = decide({MOD, EQ, S, 9}, P("a."));
  EXPECT_FALSE(r.yes);
  EXPECT_EQ(r.method, "empty-range");
}

TEST(BoundedSearch, KZeroStable) {
  EXPECT_TRUE(bounded_subset_search({STB, EQ, S, 0}, P("a :- b.")).yes);
  EXPECT_FALSE(bounded_subset_search({STB, EQ, S, 0}, P("a.")).yes);
}

TEST(BoundedSearch, KPastUniverseMatchesUniverse) {
  Rng rng(31);
  for (int t = 0; t < 100; ++t) {
    const Program p = random_program(rng, "ALL", 5, 6);
    const int n = static_cast<int>(p.atoms().size());
    for (Semantics s : {MOD, SUP, STB})
      EXPECT_EQ(bounded_subset_search({s, LE, S, n + 3}, p).yes, bounded_subset_search({s, LE, S, n}, p).yes);
  }
}

TEST(BoundedSearch, RequiresSmallLeOrEq) {
  EXPECT_THROW(bounded_subset_search({STB, GE, S, 1}, P("a.")), PreconditionError);
  EXPECT_THROW(bounded_subset_search({STB, LE, L, 1}, P("a.")), PreconditionError);
}

TEST(Shortcuts, HornStableIsLeastModelSize) {
  Rng rng(32);
  for (int t = 0; t < 200; ++t) {
    const Program p = random_program(rng, "HORN", 6, 8);
    const int k = static_cast<int>(rng.between(0, 6));
    const auto r = polynomial_shortcuts({STB, EQ, S, k}, p);
    ASSERT_TRUE(r.has_value());
    EXPECT_EQ(r->yes, static_cast<int>(least_model(p).size()) == k);
  }
}

TEST(Shortcuts, HornSupportedGeIsGreatestSupportedSize) {
  Rng rng(33);
  for (int t = 0; t < 200; ++t) {
    const Program p = random_program(rng, "HORN", 6, 8);
    const int k = static_cast<int>(rng.between(0, p.atoms().size()));
    const auto r = polynomial_shortcuts({SUP, GE, S, k}, p);
    ASSERT_TRUE(r.has_value());
    EXPECT_EQ(r->yes, static_cast<int>(greatest_supported_model(p).size()) >= k);
  }
}

TEST(Shortcuts, ModelLeLargeAlwaysYes) {
  Rng rng(34);
  for (int t = 0; t < 100; ++t) {
    const Program p = random_program(rng, "ALL", 6, 8);
    const auto r = polynomial_shortcuts({MOD, LE, L, static_cast<int>(rng.between(0, 3))}, p);
    ASSERT_TRUE(r.has_value());
    EXPECT_TRUE(r->yes);
  }
}

// decide agrees with the brute-force answer on every query shape, with and
// without shortcuts and with a cap small enough to force the fallbacks.
TEST(DecideProperty, MatchesOracle) {
  Rng rng(35);
  const char* classes[] = {"ALL", "HORN", "NEG", "N1", "N2"};
  for (int t = 0; t < 400; ++t) {
    const Program p = random_program(rng, classes[t % 5], 7, 9);
    for (Semantics s : {MOD, SUP, STB})
      for (Comparison c : {LE, EQ, GE})
        for (Bound b : {S, L}) {
          const Query q{s, c, b, static_cast<int>(rng.between(0, 4))};
          const bool truth = oracle::program_answer(p, q);
          ASSERT_EQ(decide(q, p).yes, truth) << to_string(q) << "\n" << serialize_program(p);
          ASSERT_EQ(decide(q, p, {24, false}).yes, truth);
          try {
            const DecideResult r = decide(q, p, {3, false});
            ASSERT_EQ(r.yes, truth) << to_string(q) << " past cap\n" << serialize_program(p);
            if (r.witness) ASSERT_TRUE(oracle::satisfies(p, s, r.witness->members()));
          } catch (const CapacityError&) {
          }
        }
  }
}

TEST(DecideProperty, ExhaustiveWitnessIsLeast) {
  Rng rng(36);
  for (int t = 0; t < 200; ++t) {
    const Program p = random_program(rng, "ALL", 6, 8);
    const Query q{STB, GE, S, 0};
    const DecideResult r = decide(q, p, {24, false});
    if (!r.yes) continue;
    // No stable model is smaller, and none of equal size sorts first.
    const oracle::Masks m(p);
    for (std::uint32_t s = 0; s <= m.full(); ++s) {
      if (!m.stable(s)) continue;
      const oracle::AtomSet set = m.to_set(s);
      EXPECT_GE(set.size(), r.witness->size());
    }
  }
}

TEST(WsT, Examples) {
  EXPECT_TRUE(ws_t(parse_formula("(and (or x y))"), 1, EQ, S).yes);
  const auto contradiction = parse_formula("(and x (not x))");
  for (int k = 0; k <= 2; ++k) EXPECT_FALSE(ws_t(contradiction, k, EQ, S).yes);
  EXPECT_FALSE(ws_t(parse_formula("(and (or (not x) (not y)))"), 2, EQ, S).yes);
}

TEST(WsT, MatchesOracle) {
  Rng rng(37);
  const char* classes[] = {"2N", "2NM", "2NA", "3N", "3NM", "3NA", "2N3"};
  for (int t = 0; t < 400; ++t) {
    GeneratorConfig g{classes[t % 7], rng.between(1, 7), rng.between(1, 7), 3, rng.below(~0ULL)};
    const auto f = std::get<NormalizedFormula>(generate(g));
    for (Comparison c : {LE, EQ, GE})
      for (Bound b : {S, L}) {
        const int k = static_cast<int>(rng.between(0, 4));
        const bool truth = oracle::formula_answer(f, {MOD, c, b, k});
        const DecideResult r = ws_t(f, k, c, b);
        ASSERT_EQ(r.yes, truth) << serialize_formula(f) << to_string(c) << " " << to_string(b) << " " << k;
        if (r.witness) ASSERT_TRUE(oracle::eval(f, r.witness->members()));
        if (classify_formula(f).t <= 2) ASSERT_EQ(ws_t(f, k, c, b, {2, false}).yes, truth) << "clause search";
      }
  }
}

TEST(WsT, DeepFormulaPastCapThrows) {
  const auto f = parse_formula("(and (or (and a b) c) (or (and d e) f))");
  EXPECT_THROW(ws_t(f, 3, EQ, S, {2, false}), CapacityError);
}
