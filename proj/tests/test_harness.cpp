#include <gtest/gtest.h>

#include <json.hpp>

#include "lpk/error.hpp"
#include "lpk/generate.hpp"
#include "lpk/io.hpp"
#include "lpk/reductions.hpp"
#include "lpk/verify.hpp"
#include "oracle.hpp"

using namespace lpk;

TEST(Parse, RuleForms) {
  const Program p = parse_program("p :- q, not s.\n% comment\nq.\nr :- not p, q.");
  EXPECT_EQ(p.size(), 3u);
  EXPECT_EQ(p.rules()[0], (Rule{atom("p"), {atom("q")}, {atom("s")}}));
  EXPECT_EQ(p.rules()[1], (Rule{atom("q"), {}, {}}));
  EXPECT_EQ(p.rules()[2], (Rule{atom("r"), {atom("q")}, {atom("p")}}));
}

TEST(Parse, NotAsAtomName) {
  const Program p = parse_program("not :- a.");
  EXPECT_EQ(p.rules()[0].head, atom("not"));
}

TEST(Parse, ErrorsCarryPosition) {
  try {
    parse_program("a.\nb :- c d.");
    FAIL() << "no error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 8u);
  }
  EXPECT_THROW(parse_program("a :- b"), ParseError);
  EXPECT_THROW(parse_formula("(and (or x)"), ParseError);
  EXPECT_THROW(parse_formula("(xor x)"), ParseError);
}

TEST(Parse, ReservedPrefix) {
  EXPECT_THROW(parse_program("__qk.y.1.1."), ParseError);
  EXPECT_NO_THROW(parse_program("__qk.y.1.1.", {true}));
  EXPECT_THROW(parse_formula("(and __x)"), ParseError);
  EXPECT_TRUE(parse_program("__a.b.", {true}).rules()[0].head.is_gadget());
}

TEST(Parse, Formula) {
  const NormalizedFormula f = parse_formula("(and (or x (not y)) (and z))");
  EXPECT_EQ(f.atoms(), (std::vector<Atom>{atom("x"), atom("y"), atom("z")}));
  EXPECT_TRUE(oracle::eval(f, {atom("x"), atom("z")}));
  EXPECT_FALSE(oracle::eval(f, {atom("y"), atom("z")}));
}

TEST(Parse, InstanceDispatch) {
  EXPECT_TRUE(std::holds_alternative<Program>(parse_instance("a :- b.")));
  EXPECT_TRUE(std::holds_alternative<NormalizedFormula>(parse_instance("  % c\n(or a)")));
  EXPECT_TRUE(std::holds_alternative<Program>(parse_instance("")));
}

TEST(Serialize, PositiveBodyFirst) {
  EXPECT_EQ(serialize_program(Program({Rule{atom("p"), {atom("q")}, {atom("s")}}})), "p :- q, not s.\n");
}

TEST(RoundTrip, Programs) {
  Rng rng(51);
  for (const char* cls : {"HORN", "NEG", "N1", "N2", "ALL"}) {
    for (int t = 0; t < 100; ++t) {
      GeneratorConfig g{cls, rng.between(1, 7), 0, 3, rng.below(~0ULL)};
      g.rules = rng.between(0, g.atoms);
      const Program p = std::get<Program>(generate(g));
      ASSERT_EQ(parse_program(serialize_program(p)), p) << serialize_program(p);
    }
  }
}

TEST(RoundTrip, Formulas) {
  Rng rng(52);
  for (const char* cls : {"2N", "2N3", "2NM", "2NA", "3N", "3NM", "3NA"}) {
    for (int t = 0; t < 100; ++t) {
      const GeneratorConfig g{cls, rng.between(1, 7), rng.between(0, 6), 3, rng.below(~0ULL)};
      const NormalizedFormula f = std::get<NormalizedFormula>(generate(g));
      ASSERT_EQ(parse_formula(serialize_formula(f)), f) << serialize_formula(f);
    }
  }
}

TEST(RoundTrip, ReductionOutputsWithGadgets) {
  Rng rng(53);
  for (const RegistryEntry& e : registry()) {
    GeneratorConfig g{e.input_class, 4, 4, 3, rng.below(~0ULL)};
    const ReductionRecord r = e.build(generate(g), std::max(e.k_min, 1));
    ASSERT_EQ(parse_instance(serialize_instance(r.output), {true}), r.output) << e.name;
  }
}

TEST(Generate, ClassesHold) {
  Rng rng(54);
  for (const char* cls : {"HORN", "NEG", "N1", "N2", "ALL", "2N", "2N3", "2NM", "2NA", "3N", "3NM", "3NA"}) {
    for (int t = 0; t < 100; ++t) {
      GeneratorConfig g{cls, rng.between(1, 8), rng.between(0, 8), rng.between(1, 4), rng.below(~0ULL)};
      if (std::string(cls) == "N1") g.rules = g.atoms;
      const Instance x = generate(g);
      ASSERT_TRUE(satisfies_class(x, cls)) << cls << "\n" << serialize_instance(x);
      for (const Atom& a : atoms_of(x)) ASSERT_FALSE(a.is_gadget());
    }
  }
}

TEST(Generate, Deterministic) {
  const GeneratorConfig g{"HORN", 5, 8, 3, 42};
  EXPECT_EQ(generate(g), generate(g));
  const Program p = std::get<Program>(generate(g));
  EXPECT_EQ(p.size(), 8u);
  EXPECT_TRUE(is_horn(p));
  EXPECT_LE(p.atoms().size(), 5u);
}

TEST(Generate, N1HasOneRulePerAtom) {
  const Program p = std::get<Program>(generate({"N1", 4, 4, 3, 7}));
  EXPECT_EQ(p.size(), 4u);
  EXPECT_TRUE(satisfies_class(p, "N1"));
  EXPECT_THROW(generate({"N1", 3, 5, 3, 7}), PreconditionError);
  EXPECT_THROW(generate({"BOGUS", 3, 3, 3, 7}), PreconditionError);
}

TEST(Verify, ZeroTrials) {
  const VerificationReport r = verify_reduction("qk-pad-small", 0, {}, 1);
  EXPECT_EQ(r.trials, 0u);
  EXPECT_EQ(r.agreements, 0u);
  EXPECT_TRUE(r.disagreements.empty());
}

TEST(Verify, QkAgreesOnEveryTrial) {
  const VerificationReport r = verify_reduction("qk-pad-small", 200, {}, 2);
  EXPECT_EQ(r.trials, 200u);
  EXPECT_EQ(r.agreements, 200u);
  EXPECT_EQ(r.disagreement_count(), 0u);
}

TEST(Verify, UnknownName) { EXPECT_THROW(verify_reduction("nope", 1, {}, 0), PreconditionError); }

TEST(Verify, ReproducibleAcrossWorkers) {
  VerifyConfig one;
  one.workers = 1;
  one.mutation = Mutation::OffByOneK;
  VerifyConfig four = one;
  four.workers = 4;
  const VerificationReport a = verify_reduction("program-to-cnf", 150, one, 9);
  const VerificationReport b = verify_reduction("program-to-cnf", 150, four, 9);
  EXPECT_EQ(a.agreements, b.agreements);
  ASSERT_EQ(a.disagreements.size(), b.disagreements.size());
  for (std::size_t i = 0; i < a.disagreements.size(); ++i) {
    EXPECT_EQ(a.disagreements[i].trial, b.disagreements[i].trial);
    EXPECT_EQ(a.disagreements[i].input, b.disagreements[i].input);
  }
}

TEST(Verify, OffByOneIsCaught) {
  VerifyConfig cfg;
  cfg.mutation = Mutation::OffByOneK;
  const VerificationReport r = verify_reduction("qk-pad-small", 200, cfg, 3);
  ASSERT_GT(r.disagreement_count(), 0u);
  const Counterexample& c = r.disagreements.front();
  EXPECT_NE(c.source_answer, c.target_answer);
  const Instance in = parse_instance(c.input);
  const Instance out = parse_instance(c.output, {true});
  // recheck the stored counterexample independently
  EXPECT_EQ(oracle::answer(in, c.queries.source), c.source_answer);
  EXPECT_EQ(oracle::answer(out, c.queries.target), c.target_answer);
}

TEST(Verify, CustomOracleIsUsed) {
  VerifyConfig cfg;
  std::size_t calls = 0;
  cfg.workers = 1;
  cfg.oracle = [&](const Instance& x, const Query& q) {
    ++calls;
    return oracle::answer(x, q);
  };
  const VerificationReport r = verify_reduction("dualize-2n", 30, cfg, 4);
  EXPECT_EQ(r.agreements, 30u);
  EXPECT_GE(calls, 60u);
}

TEST(Verify, CapacityErrorNamesTrial) {
  VerifyConfig cfg;
  cfg.workers = 1;
  cfg.oracle = [](const Instance&, const Query&) -> bool { throw CapacityError(99, 1); };
  try {
    verify_reduction("pad-facts", 5, cfg, 5);
    FAIL() << "no error";
  } catch (const TrialCapacityError& e) {
    EXPECT_EQ(e.trial(), 0u);
    EXPECT_NE(std::string(e.what()).find("trial 0"), std::string::npos);
  }
}

TEST(Verify, ReportJson) {
  VerifyConfig cfg;
  cfg.mutation = Mutation::OffByOneK;
  const auto j = nlohmann::json::parse(report_json(verify_reduction("qk-pad-small", 20, cfg, 6)));
  EXPECT_EQ(j["name"], "qk-pad-small");
  EXPECT_EQ(j["trials"], 20);
  EXPECT_TRUE(j["disagreements"].is_array());
  EXPECT_TRUE(j.contains("wall_seconds"));
  if (!j["disagreements"].empty()) EXPECT_TRUE(j["disagreements"][0].contains("source_query"));
}

TEST(Metadata, Fields) {
  const ReductionRecord r = reduce_le_to_eq_via_qk(parse_program("a :- not b."), 1, Bound::Small);
  const auto j = nlohmann::json::parse(record_metadata_json(r));
  EXPECT_EQ(j["name"], r.name);
  EXPECT_EQ(j["k"], 1);
  EXPECT_EQ(j["k_target"], 2);
  EXPECT_EQ(j["atom_map"].size(), 3u);
  EXPECT_EQ(j["queries"][0]["target"]["cmp"], "eq");
  EXPECT_TRUE(j["class_tags"].is_array());
}

TEST(Registry, NamesAreUniqueAndResolvable) {
  std::set<std::string> names;
  for (const RegistryEntry& e : registry()) {
    EXPECT_TRUE(names.insert(e.name).second) << e.name;
    EXPECT_EQ(&registry_entry(e.name), &e);
    EXPECT_TRUE(is_known_class(e.input_class)) << e.name;
  }
  EXPECT_EQ(names.size(), 21u);
}
