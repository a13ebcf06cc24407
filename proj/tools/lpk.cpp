// lpk: decide, reduce, generate, verify and classify logic programs and
// normalized formulas.
#include <cstdio>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lpk/decide.hpp"
#include "lpk/error.hpp"
#include "lpk/generate.hpp"
#include "lpk/io.hpp"
#include "lpk/reductions.hpp"
#include "lpk/verify.hpp"

namespace {

lpk::Instance load(const std::string& path, bool gadgets) {
  const std::string text = lpk::read_text_file(path);
  lpk::ParseOptions opts{gadgets};
  if (path.ends_with(".nf")) return lpk::parse_formula(text, opts);
  if (path.ends_with(".lp")) return lpk::parse_program(text, opts);
  return lpk::parse_instance(text, opts);
}

std::string join(const std::vector<std::string>& xs) {
  std::string out;
  for (const auto& x : xs) out += (out.empty() ? "" : " ") + x;
  return out;
}

lpk::ReductionRecord run_reduction(const std::string& name, const lpk::Instance& x, int k) {
  const lpk::RegistryEntry& e = lpk::registry_entry(name);
  const bool wants_program = lpk::is_program_class(e.input_class);
  if (wants_program != std::holds_alternative<lpk::Program>(x))
    throw lpk::PreconditionError(name + " expects a " + (wants_program ? "program" : "formula"));
  return e.build(x, k);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bounded model queries and parameterized reductions for logic programs"};
  app.require_subcommand(1);

  bool gadgets = false;
  std::string file;

  auto* dec = app.add_subcommand("decide", "Is there a model of the given kind and size?");
  std::string sem = "stable", cmp = "eq", bound = "small";
  int k = 0;
  std::size_t cap = 24;
  bool dec_json = false;
  dec->add_option("--sem", sem, "model | supported | stable")->check(CLI::IsMember({"model", "supported", "stable"}));
  dec->add_option("--cmp", cmp, "le | eq | ge")->check(CLI::IsMember({"le", "eq", "ge"}));
  dec->add_option("--bound", bound, "small | large")->check(CLI::IsMember({"small", "large"}));
  dec->add_option("-k", k, "size bound")->required();
  dec->add_option("--cap", cap, "largest universe enumerated directly");
  dec->add_flag("--json", dec_json, "print a JSON object instead of text");
  dec->add_flag("--gadgets", gadgets, "accept __-prefixed atoms");
  dec->add_option("FILE", file)->required();

  auto* red = app.add_subcommand("reduce", "Apply a registered reduction");
  std::string name, out_path, meta_path;
  red->add_option("--name", name)->required();
  red->add_option("-k", k)->required();
  red->add_option("-o", out_path, "output instance (stdout if omitted)");
  red->add_option("--meta", meta_path, "metadata JSON");
  red->add_flag("--gadgets", gadgets, "accept __-prefixed atoms");
  red->add_option("FILE", file)->required();

  auto* gen = app.add_subcommand("gen", "Generate a random instance");
  lpk::GeneratorConfig gcfg;
  gen->add_option("--class", gcfg.cls)->required();
  gen->add_option("--atoms", gcfg.atoms)->required();
  gen->add_option("--rules", gcfg.rules, "rules or top-level conjuncts");
  gen->add_option("--width", gcfg.max_width, "longest body or clause");
  gen->add_option("--seed", gcfg.seed);
  gen->add_option("-o", out_path);

  auto* ver = app.add_subcommand("verify", "Check source and target answers agree on random instances");
  std::string which = "all", mutation = "none", json_path;
  std::size_t trials = 200, max_atoms = 0;
  std::uint64_t seed = 1;
  unsigned workers = 0;
  ver->add_option("--reduction", which, "registered name or 'all'");
  ver->add_option("--trials", trials);
  ver->add_option("--max-atoms", max_atoms, "0 keeps each reduction's default");
  ver->add_option("--seed", seed);
  ver->add_option("--mutation", mutation, "none | k | drop")->check(CLI::IsMember({"none", "k", "drop"}));
  ver->add_option("--workers", workers);
  ver->add_option("--json", json_path, "write one report object per line");

  auto* cls = app.add_subcommand("classify", "Print class tags");
  cls->add_flag("--gadgets", gadgets, "accept __-prefixed atoms");
  cls->add_option("FILE", file)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*dec) {
      const lpk::Instance x = load(file, gadgets);
      const lpk::Query q{lpk::parse_semantics(sem), lpk::parse_comparison(cmp), lpk::parse_bound(bound), k};
      lpk::DecideOptions opts;
      opts.atom_cap = cap;
      lpk::DecideResult r;
      if (const auto* p = std::get_if<lpk::Program>(&x)) {
        r = lpk::decide(q, *p, opts);
      } else {
        if (q.semantics != lpk::Semantics::Model) throw lpk::PreconditionError("formulas only have --sem model");
        r = lpk::ws_t(std::get<lpk::NormalizedFormula>(x), k, q.comparison, q.bound, opts);
      }
      if (dec_json) {
        nlohmann::json j{{"query", lpk::to_string(q)}, {"answer", r.yes ? "YES" : "NO"}, {"method", r.method}};
        if (r.witness) {
          std::vector<std::string> w;
          for (const lpk::Atom& a : *r.witness) w.push_back(a.str());
          j["witness"] = w;
        }
        std::cout << j.dump() << "\n";
      } else {
        std::cout << (r.yes ? "YES" : "NO");
        if (r.witness) std::cout << " " << lpk::to_string(*r.witness);
        std::cout << "  (" << r.method << ")\n";
      }
      return r.yes ? 0 : 1;
    }
    if (*red) {
      const lpk::Instance x = load(file, gadgets);
      const lpk::ReductionRecord r = run_reduction(name, x, k);
      const std::string text = lpk::serialize_instance(r.output);
      if (out_path.empty()) std::cout << text;
      else lpk::write_text_file(out_path, text);
      if (!meta_path.empty()) lpk::write_text_file(meta_path, lpk::record_metadata_json(r));
      return 0;
    }
    if (*gen) {
      const std::string text = lpk::serialize_instance(lpk::generate(gcfg));
      if (out_path.empty()) std::cout << text;
      else lpk::write_text_file(out_path, text);
      return 0;
    }
    if (*ver) {
      lpk::VerifyConfig cfg;
      cfg.max_atoms = max_atoms;
      cfg.workers = workers;
      cfg.mutation = mutation == "k" ? lpk::Mutation::OffByOneK
                     : mutation == "drop" ? lpk::Mutation::DropGadget
                                          : lpk::Mutation::None;
      std::vector<std::string> names;
      if (which == "all") {
        for (const auto& e : lpk::registry()) names.push_back(e.name);
      } else {
        names.push_back(which);
      }
      std::string lines;
      bool clean = true;
      std::printf("%-32s %7s %7s %7s %9s\n", "reduction", "trials", "agree", "differ", "seconds");
      for (const auto& n : names) {
        const lpk::VerificationReport rep = lpk::verify_reduction(n, trials, cfg, seed);
        std::printf("%-32s %7zu %7zu %7zu %9.2f\n", n.c_str(), rep.trials, rep.agreements, rep.disagreement_count(),
                    rep.wall_seconds);
        clean = clean && rep.disagreements.empty();
        lines += lpk::report_json(rep) + "\n";
      }
      if (!json_path.empty()) lpk::write_text_file(json_path, lines);
      return clean ? 0 : 1;
    }
    if (*cls) {
      const lpk::Instance x = load(file, gadgets);
      std::cout << "atoms " << lpk::atoms_of(x).size() << "\n";
      if (const auto* p = std::get_if<lpk::Program>(&x)) {
        std::cout << "rules " << p->size() << "\n";
      } else {
        const lpk::FormulaClass c = lpk::classify_formula(std::get<lpk::NormalizedFormula>(x));
        std::cout << "t " << c.t << "\nwidth " << c.max_clause_width << "\n";
      }
      std::cout << "tags " << join(lpk::instance_tags(x)) << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
