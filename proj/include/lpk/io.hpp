#pragma once

#include <string>
#include <string_view>

#include "lpk/core.hpp"
#include "lpk/formula.hpp"
#include "lpk/reductions.hpp"

namespace lpk {

struct ParseOptions {
  /// Accept "__"-prefixed atoms (reduction outputs). Off by default so user
  /// input can never collide with gadget names.
  bool allow_gadgets = false;
};

/// rule := atom (":-" body)? "." ; body := elem ("," elem)* ;
/// elem := atom | "not" atom. '%' starts a comment. Errors carry line and
/// column.
Program parse_program(std::string_view text, const ParseOptions& opts = {});
/// One rule per line, positive body first.
std::string serialize_program(const Program& p);

/// Prefix form: "(and (or x (not y)) z)". Same-kind nesting is merged.
NormalizedFormula parse_formula(std::string_view text, const ParseOptions& opts = {});
std::string serialize_formula(const NormalizedFormula& f);

/// Picks the parser by content: text whose first token is '(' is a formula.
Instance parse_instance(std::string_view text, const ParseOptions& opts = {});
std::string serialize_instance(const Instance& x);

/// name, k, k_target, queries, atom_map, class_tags as a JSON object.
std::string record_metadata_json(const ReductionRecord& r);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace lpk
