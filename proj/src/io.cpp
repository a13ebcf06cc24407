#include "lpk/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lpk/error.hpp"

namespace lpk {

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  bool at_end() {
    skip();
    return pos_ >= text_.size();
  }
  char peek() {
    skip();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool accept(std::string_view tok) {
    skip();
    if (text_.substr(pos_, tok.size()) != tok) return false;
    advance(tok.size());
    return true;
  }
  void expect(std::string_view tok) {
    if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
  }

  bool at_ident() {
    const char c = peek();
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }

  Atom atom(const ParseOptions& opts) {
    skip();
    const std::size_t line = line_, col = col_;
    if (text_.substr(pos_, 2) == "__") {
      if (!opts.allow_gadgets) throw ParseError("atoms may not start with the reserved prefix '__'", line, col);
      std::size_t end = pos_ + 2;
      while (end < text_.size() && gadget_char(text_[end])) ++end;
      // Gadget names never end in '.', so trailing dots terminate the rule.
      while (end > pos_ + 2 && text_[end - 1] == '.') --end;
      if (end == pos_ + 2) throw ParseError("empty gadget atom name", line, col);
      std::string name(text_.substr(pos_ + 2, end - pos_ - 2));
      advance(end - pos_);
      return Atom::gadget(std::move(name));
    }
    if (!std::isalpha(static_cast<unsigned char>(peek()))) fail("expected an atom");
    return Atom::user(word());
  }

  /// [A-Za-z][A-Za-z0-9_]* without consuming it.
  std::string peek_word() {
    skip();
    std::size_t end = pos_;
    if (end < text_.size() && std::isalpha(static_cast<unsigned char>(text_[end])))
      while (end < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_')) ++end;
    return std::string(text_.substr(pos_, end - pos_));
  }
  std::string word() {
    std::string w = peek_word();
    advance(w.size());
    return w;
  }

  [[noreturn]] void fail(const std::string& what) {
    skip();
    throw ParseError(what, line_, col_);
  }

 private:
  static bool gadget_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '~';
  }

  void skip() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '%') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance(1);
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance(1);
      } else {
        break;
      }
    }
  }
  void advance(std::size_t n) {
    for (std::size_t i = 0; i < n && pos_ < text_.size(); ++i, ++pos_) {
      if (text_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

FormulaNode parse_node(Cursor& c, const ParseOptions& opts) {
  if (!c.accept("(")) return FormulaNode::pos(c.atom(opts));
  const std::string op = c.word();
  FormulaNode out;
  if (op == "not") {
    out = FormulaNode::neg(c.atom(opts));
  } else if (op == "and" || op == "or") {
    std::vector<FormulaNode> children;
    while (c.peek() != ')') {
      if (c.at_end()) c.fail("unterminated '(" + op + "'");
      children.push_back(parse_node(c, opts));
    }
    out = op == "and" ? FormulaNode::conj(std::move(children)) : FormulaNode::disj(std::move(children));
  } else {
    c.fail("expected 'and', 'or' or 'not'");
  }
  c.expect(")");
  return out;
}

void write_node(const FormulaNode& n, std::string& out) {
  if (n.is_lit()) {
    out += n.literal.positive ? n.literal.atom.str() : "(not " + n.literal.atom.str() + ")";
    return;
  }
  out += n.kind == FormulaNode::Kind::And ? "(and" : "(or";
  for (const FormulaNode& c : n.children) {
    out += ' ';
    write_node(c, out);
  }
  out += ')';
}

nlohmann::json query_json(const Query& q) {
  return {{"semantics", to_string(q.semantics)}, {"cmp", to_string(q.comparison)},
          {"bound", to_string(q.bound)}, {"k", q.k}};
}

}  // namespace

Program parse_program(std::string_view text, const ParseOptions& opts) {
  Cursor c(text);
  std::vector<Rule> rules;
  while (!c.at_end()) {
    Rule r{c.atom(opts), {}, {}};
    if (c.accept(":-")) {
      do {
        if (c.peek_word() == "not") {
          c.word();
          if (!c.at_ident()) c.fail("expected an atom after 'not'");
          r.neg.push_back(c.atom(opts));
        } else {
          r.pos.push_back(c.atom(opts));
        }
      } while (c.accept(","));
    }
    c.expect(".");
    rules.push_back(std::move(r));
  }
  return Program(std::move(rules));
}

std::string serialize_program(const Program& p) {
  std::string out;
  for (const Rule& r : p.rules()) {
    out += r.head.str();
    if (!r.pos.empty() || !r.neg.empty()) {
      out += " :- ";
      bool first = true;
      for (const Atom& a : r.pos) {
        out += (first ? "" : ", ") + a.str();
        first = false;
      }
      for (const Atom& a : r.neg) {
        out += (first ? "not " : ", not ") + a.str();
        first = false;
      }
    }
    out += ".\n";
  }
  return out;
}

NormalizedFormula parse_formula(std::string_view text, const ParseOptions& opts) {
  Cursor c(text);
  if (c.at_end()) c.fail("empty formula");
  FormulaNode root = parse_node(c, opts);
  if (!c.at_end()) c.fail("trailing input after formula");
  return NormalizedFormula(std::move(root));
}

std::string serialize_formula(const NormalizedFormula& f) {
  std::string out;
  write_node(f.root(), out);
  out += '\n';
  return out;
}

Instance parse_instance(std::string_view text, const ParseOptions& opts) {
  Cursor c(text);
  if (c.peek() == '(') return parse_formula(text, opts);
  return parse_program(text, opts);
}

std::string serialize_instance(const Instance& x) {
  if (const auto* p = std::get_if<Program>(&x)) return serialize_program(*p);
  return serialize_formula(std::get<NormalizedFormula>(x));
}

std::string record_metadata_json(const ReductionRecord& r) {
  nlohmann::json queries = nlohmann::json::array();
  for (const QueryPair& qp : r.queries) queries.push_back({{"source", query_json(qp.source)}, {"target", query_json(qp.target)}});
  nlohmann::json j{{"name", r.name},       {"k", r.k},
                   {"k_target", r.k_target}, {"queries", queries},
                   {"atom_map", r.atom_map}, {"class_tags", r.class_tags}};
  return j.dump(2) + "\n";
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
}

}  // namespace lpk
