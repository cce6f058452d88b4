#include "strathive/logic.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace strathive {

ParseError::ParseError(const std::string& what, int line, int column)
    : std::runtime_error("line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

namespace {

const char* kind_name(SymbolKind kind) {
  switch (kind) {
    case SymbolKind::function: return "function";
    case SymbolKind::constant: return "constant";
    case SymbolKind::predicate: return "predicate";
    case SymbolKind::variable: return "variable";
  }
  return "?";
}

std::size_t mix(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

SymbolId Signature::intern(std::string_view name, SymbolKind kind, int arity) {
  std::string key(name);
  if (auto it = by_name_.find(key); it != by_name_.end()) {
    const Symbol& s = symbols_[static_cast<std::size_t>(it->second)];
    const bool term_kinds = (s.kind == SymbolKind::function || s.kind == SymbolKind::constant) &&
                            (kind == SymbolKind::function || kind == SymbolKind::constant);
    if (s.arity != arity && (s.kind == kind || term_kinds)) {
      throw std::invalid_argument("arity mismatch for '" + key + "': used with arity " +
                                  std::to_string(s.arity) + " and " + std::to_string(arity));
    }
    if (s.kind != kind) {
      throw std::invalid_argument("symbol '" + key + "' used as " + kind_name(s.kind) +
                                  " and as " + kind_name(kind));
    }
    return it->second;
  }
  const auto id = static_cast<SymbolId>(symbols_.size());
  symbols_.push_back(Symbol{key, kind, arity});
  by_name_.emplace(std::move(key), id);
  return id;
}

std::optional<SymbolId> Signature::find(std::string_view name) const {
  if (auto it = by_name_.find(std::string(name)); it != by_name_.end()) return it->second;
  return std::nullopt;
}

bool operator==(const Signature& a, const Signature& b) {
  if (a.symbols_.size() != b.symbols_.size()) return false;
  for (std::size_t i = 0; i < a.symbols_.size(); ++i) {
    const Symbol& x = a.symbols_[i];
    const Symbol& y = b.symbols_[i];
    if (x.name != y.name || x.kind != y.kind || x.arity != y.arity) return false;
  }
  return true;
}

Term Term::variable(std::uint32_t index) {
  auto node = std::make_shared<Node>();
  node->code = -static_cast<std::int32_t>(index) - 1;
  node->size = 1;
  node->var_bound = index + 1;
  node->hash = mix(0x51ed27, static_cast<std::size_t>(node->code));
  return Term(std::move(node));
}

Term Term::apply(SymbolId head, std::vector<Term> args) {
  auto node = std::make_shared<Node>();
  node->code = head;
  node->size = 1;
  node->var_bound = 0;
  std::size_t h = mix(0x2545f491, static_cast<std::size_t>(head));
  for (const Term& a : args) {
    node->size += a.node_->size;
    node->var_bound = std::max(node->var_bound, a.node_->var_bound);
    h = mix(h, a.node_->hash);
  }
  node->hash = h;
  node->args = std::move(args);
  return Term(std::move(node));
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  const Term::Node& x = *a.node_;
  const Term::Node& y = *b.node_;
  if (x.hash != y.hash || x.code != y.code || x.size != y.size) return false;
  for (std::size_t i = 0; i < x.args.size(); ++i) {
    if (!(x.args[i] == y.args[i])) return false;
  }
  return true;
}

int compare_terms(const Term& a, const Term& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  if (a.code() != b.code()) return a.code() < b.code() ? -1 : 1;
  for (std::size_t i = 0; i < a.arity(); ++i) {
    if (int c = compare_terms(a.args()[i], b.args()[i]); c != 0) return c;
  }
  return 0;
}

std::size_t term_size(const Term& t) { return t.size(); }

std::vector<std::int32_t> preorder(const Term& t) {
  std::vector<std::int32_t> seq;
  seq.reserve(t.size());
  for_each_subterm(t, [&](const Term& s) { seq.push_back(s.code()); });
  return seq;
}

TermSet subterms(const Term& t) {
  TermSet out;
  for_each_subterm(t, [&](const Term& s) { out.insert(s); });
  return out;
}

std::uint32_t Clause::var_bound() const {
  std::uint32_t bound = 0;
  for (const Literal& l : literals) bound = std::max(bound, l.atom.var_bound());
  return bound;
}

bool Problem::has_conjecture() const {
  return std::any_of(clauses.begin(), clauses.end(), [](const Clause& c) {
    return c.role == ClauseRole::negated_conjecture;
  });
}

bool same_clause_content(const Clause& a, const Clause& b) {
  return a.literals == b.literals && a.role == b.role;
}

bool operator==(const Problem& a, const Problem& b) {
  if (a.clauses.size() != b.clauses.size() || !(a.signature == b.signature)) return false;
  for (std::size_t i = 0; i < a.clauses.size(); ++i) {
    const Clause& x = a.clauses[i];
    const Clause& y = b.clauses[i];
    if (!same_clause_content(x, y) || x.name != y.name || x.id != y.id) return false;
  }
  return true;
}

TermSet conjecture_terms(const Problem& p) {
  TermSet out;
  for (const Clause& c : p.clauses) {
    if (c.role != ClauseRole::negated_conjecture) continue;
    for (const Literal& l : c.literals) {
      for_each_subterm(l.atom, [&](const Term& s) { out.insert(s); });
    }
  }
  return out;
}

namespace {

Term rename_term(const Term& t, std::vector<std::int64_t>& map, std::uint32_t& next) {
  if (t.is_variable()) {
    std::int64_t& slot = map[t.var_index()];
    if (slot < 0) slot = next++;
    return Term::variable(static_cast<std::uint32_t>(slot));
  }
  if (t.ground()) return t;
  std::vector<Term> args;
  args.reserve(t.arity());
  for (const Term& a : t.args()) args.push_back(rename_term(a, map, next));
  return Term::apply(t.symbol(), std::move(args));
}

}  // namespace

std::uint32_t normalize_variables(std::vector<Literal>& literals) {
  std::uint32_t bound = 0;
  for (const Literal& l : literals) bound = std::max(bound, l.atom.var_bound());
  std::vector<std::int64_t> map(bound, -1);
  std::uint32_t next = 0;
  for (Literal& l : literals) l.atom = rename_term(l.atom, map, next);
  return next;
}

// ---------------------------------------------------------------------------
// Reader

namespace {

struct RawTerm {
  std::string name;
  bool is_variable = false;
  std::vector<RawTerm> args;
  int line = 0;
  int column = 0;
};

struct RawLiteral {
  bool positive = true;
  bool equality = false;
  RawTerm lhs;
  RawTerm rhs;
};

bool is_lower_word(std::string_view s) {
  if (s.empty() || !std::islower(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

class Reader {
 public:
  Reader(std::string_view text, std::string name) : text_(text) {
    problem_.name = std::move(name);
  }

  Problem read() {
    skip_layout();
    while (!at_end()) {
      const int line = line_;
      const int col = column_;
      std::string word = read_word();
      if (word == "include") fail("include directives are not supported", line, col);
      if (word != "cnf") fail("expected 'cnf', found '" + word + "'", line, col);
      read_cnf();
      skip_layout();
    }
    if (problem_.clauses.empty()) fail("empty input: no clauses", line_, column_);
    return std::move(problem_);
  }

 private:
  [[noreturn]] void fail(const std::string& what, int line, int col) const {
    throw ParseError(what, line, col);
  }
  [[noreturn]] void fail(const std::string& what) const { fail(what, line_, column_); }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_layout() {
    while (!at_end()) {
      const char c = peek();
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '%') {
        while (!at_end() && peek() != '\n') advance();
      } else if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '*') {
        advance();
        advance();
        while (!at_end() && !(peek() == '*' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/')) {
          advance();
        }
        if (at_end()) fail("unterminated comment");
        advance();
        advance();
      } else {
        break;
      }
    }
  }

  void expect(char c) {
    skip_layout();
    if (peek() != c) {
      fail(std::string("expected '") + c + "'" +
           (at_end() ? std::string(", found end of input") : std::string(", found '") + peek() + "'"));
    }
    advance();
  }

  bool accept(char c) {
    skip_layout();
    if (peek() == c) {
      advance();
      return true;
    }
    return false;
  }

  std::string read_word() {
    skip_layout();
    std::string out;
    if (peek() == '\'') {
      advance();
      while (!at_end() && peek() != '\'') {
        if (peek() == '\\') advance();
        if (at_end()) break;
        out += peek();
        advance();
      }
      if (at_end()) fail("unterminated quoted name");
      advance();
      if (out.empty()) fail("empty quoted name");
      return out;
    }
    if (peek() == '$') {
      out += peek();
      advance();
    }
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) {
      out += peek();
      advance();
    }
    if (out.empty() || out == "$") {
      fail(at_end() ? std::string("unexpected end of input")
                    : std::string("unexpected character '") + peek() + "'");
    }
    return out;
  }

  RawTerm read_term() {
    skip_layout();
    RawTerm t;
    t.line = line_;
    t.column = column_;
    const bool quoted = peek() == '\'';
    t.name = read_word();
    t.is_variable = !quoted && std::isupper(static_cast<unsigned char>(t.name[0]));
    if (accept('(')) {
      do {
        t.args.push_back(read_term());
      } while (accept(','));
      expect(')');
      if (t.is_variable) fail("variable '" + t.name + "' applied to arguments", t.line, t.column);
    }
    return t;
  }

  RawLiteral read_literal() {
    RawLiteral lit;
    if (accept('~')) lit.positive = false;
    lit.lhs = read_term();
    skip_layout();
    if (peek() == '=') {
      advance();
      lit.equality = true;
      lit.rhs = read_term();
    } else if (peek() == '!' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
      advance();
      advance();
      lit.equality = true;
      lit.positive = !lit.positive;
      lit.rhs = read_term();
    }
    return lit;
  }

  void skip_balanced() {
    int depth = 0;
    while (!at_end()) {
      const char c = peek();
      if (c == '\'') {
        read_word();
        continue;
      }
      if (c == '(' || c == '[') ++depth;
      if (c == ')' || c == ']') {
        if (depth == 0) return;
        --depth;
      }
      advance();
    }
    fail("unterminated annotation");
  }

  Term convert(const RawTerm& raw, SymbolKind kind, std::vector<std::string>& vars) {
    if (raw.is_variable) {
      if (kind == SymbolKind::predicate) fail("variable '" + raw.name + "' used as an atom", raw.line, raw.column);
      auto it = std::find(vars.begin(), vars.end(), raw.name);
      if (it == vars.end()) {
        vars.push_back(raw.name);
        return Term::variable(static_cast<std::uint32_t>(vars.size() - 1));
      }
      return Term::variable(static_cast<std::uint32_t>(it - vars.begin()));
    }
    if (kind != SymbolKind::predicate) {
      kind = raw.args.empty() ? SymbolKind::constant : SymbolKind::function;
    }
    SymbolId id;
    try {
      id = problem_.signature.intern(raw.name, kind, static_cast<int>(raw.args.size()));
    } catch (const std::invalid_argument& e) {
      fail(e.what(), raw.line, raw.column);
    }
    std::vector<Term> args;
    args.reserve(raw.args.size());
    for (const RawTerm& a : raw.args) args.push_back(convert(a, SymbolKind::function, vars));
    return Term::apply(id, std::move(args));
  }

  void read_cnf() {
    expect('(');
    std::string name = read_word();
    expect(',');
    const int role_line = line_;
    const int role_col = column_;
    std::string role = read_word();
    ClauseRole clause_role;
    if (role == "axiom" || role == "hypothesis") {
      clause_role = ClauseRole::axiom;
    } else if (role == "negated_conjecture") {
      clause_role = ClauseRole::negated_conjecture;
    } else if (role == "plain") {
      clause_role = ClauseRole::derived;
    } else {
      fail("unsupported role '" + role + "'", role_line, role_col + 1);
    }
    expect(',');

    std::vector<RawLiteral> raw;
    const bool wrapped = accept('(');
    do {
      raw.push_back(read_literal());
    } while (accept('|'));
    if (wrapped) expect(')');
    if (accept(',')) skip_balanced();
    expect(')');
    expect('.');

    Clause c;
    c.name = std::move(name);
    c.role = clause_role;
    c.goal = clause_role == ClauseRole::negated_conjecture;
    for (const RawLiteral& r : raw) {
      if (!r.equality && r.lhs.args.empty() && r.lhs.name == "$false") {
        if (!r.positive) fail("'$true' literals are not supported", r.lhs.line, r.lhs.column);
        continue;
      }
      if (!r.equality && r.lhs.args.empty() && r.lhs.name == "$true") {
        fail("'$true' literals are not supported", r.lhs.line, r.lhs.column);
      }
      Literal lit;
      lit.positive = r.positive;
      if (r.equality) {
        SymbolId eq;
        try {
          eq = problem_.signature.intern("=", SymbolKind::predicate, 2);
        } catch (const std::invalid_argument& e) {
          fail(e.what(), r.lhs.line, r.lhs.column);
        }
        Term lhs = convert(r.lhs, SymbolKind::function, c.var_names);
        Term rhs = convert(r.rhs, SymbolKind::function, c.var_names);
        lit.atom = Term::apply(eq, {std::move(lhs), std::move(rhs)});
      } else {
        lit.atom = convert(r.lhs, SymbolKind::predicate, c.var_names);
      }
      c.literals.push_back(std::move(lit));
    }
    c.id = static_cast<ClauseId>(problem_.clauses.size());
    c.created_at = c.id;
    problem_.clauses.push_back(std::move(c));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
  Problem problem_;
};

std::string quote_name(const std::string& name) {
  if (is_lower_word(name) || name == "=" ||
      std::all_of(name.begin(), name.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    return name;
  }
  std::string out = "'";
  for (char c : name) {
    if (c == '\'' || c == '\\') out += '\\';
    out += c;
  }
  out += '\'';
  return out;
}

void render_into(std::string& out, const Term& t, const Signature& sig,
                 std::span<const std::string> var_names) {
  if (t.is_variable()) {
    const std::uint32_t i = t.var_index();
    out += i < var_names.size() ? var_names[i] : "X" + std::to_string(i);
    return;
  }
  out += quote_name(sig[t.symbol()].name);
  if (t.arity() == 0) return;
  out += '(';
  for (std::size_t i = 0; i < t.arity(); ++i) {
    if (i > 0) out += ',';
    render_into(out, t.args()[i], sig, var_names);
  }
  out += ')';
}

}  // namespace

Problem parse_problem(std::string_view text, std::string name) {
  return Reader(text, std::move(name)).read();
}

Problem load_problem(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open problem file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  std::string name = path;
  if (auto slash = name.find_last_of('/'); slash != std::string::npos) name = name.substr(slash + 1);
  if (auto dot = name.find_last_of('.'); dot != std::string::npos && dot > 0) name = name.substr(0, dot);
  return parse_problem(buffer.str(), name);
}

std::vector<Problem> load_corpus(const std::string& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".p") files.push_back(entry.path());
  }
  if (files.empty()) throw std::runtime_error("no .p problem files in '" + dir + "'");
  std::sort(files.begin(), files.end());
  std::vector<Problem> out;
  out.reserve(files.size());
  for (const auto& f : files) out.push_back(load_problem(f.string()));
  return out;
}

std::string render_term(const Term& t, const Signature& sig, std::span<const std::string> var_names) {
  std::string out;
  render_into(out, t, sig, var_names);
  return out;
}

std::string render_literal(const Literal& lit, const Signature& sig,
                           std::span<const std::string> var_names) {
  std::string out;
  const Term& a = lit.atom;
  if (!a.is_variable() && a.arity() == 2 && sig[a.symbol()].name == "=") {
    render_into(out, a.args()[0], sig, var_names);
    out += lit.positive ? " = " : " != ";
    render_into(out, a.args()[1], sig, var_names);
    return out;
  }
  if (!lit.positive) out += '~';
  render_into(out, a, sig, var_names);
  return out;
}

std::string render_clause(const Clause& c, const Signature& sig) {
  if (c.literals.empty()) return "$false";
  std::string out;
  for (std::size_t i = 0; i < c.literals.size(); ++i) {
    if (i > 0) out += " | ";
    out += render_literal(c.literals[i], sig, c.var_names);
  }
  return out;
}

std::string render_problem(const Problem& p) {
  std::string out;
  for (const Clause& c : p.clauses) {
    const char* role = c.role == ClauseRole::negated_conjecture ? "negated_conjecture"
                       : c.role == ClauseRole::axiom            ? "axiom"
                                                                : "plain";
    std::string name = c.name.empty() ? "c" + std::to_string(c.id) : c.name;
    out += "cnf(" + quote_name(name) + "," + role + ",(" + render_clause(c, p.signature) + ")).\n";
  }
  return out;
}

}  // namespace strathive
