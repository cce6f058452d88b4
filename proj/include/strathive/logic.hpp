#ifndef STRATHIVE_LOGIC_HPP
#define STRATHIVE_LOGIC_HPP

// First-order CNF syntax: symbols, terms, literals, clauses and problems,
// plus the TPTP-CNF reader and writer.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace strathive {

using SymbolId = std::int32_t;
using ClauseId = std::int64_t;

enum class SymbolKind { function, constant, predicate, variable };

struct Symbol {
  std::string name;
  SymbolKind kind;
  int arity = 0;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Interned non-variable symbols. Variables are not interned: inside a clause
// they are numbered 0..n-1 by first occurrence.
class Signature {
 public:
  // Returns the id of `name`, adding it when new. Throws std::invalid_argument
  // when the name is already bound to a different kind or arity.
  SymbolId intern(std::string_view name, SymbolKind kind, int arity);
  std::optional<SymbolId> find(std::string_view name) const;

  const Symbol& operator[](SymbolId id) const { return symbols_[static_cast<std::size_t>(id)]; }
  std::size_t size() const { return symbols_.size(); }

  friend bool operator==(const Signature& a, const Signature& b);

 private:
  std::vector<Symbol> symbols_;
  std::unordered_map<std::string, SymbolId> by_name_;
};

// Immutable, structurally shared term. A head code >= 0 is a symbol id; a
// negative code -(i+1) is the clause-local variable i.
class Term {
 public:
  Term() = default;

  static Term variable(std::uint32_t index);
  static Term apply(SymbolId head, std::vector<Term> args);
  static Term constant(SymbolId head) { return apply(head, {}); }

  bool is_variable() const { return node_->code < 0; }
  std::uint32_t var_index() const { return static_cast<std::uint32_t>(-node_->code - 1); }
  SymbolId symbol() const { return node_->code; }
  std::int32_t code() const { return node_->code; }
  std::span<const Term> args() const { return node_->args; }
  std::size_t arity() const { return node_->args.size(); }

  // Number of symbol occurrences (preorder length).
  std::size_t size() const { return node_->size; }
  std::size_t hash() const { return node_->hash; }
  bool ground() const { return node_->var_bound == 0; }
  // One past the largest variable index occurring in the term.
  std::uint32_t var_bound() const { return node_->var_bound; }
  bool valid() const { return node_ != nullptr; }

  friend bool operator==(const Term& a, const Term& b);
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

 private:
  struct Node {
    std::int32_t code;
    std::uint32_t size;
    std::uint32_t var_bound;
    std::size_t hash;
    std::vector<Term> args;
  };
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

// Deterministic total order: by size, then head code, then arguments.
int compare_terms(const Term& a, const Term& b);

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};
using TermSet = std::unordered_set<Term, TermHash>;

std::size_t term_size(const Term& t);

// Preorder symbol sequence of head codes.
std::vector<std::int32_t> preorder(const Term& t);

// All subterms of t (including t), deduplicated structurally.
TermSet subterms(const Term& t);

// Calls f on every subterm occurrence of t in preorder.
template <typename F>
void for_each_subterm(const Term& t, F&& f) {
  f(t);
  for (const Term& a : t.args()) for_each_subterm(a, f);
}

struct Literal {
  bool positive = true;
  Term atom;

  friend bool operator==(const Literal& a, const Literal& b) {
    return a.positive == b.positive && a.atom == b.atom;
  }
};

enum class ClauseRole { axiom, negated_conjecture, derived };
enum class Inference { input, resolution, factoring };

struct Clause {
  ClauseId id = 0;
  std::vector<Literal> literals;
  ClauseRole role = ClauseRole::axiom;
  std::int64_t created_at = 0;
  std::vector<ClauseId> parents;
  Inference inference = Inference::input;
  // Literal positions used by the inference: (parent index, literal index).
  std::vector<std::pair<int, int>> parent_literals;
  // Descends from the negated conjecture.
  bool goal = false;
  std::string name;
  // Source names of variables 0..n-1; may be empty for derived clauses.
  std::vector<std::string> var_names;

  bool empty() const { return literals.empty(); }
  std::uint32_t var_bound() const;
  bool ground() const { return var_bound() == 0; }
};

struct Problem {
  std::string name;
  std::vector<Clause> clauses;
  Signature signature;

  bool has_conjecture() const;
};

bool same_clause_content(const Clause& a, const Clause& b);
bool operator==(const Problem& a, const Problem& b);

// Parses the supported TPTP-CNF subset. Throws ParseError.
Problem parse_problem(std::string_view text, std::string name = "problem");
Problem load_problem(const std::string& path);
// Every *.p file of a directory, ordered by file name.
std::vector<Problem> load_corpus(const std::string& dir);

std::string render_term(const Term& t, const Signature& sig,
                        std::span<const std::string> var_names = {});
std::string render_literal(const Literal& lit, const Signature& sig,
                           std::span<const std::string> var_names = {});
// Clause body only, e.g. "p(X) | ~q(a)" or "$false".
std::string render_clause(const Clause& c, const Signature& sig);
std::string render_problem(const Problem& p);

// Union of subterms of the atoms of all negated_conjecture clauses.
TermSet conjecture_terms(const Problem& p);

// Renumbers the variables of a literal list to 0..n-1 by first occurrence.
// Returns the variable bound.
std::uint32_t normalize_variables(std::vector<Literal>& literals);

}  // namespace strathive

#endif  // STRATHIVE_LOGIC_HPP
