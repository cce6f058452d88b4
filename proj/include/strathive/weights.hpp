#ifndef STRATHIVE_WEIGHTS_HPP
#define STRATHIVE_WEIGHTS_HPP

// Clause evaluation functions: priority functions, weight functions and the
// term distances behind the conjecture-similarity weights.

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "strathive/logic.hpp"
#include "strathive/rational.hpp"

namespace strathive {

enum class PriorityFn { PreferAll, PreferGoals, PreferNonGoals, ByCreationDate, PreferUnitGroundGoals };
inline constexpr PriorityFn kAllPriorities[] = {
    PriorityFn::PreferAll, PriorityFn::PreferGoals, PriorityFn::PreferNonGoals,
    PriorityFn::ByCreationDate, PriorityFn::PreferUnitGroundGoals};

// Declaration order is the weight-function order used wherever the tool
// iterates over weight functions.
enum class WeightKind {
  ConjectureSymbolWeight,
  Term,
  Tfidf,
  Pref,
  Lev,
  Ted,
  Struc,
  Clauseweight,
  Refinedweight,
  FIFOWeight,
  ByAge,
};
inline constexpr WeightKind kAllWeightKinds[] = {
    WeightKind::ConjectureSymbolWeight, WeightKind::Term,  WeightKind::Tfidf,
    WeightKind::Pref,                   WeightKind::Lev,   WeightKind::Ted,
    WeightKind::Struc,                  WeightKind::Clauseweight, WeightKind::Refinedweight,
    WeightKind::FIFOWeight,             WeightKind::ByAge};

enum class DocSource { ax, pro };

// Argument categories; each has its own pre-designed value set for fine tuning.
enum class ArgType { symbol_weight, multiplier, cost, signed_weight, doc_source };

using ArgValue = std::variant<Rational, DocSource>;

struct ConjSymbolArgs {
  Rational gamma_conj, c_f, c_c, c_p, c_v;
};
struct TermArgs {
  Rational gamma_conj, c_f, c_c, c_p, c_v;
};
struct TfIdfArgs {
  DocSource doc_source = DocSource::ax;
};
struct PrefArgs {
  Rational c_match, c_miss;
};
struct EditArgs {
  Rational c_ins, c_del, c_ch;
};
struct StrucArgs {
  Rational c_miss, c_inst, c_gen;
};
struct ClauseweightArgs {
  Rational symbol, variable, positive_mult;
};
struct RefinedweightArgs {
  Rational symbol, variable, max_term_mult, max_literal_mult, positive_mult;
};

std::string_view priority_name(PriorityFn p);
std::string_view weight_name(WeightKind k);
std::span<const ArgType> arg_types(WeightKind k);

// A weight function with its arguments. Construction validates the argument
// vector against the function's signature (std::invalid_argument).
class WeightFn {
 public:
  WeightFn(WeightKind kind, std::vector<ArgValue> args);

  static WeightFn conjecture_symbol(const ConjSymbolArgs& a);
  static WeightFn term(const TermArgs& a);
  static WeightFn tfidf(const TfIdfArgs& a);
  static WeightFn pref(const PrefArgs& a);
  static WeightFn lev(const EditArgs& a);
  static WeightFn ted(const EditArgs& a);
  static WeightFn struc(const StrucArgs& a);
  static WeightFn clauseweight(const ClauseweightArgs& a);
  static WeightFn refinedweight(const RefinedweightArgs& a);
  static WeightFn fifo() { return WeightFn(WeightKind::FIFOWeight, {}); }
  static WeightFn by_age() { return WeightFn(WeightKind::ByAge, {}); }

  WeightKind kind() const { return kind_; }
  std::span<const ArgValue> args() const { return args_; }

  ConjSymbolArgs conj_symbol_args() const;
  TermArgs term_args() const;
  TfIdfArgs tfidf_args() const;
  PrefArgs pref_args() const;
  EditArgs edit_args() const;
  StrucArgs struc_args() const;
  ClauseweightArgs clauseweight_args() const;
  RefinedweightArgs refinedweight_args() const;

  friend bool operator==(const WeightFn&, const WeightFn&) = default;

 private:
  const Rational& num(std::size_t i) const { return std::get<Rational>(args_[i]); }

  WeightKind kind_;
  std::vector<ArgValue> args_;
};

struct Cef {
  PriorityFn priority = PriorityFn::PreferAll;
  WeightFn weight = WeightFn::fifo();

  friend bool operator==(const Cef&, const Cef&) = default;
};

// `WeightFunction(PriorityFunction,arg1,...,argk)`.
Cef parse_cef(std::string_view text);
std::string render_cef(const Cef& cef);
std::string render_arg(const ArgValue& v);
ArgValue parse_arg(std::string_view text, ArgType type);

// ---------------------------------------------------------------------------
// Problem context

// The conjecture-side data every similarity weight consults.
class ConjectureIndex {
 public:
  ConjectureIndex() = default;
  explicit ConjectureIndex(const Problem& p);
  explicit ConjectureIndex(std::span<const Term> conjecture_atoms);

  bool empty() const { return terms_.empty(); }
  bool contains(const Term& t) const { return set_.contains(t); }
  bool contains_symbol(SymbolId s) const;
  // Distinct conjecture terms in compare_terms order.
  const std::vector<Term>& terms() const { return terms_; }
  const std::vector<std::vector<std::int32_t>>& sequences() const { return sequences_; }
  // Occurrences of t in the conjecture (tf).
  std::int64_t occurrences(const Term& t) const;
  // Longest prefix of preorder(t) shared with some conjecture term.
  std::size_t prefix_len(const Term& t) const;

 private:
  void build(std::span<const Term> atoms);

  TermSet set_;
  std::vector<Term> terms_;
  std::vector<std::vector<std::int32_t>> sequences_;
  std::unordered_map<Term, std::int64_t, TermHash> occurrences_;
  std::vector<SymbolId> symbols_;  // sorted
  // Trie over conjecture preorder sequences.
  std::vector<std::unordered_map<std::int32_t, std::uint32_t>> trie_;
};

// Document statistics for the tf-idf weight. Only conjecture terms are
// tracked since every other term has tf = 0.
class TfIdfContext {
 public:
  TfIdfContext() = default;
  explicit TfIdfContext(const ConjectureIndex& conj);

  // Explicit statistics; used by tests and by callers with their own corpora.
  TfIdfContext(std::unordered_map<Term, std::int64_t, TermHash> tf, std::int64_t documents,
               std::unordered_map<Term, std::int64_t, TermHash> df);

  void add_document(const Clause& c);

  std::int64_t tf(const Term& t) const;
  std::int64_t df(const Term& t) const;
  std::int64_t documents() const { return documents_; }

 private:
  std::unordered_map<Term, std::int64_t, TermHash> tf_;
  std::unordered_map<Term, std::int64_t, TermHash> df_;
  std::int64_t documents_ = 0;
};

struct WeightContext {
  const ConjectureIndex* conjecture = nullptr;
  const TfIdfContext* tfidf_ax = nullptr;
  const TfIdfContext* tfidf_pro = nullptr;
};

// Exact rational weight, or a floating one for tf-idf.
class Weight {
 public:
  Weight() = default;
  Weight(Rational q) : exact_(true), q_(q) {}  // NOLINT(runtime/explicit)
  Weight(double d) : exact_(false), d_(d) {}   // NOLINT(runtime/explicit)

  bool exact() const { return exact_; }
  const Rational& rational() const { return q_; }
  double value() const { return exact_ ? to_double(q_) : d_; }

  friend bool operator==(const Weight& a, const Weight& b);
  friend std::partial_ordering operator<=>(const Weight& a, const Weight& b);

 private:
  bool exact_ = true;
  Rational q_;
  double d_ = 0.0;
};

std::string to_string(const Weight& w);

// Per-term memo for the distance weights; owned by one evaluator.
using TermWeightCache = std::unordered_map<Term, Rational, TermHash>;

std::size_t shared_prefix_len(const Term& t, std::span<const Term> conj);
Rational pref_term_weight(const Term& t, std::span<const Term> conj, const PrefArgs& a);

// Weighted Levenshtein distance turning s1 into s2.
Rational lev_distance(std::span<const std::int32_t> s1, std::span<const std::int32_t> s2,
                      const EditArgs& a);
// Zhang-Shasha ordered tree edit distance turning t1 into t2.
Rational ted_distance(const Term& t1, const Term& t2, const EditArgs& a);
Rational struc_distance(const Term& t1, const Term& t2, const StrucArgs& a);

double tfidf_value(const Term& t, const TfIdfContext& ctx);

// Throws std::invalid_argument when ctx lacks what the function needs.
Weight clause_weight(const WeightFn& wf, const Clause& c, const WeightContext& ctx,
                     TermWeightCache* cache = nullptr);
std::int64_t clause_priority(PriorityFn pf, const Clause& c);

struct CefValue {
  std::int64_t priority = 0;
  Weight weight;
};

CefValue evaluate_cef(const Cef& cef, const Clause& c, const WeightContext& ctx,
                      TermWeightCache* cache = nullptr);

// Lexicographic (priority, weight, clause id) order; true when a is picked first.
bool selects_before(const CefValue& a, ClauseId a_id, const CefValue& b, ClauseId b_id);

}  // namespace strathive

#endif  // STRATHIVE_WEIGHTS_HPP
