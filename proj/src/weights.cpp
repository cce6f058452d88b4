#include "strathive/weights.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace strathive {
namespace {

constexpr ArgType kConjSymbolTypes[] = {ArgType::multiplier, ArgType::symbol_weight,
                                        ArgType::symbol_weight, ArgType::symbol_weight,
                                        ArgType::symbol_weight};
constexpr ArgType kTfidfTypes[] = {ArgType::doc_source};
constexpr ArgType kPrefTypes[] = {ArgType::cost, ArgType::cost};
constexpr ArgType kEditTypes[] = {ArgType::cost, ArgType::cost, ArgType::cost};
constexpr ArgType kClauseweightTypes[] = {ArgType::signed_weight, ArgType::signed_weight,
                                          ArgType::multiplier};
constexpr ArgType kRefinedweightTypes[] = {ArgType::symbol_weight, ArgType::symbol_weight,
                                           ArgType::multiplier, ArgType::multiplier,
                                           ArgType::multiplier};

std::int64_t lcm3(const Rational& a, const Rational& b, const Rational& c) {
  return std::lcm(std::lcm(a.denominator(), b.denominator()), c.denominator());
}

std::int64_t scaled(const Rational& q, std::int64_t scale) {
  return (q * scale).numerator();
}

}  // namespace

std::string_view priority_name(PriorityFn p) {
  switch (p) {
    case PriorityFn::PreferAll: return "PreferAll";
    case PriorityFn::PreferGoals: return "PreferGoals";
    case PriorityFn::PreferNonGoals: return "PreferNonGoals";
    case PriorityFn::ByCreationDate: return "ByCreationDate";
    case PriorityFn::PreferUnitGroundGoals: return "PreferUnitGroundGoals";
  }
  return "?";
}

std::string_view weight_name(WeightKind k) {
  switch (k) {
    case WeightKind::ConjectureSymbolWeight: return "ConjectureSymbolWeight";
    case WeightKind::Term: return "Term";
    case WeightKind::Tfidf: return "Tfidf";
    case WeightKind::Pref: return "Pref";
    case WeightKind::Lev: return "Lev";
    case WeightKind::Ted: return "Ted";
    case WeightKind::Struc: return "Struc";
    case WeightKind::Clauseweight: return "Clauseweight";
    case WeightKind::Refinedweight: return "Refinedweight";
    case WeightKind::FIFOWeight: return "FIFOWeight";
    case WeightKind::ByAge: return "ByAge";
  }
  return "?";
}

std::span<const ArgType> arg_types(WeightKind k) {
  switch (k) {
    case WeightKind::ConjectureSymbolWeight:
    case WeightKind::Term: return kConjSymbolTypes;
    case WeightKind::Tfidf: return kTfidfTypes;
    case WeightKind::Pref: return kPrefTypes;
    case WeightKind::Lev:
    case WeightKind::Ted:
    case WeightKind::Struc: return kEditTypes;
    case WeightKind::Clauseweight: return kClauseweightTypes;
    case WeightKind::Refinedweight: return kRefinedweightTypes;
    case WeightKind::FIFOWeight:
    case WeightKind::ByAge: return {};
  }
  return {};
}

WeightFn::WeightFn(WeightKind kind, std::vector<ArgValue> args) : kind_(kind), args_(std::move(args)) {
  const auto types = arg_types(kind);
  if (args_.size() != types.size()) {
    throw std::invalid_argument(std::string(weight_name(kind)) + " takes " +
                                std::to_string(types.size()) + " arguments, got " +
                                std::to_string(args_.size()));
  }
  for (std::size_t i = 0; i < types.size(); ++i) {
    const bool want_doc = types[i] == ArgType::doc_source;
    if (want_doc != std::holds_alternative<DocSource>(args_[i])) {
      throw std::invalid_argument(std::string(weight_name(kind)) + ": argument " +
                                  std::to_string(i + 1) + " has the wrong type");
    }
  }
}

WeightFn WeightFn::conjecture_symbol(const ConjSymbolArgs& a) {
  return WeightFn(WeightKind::ConjectureSymbolWeight, {a.gamma_conj, a.c_f, a.c_c, a.c_p, a.c_v});
}
WeightFn WeightFn::term(const TermArgs& a) {
  return WeightFn(WeightKind::Term, {a.gamma_conj, a.c_f, a.c_c, a.c_p, a.c_v});
}
WeightFn WeightFn::tfidf(const TfIdfArgs& a) { return WeightFn(WeightKind::Tfidf, {a.doc_source}); }
WeightFn WeightFn::pref(const PrefArgs& a) { return WeightFn(WeightKind::Pref, {a.c_match, a.c_miss}); }
WeightFn WeightFn::lev(const EditArgs& a) { return WeightFn(WeightKind::Lev, {a.c_ins, a.c_del, a.c_ch}); }
WeightFn WeightFn::ted(const EditArgs& a) { return WeightFn(WeightKind::Ted, {a.c_ins, a.c_del, a.c_ch}); }
WeightFn WeightFn::struc(const StrucArgs& a) {
  return WeightFn(WeightKind::Struc, {a.c_miss, a.c_inst, a.c_gen});
}
WeightFn WeightFn::clauseweight(const ClauseweightArgs& a) {
  return WeightFn(WeightKind::Clauseweight, {a.symbol, a.variable, a.positive_mult});
}
WeightFn WeightFn::refinedweight(const RefinedweightArgs& a) {
  return WeightFn(WeightKind::Refinedweight,
                  {a.symbol, a.variable, a.max_term_mult, a.max_literal_mult, a.positive_mult});
}

ConjSymbolArgs WeightFn::conj_symbol_args() const { return {num(0), num(1), num(2), num(3), num(4)}; }
TermArgs WeightFn::term_args() const { return {num(0), num(1), num(2), num(3), num(4)}; }
TfIdfArgs WeightFn::tfidf_args() const { return {std::get<DocSource>(args_[0])}; }
PrefArgs WeightFn::pref_args() const { return {num(0), num(1)}; }
EditArgs WeightFn::edit_args() const { return {num(0), num(1), num(2)}; }
StrucArgs WeightFn::struc_args() const { return {num(0), num(1), num(2)}; }
ClauseweightArgs WeightFn::clauseweight_args() const { return {num(0), num(1), num(2)}; }
RefinedweightArgs WeightFn::refinedweight_args() const {
  return {num(0), num(1), num(2), num(3), num(4)};
}

// ---------------------------------------------------------------------------
// Text syntax

std::string render_arg(const ArgValue& v) {
  if (const auto* d = std::get_if<DocSource>(&v)) return *d == DocSource::ax ? "ax" : "pro";
  return format_rational(std::get<Rational>(v));
}

ArgValue parse_arg(std::string_view text, ArgType type) {
  if (type == ArgType::doc_source) {
    if (text == "ax") return DocSource::ax;
    if (text == "pro") return DocSource::pro;
    throw std::invalid_argument("expected 'ax' or 'pro', found '" + std::string(text) + "'");
  }
  return parse_rational(text);
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Cef parse_cef(std::string_view text) {
  text = trim(text);
  const auto open = text.find('(');
  if (open == std::string_view::npos || text.back() != ')') {
    throw std::invalid_argument("malformed CEF '" + std::string(text) + "'");
  }
  const std::string_view name = trim(text.substr(0, open));
  std::vector<std::string_view> parts;
  std::string_view inner = text.substr(open + 1, text.size() - open - 2);
  while (true) {
    const auto comma = inner.find(',');
    parts.push_back(trim(inner.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    inner.remove_prefix(comma + 1);
  }

  WeightKind kind{};
  bool found = false;
  for (WeightKind k : kAllWeightKinds) {
    if (weight_name(k) == name) {
      kind = k;
      found = true;
    }
  }
  if (!found) throw std::invalid_argument("unknown weight function '" + std::string(name) + "'");

  Cef cef;
  found = false;
  for (PriorityFn p : kAllPriorities) {
    if (priority_name(p) == parts[0]) {
      cef.priority = p;
      found = true;
    }
  }
  if (!found) throw std::invalid_argument("unknown priority function '" + std::string(parts[0]) + "'");

  const auto types = arg_types(kind);
  if (parts.size() - 1 != types.size()) {
    throw std::invalid_argument(std::string(name) + " takes " + std::to_string(types.size()) +
                                " arguments, got " + std::to_string(parts.size() - 1));
  }
  std::vector<ArgValue> args;
  for (std::size_t i = 0; i < types.size(); ++i) args.push_back(parse_arg(parts[i + 1], types[i]));
  cef.weight = WeightFn(kind, std::move(args));
  return cef;
}

std::string render_cef(const Cef& cef) {
  std::string out(weight_name(cef.weight.kind()));
  out += '(';
  out += priority_name(cef.priority);
  for (const ArgValue& a : cef.weight.args()) {
    out += ',';
    out += render_arg(a);
  }
  out += ')';
  return out;
}

// ---------------------------------------------------------------------------
// Context

ConjectureIndex::ConjectureIndex(const Problem& p) {
  std::vector<Term> atoms;
  for (const Clause& c : p.clauses) {
    if (c.role != ClauseRole::negated_conjecture) continue;
    for (const Literal& l : c.literals) atoms.push_back(l.atom);
  }
  build(atoms);
}

ConjectureIndex::ConjectureIndex(std::span<const Term> conjecture_atoms) { build(conjecture_atoms); }

void ConjectureIndex::build(std::span<const Term> atoms) {
  for (const Term& atom : atoms) {
    for_each_subterm(atom, [&](const Term& s) {
      ++occurrences_[s];
      if (set_.insert(s).second) terms_.push_back(s);
      if (!s.is_variable()) symbols_.push_back(s.symbol());
    });
  }
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return compare_terms(a, b) < 0; });
  std::sort(symbols_.begin(), symbols_.end());
  symbols_.erase(std::unique(symbols_.begin(), symbols_.end()), symbols_.end());

  trie_.emplace_back();
  for (const Term& t : terms_) {
    sequences_.push_back(preorder(t));
    std::uint32_t node = 0;
    for (std::int32_t code : sequences_.back()) {
      auto it = trie_[node].find(code);
      if (it == trie_[node].end()) {
        const auto child = static_cast<std::uint32_t>(trie_.size());
        trie_[node].emplace(code, child);
        trie_.emplace_back();
        node = child;
      } else {
        node = it->second;
      }
    }
  }
}

bool ConjectureIndex::contains_symbol(SymbolId s) const {
  return std::binary_search(symbols_.begin(), symbols_.end(), s);
}

std::int64_t ConjectureIndex::occurrences(const Term& t) const {
  auto it = occurrences_.find(t);
  return it == occurrences_.end() ? 0 : it->second;
}

std::size_t ConjectureIndex::prefix_len(const Term& t) const {
  if (terms_.empty()) return 0;
  std::size_t matched = 0;
  std::uint32_t node = 0;
  bool done = false;
  auto step = [&](const Term& s, auto& self) -> void {
    if (done) return;
    auto it = trie_[node].find(s.code());
    if (it == trie_[node].end()) {
      done = true;
      return;
    }
    node = it->second;
    ++matched;
    for (const Term& a : s.args()) self(a, self);
  };
  step(t, step);
  return matched;
}

TfIdfContext::TfIdfContext(const ConjectureIndex& conj) {
  for (const Term& t : conj.terms()) {
    tf_.emplace(t, conj.occurrences(t));
    df_.emplace(t, 0);
  }
}

TfIdfContext::TfIdfContext(std::unordered_map<Term, std::int64_t, TermHash> tf, std::int64_t documents,
                           std::unordered_map<Term, std::int64_t, TermHash> df)
    : tf_(std::move(tf)), df_(std::move(df)), documents_(documents) {}

void TfIdfContext::add_document(const Clause& c) {
  ++documents_;
  if (tf_.empty()) return;
  TermSet seen;
  for (const Literal& l : c.literals) {
    for_each_subterm(l.atom, [&](const Term& s) {
      if (tf_.contains(s) && seen.insert(s).second) ++df_[s];
    });
  }
}

std::int64_t TfIdfContext::tf(const Term& t) const {
  auto it = tf_.find(t);
  return it == tf_.end() ? 0 : it->second;
}

std::int64_t TfIdfContext::df(const Term& t) const {
  auto it = df_.find(t);
  return it == df_.end() ? 0 : it->second;
}

bool operator==(const Weight& a, const Weight& b) {
  if (a.exact_ && b.exact_) return a.q_ == b.q_;
  return a.value() == b.value();
}

std::partial_ordering operator<=>(const Weight& a, const Weight& b) {
  if (a.exact_ && b.exact_) {
    if (a.q_ < b.q_) return std::partial_ordering::less;
    if (b.q_ < a.q_) return std::partial_ordering::greater;
    return std::partial_ordering::equivalent;
  }
  return a.value() <=> b.value();
}

std::string to_string(const Weight& w) {
  if (w.exact()) return format_rational(w.rational());
  return std::to_string(w.value());
}

// ---------------------------------------------------------------------------
// Distances

std::size_t shared_prefix_len(const Term& t, std::span<const Term> conj) {
  const auto seq = preorder(t);
  std::size_t best = 0;
  for (const Term& s : conj) {
    const auto other = preorder(s);
    std::size_t i = 0;
    while (i < seq.size() && i < other.size() && seq[i] == other[i]) ++i;
    best = std::max(best, i);
  }
  return best;
}

Rational pref_term_weight(const Term& t, std::span<const Term> conj, const PrefArgs& a) {
  const auto p = static_cast<std::int64_t>(shared_prefix_len(t, conj));
  const auto n = static_cast<std::int64_t>(t.size());
  return a.c_match * p + a.c_miss * (n - p);
}

Rational lev_distance(std::span<const std::int32_t> s1, std::span<const std::int32_t> s2,
                      const EditArgs& a) {
  const std::int64_t scale = lcm3(a.c_ins, a.c_del, a.c_ch);
  const std::int64_t ins = scaled(a.c_ins, scale);
  const std::int64_t del = scaled(a.c_del, scale);
  const std::int64_t ch = scaled(a.c_ch, scale);
  std::vector<std::int64_t> prev(s2.size() + 1);
  std::vector<std::int64_t> cur(s2.size() + 1);
  for (std::size_t j = 0; j <= s2.size(); ++j) prev[j] = static_cast<std::int64_t>(j) * ins;
  for (std::size_t i = 1; i <= s1.size(); ++i) {
    cur[0] = static_cast<std::int64_t>(i) * del;
    for (std::size_t j = 1; j <= s2.size(); ++j) {
      const std::int64_t sub = prev[j - 1] + (s1[i - 1] == s2[j - 1] ? 0 : ch);
      cur[j] = std::min({prev[j] + del, cur[j - 1] + ins, sub});
    }
    std::swap(prev, cur);
  }
  return Rational(prev[s2.size()], scale);
}

namespace {

// Postorder view used by Zhang-Shasha; nodes are numbered 1..n.
struct PostorderTree {
  std::vector<std::int32_t> label{0};
  std::vector<std::size_t> leftmost{0};
  std::vector<std::size_t> keyroots;

  explicit PostorderTree(const Term& t) {
    label.reserve(t.size() + 1);
    leftmost.reserve(t.size() + 1);
    visit(t);
    const std::size_t n = label.size() - 1;
    std::vector<bool> seen(n + 1, false);
    for (std::size_t i = n; i >= 1; --i) {
      if (!seen[leftmost[i]]) {
        keyroots.push_back(i);
        seen[leftmost[i]] = true;
      }
    }
    std::reverse(keyroots.begin(), keyroots.end());
  }

  std::size_t visit(const Term& t) {
    std::size_t first_leaf = 0;
    for (const Term& a : t.args()) {
      const std::size_t l = visit(a);
      if (first_leaf == 0) first_leaf = l;
    }
    label.push_back(t.code());
    const std::size_t self = label.size() - 1;
    leftmost.push_back(first_leaf == 0 ? self : first_leaf);
    return leftmost.back();
  }

  std::size_t size() const { return label.size() - 1; }
};

}  // namespace

Rational ted_distance(const Term& t1, const Term& t2, const EditArgs& a) {
  const std::int64_t scale = lcm3(a.c_ins, a.c_del, a.c_ch);
  const std::int64_t ins = scaled(a.c_ins, scale);
  const std::int64_t del = scaled(a.c_del, scale);
  const std::int64_t ch = scaled(a.c_ch, scale);

  const PostorderTree x(t1);
  const PostorderTree y(t2);
  const std::size_t n = x.size();
  const std::size_t m = y.size();
  std::vector<std::int64_t> tree(static_cast<std::size_t>((n + 1) * (m + 1)), 0);
  auto td = [&](std::size_t i, std::size_t j) -> std::int64_t& { return tree[i * (m + 1) + j]; };
  std::vector<std::int64_t> forest;

  for (std::size_t i : x.keyroots) {
    for (std::size_t j : y.keyroots) {
      const std::size_t li = x.leftmost[i];
      const std::size_t lj = y.leftmost[j];
      const std::size_t rows = i - li + 2;
      const std::size_t cols = j - lj + 2;
      forest.assign(rows * cols, 0);
      auto fd = [&](std::size_t r, std::size_t c) -> std::int64_t& { return forest[r * cols + c]; };
      for (std::size_t r = 1; r < rows; ++r) fd(r, 0) = fd(r - 1, 0) + del;
      for (std::size_t c = 1; c < cols; ++c) fd(0, c) = fd(0, c - 1) + ins;
      for (std::size_t di = li; di <= i; ++di) {
        const std::size_t r = di - li + 1;
        for (std::size_t dj = lj; dj <= j; ++dj) {
          const std::size_t c = dj - lj + 1;
          const std::int64_t drop = fd(r - 1, c) + del;
          const std::int64_t add = fd(r, c - 1) + ins;
          if (x.leftmost[di] == li && y.leftmost[dj] == lj) {
            const std::int64_t rename = fd(r - 1, c - 1) + (x.label[di] == y.label[dj] ? 0 : ch);
            fd(r, c) = std::min({drop, add, rename});
            td(di, dj) = fd(r, c);
          } else {
            const std::size_t pr = x.leftmost[di] - li;
            const std::size_t pc = y.leftmost[dj] - lj;
            fd(r, c) = std::min({drop, add, fd(pr, pc) + td(di, dj)});
          }
        }
      }
    }
  }
  return Rational(td(n, m), scale);
}

Rational struc_distance(const Term& t1, const Term& t2, const StrucArgs& a) {
  if (t1.is_variable() && t2.is_variable()) {
    return t1.var_index() == t2.var_index() ? Rational(0) : a.c_miss;
  }
  if (t1.is_variable()) return a.c_inst * static_cast<std::int64_t>(t2.size());
  if (t2.is_variable()) return a.c_gen * static_cast<std::int64_t>(t1.size());
  if (t1.symbol() == t2.symbol() && t1.arity() == t2.arity()) {
    Rational sum(0);
    for (std::size_t i = 0; i < t1.arity(); ++i) sum += struc_distance(t1.args()[i], t2.args()[i], a);
    return sum;
  }
  return a.c_gen * static_cast<std::int64_t>(t1.size()) + a.c_inst * static_cast<std::int64_t>(t2.size());
}

double tfidf_value(const Term& t, const TfIdfContext& ctx) {
  const std::int64_t tf = ctx.tf(t);
  if (tf == 0) return 0.0;
  const double ratio = static_cast<double>(1 + ctx.documents()) / static_cast<double>(1 + ctx.df(t));
  return static_cast<double>(tf) * std::log(ratio);
}

// ---------------------------------------------------------------------------
// Clause weights

namespace {

const ConjectureIndex& need_conjecture(const WeightContext& ctx, WeightKind k) {
  if (ctx.conjecture == nullptr) {
    throw std::invalid_argument(std::string(weight_name(k)) + " requires conjecture context");
  }
  return *ctx.conjecture;
}

// Weight of one subterm under a distance-style function.
template <typename F>
Rational cached(TermWeightCache* cache, const Term& t, F&& compute) {
  if (cache == nullptr) return compute();
  if (auto it = cache->find(t); it != cache->end()) return it->second;
  Rational v = compute();
  cache->emplace(t, v);
  return v;
}

Rational max_cost(const EditArgs& a) { return std::max({a.c_ins, a.c_del, a.c_ch}); }

Rational min_edit_distance(const Term& t, const ConjectureIndex& conj, const EditArgs& a, bool tree) {
  const auto size = static_cast<std::int64_t>(t.size());
  if (conj.empty()) return max_cost(a) * (2 * size);
  Rational best;
  bool first = true;
  std::vector<std::int32_t> seq;
  if (!tree) seq = preorder(t);
  for (std::size_t i = 0; i < conj.terms().size(); ++i) {
    Rational d = tree ? ted_distance(t, conj.terms()[i], a) : lev_distance(seq, conj.sequences()[i], a);
    if (first || d < best) {
      best = d;
      first = false;
    }
    if (best == Rational(0)) break;
  }
  return best;
}

Rational min_struc_distance(const Term& t, const ConjectureIndex& conj, const StrucArgs& a) {
  if (conj.empty()) return a.c_gen * static_cast<std::int64_t>(t.size());
  Rational best;
  bool first = true;
  for (const Term& s : conj.terms()) {
    Rational d = struc_distance(t, s, a);
    if (first || d < best) {
      best = d;
      first = false;
    }
    if (best == Rational(0)) break;
  }
  return best;
}

struct SymbolCounts {
  std::int64_t symbols = 0;
  std::int64_t variables = 0;
};

SymbolCounts count_symbols(const Term& t) {
  SymbolCounts n;
  for_each_subterm(t, [&](const Term& s) {
    if (s.is_variable()) ++n.variables;
    else ++n.symbols;
  });
  return n;
}

Rational standard_weight(const Term& t, const Rational& fw, const Rational& vw) {
  const SymbolCounts n = count_symbols(t);
  return fw * n.symbols + vw * n.variables;
}

template <typename Args>
Rational kind_coefficient(const Term& s, bool is_atom, const Args& a) {
  if (is_atom) return a.c_p;
  if (s.is_variable()) return a.c_v;
  return s.arity() == 0 ? a.c_c : a.c_f;
}

Rational refined_literal_weight(const Literal& l, const RefinedweightArgs& a) {
  const Term& atom = l.atom;
  if (atom.arity() == 2 && !atom.is_variable()) {
    // Equations, and binary atoms generally, weigh their heavier side up.
    const Rational lhs = standard_weight(atom.args()[0], a.symbol, a.variable);
    const Rational rhs = standard_weight(atom.args()[1], a.symbol, a.variable);
    if (lhs != rhs) {
      return a.symbol + std::max(lhs, rhs) * a.max_term_mult + std::min(lhs, rhs);
    }
  }
  return standard_weight(atom, a.symbol, a.variable);
}

}  // namespace

Weight clause_weight(const WeightFn& wf, const Clause& c, const WeightContext& ctx, TermWeightCache* cache) {
  switch (wf.kind()) {
    case WeightKind::FIFOWeight:
    case WeightKind::ByAge:
      return Rational(c.created_at);

    case WeightKind::ConjectureSymbolWeight: {
      const ConjectureIndex& conj = need_conjecture(ctx, wf.kind());
      const ConjSymbolArgs a = wf.conj_symbol_args();
      Rational sum(0);
      for (const Literal& l : c.literals) {
        bool top = true;
        for_each_subterm(l.atom, [&](const Term& s) {
          Rational w = kind_coefficient(s, top, a);
          top = false;
          if (!s.is_variable() && conj.contains_symbol(s.symbol())) w *= a.gamma_conj;
          sum += w;
        });
      }
      return sum;
    }

    case WeightKind::Term: {
      const ConjectureIndex& conj = need_conjecture(ctx, wf.kind());
      const TermArgs a = wf.term_args();
      Rational sum(0);
      for (const Literal& l : c.literals) {
        bool top = true;
        for_each_subterm(l.atom, [&](const Term& s) {
          Rational w = kind_coefficient(s, top, a);
          top = false;
          if (conj.contains(s)) w *= a.gamma_conj;
          sum += w;
        });
      }
      return sum;
    }

    case WeightKind::Tfidf: {
      const TfIdfContext* tc = wf.tfidf_args().doc_source == DocSource::ax ? ctx.tfidf_ax : ctx.tfidf_pro;
      if (tc == nullptr) throw std::invalid_argument("Tfidf requires document statistics");
      double sum = 0.0;
      for (const Literal& l : c.literals) {
        for_each_subterm(l.atom, [&](const Term& s) { sum += 1.0 / (1.0 + tfidf_value(s, *tc)); });
      }
      return sum;
    }

    case WeightKind::Pref: {
      const ConjectureIndex& conj = need_conjecture(ctx, wf.kind());
      const PrefArgs a = wf.pref_args();
      Rational sum(0);
      for (const Literal& l : c.literals) {
        for_each_subterm(l.atom, [&](const Term& s) {
          const auto p = static_cast<std::int64_t>(conj.prefix_len(s));
          const auto n = static_cast<std::int64_t>(s.size());
          sum += a.c_match * p + a.c_miss * (n - p);
        });
      }
      return sum;
    }

    case WeightKind::Lev:
    case WeightKind::Ted: {
      const ConjectureIndex& conj = need_conjecture(ctx, wf.kind());
      const EditArgs a = wf.edit_args();
      const bool tree = wf.kind() == WeightKind::Ted;
      Rational sum(0);
      for (const Literal& l : c.literals) {
        for_each_subterm(l.atom, [&](const Term& s) {
          sum += cached(cache, s, [&] { return min_edit_distance(s, conj, a, tree); });
        });
      }
      return sum;
    }

    case WeightKind::Struc: {
      const ConjectureIndex& conj = need_conjecture(ctx, wf.kind());
      const StrucArgs a = wf.struc_args();
      Rational sum(0);
      for (const Literal& l : c.literals) {
        for_each_subterm(l.atom, [&](const Term& s) {
          sum += cached(cache, s, [&] { return min_struc_distance(s, conj, a); });
        });
      }
      return sum;
    }

    case WeightKind::Clauseweight: {
      const ClauseweightArgs a = wf.clauseweight_args();
      Rational sum(0);
      for (const Literal& l : c.literals) {
        Rational w = standard_weight(l.atom, a.symbol, a.variable);
        if (l.positive) w *= a.positive_mult;
        sum += w;
      }
      return sum;
    }

    case WeightKind::Refinedweight: {
      const RefinedweightArgs a = wf.refinedweight_args();
      std::vector<Rational> base;
      base.reserve(c.literals.size());
      for (const Literal& l : c.literals) base.push_back(refined_literal_weight(l, a));
      Rational heaviest = base.empty() ? Rational(0) : *std::max_element(base.begin(), base.end());
      Rational sum(0);
      for (std::size_t i = 0; i < base.size(); ++i) {
        Rational w = base[i];
        if (w == heaviest) w *= a.max_literal_mult;
        if (c.literals[i].positive) w *= a.positive_mult;
        sum += w;
      }
      return sum;
    }
  }
  return Rational(0);
}

std::int64_t clause_priority(PriorityFn pf, const Clause& c) {
  switch (pf) {
    case PriorityFn::PreferAll: return 0;
    case PriorityFn::PreferGoals: return c.goal ? 0 : 1;
    case PriorityFn::PreferNonGoals: return c.goal ? 1 : 0;
    case PriorityFn::ByCreationDate: return c.created_at;
    case PriorityFn::PreferUnitGroundGoals:
      return c.goal && c.literals.size() == 1 && c.ground() ? 0 : 1;
  }
  return 0;
}

CefValue evaluate_cef(const Cef& cef, const Clause& c, const WeightContext& ctx, TermWeightCache* cache) {
  return CefValue{clause_priority(cef.priority, c), clause_weight(cef.weight, c, ctx, cache)};
}

bool selects_before(const CefValue& a, ClauseId a_id, const CefValue& b, ClauseId b_id) {
  if (a.priority != b.priority) return a.priority < b.priority;
  if (a.weight < b.weight) return true;
  if (b.weight < a.weight) return false;
  return a_id < b_id;
}

}  // namespace strathive
