#include "strathive/prover.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <climits>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace strathive {
namespace {

// ---------------------------------------------------------------------------
// Unification over two variable banks. Bank 0 holds the variables of the
// first premise, bank 1 those of the second, so premises never need renaming.

class Subst {
 public:
  Subst(std::uint32_t n0, std::uint32_t n1) : n0_(n0) {
    bind_[0].resize(n0);
    bind_[1].resize(n1);
  }

  bool unify(const Term& s, int sb, const Term& t, int tb) {
    std::vector<std::tuple<Term, int, Term, int>> stack;
    stack.emplace_back(s, sb, t, tb);
    while (!stack.empty()) {
      auto [a, ab, b, bb] = std::move(stack.back());
      stack.pop_back();
      deref(a, ab);
      deref(b, bb);
      if (a.is_variable() && b.is_variable() && ab == bb && a.var_index() == b.var_index()) continue;
      if (a.is_variable()) {
        if (occurs(a.var_index(), ab, b, bb)) return false;
        bind(ab, a.var_index(), b, bb);
        continue;
      }
      if (b.is_variable()) {
        if (occurs(b.var_index(), bb, a, ab)) return false;
        bind(bb, b.var_index(), a, ab);
        continue;
      }
      if (a.code() != b.code() || a.arity() != b.arity()) return false;
      if (ab == bb && a == b && a.ground()) continue;
      for (std::size_t i = 0; i < a.arity(); ++i) stack.emplace_back(a.args()[i], ab, b.args()[i], bb);
    }
    return true;
  }

  // Instantiates t; bank-1 variable j becomes n0 + j.
  Term apply(const Term& t, int bank) const {
    if (t.ground()) return t;
    Term u = t;
    int ub = bank;
    deref(u, ub);
    if (u.is_variable()) return Term::variable(ub == 0 ? u.var_index() : n0_ + u.var_index());
    if (u.ground()) return u;
    std::vector<Term> args;
    args.reserve(u.arity());
    for (const Term& a : u.args()) args.push_back(apply(a, ub));
    return Term::apply(u.symbol(), std::move(args));
  }

 private:
  struct Binding {
    Term term;
    int bank = 0;
  };

  void deref(Term& t, int& bank) const {
    while (t.is_variable()) {
      const Binding& b = bind_[bank][t.var_index()];
      if (!b.term.valid()) return;
      t = b.term;
      bank = b.bank;
    }
  }

  void bind(int bank, std::uint32_t v, const Term& t, int tb) { bind_[bank][v] = Binding{t, tb}; }

  bool occurs(std::uint32_t v, int vb, const Term& t, int tb) const {
    if (t.ground()) return false;
    Term u = t;
    int ub = tb;
    deref(u, ub);
    if (u.is_variable()) return ub == vb && u.var_index() == v;
    for (const Term& a : u.args()) {
      if (occurs(v, vb, a, ub)) return true;
    }
    return false;
  }

  std::uint32_t n0_;
  std::vector<Binding> bind_[2];
};

// One-way matching of a pattern onto a fixed target, with an undo trail.
class Matcher {
 public:

  bool match(const Term& pattern, const Term& target) {
    if (pattern.is_variable()) {
      if (pattern.var_index() >= bind_.size()) bind_.resize(pattern.var_index() + 1);
      Term& slot = bind_[pattern.var_index()];
      if (slot.valid()) return slot == target;
      slot = target;
      trail_.push_back(pattern.var_index());
      return true;
    }
    if (target.is_variable() || pattern.code() != target.code() || pattern.arity() != target.arity()) return false;
    if (pattern.ground()) return pattern == target;
    for (std::size_t i = 0; i < pattern.arity(); ++i) {
      if (!match(pattern.args()[i], target.args()[i])) return false;
    }
    return true;
  }

  std::size_t mark() const { return trail_.size(); }
  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      bind_[trail_.back()] = Term();
      trail_.pop_back();
    }
  }

 private:
  std::vector<Term> bind_;
  std::vector<std::uint32_t> trail_;
};

// Maps literal k.. of a injectively onto unused literals of b. Every literal
// pair tried costs one step; the search gives up (false) once `steps` runs out.
bool subsumes_from(const Clause& a, std::size_t k, const Clause& b, std::uint64_t used, Matcher& m,
                   std::int64_t& steps) {
  if (k == a.literals.size()) return true;
  const Literal& la = a.literals[k];
  for (std::size_t j = 0; j < b.literals.size(); ++j) {
    const Literal& lb = b.literals[j];
    if ((used >> j) & 1U || lb.positive != la.positive || lb.atom.code() != la.atom.code()) continue;
    if (--steps < 0) return false;
    const std::size_t mark = m.mark();
    if (m.match(la.atom, lb.atom) && subsumes_from(a, k + 1, b, used | (std::uint64_t{1} << j), m, steps)) {
      return true;
    }
    m.undo(mark);
    if (steps < 0) return false;
  }
  return false;
}

bool subsumes_with(const Clause& a, const Clause& b, Matcher& m, std::int64_t steps) {
  // Clauses beyond 64 literals are never treated as subsumed.
  if (a.literals.size() > b.literals.size() || b.literals.size() > 64) return false;
  m.undo(0);
  const bool found = subsumes_from(a, 0, b, 0, m, steps);
  m.undo(0);
  return found;
}

// Removes repeated literals and renumbers variables.
void canonicalize(std::vector<Literal>& lits) {
  normalize_variables(lits);
  std::vector<Literal> out;
  out.reserve(lits.size());
  for (Literal& l : lits) {
    if (std::find(out.begin(), out.end(), l) == out.end()) out.push_back(std::move(l));
  }
  lits = std::move(out);
}

Clause derived_clause(std::vector<Literal> lits, Inference inf, std::vector<std::pair<int, int>> used) {
  canonicalize(lits);
  Clause c;
  c.literals = std::move(lits);
  c.role = ClauseRole::derived;
  c.inference = inf;
  c.parent_literals = std::move(used);
  return c;
}

std::optional<Clause> resolve_pair(const Clause& a, std::size_t i, const Clause& b, std::size_t j) {
  const Literal& la = a.literals[i];
  const Literal& lb = b.literals[j];
  if (la.positive == lb.positive || la.atom.code() != lb.atom.code()) return std::nullopt;
  Subst s(a.var_bound(), b.var_bound());
  if (!s.unify(la.atom, 0, lb.atom, 1)) return std::nullopt;
  std::vector<Literal> lits;
  lits.reserve(a.literals.size() + b.literals.size() - 2);
  for (std::size_t k = 0; k < a.literals.size(); ++k) {
    if (k != i) lits.push_back(Literal{a.literals[k].positive, s.apply(a.literals[k].atom, 0)});
  }
  for (std::size_t k = 0; k < b.literals.size(); ++k) {
    if (k != j) lits.push_back(Literal{b.literals[k].positive, s.apply(b.literals[k].atom, 1)});
  }
  Clause c = derived_clause(std::move(lits), Inference::resolution,
                            {{0, static_cast<int>(i)}, {1, static_cast<int>(j)}});
  c.parents = {a.id, b.id};
  return c;
}

std::optional<Clause> factor_pair(const Clause& c, std::size_t i, std::size_t j) {
  const Literal& li = c.literals[i];
  const Literal& lj = c.literals[j];
  if (li.positive != lj.positive || li.atom.code() != lj.atom.code()) return std::nullopt;
  Subst s(c.var_bound(), 0);
  if (!s.unify(li.atom, 0, lj.atom, 0)) return std::nullopt;
  std::vector<Literal> lits;
  for (std::size_t k = 0; k < c.literals.size(); ++k) {
    if (k != j) lits.push_back(Literal{c.literals[k].positive, s.apply(c.literals[k].atom, 0)});
  }
  Clause f = derived_clause(std::move(lits), Inference::factoring, {{0, static_cast<int>(i)}, {0, static_cast<int>(j)}});
  f.parents = {c.id};
  return f;
}

bool has_selection(const Clause& c, const CalculusConfig& cfg) {
  if (cfg.selection == LiteralSelection::none) return false;
  return std::any_of(c.literals.begin(), c.literals.end(), [](const Literal& l) { return !l.positive; });
}

void count_vars(const Term& t, std::vector<int>& counts, int delta) {
  if (t.is_variable()) {
    if (counts.size() <= t.var_index()) counts.resize(t.var_index() + 1, 0);
    counts[t.var_index()] += delta;
    return;
  }
  for (const Term& a : t.args()) count_vars(a, counts, delta);
}

bool precedes(const Term& s, const Term& t) {
  if (s.arity() != t.arity()) return s.arity() > t.arity();
  return s.symbol() > t.symbol();
}

bool kbo_greater_checked(const Term& s, const Term& t) {
  if (s.is_variable()) return false;
  if (t.is_variable()) return true;  // the variable condition already put t inside s
  if (s.size() != t.size()) return s.size() > t.size();
  if (s.code() != t.code()) return precedes(s, t);
  for (std::size_t i = 0; i < s.arity(); ++i) {
    if (s.args()[i] != t.args()[i]) return kbo_greater(s.args()[i], t.args()[i]);
  }
  return false;
}

std::size_t estimate_bytes(const Clause& c) {
  std::size_t n = 160;
  for (const Literal& l : c.literals) n += 64 * l.atom.size();
  return n;
}

}  // namespace

std::string_view status_name(ProverStatus s) {
  switch (s) {
    case ProverStatus::proved: return "proved";
    case ProverStatus::saturated: return "saturated";
    case ProverStatus::resource_out: return "resource_out";
  }
  return "resource_out";
}

bool kbo_greater(const Term& s, const Term& t) {
  if (s == t) return false;
  std::vector<int> counts;
  count_vars(s, counts, 1);
  count_vars(t, counts, -1);
  if (std::any_of(counts.begin(), counts.end(), [](int c) { return c < 0; })) return false;
  return kbo_greater_checked(s, t);
}

std::vector<bool> eligible_literals(const Clause& c, const CalculusConfig& cfg) {
  const std::size_t n = c.literals.size();
  std::vector<bool> out(n, true);
  if (has_selection(c, cfg)) {
    std::size_t pick = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (c.literals[i].positive) continue;
      if (pick == n) {
        pick = i;
        if (cfg.selection == LiteralSelection::select_first_negative) break;
      } else if (c.literals[i].atom.size() > c.literals[pick].atom.size()) {
        pick = i;
      }
    }
    std::fill(out.begin(), out.end(), false);
    out[pick] = true;
    return out;
  }
  if (cfg.ordering == TermOrdering::kbo) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n && out[i]; ++j) {
        if (j != i && kbo_greater(c.literals[j].atom, c.literals[i].atom)) out[i] = false;
      }
    }
  }
  return out;
}

bool is_tautology(const Clause& c) {
  for (std::size_t i = 0; i < c.literals.size(); ++i) {
    for (std::size_t j = i + 1; j < c.literals.size(); ++j) {
      if (c.literals[i].positive != c.literals[j].positive && c.literals[i].atom == c.literals[j].atom) return true;
    }
  }
  return false;
}

bool subsumes(const Clause& a, const Clause& b) {
  Matcher m;
  return subsumes_with(a, b, m, INT64_MAX);
}

std::vector<Clause> resolvents(const Clause& a, const Clause& b, const CalculusConfig& cfg) {
  const auto ea = eligible_literals(a, cfg);
  const auto eb = eligible_literals(b, cfg);
  std::vector<Clause> out;
  for (std::size_t i = 0; i < a.literals.size(); ++i) {
    if (!ea[i]) continue;
    for (std::size_t j = 0; j < b.literals.size(); ++j) {
      if (!eb[j]) continue;
      if (auto r = resolve_pair(a, i, b, j)) out.push_back(std::move(*r));
    }
  }
  return out;
}

std::vector<Clause> factors(const Clause& c, const CalculusConfig& cfg) {
  std::vector<Clause> out;
  if (has_selection(c, cfg)) return out;
  const auto el = eligible_literals(c, cfg);
  for (std::size_t i = 0; i < c.literals.size(); ++i) {
    for (std::size_t j = i + 1; j < c.literals.size(); ++j) {
      if (!el[i] && !el[j]) continue;
      if (auto f = factor_pair(c, i, j)) out.push_back(std::move(*f));
    }
  }
  return out;
}

std::vector<Clause> generate(const Clause& g, std::span<const Clause> processed, const CalculusConfig& cfg) {
  std::vector<Clause> out = factors(g, cfg);
  bool self_seen = false;
  for (const Clause& p : processed) {
    self_seen = self_seen || p.id == g.id;
    for (Clause& r : resolvents(g, p, cfg)) out.push_back(std::move(r));
  }
  if (!self_seen) {
    for (Clause& r : resolvents(g, g, cfg)) out.push_back(std::move(r));
  }
  return out;
}

// ---------------------------------------------------------------------------

ClauseQueue::ClauseQueue(const Protocol& protocol, WeightContext ctx)
    : cefs_(protocol.cefs), ctx_(ctx), caches_(cefs_.size()), heaps_(cefs_.size()) {
  if (cefs_.empty()) throw std::invalid_argument("protocol has no CEFs");
  remaining_ = cefs_[0].frequency;
}

bool ClauseQueue::alive(ClauseId id) const {
  return id >= 0 && static_cast<std::size_t>(id) < alive_.size() && alive_[static_cast<std::size_t>(id)] != 0;
}

void ClauseQueue::insert(const Clause& c) {
  if (c.id < 0) throw std::invalid_argument("clause ids must be non-negative");
  if (alive(c.id)) throw std::invalid_argument("clause already queued");
  for (std::size_t k = 0; k < cefs_.size(); ++k) {
    heaps_[k].push(Entry{evaluate_cef(cefs_[k].cef, c, ctx_, &caches_[k]), c.id});
  }
  const auto idx = static_cast<std::size_t>(c.id);
  if (alive_.size() <= idx) alive_.resize(idx + 1, 0);
  alive_[idx] = 1;
  ++alive_count_;
}

std::optional<ClauseId> ClauseQueue::select() {
  if (alive_count_ == 0) return std::nullopt;
  if (remaining_ == 0) {
    slot_ = (slot_ + 1) % cefs_.size();
    remaining_ = cefs_[slot_].frequency;
  }
  auto& heap = heaps_[slot_];
  while (!alive(heap.top().id)) heap.pop();
  const ClauseId id = heap.top().id;
  heap.pop();
  alive_[static_cast<std::size_t>(id)] = 0;
  --alive_count_;
  last_slot_ = slot_;
  --remaining_;
  return id;
}

// ---------------------------------------------------------------------------

namespace {

std::int32_t literal_key(const Literal& l) { return l.positive ? 2 * l.atom.code() : 2 * l.atom.code() + 1; }

// Literal counts and size sums per key bucket. Injective matching never
// decreases either, so a subsumer's features are bounded by the target's.
using Features = std::array<std::uint16_t, 16>;

Features features(const Clause& c) {
  Features f{};
  for (const Literal& l : c.literals) {
    const auto b = static_cast<std::uint32_t>(literal_key(l)) % 8;
    f[b] = static_cast<std::uint16_t>(std::min<std::size_t>(f[b] + 1, 0xFFFF));
    f[8 + b] = static_cast<std::uint16_t>(std::min<std::size_t>(f[8 + b] + l.atom.size(), 0xFFFF));
  }
  return f;
}

bool features_below(const Features& a, const Features& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

std::uint64_t literal_mask(const Clause& c) {
  std::uint64_t m = 0;
  for (const Literal& l : c.literals) m |= std::uint64_t{1} << (static_cast<std::uint32_t>(literal_key(l)) % 64);
  return m;
}

// Discrimination tree over literals, with variables collapsed to one wildcard
// symbol. Retrieval returns the clauses filed under generalizations of a
// query literal; repeated variables are left to the matcher.
class DiscriminationTree {
 public:
  void insert(const Literal& l, ClauseId id) {
    flatten(l);
    std::uint32_t node = 0;
    for (std::int32_t code : buf_) node = child_or_add(node, code);
    leaves_[node].push_back(id);
  }

  template <class F>
  void generalizations(const Literal& l, F&& visit) {
    flatten(l);
    skip_.assign(buf_.size(), 0);
    // skip_[i] is one past the subterm starting at i.
    std::vector<std::uint32_t> stack;
    for (std::size_t i = buf_.size(); i-- > 1;) {
      std::size_t end = i + 1;
      for (std::int32_t k = 0; k < arity_[i]; ++k) {
        end = stack.back();
        stack.pop_back();
      }
      skip_[i] = static_cast<std::uint32_t>(arity_[i] == 0 ? i + 1 : end);
      stack.push_back(skip_[i]);
    }
    auto it = edges_.find(edge(0, buf_[0]));
    if (it == edges_.end()) return;
    const auto q = buf_;
    const auto sk = skip_;
    walk(it->second, 1, q, sk, visit);
  }

 private:
  static constexpr std::int32_t kStar = INT32_MIN;

  void flatten(const Literal& l) {
    buf_.clear();
    arity_.clear();
    buf_.push_back(l.positive ? 2 * l.atom.code() : 2 * l.atom.code() + 1);
    arity_.push_back(0);
    for (const Term& t : l.atom.args()) push(t);
  }

  void push(const Term& t) {
    if (t.is_variable()) {
      buf_.push_back(kStar);
      arity_.push_back(0);
      return;
    }
    buf_.push_back(t.code());
    arity_.push_back(static_cast<std::int32_t>(t.arity()));
    for (const Term& a : t.args()) push(a);
  }

  static std::uint64_t edge(std::uint32_t node, std::int32_t code) {
    return (std::uint64_t{node} << 32) | static_cast<std::uint32_t>(code);
  }

  // Node 0 is the root.
  std::uint32_t child_or_add(std::uint32_t node, std::int32_t code) {
    auto [it, added] = edges_.try_emplace(edge(node, code), nodes_);
    if (added) ++nodes_;
    return it->second;
  }

  template <class F>
  void walk(std::uint32_t node, std::size_t pos, const std::vector<std::int32_t>& q,
            const std::vector<std::uint32_t>& sk, F& visit) const {
    if (pos == q.size()) {
      visit_leaves(node, visit);
      return;
    }
    if (q[pos] != kStar) {
      if (auto it = edges_.find(edge(node, q[pos])); it != edges_.end()) walk(it->second, pos + 1, q, sk, visit);
    }
    if (auto it = edges_.find(edge(node, kStar)); it != edges_.end()) walk(it->second, sk[pos], q, sk, visit);
  }

  template <class F>
  void visit_leaves(std::uint32_t node, F& visit) const {
    auto it = leaves_.find(node);
    if (it == leaves_.end()) return;
    for (ClauseId id : it->second) visit(id);
  }

  std::unordered_map<std::uint64_t, std::uint32_t> edges_;
  std::unordered_map<std::uint32_t, std::vector<ClauseId>> leaves_;
  std::uint32_t nodes_ = 1;
  std::vector<std::int32_t> buf_;
  std::vector<std::int32_t> arity_;
  std::vector<std::uint32_t> skip_;
};

std::size_t symbol_count(const Term& t) {
  if (t.is_variable()) return 0;
  std::size_t n = 1;
  for (const Term& a : t.args()) n += symbol_count(a);
  return n;
}

// The literal of c with the most function symbols, where it is filed in the
// subsumption index.
const Literal& filing_literal(const Clause& c) {
  const Literal* best = &c.literals.front();
  std::size_t best_count = symbol_count(best->atom);
  for (const Literal& l : c.literals) {
    const std::size_t n = symbol_count(l.atom);
    if (n > best_count) {
      best = &l;
      best_count = n;
    }
  }
  return *best;
}

// Budget for one subsumption test inside the prover. Tests between long
// clauses over a single predicate can otherwise backtrack for minutes.
constexpr std::int64_t kSubsumptionSteps = 1000;

class Saturation {
 public:
  Saturation(const Problem& problem, const Protocol& protocol, const Limits& limits)
      : limits_(limits),
        cfg_{protocol.ordering, protocol.literal_selection},
        conj_(problem),
        tfidf_ax_(conj_),
        tfidf_pro_(conj_),
        queue_(protocol, WeightContext{&conj_, &tfidf_ax_, &tfidf_pro_}) {
    for (const Clause& c : problem.clauses) {
      if (c.role == ClauseRole::axiom) tfidf_ax_.add_document(c);
    }
    input_ = &problem.clauses;
  }

  ProverResult run() {
    const auto start = std::chrono::steady_clock::now();
    ProverResult r = loop(start);
    r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.gc_loops = loops_;
    r.derived_count = derived_;
    if (r.status == ProverStatus::proved) r.proof = extract_proof();
    return r;
  }

 private:
  enum class State : char { unprocessed, processed, dead };

  ProverResult loop(std::chrono::steady_clock::time_point start) {
    ProverResult r;
    for (const Clause& c : *input_) {
      Clause copy = c;
      canonicalize(copy.literals);
      copy.inference = Inference::input;
      copy.parents.clear();
      copy.parent_literals.clear();
      if (copy.role == ClauseRole::negated_conjecture) copy.goal = true;
      if (keep(std::move(copy))) return proved();
    }

    while (true) {
      if (queue_.empty()) {
        r.status = ProverStatus::saturated;
        return r;
      }
      if (loops_ >= limits_.max_loops) return out_of("loops");
      if (std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() > limits_.max_seconds) {
        return out_of("time");
      }
      const ClauseId gid = *queue_.select();
      ++loops_;
      if (subsumed(store_[static_cast<std::size_t>(gid)], gid, true)) {
        state_[static_cast<std::size_t>(gid)] = State::dead;
        continue;
      }
      activate(gid);
      if (generate_from(gid)) return proved();
      if (derived_ >= limits_.max_clauses) return out_of("clauses");
      if (static_cast<std::int64_t>(bytes_ >> 20) >= limits_.max_memory_mb) return out_of("memory");
    }
  }

  ProverResult proved() {
    ProverResult r;
    r.status = ProverStatus::proved;
    return r;
  }

  ProverResult out_of(const char* what) {
    ProverResult r;
    r.status = ProverStatus::resource_out;
    r.exhausted = what;
    return r;
  }

  // Checks against processed clauses only, or against every retained one.
  bool subsumed(const Clause& c, ClauseId self, bool only_processed) {
    const std::uint64_t mask = literal_mask(c);
    const Features feat = features(c);
    ++stamp_;
    bool found = false;
    for (const Literal& l : c.literals) {
      subsumption_index_.generalizations(l, [&](ClauseId id) {
        if (found || id == self) return;
        const auto idx = static_cast<std::size_t>(id);
        if (seen_[idx] == stamp_) return;
        seen_[idx] = stamp_;
        const State st = state_[idx];
        if (st == State::dead || (only_processed && st != State::processed)) return;
        const Clause& d = store_[idx];
        if (d.literals.size() > c.literals.size() || (masks_[idx] & ~mask) != 0) return;
        if (!features_below(features_[idx], feat)) return;
        found = subsumes_with(d, c, matcher_, kSubsumptionSteps);
      });
      if (found) return true;
    }
    return false;
  }

  // Adds c unless redundant. Returns true when c is the empty clause.
  bool keep(Clause c) {
    if (c.role == ClauseRole::derived) ++derived_;
    if (c.literals.empty()) {
      c.id = static_cast<ClauseId>(store_.size());
      c.created_at = c.id;
      store_.push_back(std::move(c));
      state_.push_back(State::dead);
      masks_.push_back(0);
      features_.push_back({});
      seen_.push_back(0);
      empty_clause_ = store_.back().id;
      return true;
    }
    if (is_tautology(c) || subsumed(c, -1, false)) return false;
    c.id = static_cast<ClauseId>(store_.size());
    c.created_at = c.id;
    bytes_ += estimate_bytes(c);
    masks_.push_back(literal_mask(c));
    features_.push_back(features(c));
    state_.push_back(State::unprocessed);
    seen_.push_back(0);
    subsumption_index_.insert(filing_literal(c), c.id);
    store_.push_back(std::move(c));
    queue_.insert(store_.back());
    return false;
  }

  void activate(ClauseId gid) {
    const auto idx = static_cast<std::size_t>(gid);
    state_[idx] = State::processed;
    const Clause& g = store_[idx];
    tfidf_pro_.add_document(g);
    const auto el = eligible_literals(g, cfg_);
    eligible_.emplace(gid, el);
    for (std::size_t i = 0; i < g.literals.size(); ++i) {
      if (el[i]) resolution_index_[literal_key(g.literals[i])].emplace_back(gid, i);
    }
  }

  bool generate_from(ClauseId gid) {
    // store_ may grow below, so g is copied.
    const Clause g = store_[static_cast<std::size_t>(gid)];
    const bool goal = g.goal;
    for (Clause& f : factors(g, cfg_)) {
      f.goal = goal;
      if (keep(std::move(f))) return true;
      if (derived_ >= limits_.max_clauses) return false;
    }
    const std::vector<bool> el = eligible_.at(gid);
    for (std::size_t i = 0; i < g.literals.size(); ++i) {
      if (!el[i]) continue;
      const std::int32_t key = literal_key(g.literals[i]) ^ 1;
      auto it = resolution_index_.find(key);
      if (it == resolution_index_.end()) continue;
      // Entries appended while iterating belong to later given clauses.
      const std::size_t n = it->second.size();
      for (std::size_t k = 0; k < n; ++k) {
        const auto [pid, j] = it->second[k];
        const Clause& p = store_[static_cast<std::size_t>(pid)];
        auto r = resolve_pair(g, i, p, j);
        if (!r) continue;
        r->goal = goal || p.goal;
        if (keep(std::move(*r))) return true;
        if (derived_ >= limits_.max_clauses) return false;
      }
    }
    return false;
  }

  std::vector<Clause> extract_proof() const {
    std::vector<char> mark(store_.size(), 0);
    std::vector<ClauseId> todo{empty_clause_};
    while (!todo.empty()) {
      const auto idx = static_cast<std::size_t>(todo.back());
      todo.pop_back();
      if (mark[idx]) continue;
      mark[idx] = 1;
      for (ClauseId p : store_[idx].parents) todo.push_back(p);
    }
    std::vector<Clause> proof;
    for (std::size_t i = 0; i < store_.size(); ++i) {
      if (mark[i]) proof.push_back(store_[i]);
    }
    return proof;
  }

  Limits limits_;
  CalculusConfig cfg_;
  ConjectureIndex conj_;
  TfIdfContext tfidf_ax_;
  TfIdfContext tfidf_pro_;
  ClauseQueue queue_;
  const std::vector<Clause>* input_ = nullptr;

  std::vector<Clause> store_;
  std::vector<State> state_;
  std::vector<std::uint64_t> masks_;
  std::vector<Features> features_;
  Matcher matcher_;
  DiscriminationTree subsumption_index_;
  std::vector<std::uint32_t> seen_;
  std::uint32_t stamp_ = 0;
  std::unordered_map<std::int32_t, std::vector<std::pair<ClauseId, std::size_t>>> resolution_index_;
  std::unordered_map<ClauseId, std::vector<bool>> eligible_;
  std::int64_t loops_ = 0;
  std::int64_t derived_ = 0;
  std::size_t bytes_ = 0;
  ClauseId empty_clause_ = -1;
};

// Successor arithmetic: 3 + 5 among unrelated sums.
constexpr std::string_view kCalibrationProblem = R"(
cnf(a1,axiom,add(X,zero,X)).
cnf(a2,axiom,~add(X,Y,Z) | add(X,s(Y),s(Z))).
cnf(m1,axiom,mul(X,zero,zero)).
cnf(m2,axiom,~mul(X,Y,Z) | ~add(Z,X,W) | mul(X,s(Y),W)).
cnf(n1,axiom,add(s(s(zero)),s(zero),k1)).     cnf(n2,axiom,add(s(zero),s(s(s(zero))),k2)).
cnf(n3,axiom,add(s(s(s(zero))),s(zero),k3)).  cnf(n4,axiom,add(zero,s(s(zero)),k4)).
cnf(n5,axiom,add(s(zero),s(zero),k5)).        cnf(n6,axiom,add(s(s(zero)),s(s(zero)),k6)).
cnf(g,negated_conjecture,~add(s(s(s(zero))),s(s(s(s(s(zero))))),s(s(s(s(s(s(s(s(zero)))))))))).
)";

}  // namespace

ProverResult saturate(const Problem& problem, const Protocol& protocol, const Limits& limits) {
  return Saturation(problem, protocol, limits).run();
}

Limits Calibration::limits_for(double seconds) const {
  if (!(seconds > 0.0)) throw std::invalid_argument("time limit must be positive");
  Limits l;
  l.max_loops = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(seconds * loops_per_second)));
  l.max_clauses = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(seconds * clauses_per_second)));
  l.max_seconds = 20.0 * seconds + 1.0;
  return l;
}

Calibration Calibration::measure(double seconds) {
  const Problem p = parse_problem(kCalibrationProblem, "calibration");
  const Protocol proto = default_protocol();
  Limits lim;
  lim.max_loops = 20000;
  std::int64_t loops = 0;
  std::int64_t clauses = 0;
  const auto start = std::chrono::steady_clock::now();
  double elapsed = 0.0;
  do {
    const ProverResult r = saturate(p, proto, lim);
    loops += r.gc_loops;
    clauses += r.derived_count;
    elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  } while (elapsed < seconds);
  Calibration c;
  c.loops_per_second = static_cast<double>(loops) / elapsed;
  c.clauses_per_second = static_cast<double>(clauses) / elapsed;
  return c;
}

std::string render_proof(const std::vector<Clause>& proof, const Signature& sig) {
  std::string out;
  auto name_of = [](const Clause& c) { return "c" + std::to_string(c.id); };
  std::unordered_map<ClauseId, const Clause*> by_id;
  for (const Clause& c : proof) by_id[c.id] = &c;
  for (const Clause& c : proof) {
    const char* role = c.role == ClauseRole::negated_conjecture ? "negated_conjecture"
                       : c.role == ClauseRole::axiom            ? "axiom"
                                                                : "plain";
    out += "cnf(" + name_of(c) + "," + role + ",(" + render_clause(c, sig) + "),";
    if (c.inference == Inference::input) {
      out += "introduced(input)";
    } else {
      out += c.inference == Inference::resolution ? "inference(resolution,[" : "inference(factoring,[";
      for (std::size_t i = 0; i < c.parents.size(); ++i) {
        if (i > 0) out += ',';
        out += "c" + std::to_string(c.parents[i]);
      }
      out += "])";
    }
    out += ").\n";
  }
  return out;
}

Protocol default_protocol() {
  return parse_protocol("-tNONE -Wnone -H'(2*Clauseweight(PreferAll,1,1,1),1*FIFOWeight(PreferAll))'");
}

}  // namespace strathive
