#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <queue>
#include <set>
#include <unordered_map>

namespace oracle {

Rational naive_lev(const std::vector<int>& s1, const std::vector<int>& s2, Rational ins, Rational del, Rational ch) {
  std::function<Rational(std::size_t, std::size_t)> go = [&](std::size_t i, std::size_t j) -> Rational {
    if (i == 0) return ins * static_cast<std::int64_t>(j);
    if (j == 0) return del * static_cast<std::int64_t>(i);
    Rational best = go(i - 1, j) + del;
    best = std::min(best, go(i, j - 1) + ins);
    best = std::min(best, go(i - 1, j - 1) + (s1[i - 1] == s2[j - 1] ? Rational(0) : ch));
    return best;
  };
  return go(s1.size(), s2.size());
}

namespace {

std::size_t count_nodes(const Forest& f) {
  std::size_t n = 0;
  for (const Node& x : f) n += 1 + count_nodes(x.kids);
  return n;
}

void encode_into(const Forest& f, std::string& out) {
  for (const Node& x : f) {
    out += static_cast<char>('a' + x.label);
    if (!x.kids.empty()) {
      out += '(';
      encode_into(x.kids, out);
      out += ')';
    }
  }
}

enum class Op { ins, del, ch };

// Every forest one edit away from `level`, with the edit kind.
void one_edit(const Forest& level, int labels, bool may_grow, const std::function<void(Forest, Op)>& emit) {
  const std::size_t n = level.size();
  if (may_grow) {
    for (std::size_t i = 0; i <= n; ++i) {
      for (std::size_t j = i; j <= n; ++j) {
        for (int l = 0; l < labels; ++l) {
          Forest out(level.begin(), level.begin() + static_cast<std::ptrdiff_t>(i));
          Node fresh{l, Forest(level.begin() + static_cast<std::ptrdiff_t>(i), level.begin() + static_cast<std::ptrdiff_t>(j))};
          out.push_back(std::move(fresh));
          out.insert(out.end(), level.begin() + static_cast<std::ptrdiff_t>(j), level.end());
          emit(std::move(out), Op::ins);
        }
      }
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (int l = 0; l < labels; ++l) {
      if (l == level[k].label) continue;
      Forest out = level;
      out[k].label = l;
      emit(std::move(out), Op::ch);
    }
    Forest out(level.begin(), level.begin() + static_cast<std::ptrdiff_t>(k));
    out.insert(out.end(), level[k].kids.begin(), level[k].kids.end());
    out.insert(out.end(), level.begin() + static_cast<std::ptrdiff_t>(k + 1), level.end());
    emit(std::move(out), Op::del);
    one_edit(level[k].kids, labels, may_grow, [&](Forest kids, Op op) {
      Forest changed = level;
      changed[k].kids = std::move(kids);
      emit(std::move(changed), op);
    });
  }
}

}  // namespace

std::string encode(const Forest& f) {
  std::string out;
  encode_into(f, out);
  return out;
}

Forest forest_of(const strathive::Term& t) {
  Node n{t.code(), {}};
  for (const strathive::Term& a : t.args()) n.kids.push_back(forest_of(a)[0]);
  return {n};
}

EditScriptSearch::EditScriptSearch(int labels, std::size_t max_nodes, Rational ins, Rational del, Rational ch)
    : labels_(labels), max_nodes_(max_nodes), ins_(ins), del_(del), ch_(ch) {}

std::map<std::string, Rational> EditScriptSearch::distances_from(const Forest& from) const {
  using Item = std::pair<Rational, std::string>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> todo;
  std::unordered_map<std::string, Forest> forests;
  std::map<std::string, Rational> best;
  std::set<std::string> done;
  const std::string start = encode(from);
  forests[start] = from;
  best[start] = Rational(0);
  todo.emplace(Rational(0), start);
  while (!todo.empty()) {
    auto [d, key] = todo.top();
    todo.pop();
    if (!done.insert(key).second) continue;
    const Forest f = forests.at(key);
    one_edit(f, labels_, count_nodes(f) < max_nodes_, [&](Forest next, Op op) {
      const Rational step = op == Op::ins ? ins_ : op == Op::del ? del_ : ch_;
      std::string k = encode(next);
      auto it = best.find(k);
      if (it != best.end() && it->second <= d + step) return;
      best[k] = d + step;
      forests[k] = std::move(next);
      todo.emplace(d + step, std::move(k));
    });
  }
  return best;
}

std::vector<strathive::Term> small_terms(strathive::Signature& sig, std::size_t max_nodes) {
  using strathive::SymbolKind;
  using strathive::Term;
  const auto a = sig.intern("a", SymbolKind::constant, 0);
  const auto f = sig.intern("f", SymbolKind::function, 1);
  const auto g = sig.intern("g", SymbolKind::function, 2);
  std::vector<std::vector<Term>> by_size(max_nodes + 1);
  if (max_nodes >= 1) by_size[1].push_back(Term::constant(a));
  for (std::size_t n = 2; n <= max_nodes; ++n) {
    for (const Term& t : by_size[n - 1]) by_size[n].push_back(Term::apply(f, {t}));
    for (std::size_t l = 1; l + 1 < n; ++l) {
      for (const Term& x : by_size[l]) {
        for (const Term& y : by_size[n - 1 - l]) by_size[n].push_back(Term::apply(g, {x, y}));
      }
    }
  }
  std::vector<Term> all;
  for (auto& v : by_size) all.insert(all.end(), v.begin(), v.end());
  return all;
}

// ---------------------------------------------------------------------------
// Proof audit

namespace {

struct T {
  int var = -1;  // >= 0 for variables
  int sym = 0;
  std::vector<T> args;
  friend bool operator==(const T&, const T&) = default;
};

struct L {
  bool positive;
  T atom;
  friend bool operator==(const L&, const L&) = default;
};

T convert(const strathive::Term& t, int offset) {
  if (t.is_variable()) return T{static_cast<int>(t.var_index()) + offset, 0, {}};
  T out{-1, t.symbol(), {}};
  for (const strathive::Term& a : t.args()) out.args.push_back(convert(a, offset));
  return out;
}

std::vector<L> convert(const strathive::Clause& c, int offset) {
  std::vector<L> out;
  for (const strathive::Literal& l : c.literals) out.push_back(L{l.positive, convert(l.atom, offset)});
  return out;
}

using Sub = std::map<int, T>;

T walk(const T& t, const Sub& s) {
  if (t.var >= 0) {
    auto it = s.find(t.var);
    return it == s.end() ? t : walk(it->second, s);
  }
  T out{-1, t.sym, {}};
  for (const T& a : t.args) out.args.push_back(walk(a, s));
  return out;
}

bool occurs(int v, const T& t) {
  if (t.var >= 0) return t.var == v;
  return std::any_of(t.args.begin(), t.args.end(), [&](const T& a) { return occurs(v, a); });
}

bool unify(const T& x, const T& y, Sub& s) {
  const T a = walk(x, s);
  const T b = walk(y, s);
  if (a.var >= 0 && b.var >= 0 && a.var == b.var) return true;
  if (a.var >= 0) {
    if (occurs(a.var, b)) return false;
    s[a.var] = b;
    return true;
  }
  if (b.var >= 0) return unify(b, a, s);
  if (a.sym != b.sym || a.args.size() != b.args.size()) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (!unify(a.args[i], b.args[i], s)) return false;
  }
  return true;
}

void rename(T& t, std::map<int, int>& names) {
  if (t.var >= 0) {
    auto [it, fresh] = names.emplace(t.var, static_cast<int>(names.size()));
    t.var = it->second;
    return;
  }
  for (T& a : t.args) rename(a, names);
}

// Variables renumbered by first occurrence, then repeated literals dropped.
std::vector<L> normal(std::vector<L> lits) {
  std::map<int, int> names;
  for (L& l : lits) rename(l.atom, names);
  std::vector<L> out;
  for (L& l : lits) {
    if (std::find(out.begin(), out.end(), l) == out.end()) out.push_back(std::move(l));
  }
  return out;
}

}  // namespace

std::string audit_proof(const strathive::Problem& p, const std::vector<strathive::Clause>& proof) {
  using strathive::Inference;
  if (proof.empty()) return "empty proof";
  if (!proof.back().literals.empty()) return "proof does not end with the empty clause";
  std::map<strathive::ClauseId, const strathive::Clause*> seen;
  for (const strathive::Clause& c : proof) {
    const std::string where = "clause " + std::to_string(c.id) + ": ";
    for (strathive::ClauseId parent : c.parents) {
      if (!seen.contains(parent)) return where + "parent " + std::to_string(parent) + " not earlier in the proof";
    }
    const std::vector<L> got = normal(convert(c, 0));
    if (c.inference == Inference::input) {
      const bool found = std::any_of(p.clauses.begin(), p.clauses.end(),
                                     [&](const strathive::Clause& in) { return normal(convert(in, 0)) == got; });
      if (!found) return where + "input clause not in the problem";
    } else if (c.inference == Inference::resolution) {
      if (c.parents.size() != 2 || c.parent_literals.size() != 2) return where + "malformed resolution step";
      const std::vector<L> a = convert(*seen.at(c.parents[0]), 0);
      const std::vector<L> b = convert(*seen.at(c.parents[1]), 100000);
      const auto i = static_cast<std::size_t>(c.parent_literals[0].second);
      const auto j = static_cast<std::size_t>(c.parent_literals[1].second);
      if (i >= a.size() || j >= b.size()) return where + "literal index out of range";
      if (a[i].positive == b[j].positive) return where + "resolved literals have the same sign";
      Sub s;
      if (!unify(a[i].atom, b[j].atom, s)) return where + "resolved atoms do not unify";
      std::vector<L> want;
      for (std::size_t k = 0; k < a.size(); ++k) {
        if (k != i) want.push_back(L{a[k].positive, walk(a[k].atom, s)});
      }
      for (std::size_t k = 0; k < b.size(); ++k) {
        if (k != j) want.push_back(L{b[k].positive, walk(b[k].atom, s)});
      }
      if (normal(std::move(want)) != got) return where + "resolvent differs from the recomputed one";
    } else {
      if (c.parents.size() != 1 || c.parent_literals.size() != 2) return where + "malformed factoring step";
      const std::vector<L> a = convert(*seen.at(c.parents[0]), 0);
      const auto i = static_cast<std::size_t>(c.parent_literals[0].second);
      const auto j = static_cast<std::size_t>(c.parent_literals[1].second);
      if (i >= a.size() || j >= a.size() || i == j) return where + "literal index out of range";
      if (a[i].positive != a[j].positive) return where + "factored literals differ in sign";
      Sub s;
      if (!unify(a[i].atom, a[j].atom, s)) return where + "factored atoms do not unify";
      std::vector<L> want;
      for (std::size_t k = 0; k < a.size(); ++k) {
        if (k != j) want.push_back(L{a[k].positive, walk(a[k].atom, s)});
      }
      if (normal(std::move(want)) != got) return where + "factor differs from the recomputed one";
    }
    seen[c.id] = &c;
  }
  return {};
}

strathive::PerfMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, double density) {
  strathive::PerfMatrix m;
  for (std::size_t j = 0; j < cols; ++j) m.problems.push_back("p" + std::to_string(j));
  std::bernoulli_distribution solved(density);
  std::uniform_int_distribution<std::int64_t> loops(1, 5000);
  for (std::size_t i = 0; i < rows; ++i) {
    strathive::Protocol p;
    p.cefs.push_back({static_cast<int>(i) + 1, strathive::Cef{}});
    std::vector<std::int64_t> row;
    for (std::size_t j = 0; j < cols; ++j) row.push_back(solved(rng) ? loops(rng) : strathive::kPenalty);
    m.add_row(std::move(p), std::move(row));
  }
  return m;
}

}  // namespace oracle
