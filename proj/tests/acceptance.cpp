// Acceptance checks A2..A9. One line per criterion:
//   A<n> PASS|FAIL <details>
// Usage: acceptance [A2 A3 ...] [--corpus DIR]
// Exit status is 0 when every selected criterion passes.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "generators.hpp"
#include "oracles.hpp"
#include "strathive/ils.hpp"
#include "strathive/logic.hpp"
#include "strathive/protocol.hpp"
#include "strathive/prover.hpp"
#include "strathive/scheduler.hpp"
#include "strathive/tuner.hpp"

using namespace strathive;

namespace {

// Pinned tolerances and sizes.
constexpr double kA2Seconds = 60.0;
constexpr std::size_t kTedMaxNodes = 5;
constexpr int kLevPairs = 1000;
constexpr std::size_t kLevMaxLen = 6;
constexpr int kA3Iterations = 10;
constexpr double kA3Seconds = 15 * 60.0;
constexpr std::size_t kA3MinProblems = 40;
constexpr int kA4Matrices = 200;
constexpr int kA5Matrices = 100;
constexpr int kA6Spaces = 50;
constexpr std::uint64_t kA6MaxEnumerable = 200;
constexpr int kA7Cases = 1000;
constexpr int kA8Repeats = 10;
constexpr int kA9Operations = 1000;
constexpr std::size_t kA9Collection = 50;
// A3 runs with a pinned calibration so the outcome does not depend on the host.
constexpr double kA3LoopsPerSecond = 2000.0;
constexpr double kA3ClausesPerSecond = 20000.0;
// A8 limits: loops and clauses only, with the wall clock out of the way.
constexpr std::int64_t kA8Loops = 1000;
constexpr std::int64_t kA8Clauses = 20000;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Outcome a2() {
  const auto t0 = std::chrono::steady_clock::now();
  Signature sig;
  const std::vector<Term> terms = oracle::small_terms(sig, kTedMaxNodes);
  const std::vector<EditArgs> cost_sets = {
      {Rational(1), Rational(1), Rational(1)},
      {Rational(2), Rational(1), Rational(5)},
      {Rational(1), Rational(3), Rational(2)},
  };
  std::int64_t pairs = 0;
  std::int64_t ted_bad = 0;
  for (const EditArgs& a : cost_sets) {
    oracle::EditScriptSearch search(3, kTedMaxNodes, a.c_ins, a.c_del, a.c_ch);
    for (const Term& s : terms) {
      const auto dist = search.distances_from(oracle::forest_of(s));
      for (const Term& t : terms) {
        ++pairs;
        const auto it = dist.find(oracle::encode(oracle::forest_of(t)));
        if (it == dist.end() || it->second != ted_distance(s, t, a)) ++ted_bad;
      }
    }
  }
  const double ted_time = seconds_since(t0);

  std::mt19937_64 rng(2);
  std::int64_t lev_bad = 0;
  const std::vector<Rational> costs = {Rational(0), Rational(1), Rational(2), Rational(5), Rational(1, 2)};
  for (int k = 0; k < kLevPairs; ++k) {
    auto seq = [&] {
      std::vector<int> s(rng() % (kLevMaxLen + 1));
      for (int& x : s) x = static_cast<int>(rng() % 3);
      return s;
    };
    const std::vector<int> s1 = seq();
    const std::vector<int> s2 = seq();
    const EditArgs a{costs[rng() % costs.size()], costs[rng() % costs.size()], costs[rng() % costs.size()]};
    const std::vector<std::int32_t> x(s1.begin(), s1.end());
    const std::vector<std::int32_t> y(s2.begin(), s2.end());
    if (lev_distance(x, y, a) != oracle::naive_lev(s1, s2, a.c_ins, a.c_del, a.c_ch)) ++lev_bad;
  }
  const double total = seconds_since(t0);
  return {ted_bad == 0 && lev_bad == 0 && ted_time < kA2Seconds,
          fmt("ted %lld pairs (%zu terms, 3 cost sets) %lld mismatches in %.1f s; lev %d pairs %lld mismatches; "
              "total %.1f s",
              static_cast<long long>(pairs), terms.size(), static_cast<long long>(ted_bad), ted_time, kLevPairs,
              static_cast<long long>(lev_bad), total)};
}

Outcome a3(const std::string& corpus_dir) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<Problem> corpus = load_corpus(corpus_dir);
  TunerConfig cfg;
  cfg.t_improve = 10.0;
  cfg.t_cutoff = 1.0;
  cfg.t_eval = 5.0;
  cfg.c_cef = 4;
  cfg.seed = 20170707;
  cfg.calibration = Calibration{kA3LoopsPerSecond, kA3ClausesPerSecond};
  const std::vector<Protocol> seeds = {default_protocol()};
  const std::vector<Cef> seed_cefs = seed_collection();
  TunerState state = initial_state(seeds, corpus, cfg, seed_cef_db(seed_cefs, seeds));
  const std::int64_t seed_solved = state.matrix.solved_by(0);
  std::vector<std::int64_t> curve = {state.matrix.solved_union()};
  int done = 0;
  for (; done < kA3Iterations; ++done) {
    if (!blistrtune_iteration(state, cfg, corpus)) break;
    curve.push_back(state.matrix.solved_union());
  }
  const double elapsed = seconds_since(t0);
  const bool monotone = std::is_sorted(curve.begin(), curve.end());
  std::string shape;
  for (std::int64_t v : curve) shape += (shape.empty() ? "" : ",") + std::to_string(v);
  const bool pass = corpus.size() >= kA3MinProblems && curve.back() > seed_solved && monotone && elapsed < kA3Seconds;
  return {pass, fmt("%zu problems; seed solo %lld; solved per iteration [%s]; %d iterations run%s; %.0f s",
                    corpus.size(), static_cast<long long>(seed_solved), shape.c_str(), done,
                    done < kA3Iterations ? " (no eligible pair left)" : "", elapsed)};
}

Outcome a4() {
  std::mt19937_64 rng(4);
  std::int64_t steps = 0;
  std::int64_t bad = 0;
  for (int k = 0; k < kA4Matrices; ++k) {
    const PerfMatrix m = oracle::random_matrix(rng, 8, 20, std::uniform_real_distribution<double>(0.05, 0.6)(rng));
    const std::vector<std::size_t> order = greedy_cover(m);
    std::vector<bool> covered(20, false);
    std::set<std::size_t> used;
    auto gain = [&](std::size_t i) {
      std::size_t g = 0;
      for (std::size_t j = 0; j < 20; ++j) g += !covered[j] && m.cost[i][j] < kPenalty;
      return g;
    };
    auto best_remaining = [&] {
      std::size_t best = 0;
      for (std::size_t i = 0; i < 8; ++i) {
        if (!used.contains(i)) best = std::max(best, gain(i));
      }
      return best;
    };
    for (std::size_t i : order) {
      ++steps;
      if (used.contains(i) || gain(i) != best_remaining() || gain(i) == 0) ++bad;
      used.insert(i);
      for (std::size_t j = 0; j < 20; ++j) covered[j] = covered[j] || m.cost[i][j] < kPenalty;
    }
    if (best_remaining() != 0) ++bad;  // stopped while something could still be added
  }
  return {bad == 0, fmt("%d matrices 8x20, %lld greedy steps, %lld non-maximal", kA4Matrices,
                        static_cast<long long>(steps), static_cast<long long>(bad))};
}

Outcome a5() {
  std::mt19937_64 rng(5);
  std::int64_t bad = 0;
  std::int64_t exclusive_checks = 0;
  for (int k = 0; k < kA5Matrices; ++k) {
    const std::size_t rows = 1 + rng() % 10;
    const std::size_t cols = 1 + rng() % 30;
    const PerfMatrix m = oracle::random_matrix(rng, rows, cols, std::uniform_real_distribution<double>(0.0, 0.7)(rng));
    const auto sotac = sotac_scores(m);
    const auto esotac = esotac_scores(m);
    for (std::size_t i = 0; i < rows; ++i) {
      Rational sum(0);
      std::int64_t solved = 0;
      bool exclusive = false;
      for (std::size_t j = 0; j < cols; ++j) {
        if (m.cost[i][j] >= kPenalty) continue;
        std::int64_t solvers = 0;
        for (std::size_t r = 0; r < rows; ++r) solvers += m.cost[r][j] < kPenalty;
        sum += Rational(1, solvers);
        ++solved;
        exclusive = exclusive || solvers == 1;
      }
      const Rational avg = solved == 0 ? Rational(0) : sum / solved;
      if (sotac[i] != avg || esotac[i] != sum) ++bad;
      if (exclusive) {
        ++exclusive_checks;
        if (esotac[i] < sotac[i]) ++bad;
      }
    }
  }
  return {bad == 0, fmt("%d matrices, %lld exclusive-solver rows checked, %lld mismatches", kA5Matrices,
                        static_cast<long long>(exclusive_checks), static_cast<long long>(bad))};
}

// Synthetic oracle: per-problem costs are a fixed function of the config.
PerfOracle synthetic_oracle(std::uint64_t salt, std::size_t problems) {
  return [salt, problems](const Config& c) {
    Evaluation e;
    std::uint64_t h = salt;
    for (std::size_t x : c.choice) h = (h ^ (x + 0x9e3779b97f4a7c15ULL)) * 0x100000001b3ULL;
    for (std::size_t j = 0; j < problems; ++j) {
      std::mt19937_64 r(h + j);
      e.costs.push_back(r() % 4 == 0 ? kPenalty : static_cast<std::int64_t>(r() % 1000));
    }
    e.work = 1;
    return e;
  };
}

ConfigSpace random_space(std::mt19937_64& rng, bool small) {
  std::vector<Cef> pool = seed_collection();
  std::shuffle(pool.begin(), pool.end(), rng);
  if (small) {
    pool.resize(1 + rng() % 4);
    return global_space(pool, 1);
  }
  if (rng() % 2) {
    pool.resize(2 + rng() % 8);
    return global_space(pool, 1 + static_cast<int>(rng() % 3));
  }
  return fine_space(gen::random_protocol(rng, 3));
}

Outcome a6() {
  std::mt19937_64 rng(6);
  std::int64_t bad_never_worse = 0;
  std::int64_t bad_determinism = 0;
  std::int64_t bad_optimum = 0;
  std::int64_t enumerated = 0;
  for (int k = 0; k < kA6Spaces; ++k) {
    const ConfigSpace space = random_space(rng, false);
    Config theta0;
    for (const ParamDef& p : space.params()) theta0.choice.push_back(rng() % p.domain.size());
    const PerfOracle oracle = synthetic_oracle(rng(), 1 + rng() % 6);
    IlsParams params;
    params.budget = static_cast<std::int64_t>(rng() % 60);
    params.rng_seed = rng();
    const IlsResult r1 = tune(space, theta0, oracle, params);
    const IlsResult r2 = tune(space, theta0, oracle, params);
    if (r1.best_cost > mean_cost(oracle(theta0).costs)) ++bad_never_worse;
    if (!(r1.best == r2.best) || r1.best_cost != r2.best_cost || r1.evaluations != r2.evaluations ||
        trajectory_jsonl(r1) != trajectory_jsonl(r2)) {
      ++bad_determinism;
    }
  }
  for (int k = 0; k < kA6Spaces; ++k) {
    const ConfigSpace space = random_space(rng, true);
    const std::uint64_t size = *space.size();
    if (size > kA6MaxEnumerable) continue;
    ++enumerated;
    const PerfOracle oracle = synthetic_oracle(rng(), 1 + rng() % 6);
    Rational optimum;
    bool first = true;
    std::vector<std::size_t> choice(space.params().size(), 0);
    for (std::uint64_t idx = 0; idx < size; ++idx) {
      std::uint64_t rest = idx;
      for (std::size_t p = 0; p < choice.size(); ++p) {
        choice[p] = rest % space.params()[p].domain.size();
        rest /= space.params()[p].domain.size();
      }
      const Rational c = mean_cost(oracle(Config{choice}).costs);
      if (first || c < optimum) optimum = c;
      first = false;
    }
    Config theta0;
    for (const ParamDef& p : space.params()) theta0.choice.push_back(rng() % p.domain.size());
    IlsParams params;
    params.budget = static_cast<std::int64_t>(size);
    params.rng_seed = rng();
    const IlsResult r = tune(space, theta0, oracle, params);
    if (r.best_cost != optimum) ++bad_optimum;
  }
  return {bad_never_worse == 0 && bad_determinism == 0 && bad_optimum == 0 && enumerated > 0,
          fmt("%d random spaces: %lld worse than theta0, %lld nondeterministic; %lld enumerable spaces: %lld missed "
              "the optimum",
              kA6Spaces, static_cast<long long>(bad_never_worse), static_cast<long long>(bad_determinism),
              static_cast<long long>(enumerated), static_cast<long long>(bad_optimum))};
}

Outcome a7() {
  std::mt19937_64 rng(7);
  std::int64_t bad_text = 0;
  std::int64_t bad_lift = 0;
  for (int k = 0; k < kA7Cases; ++k) {
    const Protocol p = gen::random_protocol(rng);
    try {
      if (parse_protocol(render_protocol(p)) != p) ++bad_text;
    } catch (const std::exception&) {
      ++bad_text;
    }
  }
  for (int k = 0; k < kA7Cases; ++k) {
    const Protocol p = gen::random_protocol(rng);
    std::vector<Cef> collection = seed_collection();
    std::shuffle(collection.begin(), collection.end(), rng);
    collection.resize(1 + rng() % collection.size());
    for (int extra = static_cast<int>(rng() % 3); extra > 0; --extra) {
      const Cef c = gen::random_cef(rng);
      if (std::find(collection.begin(), collection.end(), c) == collection.end()) collection.push_back(c);
    }
    try {
      const ConfigSpace fine = fine_space(p);
      const Config lifted = lift_to_fine(fine);
      bool ok = fine.contains(lifted) && fine.decode(lifted) == p;
      // Some argument and priority changes, as a fine phase would make.
      Config theta = lifted;
      for (std::size_t i = 0; i < theta.choice.size(); ++i) {
        if (rng() % 3 == 0) theta.choice[i] = rng() % fine.params()[i].domain.size();
      }
      const Protocol fine_p = fine.decode(theta);
      const GlobalEmbedding g = project_to_global(fine, theta, collection, 4);
      ok = ok && g.space.contains(g.config) && g.space.decode(g.config) == fine_p;
      ok = ok && std::equal(collection.begin(), collection.end(), g.collection.begin());
      std::set<std::string> novel;
      for (const WeightedCef& w : fine_p.cefs) {
        if (std::find(collection.begin(), collection.end(), w.cef) == collection.end()) novel.insert(render_cef(w.cef));
      }
      ok = ok && g.added == novel.size() && g.collection.size() == collection.size() + novel.size();
      // And straight back into the fine space of the projected protocol.
      const ConfigSpace again = fine_space(g.space.decode(g.config));
      ok = ok && again.decode(lift_to_fine(again)) == fine_p;
      if (!ok) ++bad_lift;
    } catch (const std::exception&) {
      ++bad_lift;
    }
  }
  return {bad_text == 0 && bad_lift == 0,
          fmt("%d protocols: %lld parse/render failures; %d (protocol, collection) pairs: %lld lift/project failures",
              kA7Cases, static_cast<long long>(bad_text), kA7Cases, static_cast<long long>(bad_lift))};
}

Outcome a8(const std::string& corpus_dir) {
  const std::vector<Problem> corpus = load_corpus(corpus_dir);
  Limits lim;
  lim.max_loops = kA8Loops;
  lim.max_clauses = kA8Clauses;
  lim.max_seconds = 3600.0;
  const Protocol proto = default_protocol();
  std::int64_t bad_det = 0;
  std::int64_t proofs = 0;
  std::int64_t bad_audit = 0;
  std::string first_error;
  for (const Problem& p : corpus) {
    const ProverResult ref = saturate(p, proto, lim);
    for (int k = 1; k < kA8Repeats; ++k) {
      const ProverResult r = saturate(p, proto, lim);
      if (r.status != ref.status || r.gc_loops != ref.gc_loops) ++bad_det;
    }
    if (ref.status == ProverStatus::proved) {
      ++proofs;
      const std::string err = oracle::audit_proof(p, ref.proof);
      if (!err.empty()) {
        ++bad_audit;
        if (first_error.empty()) first_error = p.name + ": " + err;
      }
    }
  }
  return {bad_det == 0 && bad_audit == 0,
          fmt("%zu problems x %d runs: %lld divergent; %lld proofs audited, %lld rejected%s%s", corpus.size(),
              kA8Repeats, static_cast<long long>(bad_det), static_cast<long long>(proofs),
              static_cast<long long>(bad_audit), first_error.empty() ? "" : "; ", first_error.c_str())};
}

Outcome a9() {
  std::mt19937_64 rng(9);
  CefDb db = seed_cef_db(seed_collection(), {});
  // Skewed towards two weight functions so the rest stay rare.
  for (int k = 0; k < kA9Operations; ++k) {
    Protocol p = gen::random_protocol(rng, 3);
    for (WeightedCef& w : p.cefs) {
      if (rng() % 4 != 0) {
        w.cef.weight = rng() % 2 ? WeightFn::clauseweight({Rational(static_cast<std::int64_t>(rng() % 9)), Rational(1), Rational(1)})
                                 : WeightFn::fifo();
      }
    }
    db.record_usage(p);
  }
  const std::vector<Cef> top = select_top_cefs(db, kA9Collection);
  std::set<WeightKind> kinds;
  for (const Cef& c : top) kinds.insert(c.weight.kind());
  const bool all = kinds.size() == std::size(kAllWeightKinds);
  return {all && top.size() == std::min<std::size_t>(kA9Collection, db.size()),
          fmt("%d usage records, db holds %zu CEFs; top-%zu covers %zu of %zu weight functions", kA9Operations,
              db.size(), kA9Collection, kinds.size(), std::size(kAllWeightKinds))};
}

}  // namespace

int main(int argc, char** argv) {
  std::string corpus = STRATHIVE_CORPUS_DIR;
  std::set<std::string> wanted;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--corpus" && i + 1 < argc) {
      corpus = argv[++i];
    } else {
      wanted.insert(arg);
    }
  }
  const std::vector<std::pair<std::string, std::function<Outcome()>>> checks = {
      {"A2", a2},
      {"A3", [&] { return a3(corpus); }},
      {"A4", a4},
      {"A5", a5},
      {"A6", a6},
      {"A7", a7},
      {"A8", [&] { return a8(corpus); }},
      {"A9", a9},
  };
  bool all = true;
  for (const auto& [name, check] : checks) {
    if (!wanted.empty() && !wanted.contains(name)) continue;
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %s %s\n", name.c_str(), o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
