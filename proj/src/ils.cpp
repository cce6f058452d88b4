#include "strathive/ils.hpp"

#include <chrono>
#include <map>
#include <stdexcept>

#include "json.hpp"
#include "strathive/rng.hpp"

namespace strathive {

std::int64_t penalized_cost(const ProverResult& r) {
  return r.status == ProverStatus::proved ? r.gc_loops : kPenalty;
}

Rational mean_cost(const std::vector<std::int64_t>& costs) {
  if (costs.empty()) throw std::invalid_argument("mean of an empty cost vector");
  std::int64_t sum = 0;
  for (std::int64_t c : costs) sum += c;
  return Rational(sum, static_cast<std::int64_t>(costs.size()));
}

std::int64_t solved_count(const std::vector<std::int64_t>& costs) {
  std::int64_t n = 0;
  for (std::int64_t c : costs) n += c < kPenalty;
  return n;
}

std::vector<Config> neighbors(const ConfigSpace& space, const Config& c) {
  std::vector<Config> out;
  const auto& params = space.params();
  for (std::size_t i = 0; i < params.size(); ++i) {
    const std::size_t n = params[i].domain.size();
    for (std::size_t v = 0; v < n; ++v) {
      if (v == c.choice[i]) continue;
      if (params[i].ordinal && v + 1 != c.choice[i] && v != c.choice[i] + 1) continue;
      Config next = c;
      next.choice[i] = v;
      out.push_back(std::move(next));
    }
  }
  return out;
}

namespace {

class Search {
 public:
  Search(const ConfigSpace& space, const PerfOracle& oracle, const IlsParams& params)
      : space_(space), oracle_(oracle), params_(params), rng_(params.rng_seed),
        start_(std::chrono::steady_clock::now()) {}

  IlsResult run(const Config& theta0) {
    if (!space_.contains(theta0)) throw std::invalid_argument("theta0 is not a member of the space");
    // theta0 is evaluated whatever the budget says.
    const Rational c0 = *evaluate(theta0, true);
    Config incumbent = theta0;
    Rational inc_cost = c0;
    result_.incumbents.push_back({space_.digest(theta0), c0});

    auto accept = [&](const Config& c, const Rational& cost) {
      if (cost < inc_cost) {
        incumbent = c;
        inc_cost = cost;
        result_.incumbents.push_back({space_.digest(c), cost});
      }
    };

    auto [cur, cur_cost] = local_search(theta0, c0);
    accept(cur, cur_cost);
    while (!exhausted()) {
      const std::int64_t before = result_.evaluations;
      Config start;
      if (rng_.unit() < params_.restart_prob) {
        start = random_config();
      } else {
        start = incumbent;
        for (int k = 0; k < params_.perturb_strength; ++k) flip(start);
      }
      auto start_cost = evaluate(start);
      if (!start_cost) break;
      auto [end, end_cost] = local_search(start, *start_cost);
      accept(end, end_cost);
      if (result_.evaluations == before) {
        // Nothing new was learned this round: jump to an unseen config.
        auto fresh = unevaluated_config();
        if (!fresh) break;  // the whole space has been evaluated
        auto fresh_cost = evaluate(*fresh);
        if (!fresh_cost) break;
        auto [e2, c2] = local_search(*fresh, *fresh_cost);
        accept(e2, c2);
      }
    }

    result_.best = best_;
    result_.best_cost = best_cost_;
    return std::move(result_);
  }

 private:
  bool exhausted() const {
    if (result_.work >= params_.budget) return true;
    if (params_.max_evaluations && result_.evaluations >= *params_.max_evaluations) return true;
    if (params_.wall_limit > 0.0 &&
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count() >= params_.wall_limit) {
      return true;
    }
    return false;
  }

  // Mean cost of c; nullopt when c is unseen and the budget is gone.
  std::optional<Rational> evaluate(const Config& c, bool force = false) {
    if (auto it = cache_.find(c.choice); it != cache_.end()) return it->second;
    if (!force && exhausted()) return std::nullopt;

    TrajectoryRecord rec;
    rec.digest = space_.digest(c);
    Evaluation e;
    try {
      e = oracle_(c);
      if (e.costs.empty()) throw std::runtime_error("oracle returned no costs");
    } catch (const std::exception& ex) {
      rec.error = ex.what();
      e.costs.assign(std::max<std::size_t>(1, problem_count_), kPenalty);
    }
    problem_count_ = e.costs.size();
    rec.mean_cost = mean_cost(e.costs);
    rec.solved = solved_count(e.costs);
    rec.wall_time = e.wall_time;
    rec.work = e.work;
    result_.work += e.work;
    ++result_.evaluations;
    result_.trajectory.push_back(rec);
    cache_.emplace(c.choice, rec.mean_cost);
    if (!has_best_ || rec.mean_cost < best_cost_) {
      best_ = c;
      best_cost_ = rec.mean_cost;
      has_best_ = true;
    }
    return rec.mean_cost;
  }

  // First-improvement descent over a freshly shuffled neighborhood each step.
  std::pair<Config, Rational> local_search(Config cur, Rational cost) {
    bool improved = true;
    while (improved) {
      improved = false;
      std::vector<Config> nbrs = neighbors(space_, cur);
      for (std::size_t i = nbrs.size(); i > 1; --i) std::swap(nbrs[i - 1], nbrs[rng_.below(i)]);
      for (const Config& n : nbrs) {
        auto c = evaluate(n);
        if (!c) return {cur, cost};
        if (*c < cost) {
          cur = n;
          cost = *c;
          improved = true;
          break;
        }
      }
    }
    return {cur, cost};
  }

  void flip(Config& c) {
    const auto& params = space_.params();
    std::vector<std::size_t> movable;
    for (std::size_t i = 0; i < params.size(); ++i) {
      if (params[i].domain.size() > 1) movable.push_back(i);
    }
    if (movable.empty()) return;
    const std::size_t p = movable[rng_.below(movable.size())];
    const std::size_t n = params[p].domain.size();
    std::size_t v = rng_.below(n - 1);
    if (v >= c.choice[p]) ++v;
    c.choice[p] = v;
  }

  Config random_config() {
    Config c;
    for (const ParamDef& p : space_.params()) c.choice.push_back(rng_.below(p.domain.size()));
    return c;
  }

  std::optional<Config> unevaluated_config() {
    const auto size = space_.size();
    constexpr std::uint64_t kEnumerable = 1U << 20;
    if (size && *size <= kEnumerable) {
      if (cache_.size() >= *size) return std::nullopt;
      const std::uint64_t offset = rng_.below(*size);
      for (std::uint64_t k = 0; k < *size; ++k) {
        Config c = decode_index((offset + k) % *size);
        if (!cache_.contains(c.choice)) return c;
      }
      return std::nullopt;
    }
    for (int attempt = 0; attempt < 256; ++attempt) {
      Config c = random_config();
      if (!cache_.contains(c.choice)) return c;
    }
    return std::nullopt;
  }

  Config decode_index(std::uint64_t index) const {
    Config c;
    for (const ParamDef& p : space_.params()) {
      c.choice.push_back(static_cast<std::size_t>(index % p.domain.size()));
      index /= p.domain.size();
    }
    return c;
  }

  const ConfigSpace& space_;
  const PerfOracle& oracle_;
  IlsParams params_;
  SplitMix64 rng_;
  std::chrono::steady_clock::time_point start_;
  std::map<std::vector<std::size_t>, Rational> cache_;
  std::size_t problem_count_ = 1;
  IlsResult result_;
  Config best_;
  Rational best_cost_;
  bool has_best_ = false;
};

}  // namespace

IlsResult tune(const ConfigSpace& space, const Config& theta0, const PerfOracle& oracle, const IlsParams& params) {
  if (params.restart_prob < 0.0 || params.restart_prob > 1.0) {
    throw std::invalid_argument("restart probability must lie in [0, 1]");
  }
  if (params.perturb_strength < 1) throw std::invalid_argument("perturbation strength must be positive");
  return Search(space, oracle, params).run(theta0);
}

std::string trajectory_jsonl(const IlsResult& r) {
  std::string out;
  for (const TrajectoryRecord& t : r.trajectory) {
    nlohmann::ordered_json j;
    j["config"] = t.digest;
    j["mean_cost"] = to_double(t.mean_cost);
    j["mean_cost_exact"] = format_rational(t.mean_cost);
    j["solved"] = t.solved;
    j["wall_time"] = t.wall_time;
    j["work"] = t.work;
    if (!t.error.empty()) j["error"] = t.error;
    out += j.dump();
    out += '\n';
  }
  return out;
}

}  // namespace strathive
