#ifndef STRATHIVE_ILS_HPP
#define STRATHIVE_ILS_HPP

// Iterated local search over a ConfigSpace (BasicILS: every configuration is
// evaluated on the whole problem set).

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "strathive/protocol.hpp"
#include "strathive/prover.hpp"
#include "strathive/rational.hpp"

namespace strathive {

inline constexpr std::int64_t kPenalty = 1'000'000;

// gc_loops for a proof, kPenalty otherwise.
std::int64_t penalized_cost(const ProverResult& r);

struct Evaluation {
  std::vector<std::int64_t> costs;  // one per problem, in problem order
  // Budget units consumed; the tuner charges prover loops.
  std::int64_t work = 0;
  double wall_time = 0.0;
};

// Evaluates a configuration on the oracle's problem set. Exceptions are
// caught by tune() and charged as all-penalty results.
using PerfOracle = std::function<Evaluation(const Config&)>;

Rational mean_cost(const std::vector<std::int64_t>& costs);
std::int64_t solved_count(const std::vector<std::int64_t>& costs);

struct IlsParams {
  // Work budget; evaluation stops once it is used up. theta0 is always evaluated.
  std::int64_t budget = 0;
  std::optional<std::int64_t> max_evaluations;
  double restart_prob = 0.01;
  int perturb_strength = 3;
  std::uint64_t rng_seed = 0;
  // Optional wall-clock stop in seconds (0 disables). Breaks determinism when hit.
  double wall_limit = 0.0;
};

struct TrajectoryRecord {
  std::string digest;
  Rational mean_cost;
  std::int64_t solved = 0;
  double wall_time = 0.0;
  std::int64_t work = 0;
  std::string error;
};

struct Incumbent {
  std::string digest;
  Rational cost;
};

struct IlsResult {
  Config best;
  Rational best_cost;
  std::int64_t evaluations = 0;
  std::int64_t work = 0;
  std::vector<TrajectoryRecord> trajectory;  // every fresh evaluation
  std::vector<Incumbent> incumbents;         // accepted rounds, strictly improving
};

IlsResult tune(const ConfigSpace& space, const Config& theta0, const PerfOracle& oracle, const IlsParams& params);

// The one-exchange neighborhood of c: every config differing in exactly one
// parameter, ordinal parameters only moving to adjacent positions. Declaration
// order, then domain order.
std::vector<Config> neighbors(const ConfigSpace& space, const Config& c);

// One JSON object per line.
std::string trajectory_jsonl(const IlsResult& r);

}  // namespace strathive

#endif  // STRATHIVE_ILS_HPP
