#ifndef STRATHIVE_SCHEDULER_HPP
#define STRATHIVE_SCHEDULER_HPP

// Protocol schedules: pick protocols from a performance matrix and run them
// one after another on a problem with the time split evenly.

#include <span>
#include <string>
#include <vector>

#include "strathive/protocol.hpp"
#include "strathive/prover.hpp"
#include "strathive/rational.hpp"
#include "strathive/tuner.hpp"

namespace strathive {

enum class ScheduleMethod { greedy, sotac, esotac };

struct ScheduleSpec {
  ScheduleMethod method = ScheduleMethod::greedy;
  double t = 1.0;  // greedy: evaluation limit of the matrix
  int n = 1;       // sotac / esotac: number of protocols

  // "greedy_<t>", "sotac_<n>" or "esotac_<n>". Throws std::invalid_argument.
  static ScheduleSpec parse(std::string_view text);
  std::string name() const;
};

struct Scheduler {
  ScheduleSpec spec;
  std::vector<Protocol> protocols;  // execution order
};

// Row indices in covering order; each step adds the protocol solving most
// still-unsolved problems (ties: lower index) until nothing is added.
std::vector<std::size_t> greedy_cover(const PerfMatrix& m);

// Per row: average (sotac) or sum (esotac) over solved problems of
// 1 / number of rows solving that problem. Zero for rows solving nothing.
std::vector<Rational> sotac_scores(const PerfMatrix& m);
std::vector<Rational> esotac_scores(const PerfMatrix& m);

// Greedy requires m.t_eval to equal spec.t. Throws when no protocol qualifies.
Scheduler build_schedule(const ScheduleSpec& spec, const PerfMatrix& m);

// Same protocols, costs re-measured at limit t.
PerfMatrix evaluate_matrix_at(const PerfMatrix& m, std::span<const Problem> corpus, double t,
                              const Calibration& calibration, unsigned workers = 1);

// Each protocol gets ceil(total * loops_per_second / n) loops. Returns the
// first proof; otherwise resource_out with loops and clauses summed.
ProverResult run_schedule(const Scheduler& s, const Problem& p, double total_seconds, const Calibration& calibration);

// '#' header lines with method and per-slot seconds, then one protocol per line.
std::string render_schedule(const Scheduler& s, double total_seconds);
Scheduler parse_schedule(std::string_view text);

}  // namespace strathive

#endif  // STRATHIVE_SCHEDULER_HPP
