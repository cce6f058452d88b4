#include "strathive/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace strathive {

ScheduleSpec ScheduleSpec::parse(std::string_view text) {
  const auto us = text.find('_');
  if (us == std::string_view::npos) throw std::invalid_argument("schedule method must look like greedy_<t> or sotac_<n>");
  const std::string kind(text.substr(0, us));
  const std::string arg(text.substr(us + 1));
  ScheduleSpec s;
  std::size_t used = 0;
  try {
    if (kind == "greedy") {
      s.method = ScheduleMethod::greedy;
      s.t = std::stod(arg, &used);
      if (!(s.t > 0.0)) throw std::invalid_argument("t");
    } else if (kind == "sotac" || kind == "esotac") {
      s.method = kind == "sotac" ? ScheduleMethod::sotac : ScheduleMethod::esotac;
      s.n = std::stoi(arg, &used);
      if (s.n < 1) throw std::invalid_argument("n");
    } else {
      throw std::invalid_argument("kind");
    }
  } catch (const std::logic_error&) {
    throw std::invalid_argument("unknown schedule method '" + std::string(text) + "'");
  }
  if (used != arg.size()) throw std::invalid_argument("unknown schedule method '" + std::string(text) + "'");
  return s;
}

std::string ScheduleSpec::name() const {
  switch (method) {
    case ScheduleMethod::greedy: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%g", t);
      return std::string("greedy_") + buf;
    }
    case ScheduleMethod::sotac: return "sotac_" + std::to_string(n);
    case ScheduleMethod::esotac: return "esotac_" + std::to_string(n);
  }
  return "";
}

std::vector<std::size_t> greedy_cover(const PerfMatrix& m) {
  std::vector<bool> covered(m.problems.size(), false);
  std::vector<bool> used(m.protocols.size(), false);
  std::vector<std::size_t> order;
  while (true) {
    std::size_t best = 0;
    std::size_t best_gain = 0;
    for (std::size_t i = 0; i < m.protocols.size(); ++i) {
      if (used[i]) continue;
      std::size_t gain = 0;
      for (std::size_t j = 0; j < m.problems.size(); ++j) gain += !covered[j] && m.solves(i, j);
      if (gain > best_gain) {
        best = i;
        best_gain = gain;
      }
    }
    if (best_gain == 0) break;
    used[best] = true;
    order.push_back(best);
    for (std::size_t j = 0; j < m.problems.size(); ++j) covered[j] = covered[j] || m.solves(best, j);
  }
  return order;
}

namespace {

std::vector<Rational> scores(const PerfMatrix& m, bool average) {
  std::vector<std::int64_t> solvers(m.problems.size(), 0);
  for (std::size_t j = 0; j < m.problems.size(); ++j) {
    for (std::size_t i = 0; i < m.protocols.size(); ++i) solvers[j] += m.solves(i, j);
  }
  std::vector<Rational> out(m.protocols.size(), Rational(0));
  for (std::size_t i = 0; i < m.protocols.size(); ++i) {
    std::int64_t solved = 0;
    for (std::size_t j = 0; j < m.problems.size(); ++j) {
      if (!m.solves(i, j)) continue;
      out[i] += Rational(1, solvers[j]);
      ++solved;
    }
    if (average && solved > 0) out[i] /= solved;
  }
  return out;
}

}  // namespace

std::vector<Rational> sotac_scores(const PerfMatrix& m) { return scores(m, true); }
std::vector<Rational> esotac_scores(const PerfMatrix& m) { return scores(m, false); }

Scheduler build_schedule(const ScheduleSpec& spec, const PerfMatrix& m) {
  Scheduler s;
  s.spec = spec;
  if (spec.method == ScheduleMethod::greedy) {
    if (m.t_eval != spec.t) {
      throw std::invalid_argument("greedy schedule needs a matrix evaluated at t=" + std::to_string(spec.t));
    }
    for (std::size_t i : greedy_cover(m)) s.protocols.push_back(m.protocols[i]);
  } else {
    if (spec.n < 1) throw std::invalid_argument("schedule size must be positive");
    const auto sc = spec.method == ScheduleMethod::sotac ? sotac_scores(m) : esotac_scores(m);
    std::vector<std::size_t> idx(m.protocols.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return sc[a] > sc[b]; });
    for (std::size_t i : idx) {
      if (s.protocols.size() == static_cast<std::size_t>(spec.n) || sc[i] == Rational(0)) break;
      s.protocols.push_back(m.protocols[i]);
    }
  }
  if (s.protocols.empty()) throw std::invalid_argument("no protocol solves any problem; schedule is empty");
  return s;
}

PerfMatrix evaluate_matrix_at(const PerfMatrix& m, std::span<const Problem> corpus, double t,
                              const Calibration& calibration, unsigned workers) {
  PerfMatrix out;
  out.t_eval = t;
  out.problems = m.problems;
  for (const Protocol& p : m.protocols) evaluate_protocol(out, p, corpus, calibration, workers);
  return out;
}

ProverResult run_schedule(const Scheduler& s, const Problem& p, double total_seconds, const Calibration& calibration) {
  if (!(total_seconds > 0.0)) throw std::invalid_argument("schedule time must be positive");
  if (s.protocols.empty()) throw std::invalid_argument("empty schedule");
  const double n = static_cast<double>(s.protocols.size());
  Limits slot;
  slot.max_loops = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(total_seconds * calibration.loops_per_second / n)));
  slot.max_clauses =
      std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(total_seconds * calibration.clauses_per_second / n)));
  slot.max_seconds = 20.0 * total_seconds / n + 1.0;

  ProverResult total;
  total.status = ProverStatus::resource_out;
  for (const Protocol& proto : s.protocols) {
    ProverResult r = saturate(p, proto, slot);
    if (r.status == ProverStatus::proved) {
      r.wall_time += total.wall_time;
      return r;
    }
    total.gc_loops += r.gc_loops;
    total.derived_count += r.derived_count;
    total.wall_time += r.wall_time;
  }
  total.exhausted = "schedule";
  return total;
}

std::string render_schedule(const Scheduler& s, double total_seconds) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", total_seconds / static_cast<double>(s.protocols.size()));
  std::string out = "# method: " + s.spec.name() + "\n# protocols: " + std::to_string(s.protocols.size()) +
                    "\n# slot_seconds: " + buf + "\n";
  for (const Protocol& p : s.protocols) out += render_protocol(p) + "\n";
  return out;
}

Scheduler parse_schedule(std::string_view text) {
  Scheduler s;
  bool have_method = false;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const std::string key = "# method: ";
      if (line.rfind(key, 0) == 0) {
        s.spec = ScheduleSpec::parse(line.substr(key.size()));
        have_method = true;
      }
      continue;
    }
    s.protocols.push_back(parse_protocol(line));
  }
  if (!have_method) throw std::invalid_argument("schedule file lacks a method header");
  if (s.protocols.empty()) throw std::invalid_argument("schedule file lists no protocols");
  return s;
}

}  // namespace strathive
