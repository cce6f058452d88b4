#ifndef STRATHIVE_TUNER_HPP
#define STRATHIVE_TUNER_HPP

// The hierarchical tuning loop: performance matrix, choice of the next
// (protocol, problem set) pair, global/fine ILS phases, and the CEF database
// that feeds the global phase.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "strathive/ils.hpp"
#include "strathive/logic.hpp"
#include "strathive/protocol.hpp"
#include "strathive/prover.hpp"

namespace strathive {

// Penalized costs of protocols (rows) on problems (columns) at t_eval.
struct PerfMatrix {
  std::vector<Protocol> protocols;
  std::vector<std::string> problems;
  std::vector<std::vector<std::int64_t>> cost;
  double t_eval = 5.0;

  std::optional<std::size_t> find(const Protocol& p) const;
  // Throws std::invalid_argument for a duplicate protocol or a short row.
  void add_row(Protocol p, std::vector<std::int64_t> row);
  bool solves(std::size_t protocol, std::size_t problem) const { return cost[protocol][problem] < kPenalty; }
  // Problems solved by at least one protocol.
  std::int64_t solved_union() const;
  std::int64_t solved_by(std::size_t protocol) const;
};

// Runs p on every problem under `limits`, in parallel, reduced in problem order.
// Work is loops for proofs and saturations, the loop limit otherwise.
Evaluation run_protocol(const Protocol& p, std::span<const Problem* const> problems, const Limits& limits,
                        unsigned workers);

// Appends the row of p evaluated at the matrix's t_eval. Throws when p is
// already a row or when the corpus does not match the matrix columns.
void evaluate_protocol(PerfMatrix& matrix, const Protocol& p, std::span<const Problem> corpus,
                       const Calibration& calibration, unsigned workers = 1);

struct EligibilityParams {
  std::int64_t c_min = 500;
  std::int64_t c_max = 30000;
  std::int64_t versatility = 2;
  std::size_t max_protocols = 20;
};

struct EligiblePair {
  std::size_t protocol = 0;
  std::vector<std::size_t> problems;  // credited problems, ascending
};

// Each problem credits its best protocol (lowest cost, then lowest index) when
// that cost lies in [c_min, c_max]. Protocols with at least `versatility`
// credits qualify, ordered by credit count descending then index, at most
// max_protocols of them.
std::vector<EligiblePair> eligible(const PerfMatrix& matrix, const EligibilityParams& e);

// -- CEF database ------------------------------------------------------------

class CefDb {
 public:
  // Adds cef with a zero counter unless present. Returns whether it was new.
  bool add(const Cef& cef);
  // +1 for every distinct CEF of p, adding missing ones.
  void record_usage(const Protocol& p);
  void increment(const Cef& cef, std::int64_t by = 1);

  std::int64_t usage(const Cef& cef) const;
  bool contains(const Cef& cef) const;
  std::size_t size() const { return entries_.size(); }
  // Keyed by canonical CEF text.
  const std::map<std::string, std::pair<Cef, std::int64_t>>& entries() const { return entries_; }

  // `[{"cef": "...", "usage": n}, ...]` sorted by CEF text.
  std::string to_json() const;
  static CefDb from_json(std::string_view json);

  friend bool operator==(const CefDb& a, const CefDb& b) { return a.to_json() == b.to_json(); }

 private:
  std::map<std::string, std::pair<Cef, std::int64_t>> entries_;
};

// Applies `change` to the database file under an exclusive lock and returns
// the result. A missing file starts from `initial`.
CefDb update_cef_db_file(const std::filesystem::path& path, const CefDb& initial,
                         const std::function<void(CefDb&)>& change);
CefDb read_cef_db_file(const std::filesystem::path& path);

// Round-robin over weight functions in declaration order; each round takes
// every function's next most used CEF (ties by CEF text). Throws when k is
// below the number of weight functions present.
std::vector<Cef> select_top_cefs(const CefDb& db, std::size_t k);

// One CEF per weight function.
std::vector<Cef> seed_collection();
// A fresh database: the seeds at zero, then one use per seed protocol.
CefDb seed_cef_db(std::span<const Cef> seeds, std::span<const Protocol> protocols);
// Same, read from a file with one CEF per line ('#' comments allowed).
std::vector<Cef> load_cef_list(const std::filesystem::path& path);

// -- Tuning loop -------------------------------------------------------------

struct TunerConfig {
  double t_improve = 100.0;
  double t_cutoff = 1.0;
  double t_eval = 5.0;
  int c_cef = 6;
  EligibilityParams eligibility;
  std::size_t collection_size = 50;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  double restart_prob = 0.01;
  int perturb_strength = 3;
  ArgDomains domains = ArgDomains::defaults();
  Calibration calibration;
};

struct TunerState {
  PerfMatrix matrix;
  CefDb cef_db;
  std::vector<Cef> collection;
  std::set<std::pair<std::string, std::string>> attempted;  // (protocol digest, problem-set digest)
  std::int64_t iteration = 0;
};

struct PhaseSummary {
  std::string kind;  // "global" or "fine"
  Rational start_cost;
  Rational best_cost;
  std::int64_t evaluations = 0;
  std::int64_t work = 0;
  std::string trajectory;  // JSON lines
};

struct IterationSummary {
  std::int64_t iteration = 0;
  std::size_t theta0 = 0;
  std::vector<std::size_t> problems;
  std::string problem_set_digest;
  Protocol result;
  std::optional<std::size_t> new_row;  // empty when the result was already a row
  std::vector<Cef> novel_cefs;          // collection extensions made during the phases
  std::vector<PhaseSummary> phases;
  double run_time = 0.0;
};

std::string problem_set_digest(const PerfMatrix& matrix, const std::vector<std::size_t>& problems);

// Updates the CEF database for a finished iteration and returns the new
// contents; lets callers route the change through a shared file.
using CefRecorder = std::function<CefDb(const std::vector<Cef>& novel, const Protocol& result)>;

// One global -> fine -> global -> fine round on the best unattempted eligible
// pair. Returns nullopt, leaving the state untouched, when no such pair exists.
std::optional<IterationSummary> blistrtune_iteration(TunerState& state, const TunerConfig& cfg,
                                                     std::span<const Problem> corpus,
                                                     const CefRecorder& recorder = {});

// Initial state: database and collection from the seeds, matrix holding the
// seed protocols.
TunerState initial_state(std::span<const Protocol> seed_protocols, std::span<const Problem> corpus,
                         const TunerConfig& cfg, const CefDb& db);

// -- State directory ---------------------------------------------------------

// matrix.csv, protocols/<digest>.txt, cefdb.json, attempted.log,
// iterations.log, progress.csv and state.json. Every file is replaced
// atomically.
class StateDir {
 public:
  explicit StateDir(std::filesystem::path root, std::filesystem::path cef_db_path = {});

  const std::filesystem::path& root() const { return root_; }
  const std::filesystem::path& cef_db_path() const { return cef_db_path_; }
  bool initialized() const;

  // Reads the state; problem columns must match `corpus`.
  TunerState load(std::span<const Problem> corpus) const;
  void save(const TunerState& state) const;
  void append_iteration(const TunerState& state, const IterationSummary& summary) const;

  CefRecorder recorder(const CefDb& initial) const;

 private:
  std::filesystem::path root_;
  std::filesystem::path cef_db_path_;
};

std::string matrix_csv(const PerfMatrix& m);
// Rows are resolved against the protocol texts in `protocols`, keyed by digest.
PerfMatrix parse_matrix_csv(std::string_view text, const std::map<std::string, Protocol>& protocols,
                            double t_eval);

void write_file_atomic(const std::filesystem::path& path, std::string_view content);
std::string read_file(const std::filesystem::path& path);

}  // namespace strathive

#endif  // STRATHIVE_TUNER_HPP
