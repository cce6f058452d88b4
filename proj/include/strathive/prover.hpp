#ifndef STRATHIVE_PROVER_HPP
#define STRATHIVE_PROVER_HPP

// Given-clause saturation with binary resolution and factoring, clause
// selection driven by the CEFs of a protocol.

#include <cstdint>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <vector>

#include "strathive/logic.hpp"
#include "strathive/protocol.hpp"
#include "strathive/weights.hpp"

namespace strathive {

struct Limits {
  // Wall-clock fuse. Runs cut by it are not reproducible; tuning sets the
  // loop and clause limits and keeps this generous.
  double max_seconds = 60.0;
  std::int64_t max_loops = 1'000'000;
  // Cap on clauses produced by inferences, redundant ones included.
  std::int64_t max_clauses = 2'000'000;
  std::int64_t max_memory_mb = 1024;
};

enum class ProverStatus { proved, saturated, resource_out };
std::string_view status_name(ProverStatus s);

struct ProverResult {
  ProverStatus status = ProverStatus::resource_out;
  std::int64_t gc_loops = 0;
  double wall_time = 0.0;
  // Clauses produced by inferences, redundant ones included.
  std::int64_t derived_count = 0;
  // Which limit stopped the run ("loops", "clauses", "memory", "time"); empty otherwise.
  std::string exhausted;
  // The refutation in id order, ending with the empty clause. Empty unless proved.
  std::vector<Clause> proof;
};

// Conversion from seconds to deterministic limits.
struct Calibration {
  double loops_per_second = 2000.0;
  double clauses_per_second = 50000.0;

  Limits limits_for(double seconds) const;
  // Saturates a built-in problem repeatedly for about `seconds`.
  static Calibration measure(double seconds = 1.0);
};

// -- Calculus --------------------------------------------------------------

struct CalculusConfig {
  TermOrdering ordering = TermOrdering::none;
  LiteralSelection selection = LiteralSelection::none;
};

// Knuth-Bendix ordering with unit weights; symbols ordered by (arity, id).
// Returns true when s > t.
bool kbo_greater(const Term& s, const Term& t);

// Literals of c that may take part in inferences.
std::vector<bool> eligible_literals(const Clause& c, const CalculusConfig& cfg);

bool is_tautology(const Clause& c);
// Does a subsume b? Some substitution must map the literals of a onto
// pairwise distinct literals of b.
bool subsumes(const Clause& a, const Clause& b);

// Resolvents of `a` (parent 0) and `b` (parent 1) on eligible complementary
// literals, with variables renamed apart. Ids and creation data are left 0.
std::vector<Clause> resolvents(const Clause& a, const Clause& b, const CalculusConfig& cfg);
std::vector<Clause> factors(const Clause& c, const CalculusConfig& cfg);

// All inferences between g and the processed set (g included), before any
// redundancy filtering.
std::vector<Clause> generate(const Clause& g, std::span<const Clause> processed, const CalculusConfig& cfg);

// -- Clause selection ------------------------------------------------------

// One heap per CEF over the unprocessed clauses, consulted round-robin: CEF i
// is used for n_i consecutive selections.
class ClauseQueue {
 public:
  ClauseQueue(const Protocol& protocol, WeightContext ctx);

  void insert(const Clause& c);
  bool empty() const { return alive_count_ == 0; }
  std::size_t size() const { return alive_count_; }
  // Removes and returns the next given clause; nullopt when empty.
  std::optional<ClauseId> select();
  // CEF slot used by the latest select().
  std::size_t last_slot() const { return last_slot_; }

 private:
  struct Entry {
    CefValue value;
    ClauseId id;
  };
  struct Later {
    bool operator()(const Entry& a, const Entry& b) const { return selects_before(b.value, b.id, a.value, a.id); }
  };

  bool alive(ClauseId id) const;

  std::vector<WeightedCef> cefs_;
  WeightContext ctx_;
  std::vector<TermWeightCache> caches_;
  std::vector<std::priority_queue<Entry, std::vector<Entry>, Later>> heaps_;
  std::vector<char> alive_;
  std::size_t alive_count_ = 0;
  std::size_t slot_ = 0;
  int remaining_ = 0;
  std::size_t last_slot_ = 0;
};

// -- Saturation --------------------------------------------------------------

ProverResult saturate(const Problem& problem, const Protocol& protocol, const Limits& limits);

// The proof as TPTP clauses, one per line, each annotated with its inference
// and parents, e.g. `cnf(c7,plain,(q(X0)),inference(resolution,[c2,c5])).`
std::string render_proof(const std::vector<Clause>& proof, const Signature& sig);

// The protocol used when none is given.
Protocol default_protocol();

}  // namespace strathive

#endif  // STRATHIVE_PROVER_HPP
