#include "strathive/tuner.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "strathive/parallel.hpp"
#include "strathive/rng.hpp"

namespace strathive {

namespace fs = std::filesystem;

// ---------------------------------------------------------------------------
// Matrix

std::optional<std::size_t> PerfMatrix::find(const Protocol& p) const {
  for (std::size_t i = 0; i < protocols.size(); ++i) {
    if (protocols[i] == p) return i;
  }
  return std::nullopt;
}

void PerfMatrix::add_row(Protocol p, std::vector<std::int64_t> row) {
  if (find(p)) throw std::invalid_argument("protocol is already a matrix row: " + render_protocol(p));
  if (row.size() != problems.size()) throw std::invalid_argument("matrix row has the wrong length");
  protocols.push_back(std::move(p));
  cost.push_back(std::move(row));
}

std::int64_t PerfMatrix::solved_union() const {
  std::int64_t n = 0;
  for (std::size_t j = 0; j < problems.size(); ++j) {
    for (std::size_t i = 0; i < protocols.size(); ++i) {
      if (solves(i, j)) {
        ++n;
        break;
      }
    }
  }
  return n;
}

std::int64_t PerfMatrix::solved_by(std::size_t protocol) const {
  return solved_count(cost.at(protocol));
}

Evaluation run_protocol(const Protocol& p, std::span<const Problem* const> problems, const Limits& limits,
                        unsigned workers) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<ProverResult> results(problems.size());
  parallel_for(problems.size(), workers, [&](std::size_t i) { results[i] = saturate(*problems[i], p, limits); });
  Evaluation e;
  for (const ProverResult& r : results) {
    e.costs.push_back(penalized_cost(r));
    e.work += r.status == ProverStatus::resource_out ? limits.max_loops : r.gc_loops;
  }
  e.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return e;
}

void evaluate_protocol(PerfMatrix& matrix, const Protocol& p, std::span<const Problem> corpus,
                       const Calibration& calibration, unsigned workers) {
  if (matrix.find(p)) throw std::invalid_argument("protocol is already a matrix row: " + render_protocol(p));
  if (matrix.protocols.empty() && matrix.problems.empty()) {
    for (const Problem& pr : corpus) matrix.problems.push_back(pr.name);
  }
  if (matrix.problems.size() != corpus.size()) throw std::invalid_argument("corpus does not match the matrix");
  std::vector<const Problem*> ptrs;
  for (std::size_t j = 0; j < corpus.size(); ++j) {
    if (corpus[j].name != matrix.problems[j]) {
      throw std::invalid_argument("corpus problem '" + corpus[j].name + "' does not match matrix column '" +
                                  matrix.problems[j] + "'");
    }
    ptrs.push_back(&corpus[j]);
  }
  Evaluation e = run_protocol(p, ptrs, calibration.limits_for(matrix.t_eval), workers);
  matrix.add_row(p, std::move(e.costs));
}

std::vector<EligiblePair> eligible(const PerfMatrix& matrix, const EligibilityParams& e) {
  std::vector<EligiblePair> pairs(matrix.protocols.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) pairs[i].protocol = i;
  for (std::size_t j = 0; j < matrix.problems.size(); ++j) {
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < matrix.protocols.size(); ++i) {
      if (!best || matrix.cost[i][j] < matrix.cost[*best][j]) best = i;
    }
    if (!best) continue;
    const std::int64_t c = matrix.cost[*best][j];
    if (c >= e.c_min && c <= e.c_max) pairs[*best].problems.push_back(j);
  }
  std::erase_if(pairs, [&](const EligiblePair& p) {
    return static_cast<std::int64_t>(p.problems.size()) < e.versatility;
  });
  std::stable_sort(pairs.begin(), pairs.end(), [](const EligiblePair& a, const EligiblePair& b) {
    return a.problems.size() > b.problems.size();
  });
  if (pairs.size() > e.max_protocols) pairs.resize(e.max_protocols);
  return pairs;
}

// ---------------------------------------------------------------------------
// CEF database

bool CefDb::add(const Cef& cef) {
  return entries_.try_emplace(render_cef(cef), cef, 0).second;
}

void CefDb::increment(const Cef& cef, std::int64_t by) {
  if (by < 0) throw std::invalid_argument("usage counters only increase");
  auto it = entries_.try_emplace(render_cef(cef), cef, 0).first;
  it->second.second += by;
}

void CefDb::record_usage(const Protocol& p) {
  std::set<std::string> seen;
  for (const WeightedCef& wc : p.cefs) {
    if (seen.insert(render_cef(wc.cef)).second) increment(wc.cef);
  }
}

std::int64_t CefDb::usage(const Cef& cef) const {
  auto it = entries_.find(render_cef(cef));
  return it == entries_.end() ? 0 : it->second.second;
}

bool CefDb::contains(const Cef& cef) const { return entries_.contains(render_cef(cef)); }

std::string CefDb::to_json() const {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& [text, entry] : entries_) {
    nlohmann::ordered_json j;
    j["cef"] = text;
    j["usage"] = entry.second;
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

CefDb CefDb::from_json(std::string_view json) {
  CefDb db;
  for (const auto& j : nlohmann::json::parse(json)) {
    const Cef cef = parse_cef(j.at("cef").get<std::string>());
    const std::int64_t usage = j.value("usage", std::int64_t{0});
    if (usage < 0) throw std::invalid_argument("negative CEF usage counter");
    db.increment(cef, usage);
  }
  return db;
}

namespace {

class FileLock {
 public:
  explicit FileLock(const fs::path& path) {
    fd_ = ::open(path.c_str(), O_RDWR | O_CREAT, 0644);
    if (fd_ < 0) throw std::runtime_error("cannot open lock file " + path.string());
    if (::flock(fd_, LOCK_EX) != 0) {
      ::close(fd_);
      throw std::runtime_error("cannot lock " + path.string());
    }
  }
  ~FileLock() {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;

 private:
  int fd_;
};

}  // namespace

CefDb read_cef_db_file(const fs::path& path) { return CefDb::from_json(read_file(path)); }

CefDb update_cef_db_file(const fs::path& path, const CefDb& initial, const std::function<void(CefDb&)>& change) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  FileLock lock(fs::path(path.string() + ".lock"));
  CefDb db = fs::exists(path) ? read_cef_db_file(path) : initial;
  change(db);
  write_file_atomic(path, db.to_json());
  return db;
}

std::vector<Cef> select_top_cefs(const CefDb& db, std::size_t k) {
  std::map<WeightKind, std::vector<std::pair<std::string, const std::pair<Cef, std::int64_t>*>>> groups;
  for (const auto& [text, entry] : db.entries()) groups[entry.first.weight.kind()].emplace_back(text, &entry);
  if (k < groups.size()) {
    throw std::invalid_argument("collection size " + std::to_string(k) + " cannot cover " +
                                std::to_string(groups.size()) + " weight functions");
  }
  for (auto& [kind, items] : groups) {
    std::stable_sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
      if (a.second->second != b.second->second) return a.second->second > b.second->second;
      return a.first < b.first;
    });
  }
  std::vector<Cef> out;
  for (std::size_t round = 0; out.size() < k; ++round) {
    bool any = false;
    for (WeightKind kind : kAllWeightKinds) {
      auto it = groups.find(kind);
      if (it == groups.end() || round >= it->second.size()) continue;
      any = true;
      out.push_back(it->second[round].second->first);
      if (out.size() == k) break;
    }
    if (!any) break;
  }
  return out;
}

std::vector<Cef> seed_collection() {
  static const char* const kSeeds[] = {
      "ConjectureSymbolWeight(PreferAll,0.5,2,1,1,1)",
      "Term(PreferAll,0.5,2,1,1,1)",
      "Tfidf(PreferAll,ax)",
      "Pref(PreferAll,1,5)",
      "Lev(PreferAll,1,1,1)",
      "Ted(PreferAll,1,1,1)",
      "Struc(PreferAll,1,1,1)",
      "Clauseweight(PreferAll,1,1,1)",
      "Refinedweight(PreferGoals,1,2,2,1,2)",
      "FIFOWeight(PreferAll)",
      "ByAge(ByCreationDate)",
  };
  std::vector<Cef> out;
  for (const char* s : kSeeds) out.push_back(parse_cef(s));
  return out;
}

CefDb seed_cef_db(std::span<const Cef> seeds, std::span<const Protocol> protocols) {
  CefDb db;
  for (const Cef& c : seeds) db.add(c);
  for (const Protocol& p : protocols) db.record_usage(p);
  return db;
}

std::vector<Cef> load_cef_list(const fs::path& path) {
  std::istringstream in(read_file(path));
  std::vector<Cef> out;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    out.push_back(parse_cef(line.substr(first)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Iteration

std::string problem_set_digest(const PerfMatrix& matrix, const std::vector<std::size_t>& problems) {
  std::vector<std::string> names;
  for (std::size_t j : problems) names.push_back(matrix.problems.at(j));
  std::sort(names.begin(), names.end());
  std::string joined;
  for (const std::string& n : names) {
    joined += n;
    joined += '\n';
  }
  return text_digest(joined);
}

namespace {

struct PhaseOutcome {
  Protocol protocol;
  PhaseSummary summary;
};

PhaseOutcome run_phase(const char* kind, const ConfigSpace& space, const Config& start,
                       std::span<const Problem* const> problems, const TunerConfig& cfg, std::uint64_t seed) {
  const Limits limits = cfg.calibration.limits_for(cfg.t_cutoff);
  PerfOracle oracle = [&](const Config& c) { return run_protocol(space.decode(c), problems, limits, cfg.workers); };
  IlsParams params;
  params.budget = static_cast<std::int64_t>(std::ceil(cfg.t_improve * cfg.calibration.loops_per_second));
  params.restart_prob = cfg.restart_prob;
  params.perturb_strength = cfg.perturb_strength;
  params.rng_seed = seed;
  IlsResult r = tune(space, start, oracle, params);

  PhaseOutcome out;
  out.protocol = space.decode(r.best);
  out.summary.kind = kind;
  out.summary.start_cost = r.trajectory.front().mean_cost;
  out.summary.best_cost = r.best_cost;
  out.summary.evaluations = r.evaluations;
  out.summary.work = r.work;
  out.summary.trajectory = trajectory_jsonl(r);
  return out;
}

}  // namespace

std::optional<IterationSummary> blistrtune_iteration(TunerState& state, const TunerConfig& cfg,
                                                     std::span<const Problem> corpus, const CefRecorder& recorder) {
  const auto start = std::chrono::steady_clock::now();
  PerfMatrix& matrix = state.matrix;

  std::optional<EligiblePair> chosen;
  std::string set_digest;
  for (const EligiblePair& pair : eligible(matrix, cfg.eligibility)) {
    const std::string d = problem_set_digest(matrix, pair.problems);
    if (!state.attempted.contains({protocol_digest(matrix.protocols[pair.protocol]), d})) {
      chosen = pair;
      set_digest = d;
      break;
    }
  }
  if (!chosen) return std::nullopt;

  if (corpus.size() != matrix.problems.size()) throw std::invalid_argument("corpus does not match the matrix");
  std::vector<const Problem*> problems;
  for (std::size_t j : chosen->problems) problems.push_back(&corpus[j]);

  IterationSummary summary;
  summary.iteration = state.iteration;
  summary.theta0 = chosen->protocol;
  summary.problems = chosen->problems;
  summary.problem_set_digest = set_digest;

  const Protocol theta0 = matrix.protocols[chosen->protocol];
  std::vector<Cef> collection = state.collection;
  auto seed_for = [&](std::uint64_t phase) {
    return derive_seed(cfg.seed, static_cast<std::uint64_t>(state.iteration) * 4 + phase);
  };

  Protocol theta = theta0;
  for (std::uint64_t phase = 0; phase < 4; ++phase) {
    PhaseOutcome out;
    if (phase % 2 == 0) {
      GlobalEmbedding emb = embed_in_global(theta, collection, cfg.c_cef, cfg.domains);
      collection = emb.collection;
      out = run_phase("global", emb.space, emb.config, problems, cfg, seed_for(phase));
    } else {
      const ConfigSpace fine = fine_space(theta, cfg.domains);
      out = run_phase("fine", fine, lift_to_fine(fine), problems, cfg, seed_for(phase));
      // The fine result's CEFs join the collection the next global phase draws from.
      for (const WeightedCef& wc : out.protocol.cefs) {
        if (std::find(collection.begin(), collection.end(), wc.cef) == collection.end()) collection.push_back(wc.cef);
      }
    }
    theta = out.protocol;
    summary.phases.push_back(std::move(out.summary));
  }
  for (const Cef& c : collection) {
    if (std::find(state.collection.begin(), state.collection.end(), c) == state.collection.end()) {
      summary.novel_cefs.push_back(c);
    }
  }
  summary.result = theta;

  if (!matrix.find(theta)) {
    evaluate_protocol(matrix, theta, corpus, cfg.calibration, cfg.workers);
    summary.new_row = matrix.protocols.size() - 1;
  }

  if (recorder) {
    state.cef_db = recorder(summary.novel_cefs, theta);
  } else {
    for (const Cef& c : summary.novel_cefs) state.cef_db.add(c);
    state.cef_db.record_usage(theta);
  }
  state.collection = select_top_cefs(state.cef_db, cfg.collection_size);
  state.attempted.insert({protocol_digest(theta0), set_digest});
  ++state.iteration;
  summary.run_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return summary;
}

TunerState initial_state(std::span<const Protocol> seed_protocols, std::span<const Problem> corpus,
                         const TunerConfig& cfg, const CefDb& db) {
  TunerState st;
  st.cef_db = db;
  st.collection = select_top_cefs(db, cfg.collection_size);
  st.matrix.t_eval = cfg.t_eval;
  for (const Problem& p : corpus) st.matrix.problems.push_back(p.name);
  for (const Protocol& p : seed_protocols) {
    if (!st.matrix.find(p)) evaluate_protocol(st.matrix, p, corpus, cfg.calibration, cfg.workers);
  }
  return st;
}

// ---------------------------------------------------------------------------
// Persistence

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const fs::path& path, std::string_view content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  const fs::path tmp = path.string() + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  fs::rename(tmp, path);
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cell += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cell += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(cell));
      cell.clear();
    } else if (c != '\r') {
      cell += c;
    }
  }
  out.push_back(std::move(cell));
  return out;
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string matrix_csv(const PerfMatrix& m) {
  std::string out = "protocol";
  for (const std::string& p : m.problems) out += "," + csv_cell(p);
  out += '\n';
  for (std::size_t i = 0; i < m.protocols.size(); ++i) {
    out += protocol_digest(m.protocols[i]);
    for (std::int64_t c : m.cost[i]) out += "," + std::to_string(c);
    out += '\n';
  }
  return out;
}

PerfMatrix parse_matrix_csv(std::string_view text, const std::map<std::string, Protocol>& protocols,
                            double t_eval) {
  std::istringstream in{std::string(text)};
  std::string line;
  PerfMatrix m;
  m.t_eval = t_eval;
  if (!std::getline(in, line)) throw std::invalid_argument("matrix file is empty");
  auto header = split_csv_line(line);
  if (header.empty() || header[0] != "protocol") throw std::invalid_argument("matrix header must start with 'protocol'");
  m.problems.assign(header.begin() + 1, header.end());
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto cells = split_csv_line(line);
    if (cells.size() != header.size()) throw std::invalid_argument("matrix row has the wrong length");
    auto it = protocols.find(cells[0]);
    if (it == protocols.end()) throw std::invalid_argument("no protocol text for digest " + cells[0]);
    std::vector<std::int64_t> row;
    for (std::size_t k = 1; k < cells.size(); ++k) {
      const std::int64_t c = std::stoll(cells[k]);
      if (c < 0 || c > kPenalty) throw std::invalid_argument("matrix cost out of range");
      row.push_back(c);
    }
    m.add_row(it->second, std::move(row));
  }
  return m;
}

StateDir::StateDir(fs::path root, fs::path cef_db_path)
    : root_(std::move(root)), cef_db_path_(cef_db_path.empty() ? root_ / "cefdb.json" : std::move(cef_db_path)) {}

bool StateDir::initialized() const { return fs::exists(root_ / "state.json") && fs::exists(root_ / "matrix.csv"); }

TunerState StateDir::load(std::span<const Problem> corpus) const {
  const auto meta = nlohmann::json::parse(read_file(root_ / "state.json"));
  std::map<std::string, Protocol> protocols;
  for (const auto& entry : fs::directory_iterator(root_ / "protocols")) {
    if (entry.path().extension() != ".txt") continue;
    Protocol p = parse_protocol(read_file(entry.path()));
    protocols.emplace(protocol_digest(p), std::move(p));
  }
  TunerState st;
  st.matrix = parse_matrix_csv(read_file(root_ / "matrix.csv"), protocols, meta.at("t_eval").get<double>());
  if (st.matrix.problems.size() != corpus.size()) throw std::invalid_argument("state directory belongs to another corpus");
  for (std::size_t j = 0; j < corpus.size(); ++j) {
    if (st.matrix.problems[j] != corpus[j].name) {
      throw std::invalid_argument("state directory belongs to another corpus (column '" + st.matrix.problems[j] + "')");
    }
  }
  if (fs::exists(root_ / "attempted.log")) {
    std::istringstream in(read_file(root_ / "attempted.log"));
    std::string a, b;
    while (in >> a >> b) st.attempted.insert({a, b});
  }
  st.iteration = static_cast<std::int64_t>(st.attempted.size());
  st.cef_db = read_cef_db_file(cef_db_path_);
  for (const auto& text : meta.at("collection")) st.collection.push_back(parse_cef(text.get<std::string>()));
  return st;
}

void StateDir::save(const TunerState& st) const {
  for (const Protocol& p : st.matrix.protocols) {
    const fs::path file = root_ / "protocols" / (protocol_digest(p) + ".txt");
    if (!fs::exists(file)) write_file_atomic(file, render_protocol(p) + "\n");
  }
  write_file_atomic(root_ / "matrix.csv", matrix_csv(st.matrix));
  std::string attempted;
  for (const auto& [a, b] : st.attempted) attempted += a + " " + b + "\n";
  write_file_atomic(root_ / "attempted.log", attempted);
  if (!fs::exists(cef_db_path_)) write_file_atomic(cef_db_path_, st.cef_db.to_json());

  nlohmann::ordered_json meta;
  meta["t_eval"] = st.matrix.t_eval;
  meta["problems"] = st.matrix.problems.size();
  nlohmann::ordered_json coll = nlohmann::ordered_json::array();
  for (const Cef& c : st.collection) coll.push_back(render_cef(c));
  meta["collection"] = std::move(coll);
  if (!fs::exists(root_ / "state.json")) {
    meta["seed_rows"] = st.matrix.protocols.size();
  } else {
    meta["seed_rows"] = nlohmann::json::parse(read_file(root_ / "state.json")).at("seed_rows");
  }
  write_file_atomic(root_ / "state.json", meta.dump(2) + "\n");
  if (!fs::exists(root_ / "progress.csv")) {
    write_file_atomic(root_ / "progress.csv",
                      "iteration,protocols,solved\n0," + std::to_string(st.matrix.protocols.size()) + "," +
                          std::to_string(st.matrix.solved_union()) + "\n");
  }
}

void StateDir::append_iteration(const TunerState& st, const IterationSummary& s) const {
  std::size_t best = 0;
  for (std::size_t i = 1; i < st.matrix.protocols.size(); ++i) {
    if (st.matrix.solved_by(i) > st.matrix.solved_by(best)) best = i;
  }
  nlohmann::ordered_json j;
  j["iteration"] = s.iteration + 1;
  j["protos"] = st.matrix.protocols.size();
  j["run_time"] = s.run_time;
  j["best_proto"] = protocol_digest(st.matrix.protocols[best]);
  j["best_proto_solved"] = st.matrix.solved_by(best);
  j["solved"] = st.matrix.solved_union();
  j["theta0"] = protocol_digest(st.matrix.protocols[s.theta0]);
  j["problem_set"] = s.problem_set_digest;
  j["problem_count"] = s.problems.size();
  j["result"] = render_protocol(s.result);
  j["new_row"] = s.new_row.has_value();
  nlohmann::ordered_json phases = nlohmann::ordered_json::array();
  for (const PhaseSummary& p : s.phases) {
    nlohmann::ordered_json pj;
    pj["kind"] = p.kind;
    pj["start_cost"] = to_double(p.start_cost);
    pj["best_cost"] = to_double(p.best_cost);
    pj["evaluations"] = p.evaluations;
    pj["work"] = p.work;
    phases.push_back(std::move(pj));
  }
  j["phases"] = std::move(phases);

  // A rerun of an interrupted iteration replaces its earlier record.
  std::map<std::int64_t, std::string> lines;
  if (fs::exists(root_ / "iterations.log")) {
    std::istringstream in(read_file(root_ / "iterations.log"));
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      lines[nlohmann::json::parse(line).at("iteration").get<std::int64_t>()] = line;
    }
  }
  lines[s.iteration + 1] = j.dump();
  std::string log;
  std::string progress = read_file(root_ / "progress.csv");
  progress = progress.substr(0, progress.find('\n', progress.find('\n') + 1) + 1);  // header + seed row
  for (const auto& [it, line] : lines) {
    log += line + "\n";
    const auto rec = nlohmann::json::parse(line);
    progress += std::to_string(it) + "," + std::to_string(rec.at("protos").get<std::int64_t>()) + "," +
                std::to_string(rec.at("solved").get<std::int64_t>()) + "\n";
  }
  write_file_atomic(root_ / "iterations.log", log);
  write_file_atomic(root_ / "progress.csv", progress);

  std::string trajectories;
  for (std::size_t k = 0; k < s.phases.size(); ++k) trajectories += s.phases[k].trajectory;
  write_file_atomic(root_ / "trajectories" / ("iteration-" + std::to_string(s.iteration + 1) + ".jsonl"),
                    trajectories);
}

CefRecorder StateDir::recorder(const CefDb& initial) const {
  const fs::path path = cef_db_path_;
  return [path, initial](const std::vector<Cef>& novel, const Protocol& result) {
    return update_cef_db_file(path, initial, [&](CefDb& db) {
      for (const Cef& c : novel) db.add(c);
      db.record_usage(result);
    });
  };
}

}  // namespace strathive
