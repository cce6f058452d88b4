// strathive: prove, tune, evaluate and schedule from the command line.

#include <chrono>
#include <csignal>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "strathive/ils.hpp"
#include "strathive/logic.hpp"
#include "strathive/parallel.hpp"
#include "strathive/protocol.hpp"
#include "strathive/prover.hpp"
#include "strathive/scheduler.hpp"
#include "strathive/tuner.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace strathive;

namespace {

// Bad input on the command line or in a file named there.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

volatile std::sig_atomic_t g_stop = 0;

void on_signal(int) { g_stop = 1; }

struct CalibrationFlags {
  std::optional<double> loops_per_second;
  std::optional<double> clauses_per_second;
  double calibrate_seconds = 1.0;

  void add_to(CLI::App* app) {
    app->add_option("--loops-per-second", loops_per_second, "Pin the calibration instead of measuring it")
        ->check(CLI::PositiveNumber);
    app->add_option("--clauses-per-second", clauses_per_second, "Pin the clause rate (needs --loops-per-second)")
        ->check(CLI::PositiveNumber);
    app->add_option("--calibrate-seconds", calibrate_seconds, "Duration of the calibration run")
        ->check(CLI::PositiveNumber);
  }

  // Pinned values win; otherwise the built-in problem is timed.
  std::pair<Calibration, std::string> resolve() const {
    if (clauses_per_second && !loops_per_second) throw UsageError("--clauses-per-second needs --loops-per-second");
    if (loops_per_second) {
      Calibration c;
      c.loops_per_second = *loops_per_second;
      c.clauses_per_second = clauses_per_second.value_or(*loops_per_second * 10.0);
      return {c, "pinned"};
    }
    return {Calibration::measure(calibrate_seconds), "measured"};
  }
};

Protocol protocol_from(const std::string& text, const std::string& file) {
  if (!text.empty() && !file.empty()) throw UsageError("give either --protocol or --protocol-file");
  try {
    if (!file.empty()) return parse_protocol(read_file(file));
    if (!text.empty()) return parse_protocol(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("bad protocol: ") + e.what());
  }
  return default_protocol();
}

std::vector<Protocol> protocols_from_file(const fs::path& path) {
  std::vector<Protocol> out;
  std::istringstream in(read_file(path));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    out.push_back(parse_protocol(line));
  }
  if (out.empty()) throw UsageError("no protocols in " + path.string());
  return out;
}

std::vector<Problem> corpus_from(const std::string& dir) {
  try {
    return load_corpus(dir);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  } catch (const std::runtime_error& e) {
    throw UsageError(e.what());
  }
}

json result_json(const ProverResult& r, const Problem& p, const Protocol& proto) {
  json j;
  j["problem"] = p.name;
  j["protocol"] = render_protocol(proto);
  j["status"] = std::string(status_name(r.status));
  j["gc_loops"] = r.gc_loops;
  j["derived_count"] = r.derived_count;
  j["wall_time"] = r.wall_time;
  j["exhausted"] = r.exhausted;
  if (r.status == ProverStatus::proved) j["proof"] = render_proof(r.proof, p.signature);
  return j;
}

// -- prove -----------------------------------------------------------------

struct ProveArgs {
  std::string problem;
  std::string protocol;
  std::string protocol_file;
  std::optional<double> time;
  std::optional<std::int64_t> max_loops;
  std::optional<std::int64_t> max_clauses;
  std::optional<double> max_seconds;
  CalibrationFlags calibration;
};

int cmd_prove(const ProveArgs& a) {
  Problem p;
  try {
    p = load_problem(a.problem);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  const Protocol proto = protocol_from(a.protocol, a.protocol_file);
  Limits limits;
  if (a.time) limits = a.calibration.resolve().first.limits_for(*a.time);
  if (a.max_loops) limits.max_loops = *a.max_loops;
  if (a.max_clauses) limits.max_clauses = *a.max_clauses;
  if (a.max_seconds) limits.max_seconds = *a.max_seconds;
  const ProverResult r = saturate(p, proto, limits);
  std::cout << result_json(r, p, proto).dump(2) << "\n";
  return r.status == ProverStatus::proved ? 0 : 1;
}

// -- manifest --------------------------------------------------------------

struct TuneArgs {
  std::string corpus;
  std::string state_dir;
  std::string cef_db;
  std::string seed_protocols;
  std::string seed_cefs;
  std::string domains;
  std::optional<double> budget;
  std::optional<std::int64_t> iterations;
  TunerConfig cfg;
  CalibrationFlags calibration;
};

std::string absolute_path(const std::string& p) {
  return p.empty() ? p : fs::absolute(p).lexically_normal().string();
}

json manifest_json(const TuneArgs& a, const std::vector<Protocol>& seeds, const std::vector<Cef>& seed_cefs,
                   const std::string& calibration_source) {
  const TunerConfig& c = a.cfg;
  json j;
  j["corpus"] = a.corpus;
  j["state_dir"] = absolute_path(a.state_dir);
  j["cef_db"] = a.cef_db;
  j["seed"] = c.seed;
  j["workers"] = c.workers;
  j["calibration"] = {{"loops_per_second", c.calibration.loops_per_second},
                      {"clauses_per_second", c.calibration.clauses_per_second},
                      {"source", calibration_source}};
  j["tuner"] = {{"t_improve", c.t_improve},
                {"t_cutoff", c.t_cutoff},
                {"t_eval", c.t_eval},
                {"c_cef", c.c_cef},
                {"collection_size", c.collection_size},
                {"c_min", c.eligibility.c_min},
                {"c_max", c.eligibility.c_max},
                {"versatility", c.eligibility.versatility},
                {"max_protocols", c.eligibility.max_protocols},
                {"restart_prob", c.restart_prob},
                {"perturb_strength", c.perturb_strength}};
  j["domains"] = json::parse(c.domains.to_json());
  json seeds_json = json::array();
  for (const Protocol& p : seeds) seeds_json.push_back(render_protocol(p));
  j["seed_protocols"] = std::move(seeds_json);
  json cefs_json = json::array();
  for (const Cef& c : seed_cefs) cefs_json.push_back(render_cef(c));
  j["seed_cefs"] = std::move(cefs_json);
  return j;
}

// Settings stored in the manifest; the run continues with exactly these.
void apply_manifest(const json& j, TuneArgs& a, std::vector<Protocol>& seeds, std::vector<Cef>& seed_cefs) {
  TunerConfig& c = a.cfg;
  a.corpus = j.at("corpus").get<std::string>();
  a.cef_db = j.at("cef_db").get<std::string>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.workers = j.at("workers").get<unsigned>();
  c.calibration.loops_per_second = j.at("calibration").at("loops_per_second").get<double>();
  c.calibration.clauses_per_second = j.at("calibration").at("clauses_per_second").get<double>();
  const json& t = j.at("tuner");
  c.t_improve = t.at("t_improve").get<double>();
  c.t_cutoff = t.at("t_cutoff").get<double>();
  c.t_eval = t.at("t_eval").get<double>();
  c.c_cef = t.at("c_cef").get<int>();
  c.collection_size = t.at("collection_size").get<std::size_t>();
  c.eligibility.c_min = t.at("c_min").get<std::int64_t>();
  c.eligibility.c_max = t.at("c_max").get<std::int64_t>();
  c.eligibility.versatility = t.at("versatility").get<std::int64_t>();
  c.eligibility.max_protocols = t.at("max_protocols").get<std::size_t>();
  c.restart_prob = t.at("restart_prob").get<double>();
  c.perturb_strength = t.at("perturb_strength").get<int>();
  c.domains = ArgDomains::from_json(j.at("domains").dump());
  seeds.clear();
  for (const auto& s : j.at("seed_protocols")) seeds.push_back(parse_protocol(s.get<std::string>()));
  seed_cefs.clear();
  for (const auto& s : j.at("seed_cefs")) seed_cefs.push_back(parse_cef(s.get<std::string>()));
}

// -- tune ------------------------------------------------------------------

int cmd_tune(TuneArgs a, const CLI::App& sub) {
  if (a.state_dir.empty()) throw UsageError("no state directory (--state-dir or STRATHIVE_STATE)");
  const fs::path root(a.state_dir);
  const fs::path manifest_path = root / "manifest.json";
  std::vector<Protocol> seeds;
  std::vector<Cef> seed_cefs;

  if (fs::exists(manifest_path)) {
    const TuneArgs given = a;
    apply_manifest(json::parse(read_file(manifest_path)), a, seeds, seed_cefs);
    // Settings given again must agree with the recorded run.
    auto check = [&](const char* flag, bool differs) {
      if (sub.count(flag) > 0 && differs) {
        throw UsageError(std::string(flag) + " differs from the run recorded in " + manifest_path.string());
      }
    };
    const TunerConfig& g = given.cfg;
    const TunerConfig& r = a.cfg;
    check("--corpus", absolute_path(given.corpus) != a.corpus);
    check("--cef-db", absolute_path(given.cef_db) != a.cef_db);
    check("--seed", g.seed != r.seed);
    check("--workers", g.workers != r.workers);
    check("--t-improve", g.t_improve != r.t_improve);
    check("--t-cutoff", g.t_cutoff != r.t_cutoff);
    check("--t-eval", g.t_eval != r.t_eval);
    check("--c-cef", g.c_cef != r.c_cef);
    check("--collection-size", g.collection_size != r.collection_size);
    check("--c-min", g.eligibility.c_min != r.eligibility.c_min);
    check("--c-max", g.eligibility.c_max != r.eligibility.c_max);
    check("--versatility", g.eligibility.versatility != r.eligibility.versatility);
    check("--max-protocols", g.eligibility.max_protocols != r.eligibility.max_protocols);
    check("--restart-prob", g.restart_prob != r.restart_prob);
    check("--perturb-strength", g.perturb_strength != r.perturb_strength);
    check("--loops-per-second", given.calibration.loops_per_second != r.calibration.loops_per_second);
    check("--clauses-per-second", given.calibration.clauses_per_second != r.calibration.clauses_per_second);
    if (sub.count("--seed-protocols") > 0) check("--seed-protocols", protocols_from_file(given.seed_protocols) != seeds);
    if (sub.count("--seed-cefs") > 0) check("--seed-cefs", load_cef_list(given.seed_cefs) != seed_cefs);
    if (sub.count("--domains") > 0) {
      check("--domains", ArgDomains::from_json(read_file(given.domains)).to_json() != r.domains.to_json());
    }
    std::cerr << "resuming " << root.string() << "\n";
  } else {
    if (a.corpus.empty()) throw UsageError("--corpus is required for a new state directory");
    a.corpus = absolute_path(a.corpus);
    a.cef_db = absolute_path(a.cef_db.empty() ? (root / "cefdb.json").string() : a.cef_db);
    seeds = a.seed_protocols.empty() ? std::vector<Protocol>{default_protocol()}
                                     : protocols_from_file(a.seed_protocols);
    seed_cefs = a.seed_cefs.empty() ? seed_collection() : load_cef_list(a.seed_cefs);
    if (!a.domains.empty()) a.cfg.domains = ArgDomains::from_json(read_file(a.domains));
    auto [cal, source] = a.calibration.resolve();
    a.cfg.calibration = cal;
    fs::create_directories(root);
    write_file_atomic(manifest_path, manifest_json(a, seeds, seed_cefs, source).dump(2) + "\n");
  }

  const std::vector<Problem> corpus = corpus_from(a.corpus);
  StateDir dir(root, a.cef_db);
  const CefDb initial_db = seed_cef_db(seed_cefs, seeds);

  TunerState state;
  if (dir.initialized()) {
    state = dir.load(corpus);
  } else {
    const CefDb db = fs::exists(dir.cef_db_path()) ? read_cef_db_file(dir.cef_db_path()) : initial_db;
    state = initial_state(seeds, corpus, a.cfg, db);
    dir.save(state);
  }
  std::cerr << "iteration " << state.iteration << ": " << state.matrix.protocols.size() << " protocols, "
            << state.matrix.solved_union() << "/" << corpus.size() << " solved\n";

  const auto start = std::chrono::steady_clock::now();
  const CefRecorder recorder = dir.recorder(initial_db);
  std::int64_t done = 0;
  while (!g_stop) {
    if (a.iterations && done >= *a.iterations) break;
    if (a.budget &&
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() >= *a.budget) {
      break;
    }
    const auto summary = blistrtune_iteration(state, a.cfg, corpus, recorder);
    if (!summary) {
      std::cerr << "no eligible protocol and problem set left\n";
      break;
    }
    dir.append_iteration(state, *summary);
    dir.save(state);
    ++done;
    std::cerr << "iteration " << state.iteration << ": " << state.matrix.protocols.size() << " protocols, "
              << state.matrix.solved_union() << "/" << corpus.size() << " solved"
              << (summary->new_row ? "" : " (result already known)") << "\n";
  }
  return 0;
}

// -- eval ------------------------------------------------------------------

struct EvalArgs {
  std::string corpus;
  std::string protocol;
  std::string protocol_file;
  double t_eval = 5.0;
  unsigned workers = 1;
  CalibrationFlags calibration;
};

int cmd_eval(const EvalArgs& a) {
  const std::vector<Problem> corpus = corpus_from(a.corpus);
  const Protocol proto = protocol_from(a.protocol, a.protocol_file);
  const Limits limits = a.calibration.resolve().first.limits_for(a.t_eval);
  std::vector<ProverResult> results(corpus.size());
  parallel_for(corpus.size(), a.workers, [&](std::size_t i) { results[i] = saturate(corpus[i], proto, limits); });
  std::cout << "problem,status,gc_loops,derived_count,cost\n";
  std::int64_t solved = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const ProverResult& r = results[i];
    solved += r.status == ProverStatus::proved;
    std::cout << corpus[i].name << "," << status_name(r.status) << "," << r.gc_loops << "," << r.derived_count
              << "," << penalized_cost(r) << "\n";
  }
  std::cerr << "solved " << solved << "/" << corpus.size() << "\n";
  return 0;
}

// -- schedule --------------------------------------------------------------

struct ScheduleArgs {
  std::string state_dir;
  std::vector<std::string> methods;
  double total = 5.0;
  std::string eval_corpus;
  std::string out_dir;
  std::optional<unsigned> workers;
};

int cmd_schedule(const ScheduleArgs& a) {
  if (a.state_dir.empty()) throw UsageError("no state directory (--state-dir or STRATHIVE_STATE)");
  const fs::path root(a.state_dir);
  if (!fs::exists(root / "manifest.json")) throw UsageError("no manifest in " + root.string());
  std::vector<ScheduleSpec> specs;
  for (const std::string& m : a.methods) {
    try {
      specs.push_back(ScheduleSpec::parse(m));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  TuneArgs t;
  std::vector<Protocol> seeds;
  std::vector<Cef> seed_cefs;
  apply_manifest(json::parse(read_file(root / "manifest.json")), t, seeds, seed_cefs);
  const unsigned workers = a.workers.value_or(t.cfg.workers);

  const std::vector<Problem> training = corpus_from(t.corpus);
  StateDir dir(root, t.cef_db);
  if (!dir.initialized()) throw UsageError("state directory holds no matrix");
  const TunerState state = dir.load(training);
  if (state.matrix.protocols.empty()) throw UsageError("the matrix is empty");
  const std::vector<Problem> eval_corpus = a.eval_corpus.empty() ? training : corpus_from(a.eval_corpus);

  const fs::path out = a.out_dir.empty() ? root / "schedules" : fs::path(a.out_dir);
  std::string csv = "scheduler,protos,solved\n";
  for (const ScheduleSpec& spec : specs) {
    PerfMatrix m = state.matrix;
    if (spec.method == ScheduleMethod::greedy && spec.t != m.t_eval) {
      m = evaluate_matrix_at(state.matrix, training, spec.t, t.cfg.calibration, workers);
    }
    const Scheduler s = build_schedule(spec, m);
    write_file_atomic(out / (spec.name() + ".schedule"), render_schedule(s, a.total));
    std::vector<char> proved(eval_corpus.size(), 0);
    parallel_for(eval_corpus.size(), workers, [&](std::size_t i) {
      proved[i] = run_schedule(s, eval_corpus[i], a.total, t.cfg.calibration).status == ProverStatus::proved;
    });
    std::int64_t solved = 0;
    for (char c : proved) solved += c;
    csv += spec.name() + "," + std::to_string(s.protocols.size()) + "," + std::to_string(solved) + "\n";
  }
  write_file_atomic(out / "schedules.csv", csv);
  std::cout << csv;
  return 0;
}

// -- cef-db ----------------------------------------------------------------

struct CefDbArgs {
  std::string path;
  std::size_t top = 0;
  std::vector<std::string> add;
  std::vector<std::string> record;
};

int cmd_cef_db(const CefDbArgs& a, const std::string& action) {
  if (a.path.empty()) throw UsageError("--path is required");
  if (action == "show" || action == "top") {
    if (!fs::exists(a.path)) throw UsageError("no database at " + a.path);
    const CefDb db = read_cef_db_file(a.path);
    if (action == "show") {
      std::cout << db.to_json();
    } else {
      for (const Cef& c : select_top_cefs(db, a.top)) std::cout << render_cef(c) << "\n";
    }
    return 0;
  }
  std::vector<Cef> cefs;
  std::vector<Protocol> protocols;
  try {
    for (const std::string& s : a.add) cefs.push_back(parse_cef(s));
    for (const std::string& s : a.record) protocols.push_back(parse_protocol(s));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const CefDb db = update_cef_db_file(a.path, seed_cef_db(seed_collection(), {}), [&](CefDb& d) {
    for (const Cef& c : cefs) d.add(c);
    for (const Protocol& p : protocols) d.record_usage(p);
  });
  std::cerr << db.size() << " CEFs\n";
  return 0;
}

void add_tuner_flags(CLI::App* sub, TuneArgs& a) {
  TunerConfig& c = a.cfg;
  sub->add_option("--corpus", a.corpus, "Directory of .p problems");
  sub->add_option("--state-dir", a.state_dir, "State directory")->envname("STRATHIVE_STATE");
  sub->add_option("--cef-db", a.cef_db, "CEF database file (default: <state-dir>/cefdb.json)");
  sub->add_option("--seed-protocols", a.seed_protocols, "File with one seed protocol per line");
  sub->add_option("--seed-cefs", a.seed_cefs, "File with one seed CEF per line");
  sub->add_option("--domains", a.domains, "JSON file with numeric argument domains");
  sub->add_option("--budget", a.budget, "Wall-clock seconds for tuning iterations")->check(CLI::NonNegativeNumber);
  sub->add_option("--iterations", a.iterations, "Stop after this many iterations")->check(CLI::NonNegativeNumber);
  sub->add_option("--t-improve", c.t_improve, "Seconds of work per ILS phase")->check(CLI::PositiveNumber);
  sub->add_option("--t-cutoff", c.t_cutoff, "Per-problem limit during tuning")->check(CLI::PositiveNumber);
  sub->add_option("--t-eval", c.t_eval, "Per-problem limit of the matrix")->check(CLI::PositiveNumber);
  sub->add_option("--c-cef", c.c_cef, "CEF slots in the global space")->check(CLI::Range(1, 64));
  sub->add_option("--collection-size", c.collection_size, "CEFs kept in the collection")->check(CLI::PositiveNumber);
  sub->add_option("--c-min", c.eligibility.c_min, "Lowest credited cost");
  sub->add_option("--c-max", c.eligibility.c_max, "Highest credited cost");
  sub->add_option("--versatility", c.eligibility.versatility, "Credits needed to qualify");
  sub->add_option("--max-protocols", c.eligibility.max_protocols, "Eligible protocols kept");
  sub->add_option("--restart-prob", c.restart_prob, "ILS restart probability")->check(CLI::Range(0.0, 1.0));
  sub->add_option("--perturb-strength", c.perturb_strength, "ILS perturbation steps")->check(CLI::NonNegativeNumber);
  sub->add_option("--seed", c.seed, "Random seed");
  sub->add_option("--workers", c.workers, "Prover threads")->check(CLI::PositiveNumber);
  a.calibration.add_to(sub);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Protocol tuning for a small resolution prover"};
  app.require_subcommand(1);

  ProveArgs prove;
  auto* prove_cmd = app.add_subcommand("prove", "Run the prover on one problem and print the result as JSON");
  prove_cmd->add_option("problem", prove.problem, "Problem file")->required();
  prove_cmd->add_option("--protocol", prove.protocol, "Protocol text");
  prove_cmd->add_option("--protocol-file", prove.protocol_file, "File holding the protocol");
  prove_cmd->add_option("--time", prove.time, "Time limit, converted to loop and clause limits")
      ->check(CLI::PositiveNumber);
  prove_cmd->add_option("--max-loops", prove.max_loops, "Given-clause loop limit")->check(CLI::PositiveNumber);
  prove_cmd->add_option("--max-clauses", prove.max_clauses, "Generated clause limit")->check(CLI::PositiveNumber);
  prove_cmd->add_option("--max-seconds", prove.max_seconds, "Wall-clock fuse")->check(CLI::PositiveNumber);
  prove.calibration.add_to(prove_cmd);

  TuneArgs tune;
  auto* tune_cmd = app.add_subcommand("tune", "Run tuning iterations, resuming from the state directory");
  add_tuner_flags(tune_cmd, tune);

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate one protocol on a corpus, CSV on stdout");
  eval_cmd->add_option("--corpus", eval.corpus, "Directory of .p problems")->required();
  eval_cmd->add_option("--protocol", eval.protocol, "Protocol text");
  eval_cmd->add_option("--protocol-file", eval.protocol_file, "File holding the protocol");
  eval_cmd->add_option("--t-eval", eval.t_eval, "Per-problem time limit")->check(CLI::PositiveNumber);
  eval_cmd->add_option("--workers", eval.workers, "Prover threads")->check(CLI::PositiveNumber);
  eval.calibration.add_to(eval_cmd);

  ScheduleArgs sched;
  auto* sched_cmd = app.add_subcommand("schedule", "Build schedules from the matrix and evaluate them");
  sched_cmd->add_option("--state-dir", sched.state_dir, "State directory")->envname("STRATHIVE_STATE");
  sched_cmd->add_option("--method", sched.methods, "greedy_<t>, sotac_<n> or esotac_<n> (repeatable)")
      ->required();
  sched_cmd->add_option("--total", sched.total, "Seconds per problem for the whole schedule")
      ->check(CLI::PositiveNumber);
  sched_cmd->add_option("--corpus", sched.eval_corpus, "Evaluation corpus (default: the tuning corpus)");
  sched_cmd->add_option("--out", sched.out_dir, "Output directory (default: <state-dir>/schedules)");
  sched_cmd->add_option("--workers", sched.workers, "Prover threads")->check(CLI::PositiveNumber);

  CefDbArgs cefdb;
  std::string cefdb_action;
  auto* cefdb_cmd = app.add_subcommand("cef-db", "Inspect or update a CEF database file");
  cefdb_cmd->add_option("action", cefdb_action, "show, top, add or record")
      ->required()
      ->check(CLI::IsMember({"show", "top", "add", "record"}));
  cefdb_cmd->add_option("--path", cefdb.path, "Database file")->required();
  cefdb_cmd->add_option("--k", cefdb.top, "Collection size for 'top'");
  cefdb_cmd->add_option("--cef", cefdb.add, "CEF to add (repeatable)");
  cefdb_cmd->add_option("--protocol", cefdb.record, "Protocol whose CEFs gain one use (repeatable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  try {
    if (*prove_cmd) return cmd_prove(prove);
    if (*tune_cmd) return cmd_tune(tune, *tune_cmd);
    if (*eval_cmd) return cmd_eval(eval);
    if (*sched_cmd) return cmd_schedule(sched);
    if (*cefdb_cmd) return cmd_cef_db(cefdb, cefdb_action);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
