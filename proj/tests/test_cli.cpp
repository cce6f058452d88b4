#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <set>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "strathive/scheduler.hpp"
#include "strathive/tuner.hpp"

using namespace strathive;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

// Runs a shell command line, capturing stdout; stderr goes to `err` when given.
Run sh(const std::string& cmd, const fs::path& err = "/dev/null") {
  Run r;
  FILE* pipe = ::popen((cmd + " 2>" + err.string()).c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n = 0;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = ::pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string bin() { return std::string("'") + STRATHIVE_BIN + "'"; }

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("strathive-cli-" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

// A copy of a few corpus problems.
fs::path small_corpus(const std::string& name, std::initializer_list<const char*> problems) {
  const fs::path dir = scratch(name);
  for (const char* p : problems) fs::copy_file(fs::path(STRATHIVE_CORPUS_DIR) / (std::string(p) + ".p"), dir / (std::string(p) + ".p"));
  return dir;
}

const char* kTunerFlags =
    " --loops-per-second 500 --clauses-per-second 5000 --t-cutoff 1 --t-eval 1"
    " --c-cef 2 --c-min 1 --versatility 1 --seed 3";

std::string tune_cmd(const fs::path& corpus, const fs::path& state, const std::string& extra,
                     const std::string& t_improve = "1") {
  return bin() + " tune --corpus '" + corpus.string() + "' --state-dir '" + state.string() + "'" + kTunerFlags +
         " --t-improve " + t_improve + " " + extra;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("prove exit codes") {
  const fs::path dir = scratch("prove");
  write_file_atomic(dir / "yes.p", "cnf(a,axiom,p).\ncnf(b,negated_conjecture,~p).\n");
  write_file_atomic(dir / "no.p", "cnf(a,axiom,p(a)).\ncnf(b,negated_conjecture,~q).\n");
  write_file_atomic(dir / "bad.p", "cnf(a,axiom,p(a)\n");

  const Run yes = sh(bin() + " prove '" + (dir / "yes.p").string() + "' --max-loops 100");
  CHECK(yes.code == 0);
  const auto j = nlohmann::json::parse(yes.out);
  CHECK(j.at("status") == "proved");
  CHECK(j.at("proof").get<std::string>().find("$false") != std::string::npos);

  CHECK(sh(bin() + " prove '" + (dir / "no.p").string() + "' --max-loops 100").code == 1);
  CHECK(sh(bin() + " prove '" + (dir / "bad.p").string() + "'").code == 2);
  CHECK(sh(bin() + " prove '" + (dir / "missing.p").string() + "'").code == 2);
  CHECK(sh(bin() + " prove '" + (dir / "yes.p").string() + "' --protocol 'nonsense'").code == 2);
  CHECK(sh(bin() + " prove").code == 2);
  CHECK(sh(bin() + " frobnicate").code == 2);

  // Same problem, same protocol: identical report apart from the wall time.
  auto strip = [](std::string s) {
    auto j = nlohmann::json::parse(s);
    j.erase("wall_time");
    return j.dump();
  };
  const std::string chain = std::string(STRATHIVE_CORPUS_DIR) + "/chain_03.p";
  CHECK(strip(sh(bin() + " prove '" + chain + "' --max-loops 3000").out) ==
        strip(sh(bin() + " prove '" + chain + "' --max-loops 3000").out));
  fs::remove_all(dir);
}

TEST_CASE("eval prints one CSV row per problem") {
  const fs::path corpus = small_corpus("eval", {"chain_01", "chain_02", "open_01"});
  const std::string cmd = bin() + " eval --corpus '" + corpus.string() + "' --t-eval 1 --loops-per-second 500";
  const Run a = sh(cmd);
  CHECK(a.code == 0);
  const auto rows = lines_of(a.out);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] == "problem,status,gc_loops,derived_count,cost");
  CHECK(rows[3].rfind("open_01,", 0) == 0);
  CHECK(sh(cmd).out == a.out);
  CHECK(sh(bin() + " eval --corpus /nonexistent/dir").code == 2);
  fs::remove_all(corpus);
}

TEST_CASE("tune with no budget keeps the seed evaluation only") {
  const fs::path corpus = small_corpus("budget0", {"chain_01", "chain_02", "chain_03"});
  const fs::path state = scratch("budget0-state");
  const Run r = sh(tune_cmd(corpus, state, "--budget 0"));
  CHECK(r.code == 0);
  const auto rows = lines_of(read_file(state / "matrix.csv"));
  CHECK(rows.size() == 2);
  CHECK(rows[0] == "protocol,chain_01,chain_02,chain_03");
  CHECK(rows[1].rfind(protocol_digest(default_protocol()) + ",", 0) == 0);
  CHECK(lines_of(read_file(state / "progress.csv")).size() == 2);
  CHECK_FALSE(fs::exists(state / "iterations.log"));

  // A resumed run may not change recorded settings.
  CHECK(sh(tune_cmd(corpus, state, "--budget 0 --t-eval 2")).code == 2);
  CHECK(sh(bin() + " tune --state-dir '" + state.string() + "' --budget 0").code == 0);
  CHECK(sh(bin() + " tune --corpus '" + corpus.string() + "' --budget 0").code == 2);
  fs::remove_all(corpus);
  fs::remove_all(state);
}

TEST_CASE("kill -9 and resume leave no duplicate rows") {
  const fs::path corpus = small_corpus("kill", {"chain_01", "chain_02", "chain_03", "chain_04"});
  const fs::path state = scratch("kill-state");
  // Long phases so the kill lands inside an iteration.
  const Run killed = sh("timeout -s KILL 3 " + tune_cmd(corpus, state, "--iterations 3", "1000"));
  CHECK(killed.code != 0);
  REQUIRE(fs::exists(state / "manifest.json"));

  const Run resumed = sh(bin() + " tune --state-dir '" + state.string() + "' --iterations 2");
  CHECK(resumed.code == 0);
  const auto rows = lines_of(read_file(state / "matrix.csv"));
  std::set<std::string> digests;
  for (std::size_t i = 1; i < rows.size(); ++i) digests.insert(rows[i].substr(0, rows[i].find(',')));
  CHECK(digests.size() == rows.size() - 1);
  const auto progress = lines_of(read_file(state / "progress.csv"));
  std::set<std::string> iterations;
  for (std::size_t i = 1; i < progress.size(); ++i) iterations.insert(progress[i].substr(0, progress[i].find(',')));
  CHECK(iterations.size() == progress.size() - 1);
  for (const fs::directory_entry& e : fs::directory_iterator(state)) {
    CHECK(e.path().filename().string().find(".tmp.") == std::string::npos);
  }
  fs::remove_all(corpus);
  fs::remove_all(state);
}

TEST_CASE("tuning artifacts are reproducible and parse back") {
  const fs::path corpus = small_corpus("repro", {"chain_01", "chain_02", "chain_03"});
  const fs::path s1 = scratch("repro-a");
  const fs::path s2 = scratch("repro-b");
  REQUIRE(sh(tune_cmd(corpus, s1, "--iterations 1")).code == 0);
  REQUIRE(sh(tune_cmd(corpus, s2, "--iterations 1")).code == 0);
  for (const char* f : {"matrix.csv", "progress.csv", "cefdb.json", "state.json", "attempted.log"}) {
    CAPTURE(f);
    CHECK(read_file(s1 / f) == read_file(s2 / f));
  }
  // Trajectories agree up to the measured wall times.
  auto without_times = [](const fs::path& file) {
    std::string out;
    for (const std::string& line : lines_of(read_file(file))) {
      auto j = nlohmann::json::parse(line);
      j.erase("wall_time");
      out += j.dump() + "\n";
    }
    return out;
  };
  CHECK(without_times(s1 / "trajectories" / "iteration-1.jsonl") ==
        without_times(s2 / "trajectories" / "iteration-1.jsonl"));

  // Artifacts go back through their parsers.
  const CefDb db = CefDb::from_json(read_file(s1 / "cefdb.json"));
  CHECK(db.to_json() == read_file(s1 / "cefdb.json"));
  for (const fs::directory_entry& e : fs::directory_iterator(s1 / "protocols")) {
    const std::string text = read_file(e.path());
    CHECK(render_protocol(parse_protocol(text)) + "\n" == text);
    CHECK(e.path().stem().string() == protocol_digest(parse_protocol(text)));
  }
  const TunerState st = StateDir(s1).load(load_corpus(corpus));
  CHECK(matrix_csv(st.matrix) == read_file(s1 / "matrix.csv"));
  for (const std::string& line : lines_of(read_file(s1 / "iterations.log"))) {
    const auto j = nlohmann::json::parse(line);
    CHECK(j.at("iteration") == 1);
    const std::string result = j.at("result").get<std::string>();
    CHECK(render_protocol(parse_protocol(result)) == result);
  }

  // Schedules from the same state are identical too.
  const std::string sched = " schedule --method greedy_1 --method sotac_15 --total 2";
  const Run a = sh(bin() + sched + " --state-dir '" + s1.string() + "'");
  const Run b = sh(bin() + sched + " --state-dir '" + s2.string() + "'");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(read_file(s1 / "schedules" / "sotac_15.schedule") == read_file(s2 / "schedules" / "sotac_15.schedule"));
  fs::remove_all(corpus);
  fs::remove_all(s1);
  fs::remove_all(s2);
}

TEST_CASE("schedule command") {
  const fs::path corpus = small_corpus("sched", {"chain_01", "chain_02", "chain_03", "chain_04"});
  const fs::path state = scratch("sched-state");
  REQUIRE(sh(tune_cmd(corpus, state, "--budget 0")).code == 0);

  // The state directory comes from the environment.
  const Run r = sh("STRATHIVE_STATE='" + state.string() + "' " + bin() +
                   " schedule --method greedy_5 --method sotac_15 --total 1");
  REQUIRE(r.code == 0);
  const auto rows = lines_of(r.out);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0] == "scheduler,protos,solved");
  CHECK(rows[1].rfind("greedy_5,", 0) == 0);
  CHECK(rows[2].rfind("sotac_15,", 0) == 0);
  CHECK(read_file(state / "schedules" / "schedules.csv") == r.out);

  // Re-run the sotac schedule in-process on three problems and compare counts.
  const fs::path three = small_corpus("sched-eval", {"chain_01", "chain_02", "chain_04"});
  const Run sub = sh(bin() + " schedule --state-dir '" + state.string() + "' --method sotac_15 --total 1 --corpus '" +
                     three.string() + "' --out '" + (state / "three").string() + "'");
  REQUIRE(sub.code == 0);
  const Scheduler s = parse_schedule(read_file(state / "three" / "sotac_15.schedule"));
  const Calibration cal{500.0, 5000.0};
  std::int64_t solved = 0;
  for (const Problem& p : load_corpus(three)) solved += run_schedule(s, p, 1.0, cal).status == ProverStatus::proved;
  CHECK(lines_of(sub.out).at(1) == "sotac_15," + std::to_string(s.protocols.size()) + "," + std::to_string(solved));

  CHECK(sh(bin() + " schedule --state-dir '" + state.string() + "' --method bogus_1").code == 2);
  CHECK(sh(bin() + " schedule --state-dir '" + (state / "nothing").string() + "' --method sotac_1").code == 2);

  // An empty matrix is an error.
  write_file_atomic(state / "matrix.csv", "protocol,chain_01,chain_02,chain_03,chain_04\n");
  const Run empty = sh(bin() + " schedule --state-dir '" + state.string() + "' --method sotac_3");
  CHECK(empty.code == 2);
  CHECK(empty.out.empty());
  fs::remove_all(corpus);
  fs::remove_all(three);
  fs::remove_all(state);
}

TEST_CASE("cef-db command") {
  const fs::path dir = scratch("cefdb");
  const std::string path = (dir / "db.json").string();
  CHECK(sh(bin() + " cef-db show --path '" + path + "'").code == 2);
  CHECK(sh(bin() + " cef-db add --path '" + path + "' --cef 'Lev(PreferAll,2,1,1)'").code == 0);
  CHECK(sh(bin() + " cef-db record --path '" + path + "' --protocol \"-tNONE -Wnone -H'(1*Lev(PreferAll,2,1,1))'\"")
            .code == 0);
  const CefDb db = CefDb::from_json(sh(bin() + " cef-db show --path '" + path + "'").out);
  CHECK(db.size() == seed_collection().size() + 1);
  CHECK(db.usage(parse_cef("Lev(PreferAll,2,1,1)")) == 1);
  const auto top = lines_of(sh(bin() + " cef-db top --path '" + path + "' --k 11").out);
  REQUIRE(top.size() == 11);
  CHECK(top[4] == "Lev(PreferAll,2,1,1)");
  CHECK(sh(bin() + " cef-db top --path '" + path + "' --k 3").code == 3);
  CHECK(sh(bin() + " cef-db add --path '" + path + "' --cef 'Nope(1)'").code == 2);
  fs::remove_all(dir);
}

}  // TEST_SUITE
