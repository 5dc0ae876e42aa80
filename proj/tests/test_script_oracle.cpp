#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <string>

#include "dd/digest.hpp"
#include "dd/script_oracle.hpp"
#include "test_support.hpp"

using namespace dd;
using ddt::TempDir;
namespace fs = std::filesystem;

namespace {

fs::path write_script(const TempDir& dir, const std::string& name,
                      const std::string& body) {
  return ddt::write_script(dir.path, name, body);
}

std::size_t line_count(const fs::path& p) {
  std::ifstream in(p);
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) ++n;
  return n;
}

OracleConfig config_for(const fs::path& script) {
  OracleConfig cfg;
  cfg.script = script;
  cfg.timeout_seconds = 10.0;
  return cfg;
}

}  // namespace

TEST_CASE("constructor validates the script") {
  TempDir dir;
  OracleConfig cfg = config_for(dir.path / "missing.sh");
  CHECK_THROWS_AS(ScriptOracle{cfg}, OracleError);

  cfg.script = ddt::write_file(dir.path, "plain.txt", "not a script");
  CHECK_THROWS_AS(ScriptOracle{cfg}, OracleError);
}

TEST_CASE("exit status zero is the only passing verdict") {
  TempDir dir;
  ScriptOracle pass(config_for(write_script(dir, "ok.sh", "#!/bin/sh\nexit 0\n")));
  RunOutcome ok = pass.run("anything");
  CHECK(ok.verdict);
  CHECK(ok.exit_code == 0);
  CHECK_FALSE(ok.timed_out);

  ScriptOracle fail(
      config_for(write_script(dir, "no.sh", "#!/bin/sh\nexit 3\n")));
  RunOutcome no = fail.run("anything");
  CHECK_FALSE(no.verdict);
  CHECK(no.exit_code == 3);
}

TEST_CASE("the candidate reaches the script as argv[1] and by env") {
  TempDir dir;
  fs::path script = write_script(dir, "check.sh",
                                 "#!/bin/sh\n"
                                 "[ \"$REDUCE_CANDIDATE\" = \"$1\" ] || exit 9\n"
                                 "grep -q needle \"$1\"\n");
  ScriptOracle oracle(config_for(script));
  CHECK(oracle.run("a needle here").verdict);
  CHECK_FALSE(oracle.run("nothing").verdict);
  CHECK(oracle.run("hay\nneedle\n").verdict);
}

TEST_CASE("the candidate file carries the configured name") {
  TempDir dir;
  fs::path script = write_script(dir, "name.sh",
                                 "#!/bin/sh\n"
                                 "case \"$1\" in *crash.js) exit 0;; esac\n"
                                 "exit 1\n");
  OracleConfig cfg = config_for(script);
  cfg.input_filename = "crash.js";
  ScriptOracle oracle(cfg);
  CHECK(oracle.run("x").verdict);
}

TEST_CASE("every run gets a fresh working directory") {
  TempDir dir;
  fs::path log = dir.path / "cwds.log";
  fs::path script = write_script(
      dir, "cwd.sh", "#!/bin/sh\npwd >> " + log.string() + "\nexit 0\n");
  ScriptOracle oracle(config_for(script));
  oracle.run("one");
  oracle.run("two");
  CHECK(oracle.spawns() == 2);

  std::ifstream in(log);
  std::set<std::string> cwds;
  std::string line;
  while (std::getline(in, line)) cwds.insert(line);
  CHECK(cwds.size() == 2);
  for (const std::string& c : cwds)
    CHECK(c != fs::current_path().string());
}

TEST_CASE("the directory cache suppresses repeat spawns") {
  TempDir dir;
  fs::path counter = dir.path / "count.log";
  fs::path script = write_script(
      dir, "count.sh",
      "#!/bin/sh\necho run >> " + counter.string() + "\ngrep -q keep \"$1\"\n");
  OracleConfig cfg = config_for(script);
  cfg.cache_dir = dir.path / "cache";

  {
    ScriptOracle oracle(cfg);
    CHECK(oracle.test("keep me"));
    CHECK(oracle.test("keep me"));
    CHECK_FALSE(oracle.test("drop"));
    CHECK_FALSE(oracle.test("drop"));
    CHECK(oracle.spawns() == 2);  // one per distinct content, false cached too
    CHECK(line_count(counter) == 2);
  }

  // verdicts persist across oracle instances
  ScriptOracle again(cfg);
  CHECK(again.test("keep me"));
  CHECK_FALSE(again.test("drop"));
  CHECK(again.spawns() == 0);
  CHECK(line_count(counter) == 2);

  // the cache is one file per content digest holding '1' or '0'
  std::ifstream entry(*cfg.cache_dir / content_digest("keep me"));
  char c = 0;
  entry.get(c);
  CHECK(c == '1');
}

TEST_CASE("without a cache directory every test spawns") {
  TempDir dir;
  ScriptOracle oracle(
      config_for(write_script(dir, "ok.sh", "#!/bin/sh\nexit 0\n")));
  CHECK(oracle.test("same"));
  CHECK(oracle.test("same"));
  CHECK(oracle.spawns() == 2);
}

TEST_CASE("timeouts kill the script and count as failing") {
  TempDir dir;
  fs::path script =
      write_script(dir, "sleep.sh", "#!/bin/sh\nsleep 30\nexit 0\n");
  OracleConfig cfg = config_for(script);
  cfg.timeout_seconds = 0.1;
  cfg.cache_dir = dir.path / "cache";
  ScriptOracle oracle(cfg);

  RunOutcome out = oracle.run("x");
  CHECK(out.timed_out);
  CHECK_FALSE(out.verdict);

  // timeout verdicts are not persisted: the candidate is retried
  CHECK_FALSE(oracle.test("y"));
  CHECK_FALSE(fs::exists(*cfg.cache_dir / content_digest("y")));
  CHECK_FALSE(oracle.test("y"));
  CHECK(oracle.spawns() == 3);

  cfg.timeout_is_error = true;
  ScriptOracle strict(cfg);
  CHECK_THROWS_AS(strict.test("z"), OracleError);
}

TEST_CASE("scripts killed by a signal fail with the signal number") {
  TempDir dir;
  ScriptOracle oracle(config_for(
      write_script(dir, "die.sh", "#!/bin/sh\nkill -KILL $$\n")));
  RunOutcome out = oracle.run("x");
  CHECK_FALSE(out.verdict);
  CHECK(out.exit_code == -9);
}

TEST_CASE("exec failures surface as oracle errors") {
  TempDir dir;
  // executable bit set but no shebang and binary junk: execve fails
  fs::path script = write_script(dir, "junk.bin", std::string("\x7f\x00\x01", 3));
  ScriptOracle oracle(config_for(script));
  CHECK_THROWS_AS(oracle.run("x"), OracleError);
}

TEST_CASE("verify_initial distinguishes rejection from infrastructure") {
  TempDir dir;
  ScriptOracle pass(
      config_for(write_script(dir, "ok.sh", "#!/bin/sh\nexit 0\n")));
  CHECK_NOTHROW(verify_initial(pass, "input"));

  ScriptOracle fail(
      config_for(write_script(dir, "no.sh", "#!/bin/sh\nexit 1\n")));
  CHECK_THROWS_AS(verify_initial(fail, "input"), InitialTestFailed);

  OracleConfig cfg =
      config_for(write_script(dir, "hang.sh", "#!/bin/sh\nsleep 30\n"));
  cfg.timeout_seconds = 0.1;
  ScriptOracle hang(cfg);
  CHECK_THROWS_AS(verify_initial(hang, "input"), OracleError);
}
