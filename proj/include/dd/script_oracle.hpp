#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dd {

struct OracleConfig {
  std::filesystem::path script;
  std::string input_filename = "input";  // candidate filename inside the temp dir
  double timeout_seconds = 300.0;
  bool timeout_is_error = false;  // treat a hang as a session error, not false
  std::optional<std::filesystem::path> cache_dir;
  bool keep_temps = false;
};

// Infrastructure failure: missing script, spawn failure, unusable temp dir.
// Distinct from a false verdict; callers abort the session on this.
class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InitialTestFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunOutcome {
  bool verdict = false;
  bool timed_out = false;
  int exit_code = -1;  // negative signal number if the script was killed
};

// Runs a user-supplied property script against candidate bytes. Every run
// gets a fresh temp directory as cwd; the candidate path arrives as argv[1]
// and $REDUCE_CANDIDATE. Exit 0 means the property is preserved. A timeout
// kills the script's whole process group.
class ScriptOracle {
 public:
  explicit ScriptOracle(OracleConfig config);  // validates the script up front

  // Always spawns; no cache involvement.
  RunOutcome run(std::string_view candidate);

  // Directory-cache aware verdict. Timeouts yield false with a warning on
  // stderr (or throw when timeout_is_error). Verdicts, including false ones
  // from timeouts, are not written to the directory cache unless clean.
  bool test(std::string_view candidate);

  std::uint64_t spawns() const { return spawns_; }
  const OracleConfig& config() const { return cfg_; }

 private:
  std::optional<bool> cache_lookup(const std::string& digest) const;
  void cache_store(const std::string& digest, bool verdict) const;

  OracleConfig cfg_;
  std::uint64_t spawns_ = 0;
};

// Entry check on the unmodified input. Throws InitialTestFailed on a false
// verdict and OracleError on timeout or spawn failure: a hang here means the
// oracle cannot be trusted, which is not the same as "property absent".
void verify_initial(ScriptOracle& oracle, std::string_view input);

}  // namespace dd
