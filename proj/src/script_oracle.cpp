#include "dd/script_oracle.hpp"

#include <fcntl.h>
#include <signal.h>
#include <stdlib.h>
#include <string.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <thread>

#include "dd/digest.hpp"

namespace dd {

namespace fs = std::filesystem;

namespace {

fs::path make_temp_dir() {
  std::string tmpl = (fs::temp_directory_path() / "ddreduce.XXXXXX").string();
  if (!mkdtemp(tmpl.data()))
    throw OracleError("cannot create temp directory: " +
                      std::string(strerror(errno)));
  return fs::path(tmpl);
}

void write_file(const fs::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw OracleError("cannot write candidate file " + path.string());
}

}  // namespace

ScriptOracle::ScriptOracle(OracleConfig config) : cfg_(std::move(config)) {
  std::error_code ec;
  fs::file_status st = fs::status(cfg_.script, ec);
  if (ec || !fs::is_regular_file(st))
    throw OracleError("oracle script not found: " + cfg_.script.string());
  constexpr auto any_exec = fs::perms::owner_exec | fs::perms::group_exec |
                            fs::perms::others_exec;
  if ((st.permissions() & any_exec) == fs::perms::none)
    throw OracleError("oracle script not executable: " + cfg_.script.string());
  cfg_.script = fs::absolute(cfg_.script);
  if (cfg_.cache_dir) {
    fs::create_directories(*cfg_.cache_dir, ec);
    if (ec)
      throw OracleError("cannot create cache directory: " +
                        cfg_.cache_dir->string());
  }
}

RunOutcome ScriptOracle::run(std::string_view candidate) {
  ++spawns_;
  fs::path dir = make_temp_dir();
  fs::path input = dir / cfg_.input_filename;
  write_file(input, candidate);

  // exec-failure channel: the CLOEXEC pipe closes silently on a successful
  // exec, otherwise the child reports errno through it.
  int epipe[2];
  if (pipe2(epipe, O_CLOEXEC) != 0)
    throw OracleError("pipe2 failed: " + std::string(strerror(errno)));

  pid_t pid = fork();
  if (pid < 0) {
    close(epipe[0]);
    close(epipe[1]);
    throw OracleError("fork failed: " + std::string(strerror(errno)));
  }
  if (pid == 0) {
    setpgid(0, 0);  // own group, so a timeout can kill descendants too
    close(epipe[0]);
    int e = 0;
    if (chdir(dir.c_str()) == 0) {
      setenv("REDUCE_CANDIDATE", input.c_str(), 1);
      execl(cfg_.script.c_str(), cfg_.script.c_str(), input.c_str(),
            static_cast<char*>(nullptr));
    }
    e = errno;
    ssize_t unused = write(epipe[1], &e, sizeof e);
    (void)unused;
    _exit(127);
  }

  setpgid(pid, pid);  // mirror the child's call to close the race
  close(epipe[1]);
  int child_errno = 0;
  ssize_t nread = read(epipe[0], &child_errno, sizeof child_errno);
  close(epipe[0]);
  if (nread > 0) {
    int status;
    waitpid(pid, &status, 0);
    if (!cfg_.keep_temps) {
      std::error_code ec;
      fs::remove_all(dir, ec);
    }
    throw OracleError("cannot execute oracle script " + cfg_.script.string() +
                      ": " + strerror(child_errno));
  }

  auto deadline = std::chrono::steady_clock::now() +
                  std::chrono::duration<double>(cfg_.timeout_seconds);
  RunOutcome out;
  int status = 0;
  for (;;) {
    pid_t r = waitpid(pid, &status, WNOHANG);
    if (r == pid) break;
    if (r < 0) throw OracleError("waitpid failed: " + std::string(strerror(errno)));
    if (std::chrono::steady_clock::now() >= deadline) {
      out.timed_out = true;
      kill(-pid, SIGKILL);
      kill(pid, SIGKILL);
      waitpid(pid, &status, 0);
      break;
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(1));
  }

  if (WIFEXITED(status)) {
    out.exit_code = WEXITSTATUS(status);
  } else if (WIFSIGNALED(status)) {
    out.exit_code = -WTERMSIG(status);
  }
  out.verdict = !out.timed_out && out.exit_code == 0;

  if (!cfg_.keep_temps) {
    std::error_code ec;
    fs::remove_all(dir, ec);
  }
  return out;
}

std::optional<bool> ScriptOracle::cache_lookup(const std::string& digest) const {
  if (!cfg_.cache_dir) return std::nullopt;
  std::ifstream in(*cfg_.cache_dir / digest);
  if (!in) return std::nullopt;
  char c = 0;
  in.get(c);
  return c == '1';
}

void ScriptOracle::cache_store(const std::string& digest, bool verdict) const {
  if (!cfg_.cache_dir) return;
  std::ofstream out(*cfg_.cache_dir / digest, std::ios::binary);
  out.put(verdict ? '1' : '0');
}

bool ScriptOracle::test(std::string_view candidate) {
  std::string digest = content_digest(candidate);
  if (auto hit = cache_lookup(digest)) return *hit;
  RunOutcome out = run(candidate);
  if (out.timed_out) {
    if (cfg_.timeout_is_error)
      throw OracleError("oracle timed out (limit " +
                        std::to_string(cfg_.timeout_seconds) + "s)");
    std::fprintf(stderr,
                 "warning: oracle timed out after %.1fs, treating candidate "
                 "as failing\n",
                 cfg_.timeout_seconds);
    return out.verdict;  // false; deliberately not persisted to the cache
  }
  cache_store(digest, out.verdict);
  return out.verdict;
}

void verify_initial(ScriptOracle& oracle, std::string_view input) {
  RunOutcome out = oracle.run(input);
  if (out.timed_out)
    throw OracleError(
        "oracle timed out on the unmodified input; the baseline property "
        "cannot be established");
  if (!out.verdict)
    throw InitialTestFailed(
        "the oracle rejects the unmodified input (exit code " +
        std::to_string(out.exit_code) + ")");
}

}  // namespace dd
