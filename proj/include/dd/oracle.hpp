#pragma once

#include <cstdint>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>

#include "dd/core.hpp"

namespace dd {

// Property test on rendered candidate bytes.
using TextOracle = std::function<bool(std::string_view)>;

// Verdict memo keyed by candidate content (digest or raw serialization).
// Safe for concurrent lookups/stores; duplicate stores are last-write-wins,
// harmless because oracles are required to be deterministic per session.
class OracleCache {
 public:
  std::optional<bool> lookup(const std::string& key);
  void store(const std::string& key, bool verdict);

  std::uint64_t hits() const;
  std::uint64_t misses() const;
  std::size_t size() const;

 private:
  mutable std::mutex mu_;
  std::unordered_map<std::string, bool> entries_;
  std::uint64_t hits_ = 0;
  std::uint64_t misses_ = 0;
};

struct CachedVerdict {
  bool verdict = false;
  bool cache_hit = false;
};

// Consults `cache` under `key`; on miss evaluates `test` on `content` and
// stores the result. Failures are cached too: the oracle is deterministic
// within a session, so a false verdict is as reusable as a true one.
CachedVerdict cached_verdict(OracleCache& cache, const TextOracle& test,
                             std::string_view content, const std::string& key);

// Same, keyed by content_digest(content).
CachedVerdict cached_verdict(OracleCache& cache, const TextOracle& test,
                             std::string_view content);

struct SessionCounters {
  std::uint64_t queries = 0;  // oracle asks, cache hits included
  std::uint64_t hits = 0;

  std::uint64_t misses() const { return queries - hits; }
};

using RenderFn = std::function<std::string(const WeightedList&)>;
using TestCallback =
    std::function<void(const std::string& digest, bool verdict, bool hit)>;

// Builds the list-level oracle the algorithms consume: render the candidate,
// memoize by content digest, count queries/hits, notify `on_test` if set.
// `cache` may be null to disable memoization (every query counts as a miss).
Oracle make_cached_oracle(RenderFn render, TextOracle test, OracleCache* cache,
                          SessionCounters* counters = nullptr,
                          TestCallback on_test = {});

}  // namespace dd
