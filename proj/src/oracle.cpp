#include "dd/oracle.hpp"

#include <utility>

#include "dd/digest.hpp"

namespace dd {

std::optional<bool> OracleCache::lookup(const std::string& key) {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = entries_.find(key);
  if (it == entries_.end()) {
    ++misses_;
    return std::nullopt;
  }
  ++hits_;
  return it->second;
}

void OracleCache::store(const std::string& key, bool verdict) {
  std::lock_guard<std::mutex> lock(mu_);
  entries_[key] = verdict;
}

std::uint64_t OracleCache::hits() const {
  std::lock_guard<std::mutex> lock(mu_);
  return hits_;
}

std::uint64_t OracleCache::misses() const {
  std::lock_guard<std::mutex> lock(mu_);
  return misses_;
}

std::size_t OracleCache::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return entries_.size();
}

CachedVerdict cached_verdict(OracleCache& cache, const TextOracle& test,
                             std::string_view content,
                             const std::string& key) {
  if (auto hit = cache.lookup(key)) return {*hit, true};
  bool verdict = test(content);
  cache.store(key, verdict);
  return {verdict, false};
}

CachedVerdict cached_verdict(OracleCache& cache, const TextOracle& test,
                             std::string_view content) {
  return cached_verdict(cache, test, content, content_digest(content));
}

Oracle make_cached_oracle(RenderFn render, TextOracle test, OracleCache* cache,
                          SessionCounters* counters, TestCallback on_test) {
  return [render = std::move(render), test = std::move(test), cache, counters,
          on_test = std::move(on_test)](const WeightedList& candidate) {
    std::string content = render(candidate);
    std::string key = content_digest(content);
    CachedVerdict cv;
    if (cache) {
      cv = cached_verdict(*cache, test, content, key);
    } else {
      cv = {test(content), false};
    }
    if (counters) {
      ++counters->queries;
      if (cv.cache_hit) ++counters->hits;
    }
    if (on_test) on_test(key, cv.verdict, cv.cache_hit);
    return cv.verdict;
  };
}

}  // namespace dd
