#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "dd/core.hpp"
#include "dd/tree_reduce.hpp"

namespace dd {

// Synthetic reduction problem with a known answer. Element weights sum to
// total_tokens; element e survives iff its removability draw failed, so the
// unique 1-minimal result under the monotone oracle is the non-removable set.
struct SimInstance {
  std::size_t n = 0;
  std::vector<std::size_t> weights;  // per element, each >= 1
  double p0 = 0.0;
  std::vector<bool> removable;

  std::size_t total_tokens() const;
  WeightedList elements() const;  // ids 0..n-1, payload = id
  std::vector<std::size_t> expected_ids() const;
  std::size_t expected_tokens() const;
};

// Deterministic per (seed, index): lists of 2..1000 elements, total tokens
// n..10n split by a uniformly random composition (each weight >= 1), p0
// uniform in (0,1), element e removable with probability p0^weight(e).
SimInstance synthesize_instance(std::uint64_t seed, std::uint64_t index);

// True iff every non-removable element id is present in the candidate.
bool sim_oracle(const SimInstance& inst, const WeightedList& candidate);

struct SimRow {
  std::uint64_t instance = 0;
  std::size_t n = 0;
  std::size_t total_tokens = 0;
  double p0 = 0.0;
  std::string algorithm;
  std::uint64_t tests = 0;  // unique candidates, cache hits excluded
  std::size_t result_size_tokens = 0;
};

struct SimReport {
  std::vector<SimRow> rows;
  std::uint64_t mismatches = 0;  // runs whose result differed from the known answer
  std::map<std::string, double> mean_tests;

  // 1 - mean(b)/mean(a): fraction of a's tests that b saves.
  double savings(const std::string& a, const std::string& b) const;
};

SimReport run_simulation(std::uint64_t count, std::uint64_t seed,
                         const std::vector<Algorithm>& algorithms,
                         double p0 = 0.2);

void write_sim_csv(const SimReport& report, std::ostream& out);

}  // namespace dd
