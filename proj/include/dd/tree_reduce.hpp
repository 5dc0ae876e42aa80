#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "dd/oracle.hpp"
#include "dd/probdd.hpp"
#include "dd/tree.hpp"

namespace dd {

enum class Algorithm { ddmin, wddmin, probdd, wprobdd };

const char* algorithm_name(Algorithm alg);
std::optional<Algorithm> algorithm_from_name(std::string_view name);

struct ReduceOptions {
  Algorithm algorithm = Algorithm::wddmin;
  double p0 = 0.2;
  std::optional<std::uint64_t> tie_seed;
};

// Wiring for cache sharing, accounting and session logging. All optional.
struct ReduceHooks {
  OracleCache* cache = nullptr;
  SessionCounters* counters = nullptr;
  TestCallback on_test;
  std::function<void(std::size_t depth, const WeightedList& before,
                     const WeightedList& after)>
      on_invocation;
};

// Dispatches one flat list reduction.
WeightedList run_algorithm(Algorithm alg, const WeightedList& list,
                           const Oracle& psi, const ReduceOptions& opts);

// One top-down sweep: reduce each level's live nodes with the configured
// algorithm, committing survivors before descending. Candidates render the
// whole tree with deselected subtrees masked, so psi judgments always see
// complete documents. Returns the number of subtree roots deleted.
// Requires psi(render of the current tree) == true.
std::size_t hdd_reduce(TreeDoc& tree, const TextOracle& psi,
                       const ReduceOptions& opts, const ReduceHooks& hooks = {});

// Repeats sweeps until one deletes nothing. Returns the pass count (>= 1).
std::size_t fixpoint_reduce(TreeDoc& tree, const TextOracle& psi,
                            const ReduceOptions& opts,
                            const ReduceHooks& hooks = {});

}  // namespace dd
