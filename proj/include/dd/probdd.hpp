#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>

#include "dd/core.hpp"

namespace dd {

// Per-element probability that the element is required. Entries track the
// live elements of the list being reduced; deleted elements are erased.
class ProbState {
 public:
  static constexpr double kEps = 1e-12;

  ProbState() = default;
  ProbState(const WeightedList& list, double p0);

  double get(std::size_t id) const;
  void set(std::size_t id, double p);
  void erase(std::size_t id);
  bool contains(std::size_t id) const;
  std::size_t size() const { return probs_.size(); }

  // True when every tracked probability is within kEps of 1.
  bool all_at_one() const;

 private:
  std::unordered_map<std::size_t, double> probs_;
};

struct ProbOptions {
  double p0 = 0.2;
  // When set, elements with equal sort keys are ordered by a seeded hash
  // instead of original position. Unset means fully deterministic runs.
  std::optional<std::uint64_t> tie_seed;
};

// Termination test: all live probabilities at 1 (or no live elements). The
// other exit, a selection with zero best gain, is signaled by the selection
// functions returning an empty partition.
bool should_terminate(const ProbState& probs);

// Bayesian update after a failed deletion attempt of `pre`: each member's
// probability is divided by (1 - prod over pre of (1 - p_j)), capped at 1.
// A failed singleton lands on exactly 1.
void update_probabilities(const Partition& pre, ProbState& probs);

// ProbDD's deletion candidate: sort ascending by probability and take the
// prefix maximizing |pre| * prod(1 - p). Equal gains resolve to the larger
// prefix. Empty when no prefix has positive gain.
Partition probdd_prefix(const WeightedList& lmin, const ProbState& probs,
                        std::optional<std::uint64_t> tie_seed = {});

// Weighted gain scan: sort descending by w(e) * (1 - p(e)) and take the
// prefix maximizing (sum of weights) * prod(1 - p). Strictly-greater
// comparison, so the shortest maximizing prefix wins. Empty when no prefix
// has positive gain, which tells the caller to stop.
Partition get_nodes_to_remove(const WeightedList& lmin, const ProbState& probs,
                              std::optional<std::uint64_t> tie_seed = {});

// Probabilistic delta debugging. Requires psi(list) == true. Results are
// conditionally 1-minimal: every surviving element was refused at least once
// as part of some failed deletion, which is weaker than per-element
// 1-minimality.
WeightedList probdd(const WeightedList& list, const Oracle& psi,
                    const ProbOptions& opts = {});
WeightedList wprobdd(const WeightedList& list, const Oracle& psi,
                     const ProbOptions& opts = {});

// State-threading variants; `probs` must already cover every element of
// `list` (seeding all probabilities at 1 terminates immediately, 0 tests).
WeightedList probdd(const WeightedList& list, const Oracle& psi,
                    ProbState& probs, const ProbOptions& opts = {});
WeightedList wprobdd(const WeightedList& list, const Oracle& psi,
                     ProbState& probs, const ProbOptions& opts = {});

}  // namespace dd
