#include "dd/tree_reduce.hpp"

#include <unordered_set>

#include "dd/ddmin.hpp"

namespace dd {

const char* algorithm_name(Algorithm alg) {
  switch (alg) {
    case Algorithm::ddmin: return "ddmin";
    case Algorithm::wddmin: return "wddmin";
    case Algorithm::probdd: return "probdd";
    case Algorithm::wprobdd: return "wprobdd";
  }
  return "unknown";
}

std::optional<Algorithm> algorithm_from_name(std::string_view name) {
  if (name == "ddmin") return Algorithm::ddmin;
  if (name == "wddmin") return Algorithm::wddmin;
  if (name == "probdd") return Algorithm::probdd;
  if (name == "wprobdd") return Algorithm::wprobdd;
  return std::nullopt;
}

WeightedList run_algorithm(Algorithm alg, const WeightedList& list,
                           const Oracle& psi, const ReduceOptions& opts) {
  ProbOptions popts{opts.p0, opts.tie_seed};
  switch (alg) {
    case Algorithm::ddmin: return ddmin(list, psi);
    case Algorithm::wddmin: return wddmin(list, psi);
    case Algorithm::probdd: return probdd(list, psi, popts);
    case Algorithm::wprobdd: return wprobdd(list, psi, popts);
  }
  return list;
}

std::size_t hdd_reduce(TreeDoc& tree, const TextOracle& psi,
                       const ReduceOptions& opts, const ReduceHooks& hooks) {
  std::size_t deleted = 0;
  // height() shrinks as levels empty out; re-check every iteration.
  for (std::size_t depth = 1; depth <= tree.height(); ++depth) {
    WeightedList view = tree.level_elements(depth);
    if (view.empty()) continue;

    RenderFn render = [&tree, depth](const WeightedList& cand) {
      std::vector<std::size_t> keep;
      keep.reserve(cand.size());
      for (const Element& e : cand) keep.push_back(e.payload);
      return tree.render_candidate(depth, keep);
    };
    Oracle oracle = make_cached_oracle(std::move(render), psi, hooks.cache,
                                       hooks.counters, hooks.on_test);

    WeightedList kept = run_algorithm(opts.algorithm, view, oracle, opts);
    if (hooks.on_invocation) hooks.on_invocation(depth, view, kept);

    std::unordered_set<std::size_t> kept_nodes;
    kept_nodes.reserve(kept.size());
    for (const Element& e : kept) kept_nodes.insert(e.payload);
    for (const Element& e : view) {
      if (!kept_nodes.count(e.payload)) {
        tree.delete_subtree(e.payload);
        ++deleted;
      }
    }
  }
  return deleted;
}

std::size_t fixpoint_reduce(TreeDoc& tree, const TextOracle& psi,
                            const ReduceOptions& opts,
                            const ReduceHooks& hooks) {
  std::size_t passes = 0;
  for (;;) {
    ++passes;
    if (hdd_reduce(tree, psi, opts, hooks) == 0) break;
  }
  return passes;
}

}  // namespace dd
