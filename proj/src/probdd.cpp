#include "dd/probdd.hpp"

#include <algorithm>
#include <numeric>

namespace dd {

namespace {

std::uint64_t hash_id(std::uint64_t seed, std::uint64_t id) {
  std::uint64_t z = seed ^ (id + 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Indices of lmin ordered by `key`; equal keys stay in original position
// order, or follow a seeded hash when a tie seed is given.
template <typename KeyFn, typename Cmp>
std::vector<std::size_t> order_by(const WeightedList& lmin, KeyFn key, Cmp cmp,
                                  std::optional<std::uint64_t> tie_seed) {
  std::vector<std::size_t> idx(lmin.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    double ka = key(a), kb = key(b);
    if (ka != kb) return cmp(ka, kb);
    if (tie_seed)
      return hash_id(*tie_seed, lmin[a].id) < hash_id(*tie_seed, lmin[b].id);
    return false;  // stable sort keeps original order
  });
  return idx;
}

Partition take_in_list_order(const WeightedList& lmin,
                             std::vector<std::size_t> picked) {
  std::sort(picked.begin(), picked.end());
  Partition out;
  out.reserve(picked.size());
  for (std::size_t i : picked) out.push_back(lmin[i]);
  return out;
}

}  // namespace

ProbState::ProbState(const WeightedList& list, double p0) {
  probs_.reserve(list.size());
  for (const Element& e : list) probs_.emplace(e.id, p0);
}

double ProbState::get(std::size_t id) const { return probs_.at(id); }

void ProbState::set(std::size_t id, double p) { probs_[id] = p; }

void ProbState::erase(std::size_t id) { probs_.erase(id); }

bool ProbState::contains(std::size_t id) const { return probs_.count(id) > 0; }

bool ProbState::all_at_one() const {
  for (const auto& [id, p] : probs_)
    if (p < 1.0 - kEps) return false;
  return true;
}

bool should_terminate(const ProbState& probs) { return probs.all_at_one(); }

void update_probabilities(const Partition& pre, ProbState& probs) {
  // A failed singleton proves its element undeletable, whatever the prior.
  // Set 1 directly: p / (1 - (1 - p)) can round to just below 1.
  if (pre.size() == 1) {
    probs.set(pre[0].id, 1.0);
    return;
  }
  double prod = 1.0;
  for (const Element& e : pre) prod *= 1.0 - probs.get(e.id);
  double denom = 1.0 - prod;
  if (denom <= 0.0) return;  // all members already at ~1
  for (const Element& e : pre)
    probs.set(e.id, std::min(1.0, probs.get(e.id) / denom));
}

Partition probdd_prefix(const WeightedList& lmin, const ProbState& probs,
                        std::optional<std::uint64_t> tie_seed) {
  auto idx = order_by(
      lmin, [&](std::size_t i) { return probs.get(lmin[i].id); },
      [](double a, double b) { return a < b; }, tie_seed);

  // gain(m) = m * prod(1 - p) over the first m. >= so equal gains resolve
  // to the larger prefix.
  double prod = 1.0;
  double best = 0.0;
  std::size_t best_m = 0;
  for (std::size_t m = 1; m <= idx.size(); ++m) {
    prod *= 1.0 - probs.get(lmin[idx[m - 1]].id);
    double gain = static_cast<double>(m) * prod;
    if (gain >= best) {
      best = gain;
      best_m = m;
    }
  }
  if (best <= 0.0) return {};
  return take_in_list_order(
      lmin, std::vector<std::size_t>(idx.begin(),
                                     idx.begin() + static_cast<std::ptrdiff_t>(best_m)));
}

Partition get_nodes_to_remove(const WeightedList& lmin, const ProbState& probs,
                              std::optional<std::uint64_t> tie_seed) {
  auto idx = order_by(
      lmin,
      [&](std::size_t i) {
        return static_cast<double>(lmin[i].weight) *
               (1.0 - probs.get(lmin[i].id));
      },
      [](double a, double b) { return a > b; }, tie_seed);

  // gain(m) = (sum of weights) * prod(1 - p). Strictly greater: the shortest
  // maximizing prefix wins; no positive gain means stop.
  double weight = 0.0;
  double prod = 1.0;
  double best = 0.0;
  std::size_t best_m = 0;
  for (std::size_t m = 1; m <= idx.size(); ++m) {
    const Element& e = lmin[idx[m - 1]];
    weight += static_cast<double>(e.weight);
    prod *= 1.0 - probs.get(e.id);
    double gain = weight * prod;
    if (gain > best) {
      best = gain;
      best_m = m;
    }
  }
  if (best_m == 0) return {};
  return take_in_list_order(
      lmin, std::vector<std::size_t>(idx.begin(),
                                     idx.begin() + static_cast<std::ptrdiff_t>(best_m)));
}

namespace {

using SelectFn = Partition (*)(const WeightedList&, const ProbState&,
                               std::optional<std::uint64_t>);

WeightedList prob_reduce(const WeightedList& list, const Oracle& psi,
                         ProbState& probs, const ProbOptions& opts,
                         SelectFn select) {
  WeightedList l_min = list;
  while (!l_min.empty() && !should_terminate(probs)) {
    Partition pre = select(l_min, probs, opts.tie_seed);
    if (pre.empty()) break;  // no prefix with positive expected gain
    WeightedList cand = subtract(l_min, pre);
    if (psi(cand)) {
      for (const Element& e : pre) probs.erase(e.id);
      l_min = std::move(cand);
    } else {
      std::unordered_map<std::size_t, double> before_update;
      for (const Element& e : pre) before_update.emplace(e.id, probs.get(e.id));
      update_probabilities(pre, probs);
      // A failure that moved no probability is a fixed point: the Bayes
      // factor is below double resolution, so the same selection would
      // repeat forever. Converged as far as the arithmetic can carry.
      bool changed = false;
      for (const Element& e : pre)
        if (probs.get(e.id) != before_update.at(e.id)) changed = true;
      if (!changed) break;
    }
  }
  return l_min;
}

}  // namespace

WeightedList probdd(const WeightedList& list, const Oracle& psi,
                    ProbState& probs, const ProbOptions& opts) {
  return prob_reduce(list, psi, probs, opts, &probdd_prefix);
}

WeightedList wprobdd(const WeightedList& list, const Oracle& psi,
                     ProbState& probs, const ProbOptions& opts) {
  return prob_reduce(list, psi, probs, opts, &get_nodes_to_remove);
}

WeightedList probdd(const WeightedList& list, const Oracle& psi,
                    const ProbOptions& opts) {
  ProbState probs(list, opts.p0);
  return probdd(list, psi, probs, opts);
}

WeightedList wprobdd(const WeightedList& list, const Oracle& psi,
                     const ProbOptions& opts) {
  ProbState probs(list, opts.p0);
  return wprobdd(list, psi, probs, opts);
}

}  // namespace dd
