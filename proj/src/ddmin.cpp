#include "dd/ddmin.hpp"

#include <algorithm>
#include <cstdlib>

namespace dd {

PartitionSet even_partition(const WeightedList& list, std::size_t n) {
  PartitionSet parts;
  parts.reserve(n);
  std::size_t L = list.size();
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t lo = i * L / n;
    std::size_t hi = (i + 1) * L / n;
    parts.emplace_back(list.begin() + lo, list.begin() + hi);
  }
  return parts;
}

WeightedList ddmin(const WeightedList& list, const Oracle& psi) {
  // A property that needs nothing at all: the partition scheme below can
  // never reach the empty candidate, so probe it once.
  if (psi(WeightedList{})) return {};
  WeightedList l = list;
  if (l.size() <= 1) return l;

  std::size_t n = 2;
  for (;;) {
    PartitionSet parts = even_partition(l, n);

    const Partition* subset_hit = nullptr;
    for (const Partition& p : parts) {
      if (psi(p)) {
        subset_hit = &p;
        break;
      }
    }
    if (subset_hit) {
      l = *subset_hit;
      if (l.size() <= 1) return l;
      n = 2;
      continue;
    }

    // Partitions are contiguous slices of l, so each complement is the two
    // flanking ranges; building it by range copy into a reused buffer beats
    // the generic subtract on the hot path.
    bool complement_hit = false;
    WeightedList comp;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t lo = i * l.size() / n;
      std::size_t hi = (i + 1) * l.size() / n;
      comp.clear();
      comp.reserve(l.size() - (hi - lo));
      comp.insert(comp.end(), l.begin(),
                  l.begin() + static_cast<std::ptrdiff_t>(lo));
      comp.insert(comp.end(), l.begin() + static_cast<std::ptrdiff_t>(hi),
                  l.end());
      if (psi(comp)) {
        l = std::move(comp);
        complement_hit = true;
        break;
      }
    }
    if (complement_hit) {
      if (l.size() <= 1) return l;
      n = std::min(std::max<std::size_t>(n - 1, 2), l.size());
      continue;
    }

    if (n >= l.size()) return l;  // singleton granularity, nothing removable
    n = std::min(2 * n, l.size());
  }
}

namespace {

// subtract() for the algorithm-internal case (both lists id-ascending),
// writing into a reusable buffer to keep the test loops allocation-free.
void subtract_into(const WeightedList& l, const Partition& ptn,
                   WeightedList& out) {
  out.clear();
  out.reserve(l.size());
  std::size_t p = 0;
  for (const Element& e : l) {
    while (p < ptn.size() && ptn[p].id < e.id) ++p;
    if (p < ptn.size() && ptn[p].id == e.id) continue;
    out.push_back(e);
  }
}

}  // namespace

std::pair<Partition, Partition> split_by_half_weight(const Partition& ptn) {
  // Minimize |2*prefix - total| in integers, ties to the shorter prefix.
  long long total = static_cast<long long>(total_weight(ptn));
  long long prefix = 0;
  std::size_t best_k = 1;
  long long best_diff = -1;
  for (std::size_t k = 1; k < ptn.size(); ++k) {
    prefix += static_cast<long long>(ptn[k - 1].weight);
    long long diff = std::llabs(2 * prefix - total);
    if (best_diff < 0 || diff < best_diff) {
      best_diff = diff;
      best_k = k;
    }
  }
  return {Partition(ptn.begin(), ptn.begin() + best_k),
          Partition(ptn.begin() + best_k, ptn.end())};
}

PartitionSet weight_partition(const PartitionSet& partitions) {
  PartitionSet out;
  out.reserve(2 * partitions.size());
  for (const Partition& ptn : partitions) {
    if (ptn.size() <= 1) continue;  // nothing left to split
    auto halves = split_by_half_weight(ptn);
    out.push_back(std::move(halves.first));
    out.push_back(std::move(halves.second));
  }
  return out;
}

WeightedList check_one_minimal(WeightedList list, const Oracle& psi) {
  bool removed = true;
  while (removed) {
    removed = false;
    for (std::size_t i = 0; i < list.size(); ++i) {
      WeightedList cand = list;
      cand.erase(cand.begin() + static_cast<std::ptrdiff_t>(i));
      if (psi(cand)) {
        list = std::move(cand);
        removed = true;
        break;
      }
    }
  }
  return list;
}

WeightedList wddmin(const WeightedList& list, const Oracle& psi) {
  if (list.empty()) return {};
  WeightedList l_min = list;
  PartitionSet partitions = {list};

  while (!partitions.empty()) {
    bool restart = false;

    for (const Partition& ptn : partitions) {
      if (psi(ptn)) {
        l_min = ptn;
        partitions = weight_partition({ptn});
        restart = true;
        break;
      }
    }
    if (restart) continue;

    WeightedList comp;
    for (std::size_t i = 0; i < partitions.size(); ++i) {
      subtract_into(l_min, partitions[i], comp);
      if (psi(comp)) {
        l_min = std::move(comp);
        partitions.erase(partitions.begin() + static_cast<std::ptrdiff_t>(i));
        restart = true;
        break;
      }
    }
    if (restart) continue;

    partitions = weight_partition(partitions);
  }

  return check_one_minimal(std::move(l_min), psi);
}

}  // namespace dd
