#include "dd/core.hpp"

#include <unordered_set>

namespace dd {

std::size_t total_weight(const WeightedList& list) {
  std::size_t sum = 0;
  for (const Element& e : list) sum += e.weight;
  return sum;
}

namespace {

bool ids_ascending(const WeightedList& list) {
  for (std::size_t i = 1; i < list.size(); ++i)
    if (list[i - 1].id >= list[i].id) return false;
  return true;
}

}  // namespace

WeightedList subtract(const WeightedList& l, const Partition& ptn) {
  WeightedList out;
  out.reserve(l.size() >= ptn.size() ? l.size() - ptn.size() : 0);
  // Lists derived from one input keep ids ascending, so the common case is a
  // linear merge. Arbitrary id orders take the hashed path below.
  if (ids_ascending(l) && ids_ascending(ptn)) {
    std::size_t p = 0;
    for (const Element& e : l) {
      while (p < ptn.size() && ptn[p].id < e.id) ++p;
      if (p < ptn.size() && ptn[p].id == e.id) continue;
      out.push_back(e);
    }
    return out;
  }
  std::unordered_set<std::size_t> drop;
  drop.reserve(ptn.size());
  for (const Element& e : ptn) drop.insert(e.id);
  for (const Element& e : l)
    if (!drop.count(e.id)) out.push_back(e);
  return out;
}

std::vector<std::size_t> ids_of(const WeightedList& list) {
  std::vector<std::size_t> ids;
  ids.reserve(list.size());
  for (const Element& e : list) ids.push_back(e.id);
  return ids;
}

}  // namespace dd
