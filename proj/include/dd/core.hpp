#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace dd {

// One reducible fragment of the input. `id` is the ordinal position in the
// original list; `weight` is the fragment's token count; `payload` is an
// opaque handle (token index, tree node id) owned by whoever built the list.
struct Element {
  std::size_t id = 0;
  std::size_t weight = 0;
  std::size_t payload = 0;

  friend bool operator==(const Element& a, const Element& b) {
    return a.id == b.id && a.weight == b.weight && a.payload == b.payload;
  }
};

// Ordered sequence of elements. Algorithms treat it as an immutable value and
// return new lists; element order always follows the original input.
using WeightedList = std::vector<Element>;

// Contiguous (for ddmin-style splitting) or selected (probdd-style) slice of
// a WeightedList. Same representation, different role.
using Partition = WeightedList;
using PartitionSet = std::vector<Partition>;

// The property test. True means the candidate still exhibits the behavior of
// interest. Candidates always keep original element order.
using Oracle = std::function<bool(const WeightedList&)>;

std::size_t total_weight(const WeightedList& list);

// l \ ptn, preserving l's order. Membership is by element id.
WeightedList subtract(const WeightedList& l, const Partition& ptn);

std::vector<std::size_t> ids_of(const WeightedList& list);

}  // namespace dd
