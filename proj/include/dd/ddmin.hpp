#pragma once

#include <cstddef>
#include <utility>

#include "dd/core.hpp"

namespace dd {

// Classic unweighted minimization. Splits evenly by element count, starting
// at two partitions: a passing subset restarts at n=2 on the subset, a
// passing complement resumes at n-1 on the complement, otherwise granularity
// doubles (capped at the list length) until every partition is a singleton.
// The empty candidate is probed once up front so a property that needs no
// element at all minimizes to the empty list.
// Requires psi(list) == true.
WeightedList ddmin(const WeightedList& list, const Oracle& psi);

// The ddmin splitting rule: n contiguous runs with sizes as even as
// possible, run i covering [floor(i*L/n), floor((i+1)*L/n)).
// Requires 1 <= n <= list.size().
PartitionSet even_partition(const WeightedList& list, std::size_t n);

// Splits `ptn` into two contiguous non-empty halves whose weights are as
// close to equal as possible; ties go to the shorter prefix.
// Requires ptn.size() >= 2.
std::pair<Partition, Partition> split_by_half_weight(const Partition& ptn);

// Weight-balanced refinement: each multi-element partition is replaced by
// its two half-weight parts in order; singletons are dropped (they cannot
// be split further).
PartitionSet weight_partition(const PartitionSet& partitions);

// Removes every element whose deletion alone preserves psi, restarting the
// scan after each removal. Returns a 1-minimal list.
// Requires psi(list) == true.
WeightedList check_one_minimal(WeightedList list, const Oracle& psi);

// Weighted minimization: tests each partition alone, then each complement,
// refining by weight_partition when neither helps, and finishes with the
// one-minimality sweep.
// Requires psi(list) == true.
WeightedList wddmin(const WeightedList& list, const Oracle& psi);

}  // namespace dd
