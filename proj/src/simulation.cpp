#include "dd/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "dd/rng.hpp"

namespace dd {

std::size_t SimInstance::total_tokens() const {
  std::size_t sum = 0;
  for (std::size_t w : weights) sum += w;
  return sum;
}

WeightedList SimInstance::elements() const {
  WeightedList list;
  list.reserve(n);
  for (std::size_t i = 0; i < n; ++i) list.push_back({i, weights[i], i});
  return list;
}

std::vector<std::size_t> SimInstance::expected_ids() const {
  std::vector<std::size_t> ids;
  for (std::size_t i = 0; i < n; ++i)
    if (!removable[i]) ids.push_back(i);
  return ids;
}

std::size_t SimInstance::expected_tokens() const {
  std::size_t sum = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (!removable[i]) sum += weights[i];
  return sum;
}

SimInstance synthesize_instance(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 rng(SplitMix64::derive(seed, index));
  SimInstance inst;
  inst.n = rng.range(2, 1000);
  std::size_t total = rng.range(inst.n, 10 * inst.n);

  // Uniform random composition of `total` into n parts >= 1: pick n-1
  // distinct cut points among the total-1 gaps (partial Fisher-Yates).
  // Weight dispersion matters: the heavy tail is what separates the
  // weight-aware algorithms from the even splitters on this benchmark.
  std::vector<std::uint32_t> gaps(total - 1);
  std::iota(gaps.begin(), gaps.end(), std::uint32_t{1});
  for (std::size_t i = 0; i + 1 < inst.n; ++i) {
    std::size_t j = i + rng.below(gaps.size() - i);
    std::swap(gaps[i], gaps[j]);
  }
  std::vector<std::uint32_t> cuts(gaps.begin(),
                                  gaps.begin() +
                                      static_cast<std::ptrdiff_t>(inst.n - 1));
  std::sort(cuts.begin(), cuts.end());
  inst.weights.resize(inst.n);
  std::size_t prev = 0;
  for (std::size_t i = 0; i + 1 < inst.n; ++i) {
    inst.weights[i] = cuts[i] - prev;
    prev = cuts[i];
  }
  inst.weights[inst.n - 1] = total - prev;

  inst.p0 = rng.uniform_open01();
  inst.removable.resize(inst.n);
  for (std::size_t i = 0; i < inst.n; ++i) {
    double p_e = std::pow(inst.p0, static_cast<double>(inst.weights[i]));
    inst.removable[i] = rng.uniform01() < p_e;
  }
  return inst;
}

bool sim_oracle(const SimInstance& inst, const WeightedList& candidate) {
  std::vector<char> present(inst.n, 0);
  for (const Element& e : candidate) present[e.id] = 1;
  for (std::size_t i = 0; i < inst.n; ++i)
    if (!inst.removable[i] && !present[i]) return false;
  return true;
}

SimReport run_simulation(std::uint64_t count, std::uint64_t seed,
                         const std::vector<Algorithm>& algorithms, double p0) {
  SimReport report;
  report.rows.reserve(count * algorithms.size());
  std::map<std::string, std::uint64_t> test_sums;
  std::map<std::string, std::uint64_t> run_counts;

  for (std::uint64_t k = 0; k < count; ++k) {
    SimInstance inst = synthesize_instance(seed, k);
    WeightedList list = inst.elements();
    std::vector<std::size_t> expected = inst.expected_ids();
    std::size_t needed = expected.size();

    for (Algorithm alg : algorithms) {
      // Same counting semantics as the cached-oracle wrapper (tests = unique
      // candidates; duplicates answered from the cache), hand-rolled because
      // this loop is the simulation's hot path.
      std::unordered_map<std::string, bool> cache;
      std::uint64_t queries = 0, hits = 0;
      std::string key;
      Oracle psi = [&](const WeightedList& candidate) {
        ++queries;
        key.assign((inst.n + 7) / 8, '\0');
        for (const Element& e : candidate)
          key[e.id / 8] = static_cast<char>(key[e.id / 8] | (1 << (e.id % 8)));
        auto [it, inserted] = cache.try_emplace(key, false);
        if (!inserted) {
          ++hits;
          return it->second;
        }
        std::size_t present = 0;
        for (const Element& e : candidate)
          present += inst.removable[e.id] ? 0 : 1;
        it->second = present == needed;
        return it->second;
      };

      ReduceOptions opts;
      opts.algorithm = alg;
      opts.p0 = p0;
      WeightedList result = run_algorithm(alg, list, psi, opts);

      if (ids_of(result) != expected) ++report.mismatches;

      SimRow row;
      row.instance = k;
      row.n = inst.n;
      row.total_tokens = inst.total_tokens();
      row.p0 = inst.p0;
      row.algorithm = algorithm_name(alg);
      row.tests = queries - hits;
      row.result_size_tokens = total_weight(result);
      report.rows.push_back(row);

      test_sums[row.algorithm] += row.tests;
      ++run_counts[row.algorithm];
    }
  }

  for (const auto& [name, sum] : test_sums)
    report.mean_tests[name] =
        static_cast<double>(sum) / static_cast<double>(run_counts[name]);
  return report;
}

double SimReport::savings(const std::string& a, const std::string& b) const {
  auto ia = mean_tests.find(a);
  auto ib = mean_tests.find(b);
  if (ia == mean_tests.end() || ib == mean_tests.end() || ia->second == 0.0)
    return 0.0;
  return 1.0 - ib->second / ia->second;
}

void write_sim_csv(const SimReport& report, std::ostream& out) {
  out << "instance,n,total_tokens,p0,algorithm,tests,result_size_tokens\n";
  char buf[64];
  for (const SimRow& r : report.rows) {
    std::snprintf(buf, sizeof buf, "%.17g", r.p0);
    out << r.instance << ',' << r.n << ',' << r.total_tokens << ',' << buf
        << ',' << r.algorithm << ',' << r.tests << ','
        << r.result_size_tokens << '\n';
  }
}

}  // namespace dd
