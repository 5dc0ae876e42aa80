#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dd/core.hpp"

namespace dd {

struct ReductionReport {
  std::string input;
  std::string algorithm;
  std::string granularity;
  std::size_t initial_tokens = 0;
  std::size_t final_tokens = 0;   // S(#)
  double elapsed_seconds = 0.0;   // T(s), monotonic clock, end to end
  std::uint64_t oracle_invocations = 0;  // actual property evaluations
  std::uint64_t cache_hits = 0;

  // Tokens removed per second; 0 when nothing was removed.
  double speed() const;

  friend bool operator==(const ReductionReport& a, const ReductionReport& b);
};

std::string report_to_json(const ReductionReport& r);
ReductionReport report_from_json(std::string_view text);
std::string report_to_text(const ReductionReport& r);
std::string report_csv_header();
std::string report_to_csv_row(const ReductionReport& r);

// Per weight class w: fraction of weight-w elements the reduction deleted,
// (#before - #after) / #before. Classes absent from `before` do not appear.
std::map<std::size_t, double> deletion_probability_by_weight(
    const WeightedList& before, const WeightedList& after);

// Spearman rank correlation with average ranks for ties. Empty when either
// variable is constant (rank variance zero): undefined, never coerced to 0.
// Throws std::invalid_argument on length mismatch or fewer than 2 points.
std::optional<double> spearman_rho(const std::vector<double>& xs,
                                   const std::vector<double>& ys);

// One algorithm invocation boundary from a session log.
struct InvocationRecord {
  std::string algorithm;
  std::size_t depth = 0;
  std::vector<std::pair<std::size_t, std::size_t>> before;  // (id, weight)
  std::vector<std::size_t> after_ids;
};

struct CorrelationSummary {
  std::size_t invocations = 0;
  std::size_t with_deletions = 0;  // invocations that deleted at least one element
  std::vector<double> rhos;        // defined rho per qualifying invocation
  std::vector<std::size_t> rho_sources;  // record index behind each rho
  std::optional<double> mean_rho;
};

// Weight-vs-deletability correlation over a session: for each invocation
// that deleted something, rho between weight classes and their deletion
// probabilities. Invocations with no deletions or undefined rho are excluded
// from the mean.
CorrelationSummary correlation_analysis(
    const std::vector<InvocationRecord>& records);

}  // namespace dd
