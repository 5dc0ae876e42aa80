#include "dd/metrics.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace dd {

double ReductionReport::speed() const {
  if (elapsed_seconds <= 0.0) return 0.0;
  return static_cast<double>(initial_tokens - final_tokens) / elapsed_seconds;
}

bool operator==(const ReductionReport& a, const ReductionReport& b) {
  return a.input == b.input && a.algorithm == b.algorithm &&
         a.granularity == b.granularity &&
         a.initial_tokens == b.initial_tokens &&
         a.final_tokens == b.final_tokens &&
         a.elapsed_seconds == b.elapsed_seconds &&
         a.oracle_invocations == b.oracle_invocations &&
         a.cache_hits == b.cache_hits;
}

std::string report_to_json(const ReductionReport& r) {
  nlohmann::json j{{"input", r.input},
                   {"algorithm", r.algorithm},
                   {"granularity", r.granularity},
                   {"initial_tokens", r.initial_tokens},
                   {"final_tokens", r.final_tokens},
                   {"elapsed_seconds", r.elapsed_seconds},
                   {"oracle_invocations", r.oracle_invocations},
                   {"cache_hits", r.cache_hits}};
  return j.dump();
}

ReductionReport report_from_json(std::string_view text) {
  nlohmann::json j = nlohmann::json::parse(text);
  ReductionReport r;
  r.input = j.at("input").get<std::string>();
  r.algorithm = j.at("algorithm").get<std::string>();
  r.granularity = j.at("granularity").get<std::string>();
  r.initial_tokens = j.at("initial_tokens").get<std::size_t>();
  r.final_tokens = j.at("final_tokens").get<std::size_t>();
  r.elapsed_seconds = j.at("elapsed_seconds").get<double>();
  r.oracle_invocations = j.at("oracle_invocations").get<std::uint64_t>();
  r.cache_hits = j.at("cache_hits").get<std::uint64_t>();
  return r;
}

std::string report_to_text(const ReductionReport& r) {
  char buf[256];
  std::ostringstream out;
  out << "input:              " << r.input << '\n';
  out << "algorithm:          " << r.algorithm << '\n';
  out << "granularity:        " << r.granularity << '\n';
  out << "initial tokens:     " << r.initial_tokens << '\n';
  out << "final tokens:       " << r.final_tokens << '\n';
  std::snprintf(buf, sizeof buf, "%.3f", r.elapsed_seconds);
  out << "elapsed seconds:    " << buf << '\n';
  out << "oracle invocations: " << r.oracle_invocations << '\n';
  out << "cache hits:         " << r.cache_hits << '\n';
  std::snprintf(buf, sizeof buf, "%.1f", r.speed());
  out << "speed:              " << buf << " tokens/s\n";
  return out.str();
}

std::string report_csv_header() {
  return "input,algorithm,granularity,initial_tokens,final_tokens,"
         "elapsed_seconds,oracle_invocations,cache_hits,speed";
}

std::string report_to_csv_row(const ReductionReport& r) {
  char buf[128];
  std::ostringstream out;
  out << r.input << ',' << r.algorithm << ',' << r.granularity << ','
      << r.initial_tokens << ',' << r.final_tokens << ',';
  std::snprintf(buf, sizeof buf, "%.17g", r.elapsed_seconds);
  out << buf << ',' << r.oracle_invocations << ',' << r.cache_hits << ',';
  std::snprintf(buf, sizeof buf, "%.17g", r.speed());
  out << buf;
  return out.str();
}

std::map<std::size_t, double> deletion_probability_by_weight(
    const WeightedList& before, const WeightedList& after) {
  std::map<std::size_t, std::pair<std::size_t, std::size_t>> counts;
  for (const Element& e : before) ++counts[e.weight].first;
  for (const Element& e : after) ++counts[e.weight].second;
  std::map<std::size_t, double> out;
  for (const auto& [w, c] : counts) {
    if (c.first == 0) continue;  // weight class only present after: ignore
    out[w] = static_cast<double>(c.first - c.second) /
             static_cast<double>(c.first);
  }
  return out;
}

namespace {

// Average ranks, 1-based; ties share the mean of their positions.
std::vector<double> average_ranks(const std::vector<double>& xs) {
  std::vector<std::size_t> idx(xs.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
  std::vector<double> ranks(xs.size());
  std::size_t i = 0;
  while (i < idx.size()) {
    std::size_t j = i;
    while (j + 1 < idx.size() && xs[idx[j + 1]] == xs[idx[i]]) ++j;
    double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[idx[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

std::optional<double> spearman_rho(const std::vector<double>& xs,
                                   const std::vector<double>& ys) {
  if (xs.size() != ys.size())
    throw std::invalid_argument("spearman_rho: length mismatch");
  if (xs.size() < 2)
    throw std::invalid_argument("spearman_rho: need at least 2 points");

  std::vector<double> rx = average_ranks(xs);
  std::vector<double> ry = average_ranks(ys);
  double n = static_cast<double>(rx.size());
  double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    double dx = rx[i] - mx;
    double dy = ry[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;  // constant variable
  return sxy / std::sqrt(sxx * syy);
}

CorrelationSummary correlation_analysis(
    const std::vector<InvocationRecord>& records) {
  CorrelationSummary summary;
  for (std::size_t ri = 0; ri < records.size(); ++ri) {
    const InvocationRecord& rec = records[ri];
    ++summary.invocations;
    if (rec.after_ids.size() >= rec.before.size()) continue;  // nothing deleted
    ++summary.with_deletions;

    WeightedList before, after;
    before.reserve(rec.before.size());
    for (const auto& [id, w] : rec.before) before.push_back({id, w, 0});
    std::unordered_map<std::size_t, std::size_t> weight_of;
    for (const auto& [id, w] : rec.before) weight_of[id] = w;
    for (std::size_t id : rec.after_ids)
      after.push_back({id, weight_of.at(id), 0});

    auto pdel = deletion_probability_by_weight(before, after);
    if (pdel.size() < 2) continue;  // rho undefined over one weight class
    std::vector<double> ws, ps;
    for (const auto& [w, p] : pdel) {
      ws.push_back(static_cast<double>(w));
      ps.push_back(p);
    }
    if (auto rho = spearman_rho(ws, ps)) {
      summary.rhos.push_back(*rho);
      summary.rho_sources.push_back(ri);
    }
  }
  if (!summary.rhos.empty())
    summary.mean_rho =
        std::accumulate(summary.rhos.begin(), summary.rhos.end(), 0.0) /
        static_cast<double>(summary.rhos.size());
  return summary;
}

}  // namespace dd
