#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "dd/core.hpp"
#include "dd/metrics.hpp"

namespace dd {

// JSON-lines trace of a reduction session: one record per oracle test and
// one per algorithm invocation boundary.
class SessionLog {
 public:
  explicit SessionLog(std::ostream& out) : out_(out) {}

  void log_test(std::string_view digest, bool verdict, bool cache_hit);
  void log_invocation(std::string_view algorithm, std::size_t depth,
                      const WeightedList& before, const WeightedList& after);

 private:
  std::ostream& out_;
};

// Parses the invocation records back out of a session log, skipping test
// records. Malformed lines raise std::runtime_error with the line number.
std::vector<InvocationRecord> read_invocations(std::istream& in);

}  // namespace dd
