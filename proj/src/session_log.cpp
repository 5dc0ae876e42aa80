#include "dd/session_log.hpp"

#include <json.hpp>

#include <stdexcept>

namespace dd {

using nlohmann::json;

void SessionLog::log_test(std::string_view digest, bool verdict,
                          bool cache_hit) {
  json j{{"type", "test"},
         {"digest", std::string(digest)},
         {"verdict", verdict},
         {"cache_hit", cache_hit}};
  out_ << j.dump() << '\n';
}

void SessionLog::log_invocation(std::string_view algorithm, std::size_t depth,
                                const WeightedList& before,
                                const WeightedList& after) {
  json jb = json::array();
  for (const Element& e : before) jb.push_back({e.id, e.weight});
  json ja = json::array();
  for (const Element& e : after) ja.push_back(e.id);
  json j{{"type", "invocation"},
         {"algorithm", std::string(algorithm)},
         {"depth", depth},
         {"before", std::move(jb)},
         {"after", std::move(ja)}};
  out_ << j.dump() << '\n';
}

std::vector<InvocationRecord> read_invocations(std::istream& in) {
  std::vector<InvocationRecord> records;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
      if (j.at("type").get<std::string>() != "invocation") continue;
      InvocationRecord rec;
      rec.algorithm = j.at("algorithm").get<std::string>();
      rec.depth = j.at("depth").get<std::size_t>();
      for (const auto& pair : j.at("before"))
        rec.before.emplace_back(pair.at(0).get<std::size_t>(),
                                pair.at(1).get<std::size_t>());
      for (const auto& id : j.at("after"))
        rec.after_ids.push_back(id.get<std::size_t>());
      records.push_back(std::move(rec));
    } catch (const json::exception& e) {
      throw std::runtime_error("session log line " + std::to_string(lineno) +
                               ": " + e.what());
    }
  }
  return records;
}

}  // namespace dd
