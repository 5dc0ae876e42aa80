#pragma once

#include <string>
#include <string_view>

namespace dd {

// SHA-256 of the exact bytes, lowercase hex. Used as the cache key for
// rendered candidates so distinct granularities share one cache safely.
std::string content_digest(std::string_view bytes);

}  // namespace dd
