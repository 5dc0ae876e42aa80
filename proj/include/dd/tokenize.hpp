#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace dd {

enum class TokenMode {
  whitespace,  // maximal runs of non-whitespace bytes
  line,        // one span per line, newline excluded
};

// Half-open byte range [begin, end) into the source string.
struct TokenSpan {
  std::size_t begin = 0;
  std::size_t end = 0;

  friend bool operator==(const TokenSpan& a, const TokenSpan& b) {
    return a.begin == b.begin && a.end == b.end;
  }
};

// Lexer-free, language-agnostic splitting. The spans plus the bytes between
// them reconstruct the source exactly.
std::vector<TokenSpan> tokenize(std::string_view source, TokenMode mode);

// Number of whitespace-delimited tokens in `text`.
std::size_t count_tokens(std::string_view text);

}  // namespace dd
