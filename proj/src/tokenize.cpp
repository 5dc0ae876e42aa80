#include "dd/tokenize.hpp"

namespace dd {

namespace {

bool is_ws(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

}  // namespace

std::vector<TokenSpan> tokenize(std::string_view source, TokenMode mode) {
  std::vector<TokenSpan> spans;
  if (mode == TokenMode::whitespace) {
    std::size_t i = 0;
    while (i < source.size()) {
      while (i < source.size() && is_ws(source[i])) ++i;
      if (i >= source.size()) break;
      std::size_t start = i;
      while (i < source.size() && !is_ws(source[i])) ++i;
      spans.push_back({start, i});
    }
    return spans;
  }
  // line mode: one span per line, terminator excluded. A trailing newline
  // does not open an extra empty line.
  std::size_t start = 0;
  for (std::size_t i = 0; i < source.size(); ++i) {
    if (source[i] == '\n') {
      spans.push_back({start, i});
      start = i + 1;
    }
  }
  if (start < source.size()) spans.push_back({start, source.size()});
  return spans;
}

std::size_t count_tokens(std::string_view text) {
  std::size_t n = 0;
  bool in_tok = false;
  for (char c : text) {
    if (is_ws(c)) {
      in_tok = false;
    } else if (!in_tok) {
      in_tok = true;
      ++n;
    }
  }
  return n;
}

}  // namespace dd
