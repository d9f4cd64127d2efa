#pragma once

#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "mvote/errors.hpp"

namespace mvote::detail {

/// Splits text into whitespace-separated token lines, dropping '#' comments
/// and blank lines. Each entry keeps its 1-based source line number.
struct TokenLine {
  std::size_t line_no;
  std::vector<std::string> tokens;
};

inline std::vector<TokenLine> token_lines(std::string_view text) {
  std::vector<TokenLine> out;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    TokenLine tl{line_no, {}};
    std::string w;
    while (words >> w) tl.tokens.push_back(w);
    if (!tl.tokens.empty()) out.push_back(std::move(tl));
  }
  return out;
}

inline std::size_t parse_count(const std::string& token, std::size_t line_no) {
  if (token.empty() || token.size() > 9 ||
      token.find_first_not_of("0123456789") != std::string::npos) {
    throw ParseError("line " + std::to_string(line_no) + ": expected a nonnegative integer, got '" +
                     token + "'");
  }
  return static_cast<std::size_t>(std::stoul(token));
}

[[noreturn]] inline void fail_at(std::size_t line_no, const std::string& what) {
  throw ParseError("line " + std::to_string(line_no) + ": " + what);
}

}  // namespace mvote::detail
