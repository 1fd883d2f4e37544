#pragma once

// Text match traces.
//
//   kgame-trace 1
//   game <gn|arena|weights>
//   param <key> <value>        (any number, order preserved)
//   moves
//   <record>                   (one per line, game-specific)
//   footer
//   <footer line>              (verdict and end-state summary)
//   digest <16 hex digits>     (FNV-1a over every preceding canonical line)

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace kgame {

inline constexpr int kTraceFormatVersion = 1;

struct MatchTrace {
  std::string game;
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<std::string> records;
  std::vector<std::string> footer;

  void set_param(std::string key, std::string value);
  // Throws std::out_of_range when absent.
  const std::string& param(std::string_view key) const;
  bool has_param(std::string_view key) const;
};

class TraceParseError : public std::runtime_error {
 public:
  TraceParseError(size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  size_t line() const { return line_; }

 private:
  size_t line_;
};

uint64_t trace_digest(const MatchTrace& trace);
std::string digest_hex(uint64_t digest);

std::string serialize(const MatchTrace& trace);

// Structural parse only; checks the digest line against the content and
// rejects unknown format versions. Line numbers in errors are 1-based.
struct ParsedTrace {
  MatchTrace trace;
  size_t first_record_line = 0;  // file line of records[0]
  size_t first_footer_line = 0;
  std::string stored_digest;
};
ParsedTrace parse_trace(std::string_view text);

// Writes through a temporary file in the same directory, then renames.
void write_trace(const MatchTrace& trace, const std::filesystem::path& path);
std::string read_file(const std::filesystem::path& path);

// Whitespace tokenizer shared by the record parsers.
std::vector<std::string_view> split_tokens(std::string_view line);

// Strict decimal parse: digits only, no sign, no leading zeros.
std::optional<uint64_t> parse_u64(std::string_view text);

}  // namespace kgame
