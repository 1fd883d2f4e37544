#include "kgame/trace.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace kgame {

namespace {

constexpr std::string_view kMagic = "kgame-trace";

void fnv_mix(uint64_t& h, std::string_view line) {
  for (unsigned char c : line) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  h ^= '\n';
  h *= 0x100000001b3ULL;
}

std::vector<std::string> canonical_lines(const MatchTrace& t) {
  std::vector<std::string> lines;
  lines.push_back(std::string(kMagic) + " " + std::to_string(kTraceFormatVersion));
  lines.push_back("game " + t.game);
  for (const auto& [k, v] : t.params) lines.push_back("param " + k + " " + v);
  lines.emplace_back("moves");
  lines.insert(lines.end(), t.records.begin(), t.records.end());
  lines.emplace_back("footer");
  lines.insert(lines.end(), t.footer.begin(), t.footer.end());
  return lines;
}

}  // namespace

void MatchTrace::set_param(std::string key, std::string value) {
  for (auto& [k, v] : params) {
    if (k == key) {
      v = std::move(value);
      return;
    }
  }
  params.emplace_back(std::move(key), std::move(value));
}

const std::string& MatchTrace::param(std::string_view key) const {
  for (const auto& [k, v] : params) {
    if (k == key) return v;
  }
  throw std::out_of_range("trace has no param '" + std::string(key) + "'");
}

bool MatchTrace::has_param(std::string_view key) const {
  for (const auto& [k, v] : params) {
    if (k == key) return true;
  }
  return false;
}

uint64_t trace_digest(const MatchTrace& trace) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (const auto& line : canonical_lines(trace)) fnv_mix(h, line);
  return h;
}

std::string digest_hex(uint64_t digest) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << digest;
  return os.str();
}

std::string serialize(const MatchTrace& trace) {
  std::string out;
  for (const auto& line : canonical_lines(trace)) {
    out += line;
    out += '\n';
  }
  out += "digest " + digest_hex(trace_digest(trace)) + "\n";
  return out;
}

std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> out;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::optional<uint64_t> parse_u64(std::string_view text) {
  if (text.empty() || (text.size() > 1 && text.front() == '0')) return std::nullopt;
  uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
  return v;
}

ParsedTrace parse_trace(std::string_view text) {
  std::vector<std::string_view> lines;
  size_t start = 0;
  while (start < text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }

  ParsedTrace parsed;
  MatchTrace& t = parsed.trace;
  size_t i = 0;
  auto line_no = [&] { return i + 1; };
  auto expect_more = [&](const char* what) {
    if (i >= lines.size()) throw TraceParseError(line_no(), std::string("missing ") + what);
  };

  expect_more("header");
  {
    auto tok = split_tokens(lines[i]);
    if (tok.size() != 2 || tok[0] != kMagic) throw TraceParseError(line_no(), "not a kgame trace");
    auto version = parse_u64(tok[1]);
    if (!version || *version != kTraceFormatVersion) {
      throw TraceParseError(line_no(), "unsupported trace format version '" +
                                           std::string(tok[1]) + "'");
    }
    ++i;
  }
  expect_more("game line");
  {
    auto tok = split_tokens(lines[i]);
    if (tok.size() != 2 || tok[0] != "game") throw TraceParseError(line_no(), "expected 'game <kind>'");
    t.game = std::string(tok[1]);
    ++i;
  }
  for (;;) {
    expect_more("'moves' line");
    auto tok = split_tokens(lines[i]);
    if (tok.size() == 1 && tok[0] == "moves") {
      ++i;
      break;
    }
    if (tok.size() != 3 || tok[0] != "param") throw TraceParseError(line_no(), "expected 'param <key> <value>'");
    if (t.has_param(tok[1])) throw TraceParseError(line_no(), "duplicate param");
    t.params.emplace_back(std::string(tok[1]), std::string(tok[2]));
    ++i;
  }
  parsed.first_record_line = i + 1;
  for (;;) {
    expect_more("'footer' line");
    auto tok = split_tokens(lines[i]);
    if (tok.size() == 1 && tok[0] == "footer") {
      ++i;
      break;
    }
    if (tok.empty()) throw TraceParseError(line_no(), "blank record");
    t.records.emplace_back(lines[i]);
    ++i;
  }
  parsed.first_footer_line = i + 1;
  for (;;) {
    expect_more("digest line");
    auto tok = split_tokens(lines[i]);
    if (!tok.empty() && tok[0] == "digest") {
      if (tok.size() != 2) throw TraceParseError(line_no(), "malformed digest line");
      parsed.stored_digest = std::string(tok[1]);
      ++i;
      break;
    }
    if (tok.empty()) throw TraceParseError(line_no(), "blank footer line");
    t.footer.emplace_back(lines[i]);
    ++i;
  }
  if (i != lines.size()) throw TraceParseError(line_no(), "content after digest");
  return parsed;
}

void write_trace(const MatchTrace& trace, const std::filesystem::path& path) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << serialize(trace);
    if (!out.flush()) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace kgame
