#pragma once

// Independent trace checking: replays every record through the rule
// modules alone, recomputes the footer and checks the digest.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace kgame {

enum class VerifyStatus {
  Ok,             // replay legal, footer and digest match
  RuleViolation,  // a record breaks a rule (the trace may say so itself)
  Malformed,      // structure, record syntax, footer or digest mismatch
};

struct VerifyReport {
  VerifyStatus status = VerifyStatus::Ok;
  std::string game;
  std::optional<size_t> line;       // 1-based file line of the first problem
  std::string message;              // empty when Ok
  std::string reason;               // rule reason name for RuleViolation
  std::vector<std::string> footer;  // recomputed footer (when replay got that far)
  bool ok() const { return status == VerifyStatus::Ok; }
};

VerifyReport verify_trace_text(std::string_view text);
VerifyReport verify_trace_file(const std::filesystem::path& path);

}  // namespace kgame
