#include "kgame/verify.hpp"

#include <map>
#include <stdexcept>

#include "kgame/arena.hpp"
#include "kgame/board.hpp"
#include "kgame/record_format.hpp"
#include "kgame/trace.hpp"
#include "kgame/weight_game.hpp"

namespace kgame {

namespace {

struct Failure {
  VerifyStatus status;
  size_t line;
  std::string message;
  std::string reason;
};

int param_int(const MatchTrace& t, std::string_view key) {
  if (!t.has_param(key)) throw std::invalid_argument("missing param '" + std::string(key) + "'");
  auto v = parse_u64(t.param(key));
  if (!v || *v > static_cast<uint64_t>(kMaxBoardRows)) {
    throw std::invalid_argument("bad param '" + std::string(key) + "'");
  }
  return static_cast<int>(*v);
}

std::vector<uint64_t> parse_counts(std::string_view text) {
  std::vector<uint64_t> out;
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    auto v = parse_u64(text.substr(start, end - start));
    if (!v) throw std::invalid_argument("bad count list '" + std::string(text) + "'");
    out.push_back(*v);
    start = end + 1;
  }
  return out;
}

// Replays a single-board trace; returns the recomputed footer.
std::vector<std::string> replay_gn(const ParsedTrace& p, std::optional<Failure>& failure) {
  const MatchTrace& t = p.trace;
  BoardState state(BoardParams{param_int(t, "n"), true});
  std::optional<Verdict> violation;
  for (size_t i = 0; i < t.records.size(); ++i) {
    const size_t line = p.first_record_line + i;
    if (violation) {
      // The first problem wins; the replay stops here.
      failure->message += " (records follow the violation)";
      return {};
    }
    BoardRecord rec;
    try {
      rec = parse_board_record(t.records[i]);
    } catch (const std::invalid_argument& e) {
      failure = Failure{VerifyStatus::Malformed, line, e.what(), ""};
      return {};
    }
    if (rec.board) {
      failure = Failure{VerifyStatus::Malformed, line, "board tag in a single-board trace", ""};
      return {};
    }
    if (rec.index != state.move_index()) {
      failure = Failure{VerifyStatus::Malformed, line,
                        "expected move index " + std::to_string(state.move_index()), ""};
      return {};
    }
    const Player turn = state.move_index() % 2 == 0 ? Player::White : Player::Black;
    std::optional<Violation> v;
    if (rec.player != turn) {
      v = Violation{Reason::WrongActor, std::string(to_string(rec.player)) + " moved out of turn"};
    } else {
      v = validate_move(state, rec.player, rec.move);
    }
    if (v) {
      failure = Failure{VerifyStatus::RuleViolation, line,
                        std::string(to_string(rec.player)) + ": " + v->detail,
                        std::string(to_string(v->reason))};
      violation = Verdict::violation(rec.player, std::move(*v));
      continue;
    }
    state.apply(rec.player, rec.move);
  }
  return board_footer(state, violation ? *violation : verdict(state));
}

std::vector<std::string> replay_arena(const ParsedTrace& p, std::optional<Failure>& failure) {
  const MatchTrace& t = p.trace;
  ArenaParams params;
  params.n_min = param_int(t, "n_min");
  params.n_max = param_int(t, "n_max");
  if (!t.has_param("variant")) throw std::invalid_argument("missing param 'variant'");
  auto variant = arena_variant_from_string(t.param("variant"));
  if (!variant) throw std::invalid_argument("bad param 'variant'");
  params.variant = *variant;
  ArenaState state(params);

  std::optional<Verdict> violation;
  for (size_t i = 0; i < t.records.size(); ++i) {
    const size_t line = p.first_record_line + i;
    if (violation) {
      // The first problem wins; the replay stops here.
      failure->message += " (records follow the violation)";
      return {};
    }
    BoardRecord rec;
    try {
      rec = parse_board_record(t.records[i]);
    } catch (const std::invalid_argument& e) {
      failure = Failure{VerifyStatus::Malformed, line, e.what(), ""};
      return {};
    }
    if (!rec.board) {
      failure = Failure{VerifyStatus::Malformed, line, "arena record without board tag", ""};
      return {};
    }
    if (rec.index != state.actions()) {
      failure = Failure{VerifyStatus::Malformed, line,
                        "expected action index " + std::to_string(state.actions()), ""};
      return {};
    }
    if (auto v = arena_validate(state, *rec.board, rec.player, rec.move)) {
      failure = Failure{VerifyStatus::RuleViolation, line,
                        std::string(to_string(rec.player)) + " @" + std::to_string(*rec.board) +
                            ": " + v->detail,
                        std::string(to_string(v->reason))};
      violation = Verdict::violation(rec.player, std::move(*v));
      continue;
    }
    state.apply(*rec.board, rec.player, rec.move);
  }
  std::map<int, Verdict> verdicts;
  for (const auto& [n, b] : state.boards()) verdicts.emplace(n, verdict(b));
  return arena_footer(state, verdicts, violation);
}

std::vector<std::string> replay_weights(const ParsedTrace& p, std::optional<Failure>& failure) {
  const MatchTrace& t = p.trace;
  WeightParams params;
  if (!t.has_param("c") || !t.has_param("sizes")) {
    throw std::invalid_argument("missing param 'c' or 'sizes'");
  }
  auto c = parse_u64(t.param("c"));
  if (!c) throw std::invalid_argument("bad param 'c'");
  params.c = *c;
  params.set_sizes = parse_counts(t.param("sizes"));
  WeightState state(params);

  std::optional<WeightVerdict> violation;
  size_t i = 0;
  uint64_t expected_batch = 0;
  while (i < t.records.size()) {
    if (violation) {
      // The first problem wins; the replay stops here.
      failure->message += " (records follow the violation)";
      return {};
    }
    std::vector<WeightMove> batch;
    std::vector<size_t> lines;
    WeightActor actor = WeightActor::Alice;
    bool saw_pass = false;
    while (i < t.records.size()) {
      const size_t line = p.first_record_line + i;
      WeightRecord rec;
      try {
        rec = parse_weight_record(t.records[i]);
      } catch (const std::invalid_argument& e) {
        failure = Failure{VerifyStatus::Malformed, line, e.what(), ""};
        return {};
      }
      if (rec.batch != expected_batch) {
        if (!batch.empty() || saw_pass) break;
        failure = Failure{VerifyStatus::Malformed, line,
                          "expected batch " + std::to_string(expected_batch), ""};
        return {};
      }
      const WeightActor turn = expected_batch % 2 == 0 ? WeightActor::Alice : WeightActor::Bob;
      if (rec.actor != turn) {
        failure = Failure{VerifyStatus::RuleViolation, line,
                          std::string(to_string(rec.actor)) + " moved out of turn", "WrongActor"};
        return {};
      }
      actor = rec.actor;
      if (rec.move.kind == WeightMoveKind::Pass) {
        if (!batch.empty() || saw_pass) {
          failure = Failure{VerifyStatus::Malformed, line, "pass inside a non-empty batch", ""};
          return {};
        }
        saw_pass = true;
      } else {
        if (saw_pass) {
          failure = Failure{VerifyStatus::Malformed, line, "pass inside a non-empty batch", ""};
          return {};
        }
        batch.push_back(rec.move);
        lines.push_back(line);
      }
      ++i;
    }
    ++expected_batch;
    if (auto v = validate_weight_moves(state, actor, batch)) {
      failure = Failure{VerifyStatus::RuleViolation, lines.at(v->move),
                        std::string(to_string(actor)) + ": " + v->detail,
                        std::string(to_string(v->reason))};
      violation = WeightVerdict::violation(actor, std::move(*v));
      continue;
    }
    apply_weight_moves(state, actor, batch);
  }
  return weight_footer(state, violation ? *violation : weight_verdict(state));
}

}  // namespace

VerifyReport verify_trace_text(std::string_view text) {
  VerifyReport report;
  ParsedTrace parsed;
  try {
    parsed = parse_trace(text);
  } catch (const TraceParseError& e) {
    report.status = VerifyStatus::Malformed;
    report.line = e.line();
    report.message = e.what();
    return report;
  }
  report.game = parsed.trace.game;

  std::optional<Failure> failure;
  try {
    if (report.game == "gn") {
      report.footer = replay_gn(parsed, failure);
    } else if (report.game == "arena") {
      report.footer = replay_arena(parsed, failure);
    } else if (report.game == "weights") {
      report.footer = replay_weights(parsed, failure);
    } else {
      report.status = VerifyStatus::Malformed;
      report.line = 2;
      report.message = "unknown game '" + report.game + "'";
      return report;
    }
  } catch (const std::exception& e) {
    report.status = VerifyStatus::Malformed;
    report.line = 3;
    report.message = e.what();
    return report;
  }

  if (failure && failure->status == VerifyStatus::Malformed) {
    report.status = VerifyStatus::Malformed;
    report.line = failure->line;
    report.message = failure->message;
    return report;
  }

  const auto& stored = parsed.trace.footer;
  if (report.footer != stored) {
    size_t k = 0;
    while (k < stored.size() && k < report.footer.size() && stored[k] == report.footer[k]) ++k;
    report.status = VerifyStatus::Malformed;
    report.line = parsed.first_footer_line + k;
    report.message = "footer does not match replay";
    if (k < report.footer.size()) report.message += "; expected '" + report.footer[k] + "'";
  } else if (parsed.stored_digest != digest_hex(trace_digest(parsed.trace))) {
    report.status = VerifyStatus::Malformed;
    report.line = parsed.first_footer_line + stored.size();
    report.message = "digest mismatch";
  }

  // A rule violation outranks footer or digest problems: it names the rule.
  if (failure) {
    report.status = VerifyStatus::RuleViolation;
    report.line = failure->line;
    report.message = failure->message;
    report.reason = failure->reason;
  }
  return report;
}

VerifyReport verify_trace_file(const std::filesystem::path& path) {
  return verify_trace_text(read_file(path));
}

}  // namespace kgame
