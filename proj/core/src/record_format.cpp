#include "kgame/record_format.hpp"

#include <stdexcept>

#include "kgame/trace.hpp"

namespace kgame {

namespace {

[[noreturn]] void bad(const std::string& what) { throw std::invalid_argument(what); }

uint64_t number(std::string_view token, const char* field) {
  auto v = parse_u64(token);
  if (!v) bad(std::string("bad ") + field + " '" + std::string(token) + "'");
  return *v;
}

std::string cell_text(const Cell& c) {
  return std::to_string(c.column) + " " + std::to_string(c.row);
}

}  // namespace

std::string format_board_record(const BoardRecord& record) {
  std::string out = std::to_string(record.index);
  out += record.player == Player::White ? " W" : " B";
  if (record.board) out += " @" + std::to_string(*record.board);
  out += ' ';
  out += to_string(record.move.kind);
  if (!record.move.is_pass()) out += " " + cell_text(record.move.cell);
  return out;
}

BoardRecord parse_board_record(std::string_view line) {
  auto tokens = split_tokens(line);
  size_t i = 0;
  auto next = [&](const char* field) -> std::string_view {
    if (i >= tokens.size()) bad(std::string("missing ") + field);
    return tokens[i++];
  };

  BoardRecord rec;
  rec.index = number(next("move index"), "move index");
  std::string_view who = next("player");
  if (who == "W") {
    rec.player = Player::White;
  } else if (who == "B") {
    rec.player = Player::Black;
  } else {
    bad("bad player '" + std::string(who) + "'");
  }

  std::string_view kind = next("action");
  if (!kind.empty() && kind.front() == '@') {
    const uint64_t n = number(kind.substr(1), "board tag");
    if (n < 1 || n > static_cast<uint64_t>(kMaxBoardRows)) bad("board tag out of range");
    rec.board = static_cast<int>(n);
    kind = next("action");
  }

  if (kind == "pass") {
    rec.move = Move::pass();
  } else {
    MoveKind mk;
    if (kind == "place_white") {
      mk = MoveKind::PlaceWhite;
    } else if (kind == "place_black") {
      mk = MoveKind::PlaceBlack;
    } else if (kind == "blacken") {
      mk = MoveKind::Blacken;
    } else {
      bad("unknown action '" + std::string(kind) + "'");
    }
    const uint64_t col = number(next("column"), "column");
    const uint64_t row = number(next("row"), "row");
    if (row >= static_cast<uint64_t>(kMaxBoardRows)) bad("row out of range");
    rec.move = Move{mk, Cell{col, static_cast<int>(row)}};
  }
  if (i != tokens.size()) bad("trailing tokens after action");
  return rec;
}

std::string format_weight_record(const WeightRecord& record) {
  std::string out = std::to_string(record.batch);
  out += record.actor == WeightActor::Alice ? " A " : " Bob ";
  const WeightMove& m = record.move;
  switch (m.kind) {
    case WeightMoveKind::Pass:
      out += "pass";
      break;
    case WeightMoveKind::RaiseA:
      out += "raise_a " + std::to_string(m.target) + " " + format_rational(m.value);
      break;
    case WeightMoveKind::RaiseB:
      out += "raise_b " + std::to_string(m.target) + " " + format_rational(m.value);
      break;
    case WeightMoveKind::Disable:
      out += "disable " + std::to_string(m.target);
      break;
  }
  return out;
}

WeightRecord parse_weight_record(std::string_view line) {
  auto tokens = split_tokens(line);
  size_t i = 0;
  auto next = [&](const char* field) -> std::string_view {
    if (i >= tokens.size()) bad(std::string("missing ") + field);
    return tokens[i++];
  };

  WeightRecord rec;
  rec.batch = number(next("batch"), "batch");
  std::string_view who = next("actor");
  if (who == "A") {
    rec.actor = WeightActor::Alice;
  } else if (who == "Bob") {
    rec.actor = WeightActor::Bob;
  } else {
    bad("bad actor '" + std::string(who) + "'");
  }

  std::string_view kind = next("action");
  if (kind == "pass") {
    rec.move = WeightMove::pass();
  } else if (kind == "raise_a" || kind == "raise_b") {
    const uint64_t target = number(next("target"), "target");
    Rational value = parse_rational(next("value"));
    rec.move = kind == "raise_a" ? WeightMove::raise_a(target, std::move(value))
                                 : WeightMove::raise_b(target, std::move(value));
  } else if (kind == "disable") {
    rec.move = WeightMove::disable(number(next("element"), "element"));
  } else {
    bad("unknown action '" + std::string(kind) + "'");
  }
  if (i != tokens.size()) bad("trailing tokens after action");
  return rec;
}

std::string format_verdict(const Verdict& v) {
  switch (v.outcome) {
    case Outcome::WhiteWins: {
      std::string out = "verdict WhiteWins";
      for (const Cell& c : v.witnesses) {
        out += " " + std::to_string(c.column) + ":" + std::to_string(c.row);
      }
      return out;
    }
    case Outcome::BlackWins:
      return "verdict BlackWins";
    case Outcome::RuleViolation:
      return "verdict RuleViolation " + std::string(to_string(v.culprit)) + " " +
             std::string(to_string(v.reason));
  }
  return "verdict ?";
}

std::string format_weight_verdict(const WeightVerdict& v) {
  switch (v.outcome) {
    case WeightOutcome::AliceWins:
      return "verdict AliceWins " + std::to_string(v.witness);
    case WeightOutcome::BobWins:
      return "verdict BobWins";
    case WeightOutcome::RuleViolation:
      return "verdict RuleViolation " + std::string(to_string(v.culprit)) + " " +
             std::string(to_string(v.reason));
  }
  return "verdict ?";
}

std::string join_counts(const std::vector<uint64_t>& counts) {
  std::string out;
  for (size_t i = 0; i < counts.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(counts[i]);
  }
  return out;
}

std::vector<std::string> board_footer(const BoardState& state, const Verdict& v) {
  uint64_t blackened = state.blackened().size();
  return {format_verdict(v), "state white=" + join_counts(state.white_per_row()) +
                                 " black=" + join_counts(state.black_per_row()) +
                                 " blackened=" + std::to_string(blackened)};
}

std::vector<std::string> weight_footer(const WeightState& state, const WeightVerdict& v) {
  return {format_weight_verdict(v), "state a_total=" + format_rational(state.a_total()) +
                                        " b_total=" + format_rational(state.b_total()) +
                                        " disabled=" + std::to_string(state.disabled_count())};
}

}  // namespace kgame
