#pragma once

// Move records and footers of the board, arena and weight-game traces.
//
//   board:   <k> <W|B> [@<n>] pass | place_white|place_black|blacken <col> <row>
//   weights: <batch> <A|Bob> pass | raise_a <elem> <num/den>
//                               | raise_b <set> <num/den> | disable <elem>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kgame/board.hpp"
#include "kgame/weight_game.hpp"

namespace kgame {

struct BoardRecord {
  uint64_t index = 0;
  Player player = Player::White;
  std::optional<int> board;
  Move move;
};

std::string format_board_record(const BoardRecord& record);
// Throws std::invalid_argument describing the first malformed token.
BoardRecord parse_board_record(std::string_view line);

struct WeightRecord {
  uint64_t batch = 0;
  WeightActor actor = WeightActor::Alice;
  WeightMove move;
};

std::string format_weight_record(const WeightRecord& record);
WeightRecord parse_weight_record(std::string_view line);

std::string format_verdict(const Verdict& v);
std::string format_weight_verdict(const WeightVerdict& v);

std::string join_counts(const std::vector<uint64_t>& counts);

// "verdict ..." then "state white=<row counts> black=<row counts> blackened=<total>".
std::vector<std::string> board_footer(const BoardState& state, const Verdict& v);

std::vector<std::string> weight_footer(const WeightState& state, const WeightVerdict& v);

}  // namespace kgame
