#pragma once

// The Alice/Bob weight game over a family of finite sets S_0..S_{N-1}.
//
// Alice assigns non-decreasing weights A(s) to elements, Bob assigns
// non-decreasing weights B(j) to whole sets (so every element of S_j carries
// B(j)/#S_j) and may disable elements, but never all of a set. Both totals
// stay <= 1. Alice wins the limit position when some enabled s has
// A(s)/B(s) >= C, reading B(s) = 0 < A(s) as an infinite ratio.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kgame/rational.hpp"

namespace kgame {

struct WeightParams {
  uint64_t c = 1;
  std::vector<uint64_t> set_sizes;
};

// Throws std::invalid_argument on C = 0, no sets, or an empty set.
void validate_params(const WeightParams& params);

// Elements are numbered consecutively: S_0 holds 0..#S_0-1, and so on.
class WeightState {
 public:
  explicit WeightState(WeightParams params);

  const WeightParams& params() const { return params_; }
  size_t set_count() const { return params_.set_sizes.size(); }
  uint64_t element_count() const { return a_.size(); }
  uint64_t set_size(size_t j) const { return params_.set_sizes.at(j); }
  uint64_t set_begin(size_t j) const { return begin_.at(j); }
  size_t set_of(uint64_t element) const;

  const Rational& a(uint64_t element) const { return a_.at(element); }
  const Rational& b(size_t j) const { return b_.at(j); }
  bool disabled(uint64_t element) const { return disabled_.at(element); }
  uint64_t enabled_in_set(size_t j) const { return enabled_.at(j); }
  uint64_t disabled_count() const { return disabled_total_; }
  const Rational& a_total() const { return a_total_; }
  const Rational& b_total() const { return b_total_; }

 private:
  friend class WeightEditor;

  WeightParams params_;
  std::vector<uint64_t> begin_;
  std::vector<Rational> a_;
  std::vector<Rational> b_;
  std::vector<bool> disabled_;
  std::vector<uint64_t> enabled_;
  uint64_t disabled_total_ = 0;
  Rational a_total_{0};
  Rational b_total_{0};
};

WeightState new_weight_game(WeightParams params);

enum class WeightActor { Alice, Bob };

enum class WeightMoveKind { Pass, RaiseA, RaiseB, Disable };

struct WeightMove {
  WeightMoveKind kind = WeightMoveKind::Pass;
  uint64_t target = 0;  // element, or set index for RaiseB
  Rational value{0};

  static WeightMove pass() { return {}; }
  static WeightMove raise_a(uint64_t element, Rational v) {
    return {WeightMoveKind::RaiseA, element, std::move(v)};
  }
  static WeightMove raise_b(uint64_t set, Rational v) {
    return {WeightMoveKind::RaiseB, set, std::move(v)};
  }
  static WeightMove disable(uint64_t element) { return {WeightMoveKind::Disable, element, 0}; }

  friend bool operator==(const WeightMove&, const WeightMove&) = default;
};

enum class WeightReason {
  TotalWeightExceeded,
  DisableWouldEmptySet,
  NonMonotoneWeight,
  WrongActor,
  OutOfRange,
  AlreadyDisabled,
};

struct WeightViolation {
  WeightReason reason;
  std::string detail;
  size_t move = 0;  // position within the batch
};

std::string_view to_string(WeightActor actor);
std::string_view to_string(WeightReason reason);
std::optional<WeightReason> weight_reason_from_string(std::string_view text);

// Checks the batch move by move against the state as it evolves.
std::optional<WeightViolation> validate_weight_moves(const WeightState& state, WeightActor actor,
                                                     const std::vector<WeightMove>& moves);

// Applies the whole batch or nothing; throws std::invalid_argument carrying
// the violation text when validate_weight_moves rejects it.
void apply_weight_moves(WeightState& state, WeightActor actor, const std::vector<WeightMove>& moves);

// Enabled s with A(s) > 0 and A(s) * #S_j >= C * B(j), ascending.
std::vector<uint64_t> ratio_witnesses(const WeightState& state);
bool is_witness(const WeightState& state, uint64_t element);

enum class WeightOutcome { AliceWins, BobWins, RuleViolation };

struct WeightVerdict {
  WeightOutcome outcome = WeightOutcome::BobWins;
  uint64_t witness = 0;
  WeightActor culprit = WeightActor::Alice;
  WeightReason reason = WeightReason::WrongActor;
  std::string detail;

  static WeightVerdict alice_wins(uint64_t witness);
  static WeightVerdict bob_wins();
  static WeightVerdict violation(WeightActor culprit, WeightViolation v);
};

WeightVerdict weight_verdict(const WeightState& state);

}  // namespace kgame
