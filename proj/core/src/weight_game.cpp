#include "kgame/weight_game.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace kgame {

void validate_params(const WeightParams& params) {
  if (params.c == 0) throw std::invalid_argument("C must be positive");
  if (params.set_sizes.empty()) throw std::invalid_argument("at least one set is required");
  for (size_t j = 0; j < params.set_sizes.size(); ++j) {
    if (params.set_sizes[j] == 0) {
      throw std::invalid_argument("set " + std::to_string(j) + " is empty");
    }
  }
}

WeightState::WeightState(WeightParams params) : params_(std::move(params)) {
  validate_params(params_);
  uint64_t total = 0;
  for (uint64_t size : params_.set_sizes) {
    begin_.push_back(total);
    total += size;
  }
  a_.assign(total, Rational(0));
  b_.assign(params_.set_sizes.size(), Rational(0));
  disabled_.assign(total, false);
  enabled_ = params_.set_sizes;
}

size_t WeightState::set_of(uint64_t element) const {
  if (element >= a_.size()) throw std::out_of_range("element out of range");
  auto it = std::upper_bound(begin_.begin(), begin_.end(), element);
  return static_cast<size_t>(it - begin_.begin()) - 1;
}

WeightState new_weight_game(WeightParams params) { return WeightState(std::move(params)); }

// Sole writer of WeightState; used after validation.
class WeightEditor {
 public:
  static void apply(WeightState& s, const WeightMove& m) {
    switch (m.kind) {
      case WeightMoveKind::Pass:
        break;
      case WeightMoveKind::RaiseA:
        s.a_total_ += m.value - s.a_[m.target];
        s.a_[m.target] = m.value;
        break;
      case WeightMoveKind::RaiseB:
        s.b_total_ += m.value - s.b_[m.target];
        s.b_[m.target] = m.value;
        break;
      case WeightMoveKind::Disable:
        s.disabled_[m.target] = true;
        --s.enabled_[s.set_of(m.target)];
        ++s.disabled_total_;
        break;
    }
  }
};

namespace {

constexpr std::array<std::pair<WeightReason, std::string_view>, 6> kReasonNames{{
    {WeightReason::TotalWeightExceeded, "TotalWeightExceeded"},
    {WeightReason::DisableWouldEmptySet, "DisableWouldEmptySet"},
    {WeightReason::NonMonotoneWeight, "NonMonotoneWeight"},
    {WeightReason::WrongActor, "WrongActor"},
    {WeightReason::OutOfRange, "OutOfRange"},
    {WeightReason::AlreadyDisabled, "AlreadyDisabled"},
}};

std::optional<WeightViolation> check(const WeightState& s, WeightActor actor, const WeightMove& m) {
  auto fail = [](WeightReason r, std::string detail) {
    return WeightViolation{r, std::move(detail), 0};
  };
  switch (m.kind) {
    case WeightMoveKind::Pass:
      return std::nullopt;
    case WeightMoveKind::RaiseA: {
      if (actor != WeightActor::Alice) return fail(WeightReason::WrongActor, "only Alice raises A");
      if (m.target >= s.element_count()) {
        return fail(WeightReason::OutOfRange, "no element " + std::to_string(m.target));
      }
      const Rational& cur = s.a(m.target);
      if (m.value <= cur) {
        return fail(WeightReason::NonMonotoneWeight,
                    "A(" + std::to_string(m.target) + ") must exceed " + format_rational(cur));
      }
      if (s.a_total() - cur + m.value > 1) {
        return fail(WeightReason::TotalWeightExceeded, "Alice's total would exceed 1");
      }
      return std::nullopt;
    }
    case WeightMoveKind::RaiseB: {
      if (actor != WeightActor::Bob) return fail(WeightReason::WrongActor, "only Bob raises B");
      if (m.target >= s.set_count()) {
        return fail(WeightReason::OutOfRange, "no set " + std::to_string(m.target));
      }
      const Rational& cur = s.b(static_cast<size_t>(m.target));
      if (m.value <= cur) {
        return fail(WeightReason::NonMonotoneWeight,
                    "B(" + std::to_string(m.target) + ") must exceed " + format_rational(cur));
      }
      if (s.b_total() - cur + m.value > 1) {
        return fail(WeightReason::TotalWeightExceeded, "Bob's total would exceed 1");
      }
      return std::nullopt;
    }
    case WeightMoveKind::Disable: {
      if (actor != WeightActor::Bob) return fail(WeightReason::WrongActor, "only Bob disables");
      if (m.target >= s.element_count()) {
        return fail(WeightReason::OutOfRange, "no element " + std::to_string(m.target));
      }
      if (s.disabled(m.target)) {
        return fail(WeightReason::AlreadyDisabled,
                    "element " + std::to_string(m.target) + " is already disabled");
      }
      const size_t j = s.set_of(m.target);
      if (s.enabled_in_set(j) <= 1) {
        return fail(WeightReason::DisableWouldEmptySet,
                    "set " + std::to_string(j) + " would have no enabled element");
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

}  // namespace

std::string_view to_string(WeightActor actor) {
  return actor == WeightActor::Alice ? "Alice" : "Bob";
}

std::string_view to_string(WeightReason reason) {
  for (const auto& [r, name] : kReasonNames) {
    if (r == reason) return name;
  }
  return "Unknown";
}

std::optional<WeightReason> weight_reason_from_string(std::string_view text) {
  for (const auto& [r, name] : kReasonNames) {
    if (name == text) return r;
  }
  return std::nullopt;
}

std::optional<WeightViolation> validate_weight_moves(const WeightState& state, WeightActor actor,
                                                     const std::vector<WeightMove>& moves) {
  WeightState scratch = state;
  for (size_t i = 0; i < moves.size(); ++i) {
    if (auto v = check(scratch, actor, moves[i])) {
      v->move = i;
      return v;
    }
    WeightEditor::apply(scratch, moves[i]);
  }
  return std::nullopt;
}

void apply_weight_moves(WeightState& state, WeightActor actor,
                        const std::vector<WeightMove>& moves) {
  WeightState next = state;
  for (size_t i = 0; i < moves.size(); ++i) {
    if (auto v = check(next, actor, moves[i])) {
      throw std::invalid_argument(std::string(to_string(v->reason)) + ": " + v->detail);
    }
    WeightEditor::apply(next, moves[i]);
  }
  state = std::move(next);
}

bool is_witness(const WeightState& state, uint64_t element) {
  if (state.disabled(element)) return false;
  const Rational& a = state.a(element);
  if (a <= 0) return false;
  const size_t j = state.set_of(element);
  return a * state.set_size(j) >= state.b(j) * state.params().c;
}

std::vector<uint64_t> ratio_witnesses(const WeightState& state) {
  std::vector<uint64_t> out;
  for (uint64_t e = 0; e < state.element_count(); ++e) {
    if (is_witness(state, e)) out.push_back(e);
  }
  return out;
}

WeightVerdict WeightVerdict::alice_wins(uint64_t witness) {
  WeightVerdict v;
  v.outcome = WeightOutcome::AliceWins;
  v.witness = witness;
  return v;
}

WeightVerdict WeightVerdict::bob_wins() { return {}; }

WeightVerdict WeightVerdict::violation(WeightActor culprit, WeightViolation violation) {
  WeightVerdict v;
  v.outcome = WeightOutcome::RuleViolation;
  v.culprit = culprit;
  v.reason = violation.reason;
  v.detail = std::move(violation.detail);
  return v;
}

WeightVerdict weight_verdict(const WeightState& state) {
  for (uint64_t e = 0; e < state.element_count(); ++e) {
    if (is_witness(state, e)) return WeightVerdict::alice_wins(e);
  }
  return WeightVerdict::bob_wins();
}

}  // namespace kgame
