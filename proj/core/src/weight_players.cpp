#include "kgame/weight_players.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "kgame/bits.hpp"
#include "kgame/record_format.hpp"

namespace kgame {

namespace {

// Witnesses grouped by set, sets ascending.
std::map<size_t, std::vector<uint64_t>> witnesses_by_set(const WeightState& state) {
  std::map<size_t, std::vector<uint64_t>> out;
  for (uint64_t e : ratio_witnesses(state)) out[state.set_of(e)].push_back(e);
  return out;
}

int ceil_log2(uint64_t v) {
  int k = 0;
  while ((uint64_t{1} << k) < v) ++k;
  return k;
}

// Appends a RaiseB defeating `elements` when Bob can afford it.
void match_set(const WeightState& state, size_t j, const std::vector<uint64_t>& elements,
               Rational& b_total, std::vector<WeightMove>& out) {
  if (elements.empty()) return;
  Rational v = minimal_defeating_value(state, j, elements);
  Rational after = b_total - state.b(j) + v;
  if (v > state.b(j) && after <= 1) {
    b_total = after;
    out.push_back(WeightMove::raise_b(j, v));
  }
}

void disable_then_match(const WeightState& state, size_t j, const std::vector<uint64_t>& witnesses,
                        Rational& b_total, std::vector<WeightMove>& out) {
  uint64_t enabled = state.enabled_in_set(j);
  std::vector<uint64_t> left;
  for (uint64_t e : witnesses) {
    if (enabled > 1) {
      out.push_back(WeightMove::disable(e));
      --enabled;
    } else {
      left.push_back(e);
    }
  }
  match_set(state, j, left, b_total, out);
}

}  // namespace

uint64_t alice_group_count(const WeightParams& params) {
  const uint64_t four = 4 * params.c;
  const auto& sizes = params.set_sizes;
  const bool equal = std::all_of(sizes.begin(), sizes.end(),
                                 [&](uint64_t s) { return s == sizes.front(); });
  if (equal && !sizes.empty() && sizes.front() % four == 0) return four;
  return 8 * params.c;
}

std::vector<std::vector<uint64_t>> split_groups(uint64_t begin, uint64_t size, uint64_t groups) {
  const uint64_t g = std::min(groups, size);
  std::vector<std::vector<uint64_t>> out(g);
  uint64_t next = begin;
  for (uint64_t i = 0; i < g; ++i) {
    const uint64_t len = size / g + (i < size % g ? 1 : 0);
    for (uint64_t k = 0; k < len; ++k) out[i].push_back(next++);
  }
  return out;
}

void AliceStrategy::enter_set(const WeightState& state, size_t j) {
  set_ = j;
  group_ = 0;
  raised_ = false;
  spent_ = 0;
  alpha_ = 1 - state.a_total();
  if (j < state.set_count()) {
    groups_ = split_groups(state.set_begin(j), state.set_size(j),
                           alice_group_count(state.params()));
  } else {
    groups_.clear();
  }
}

std::vector<WeightMove> AliceStrategy::next_moves(const WeightState& state) {
  if (!started_) {
    started_ = true;
    enter_set(state, 0);
  }
  const int m = static_cast<int>(alice_group_count(state.params()));
  while (set_ < state.set_count()) {
    if (group_ >= groups_.size()) return {};
    const auto& group = groups_[group_];
    const bool any_enabled =
        std::any_of(group.begin(), group.end(), [&](uint64_t e) { return !state.disabled(e); });

    if (!raised_) {
      if (!any_enabled) {
        ++group_;
        continue;
      }
      const Rational w = alpha_ * pow2(static_cast<int>(group_)) * pow2_neg(m);
      const Rational each = w / static_cast<uint64_t>(group.size());
      std::vector<WeightMove> moves;
      for (uint64_t e : group) moves.push_back(WeightMove::raise_a(e, state.a(e) + each));
      spent_ += w;
      raised_ = true;
      return moves;
    }

    if (!any_enabled) {
      ++group_;
      raised_ = false;
      continue;
    }
    if (std::any_of(group.begin(), group.end(),
                    [&](uint64_t e) { return is_witness(state, e); })) {
      return {};
    }
    Rational beta = state.a_total();
    completed_.push_back({set_, beta, 1 - beta, state.b_total()});
    enter_set(state, set_ + 1);
  }
  return {};
}

std::vector<WeightMove> ScriptedWeightPlayer::next_moves(const WeightState&) {
  if (pos_ >= batches_.size()) return {};
  return batches_[pos_++];
}

Rational minimal_defeating_value(const WeightState& state, size_t j,
                                 const std::vector<uint64_t>& elements) {
  Rational top = 0;
  for (uint64_t e : elements) top = std::max(top, state.a(e));
  Rational threshold = top * state.set_size(j) / state.params().c;
  return next_dyadic_above(threshold, kBobQuantumBits);
}

std::vector<WeightMove> GreedyDisabler::next_moves(const WeightState& state) {
  std::vector<WeightMove> out;
  Rational b_total = state.b_total();
  for (const auto& [j, ws] : witnesses_by_set(state)) disable_then_match(state, j, ws, b_total, out);
  return out;
}

std::vector<WeightMove> WeightMatcher::next_moves(const WeightState& state) {
  std::vector<WeightMove> out;
  Rational b_total = state.b_total();
  for (const auto& [j, ws] : witnesses_by_set(state)) match_set(state, j, ws, b_total, out);
  return out;
}

std::vector<WeightMove> RandomBob::next_moves(const WeightState& state) {
  std::vector<WeightMove> out;
  Rational b_total = state.b_total();
  std::uniform_int_distribution<int> d4(0, 3);
  for (const auto& [j, ws] : witnesses_by_set(state)) {
    const int roll = d4(rng_);
    if (roll == 0) continue;
    if (roll == 1) {
      disable_then_match(state, j, ws, b_total, out);
    } else {
      match_set(state, j, ws, b_total, out);
    }
  }
  return out;
}

int kolmogorov_base_len(uint64_t c) { return ceil_log2(8 * c); }

WeightParams kolmogorov_params(uint64_t c, uint64_t n_sets) {
  if (c == 0 || n_sets == 0) throw std::invalid_argument("C and N must be positive");
  const int base = kolmogorov_base_len(c);
  if (base + static_cast<int>(n_sets) > 20) {
    throw std::invalid_argument("string lengths above 20 are not supported");
  }
  WeightParams p;
  p.c = c;
  for (uint64_t j = 0; j < n_sets; ++j) p.set_sizes.push_back(uint64_t{1} << (base + 1 + j));
  return p;
}

KolmogorovBobConfig default_kolmogorov_config(uint64_t c, uint64_t /*n_sets*/) {
  KolmogorovBobConfig config;
  // Long enough for the self-delimiting literal of the smallest length
  // index, so at least one raise is found; capped to keep stages cheap.
  const auto lo = static_cast<uint64_t>(kolmogorov_base_len(c)) + 1;
  const auto literal = literal_program(BitString::from_integer(lo), Discipline::PrefixFree).size();
  config.lab.max_len = std::min(14, static_cast<int>(literal));
  config.lab.cond_max_len = 0;
  config.lab.step_cap = 64;
  return config;
}

KolmogorovBob::KolmogorovBob(uint64_t c, uint64_t n_sets)
    : KolmogorovBob(c, n_sets, default_kolmogorov_config(c, n_sets)) {}

KolmogorovBob::KolmogorovBob(uint64_t c, uint64_t n_sets, KolmogorovBobConfig config)
    : n_sets_(n_sets),
      base_len_(kolmogorov_base_len(c)),
      c_(config.c),
      table_(std::move(config.lab)) {}

std::vector<WeightMove> KolmogorovBob::next_moves(const WeightState& state) {
  const uint64_t lo = static_cast<uint64_t>(base_len_) + 1;
  const uint64_t hi = static_cast<uint64_t>(base_len_) + n_sets_;
  std::map<size_t, Rational> raises;

  if (!table_.saturated()) {
    for (const ProgramRecord& rec : dovetail_stage(table_)) {
      if (!rec.condition.empty()) continue;
      if (rec.discipline == Discipline::PrefixFree) {
        auto n = rec.output.as_integer();
        if (!n || *n < lo || *n > hi) continue;
        const auto j = static_cast<size_t>(*n - lo);
        Rational target = pow2_neg(static_cast<int>(rec.program.size()));
        auto [it, fresh] = raises.try_emplace(j, state.b(j));
        it->second = std::max(it->second, target);
      } else {
        const uint64_t len = rec.output.size();
        if (len < lo || len > hi) continue;
        if (static_cast<int>(rec.program.size()) + c_ >= static_cast<int>(len)) continue;
        const auto j = static_cast<size_t>(len - lo);
        pending_disable_.push_back(state.set_begin(j) + *rec.output.value());
      }
    }
  }

  std::vector<WeightMove> out;
  Rational b_total = state.b_total();
  for (auto& [j, v] : raises) {
    if (v <= state.b(j)) continue;
    const Rational room = 1 - b_total;
    Rational capped = std::min(v, state.b(j) + room);
    if (capped <= state.b(j)) continue;
    b_total += capped - state.b(j);
    out.push_back(WeightMove::raise_b(j, capped));
  }

  std::map<size_t, uint64_t> enabled;
  std::set<uint64_t> disabling;
  while (!pending_disable_.empty()) {
    const uint64_t e = pending_disable_.front();
    pending_disable_.pop_front();
    if (state.disabled(e) || disabling.contains(e)) continue;
    const size_t j = state.set_of(e);
    auto [it, fresh] = enabled.try_emplace(j, state.enabled_in_set(j));
    if (it->second <= 1) continue;
    --it->second;
    disabling.insert(e);
    out.push_back(WeightMove::disable(e));
  }
  return out;
}

bool KolmogorovBob::idle() const { return table_.saturated() && pending_disable_.empty(); }

std::unique_ptr<WeightPlayer> make_bob(std::string_view name, const WeightParams& params,
                                       uint64_t seed) {
  if (name == "disabler") return std::make_unique<GreedyDisabler>();
  if (name == "matcher") return std::make_unique<WeightMatcher>();
  if (name == "random") return std::make_unique<RandomBob>(seed);
  if (name == "kolmogorov") {
    const uint64_t n = params.set_sizes.size();
    if (params.set_sizes != kolmogorov_params(params.c, n).set_sizes) {
      throw std::invalid_argument("kolmogorov Bob needs sets of all strings of each length");
    }
    return std::make_unique<KolmogorovBob>(params.c, n);
  }
  throw std::invalid_argument("unknown Bob strategy '" + std::string(name) + "'");
}

WeightMatchResult play_weight_match(const WeightParams& params, WeightPlayer& alice,
                                    WeightPlayer& bob, const WeightLimits& limits) {
  if (limits.quiescence_rounds < 1) throw std::invalid_argument("quiescence_rounds must be >= 1");
  WeightMatchResult result{WeightState(params), WeightVerdict::bob_wins(), {}, 0, false};
  WeightState& state = result.final;
  const uint64_t max_batches =
      limits.max_batches ? limits.max_batches : 64 * state.element_count();

  MatchTrace& trace = result.trace;
  trace.game = "weights";
  trace.set_param("c", std::to_string(params.c));
  trace.set_param("sizes", join_counts(params.set_sizes));
  trace.set_param("alice", alice.name());
  trace.set_param("bob", bob.name());

  std::optional<WeightVerdict> violation;
  auto step = [&](WeightActor actor, WeightPlayer& player) -> bool {
    std::vector<WeightMove> moves = player.next_moves(state);
    const uint64_t batch = result.batches++;
    if (moves.empty()) {
      trace.records.push_back(format_weight_record({batch, actor, WeightMove::pass()}));
    }
    for (const WeightMove& m : moves) trace.records.push_back(format_weight_record({batch, actor, m}));
    if (auto v = validate_weight_moves(state, actor, moves)) {
      violation = WeightVerdict::violation(actor, std::move(*v));
      return false;
    }
    apply_weight_moves(state, actor, moves);
    return std::any_of(moves.begin(), moves.end(), [](const WeightMove& m) {
      return m.kind != WeightMoveKind::Pass;
    });
  };

  int quiet = 0;
  while (result.batches < max_batches) {
    const bool a_moved = step(WeightActor::Alice, alice);
    if (violation || result.batches >= max_batches) break;
    const bool b_moved = step(WeightActor::Bob, bob);
    if (violation) break;
    const bool quiet_round = !a_moved && !b_moved && alice.idle() && bob.idle();
    quiet = quiet_round ? quiet + 1 : 0;
    if (quiet >= limits.quiescence_rounds) {
      result.quiescent = true;
      break;
    }
  }

  result.verdict = violation ? *violation : weight_verdict(state);
  trace.footer = weight_footer(state, result.verdict);
  return result;
}

}  // namespace kgame
