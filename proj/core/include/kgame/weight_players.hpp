#pragma once

#include <cstdint>
#include <deque>
#include <memory>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "kgame/lab.hpp"
#include "kgame/trace.hpp"
#include "kgame/weight_game.hpp"

namespace kgame {

class WeightPlayer {
 public:
  virtual ~WeightPlayer() = default;
  virtual std::vector<WeightMove> next_moves(const WeightState& state) = 0;
  virtual bool idle() const { return true; }
  virtual std::string name() const = 0;
};

// Number of groups Alice splits every set into: 4C when all sets have the
// same size and that size is a multiple of 4C, 8C otherwise.
uint64_t alice_group_count(const WeightParams& params);

// Splits elements begin..begin+size-1 into min(groups, size) consecutive
// groups whose sizes differ by at most one (larger groups first).
std::vector<std::vector<uint64_t>> split_groups(uint64_t begin, uint64_t size, uint64_t groups);

struct CompletedSet {
  size_t set = 0;
  Rational beta;       // Alice's cumulative spend over completed sets
  Rational alpha;      // 1 - beta
  Rational bob_total;  // Bob's total weight when the set was left
};

// Alice's doubling strategy. Inside set j with budget alpha on entry she
// gives group g the weight alpha * 2^g / 2^M (M = group count), spread
// evenly over its members. A group whose members are all disabled sends her
// to the next group; a group with enabled members but no witness means Bob
// paid by weight, and she books the set and moves to the next one.
class AliceStrategy : public WeightPlayer {
 public:
  std::vector<WeightMove> next_moves(const WeightState& state) override;
  std::string name() const override { return "alice"; }

  const std::vector<CompletedSet>& completed() const { return completed_; }
  size_t current_set() const { return set_; }

 private:
  bool started_ = false;
  size_t set_ = 0;
  size_t group_ = 0;
  bool raised_ = false;
  Rational alpha_{1};
  Rational spent_{0};
  std::vector<std::vector<uint64_t>> groups_;
  std::vector<CompletedSet> completed_;

  void enter_set(const WeightState& state, size_t j);
};

class ScriptedWeightPlayer : public WeightPlayer {
 public:
  explicit ScriptedWeightPlayer(std::vector<std::vector<WeightMove>> batches)
      : batches_(std::move(batches)) {}
  std::vector<WeightMove> next_moves(const WeightState& state) override;
  std::string name() const override { return "scripted"; }

 private:
  std::vector<std::vector<WeightMove>> batches_;
  size_t pos_ = 0;
};

// Bob's quantum for "just enough" raises: 2^-48.
inline constexpr int kBobQuantumBits = 48;

// Smallest multiple of 2^-48 for B(j) that leaves none of the given
// enabled elements of set j a witness.
Rational minimal_defeating_value(const WeightState& state, size_t j,
                                 const std::vector<uint64_t>& elements);

// Disables witnesses while the set keeps another enabled element, then
// raises B(j) to the minimal defeating value for whatever is left.
class GreedyDisabler : public WeightPlayer {
 public:
  std::vector<WeightMove> next_moves(const WeightState& state) override;
  std::string name() const override { return "disabler"; }
};

// Never disables: raises B(j) to the minimal defeating value of every set
// holding a witness, while the total allows.
class WeightMatcher : public WeightPlayer {
 public:
  std::vector<WeightMove> next_moves(const WeightState& state) override;
  std::string name() const override { return "matcher"; }
};

// Per set with witnesses: pass with probability 1/4, otherwise a coin
// decides between disabling (as far as allowed) and matching.
class RandomBob : public WeightPlayer {
 public:
  explicit RandomBob(uint64_t seed) : rng_(seed) {}
  std::vector<WeightMove> next_moves(const WeightState& state) override;
  std::string name() const override { return "random"; }

 private:
  std::mt19937_64 rng_;
};

// Sets are all strings of lengths base_len+1 .. base_len+N (base_len =
// log2(8C)), element e of set j being the string of that length with value
// e - begin(j). Each turn runs one lab stage; when the prefix bound of the
// integer n = base_len+1+j drops to l, B(j) is raised to 2^-l (2^-l-n per
// element). Strings x whose plain bound falls below |x| - c are disabled as
// they are found, unless that would empty their set.
struct KolmogorovBobConfig {
  int c = 1;
  LabConfig lab;
};

WeightParams kolmogorov_params(uint64_t c, uint64_t n_sets);
int kolmogorov_base_len(uint64_t c);
KolmogorovBobConfig default_kolmogorov_config(uint64_t c, uint64_t n_sets);

class KolmogorovBob : public WeightPlayer {
 public:
  KolmogorovBob(uint64_t c, uint64_t n_sets);
  KolmogorovBob(uint64_t c, uint64_t n_sets, KolmogorovBobConfig config);
  std::vector<WeightMove> next_moves(const WeightState& state) override;
  bool idle() const override;
  std::string name() const override { return "kolmogorov"; }
  const ApproxTable& table() const { return table_; }

 private:
  uint64_t n_sets_;
  int base_len_;
  int c_;
  ApproxTable table_;
  std::deque<uint64_t> pending_disable_;
};

// random | disabler | matcher | kolmogorov (the last needs kolmogorov_params).
std::unique_ptr<WeightPlayer> make_bob(std::string_view name, const WeightParams& params,
                                       uint64_t seed);

struct WeightLimits {
  uint64_t max_batches = 0;  // 0: 64 * element count
  int quiescence_rounds = 2;
};

struct WeightMatchResult {
  WeightState final;
  WeightVerdict verdict;
  MatchTrace trace;
  uint64_t batches = 0;
  bool quiescent = false;
};

// Alternating batches, Alice first. Ends after quiescence_rounds rounds in
// which both batches are empty and both players idle, or at max_batches.
WeightMatchResult play_weight_match(const WeightParams& params, WeightPlayer& alice,
                                    WeightPlayer& bob, const WeightLimits& limits);

}  // namespace kgame
