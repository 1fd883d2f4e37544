#pragma once

// Resource-bounded upper approximations of plain and prefix-free complexity
// on the reference machine, by dovetailing: stage t runs every program of
// length <= t for min(t, step_cap) steps. Bounds only ever decrease.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kgame/bits.hpp"
#include "kgame/machine.hpp"
#include "kgame/rational.hpp"

namespace kgame {

class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LabConfig {
  int max_len = 12;       // unconditional programs, both disciplines
  int cond_max_len = 2;   // plain programs run against each non-empty condition
  uint64_t step_cap = 64;
  std::vector<BitString> conditions;  // non-empty; the empty condition always runs
  bool plain = true;
  bool prefix = true;
  uint64_t work_budget = uint64_t{1} << 34;  // steps per stage, upper estimate
};

struct ProgramRecord {
  BitString program;
  BitString condition;
  BitString output;
  uint64_t steps = 0;
  Discipline discipline = Discipline::Plain;
  uint64_t stage = 0;
};

class ApproxTable {
 public:
  explicit ApproxTable(LabConfig config);

  const LabConfig& config() const { return config_; }
  uint64_t stage() const { return stage_; }

  // First stage from which every later stage is a no-op.
  uint64_t limit_stage() const;
  bool saturated() const { return stage_ >= limit_stage(); }

  std::optional<int> plain_bound(const BitString& x, const BitString& y) const;
  std::optional<int> prefix_bound(const BitString& x) const;

  const std::map<std::pair<BitString, BitString>, int>& plain_bounds() const { return plain_; }
  const std::map<BitString, int>& prefix_bounds() const { return prefix_; }

  // Every strictly improving discovery, in stage order.
  const std::vector<ProgramRecord>& discovered() const { return log_; }

  // Sum of 2^-|p| over every distinct halting prefix-free program found.
  const Rational& kraft_accum() const { return kraft_; }

 private:
  friend std::vector<ProgramRecord> dovetail_stage(ApproxTable& table);

  struct Lane {
    Discipline discipline;
    BitString condition;
    int max_len;
    int introduced = -1;  // longest program length already enqueued
    std::vector<BitString> pending;
  };

  LabConfig config_;
  uint64_t stage_ = 0;
  std::vector<Lane> lanes_;
  std::map<std::pair<BitString, BitString>, int> plain_;
  std::map<BitString, int> prefix_;
  std::vector<ProgramRecord> log_;
  Rational kraft_{0};
};

// Advances one stage; returns the strictly improving discoveries of that
// stage sorted by program length, then program, condition, discipline.
// Throws ResourceLimitError (leaving the table unchanged) when the stage's
// estimated work exceeds config.work_budget.
std::vector<ProgramRecord> dovetail_stage(ApproxTable& table);

// Runs stages until saturated.
void run_to_limit(ApproxTable& table);

std::optional<int> approx_plain(const ApproxTable& table, const BitString& x, const BitString& y);
std::optional<int> approx_prefix(const ApproxTable& table, const BitString& x);

inline constexpr int kBruteForceMaxLen = 22;

// Minimal length of a program (<= max_len) that prints x within step_cap
// steps, found by exhaustive enumeration. Throws ResourceLimitError when
// max_len > kBruteForceMaxLen.
std::optional<int> brute_force_C(const BitString& x, const BitString& y, int max_len,
                                 uint64_t step_cap);
std::optional<int> brute_force_K(const BitString& x, int max_len, uint64_t step_cap);

// "stage <t> <discipline> prog=<bits> cond=<bits> out=<bits> steps=<k>"
std::string format_record(const ProgramRecord& record);

}  // namespace kgame
