#include "kgame/lab.hpp"

#include <algorithm>
#include <tuple>

namespace kgame {

ApproxTable::ApproxTable(LabConfig config) : config_(std::move(config)) {
  if (config_.max_len < 0 || config_.cond_max_len < 0) {
    throw std::invalid_argument("lab: program length caps must be non-negative");
  }
  if (config_.step_cap < 1) throw std::invalid_argument("lab: step_cap must be >= 1");
  if (config_.plain) {
    lanes_.push_back({Discipline::Plain, BitString{}, config_.max_len, -1, {}});
    for (const auto& y : config_.conditions) {
      if (y.empty()) continue;
      lanes_.push_back({Discipline::Plain, y, config_.cond_max_len, -1, {}});
    }
  }
  if (config_.prefix) {
    lanes_.push_back({Discipline::PrefixFree, BitString{}, config_.max_len, -1, {}});
  }
}

uint64_t ApproxTable::limit_stage() const {
  uint64_t longest = 0;
  for (const auto& lane : lanes_) longest = std::max<uint64_t>(longest, lane.max_len);
  return std::max<uint64_t>(longest, config_.step_cap);
}

std::optional<int> ApproxTable::plain_bound(const BitString& x, const BitString& y) const {
  auto it = plain_.find({x, y});
  if (it == plain_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> ApproxTable::prefix_bound(const BitString& x) const {
  auto it = prefix_.find(x);
  if (it == prefix_.end()) return std::nullopt;
  return it->second;
}

std::vector<ProgramRecord> dovetail_stage(ApproxTable& table) {
  const uint64_t t = table.stage_ + 1;
  const uint64_t budget = std::min<uint64_t>(t, table.config_.step_cap);

  // Work estimate before touching any state.
  uint64_t estimate = 0;
  for (const auto& lane : table.lanes_) {
    const int target = static_cast<int>(std::min<uint64_t>(t, lane.max_len));
    uint64_t programs = lane.pending.size();
    for (int len = lane.introduced + 1; len <= target; ++len) programs += uint64_t{1} << len;
    estimate += programs * budget;
  }
  if (estimate > table.config_.work_budget) {
    throw ResourceLimitError("dovetail stage " + std::to_string(t) + " needs ~" +
                             std::to_string(estimate) + " steps, budget is " +
                             std::to_string(table.config_.work_budget));
  }

  std::vector<ProgramRecord> fresh;
  for (auto& lane : table.lanes_) {
    const int target = static_cast<int>(std::min<uint64_t>(t, lane.max_len));
    for (int len = lane.introduced + 1; len <= target; ++len) {
      auto programs = all_strings(len);
      lane.pending.insert(lane.pending.end(), programs.begin(), programs.end());
    }
    lane.introduced = std::max(lane.introduced, target);

    std::vector<BitString> still_running;
    for (const auto& p : lane.pending) {
      RunOutcome r = run_program(lane.discipline, p, lane.condition, budget);
      if (r.status == RunStatus::OutOfBudget) {
        still_running.push_back(p);
        continue;
      }
      if (!r.halted()) continue;

      const int len = static_cast<int>(p.size());
      bool improved = false;
      if (lane.discipline == Discipline::Plain) {
        auto [it, inserted] = table.plain_.try_emplace({r.output, lane.condition}, len);
        if (inserted || len < it->second) {
          it->second = len;
          improved = true;
        }
      } else {
        table.kraft_ += pow2_neg(len);
        auto [it, inserted] = table.prefix_.try_emplace(r.output, len);
        if (inserted || len < it->second) {
          it->second = len;
          improved = true;
        }
      }
      if (improved) {
        fresh.push_back({p, lane.condition, r.output, r.steps, lane.discipline, t});
      }
    }
    lane.pending = std::move(still_running);
  }

  // Within one lane programs run in shortlex order, so the first hit for an
  // output is already minimal; a later equal-length hit never improves.
  std::sort(fresh.begin(), fresh.end(), [](const ProgramRecord& a, const ProgramRecord& b) {
    if (a.program.size() != b.program.size()) return a.program.size() < b.program.size();
    return std::tie(a.program, a.condition, a.discipline) <
           std::tie(b.program, b.condition, b.discipline);
  });
  table.log_.insert(table.log_.end(), fresh.begin(), fresh.end());
  table.stage_ = t;
  return fresh;
}

void run_to_limit(ApproxTable& table) {
  while (!table.saturated()) dovetail_stage(table);
}

std::optional<int> approx_plain(const ApproxTable& table, const BitString& x, const BitString& y) {
  return table.plain_bound(x, y);
}

std::optional<int> approx_prefix(const ApproxTable& table, const BitString& x) {
  return table.prefix_bound(x);
}

namespace {

std::optional<int> brute_force(Discipline d, const BitString& x, const BitString& y, int max_len,
                               uint64_t step_cap) {
  if (max_len > kBruteForceMaxLen) {
    throw ResourceLimitError("brute force limited to programs of length " +
                             std::to_string(kBruteForceMaxLen));
  }
  for (int len = 0; len <= max_len; ++len) {
    for (uint64_t v = 0; v < (uint64_t{1} << len); ++v) {
      RunOutcome r = run_program(d, BitString::from_value(v, len), y, step_cap);
      if (r.halted() && r.output == x) return len;
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<int> brute_force_C(const BitString& x, const BitString& y, int max_len,
                                 uint64_t step_cap) {
  return brute_force(Discipline::Plain, x, y, max_len, step_cap);
}

std::optional<int> brute_force_K(const BitString& x, int max_len, uint64_t step_cap) {
  return brute_force(Discipline::PrefixFree, x, BitString{}, max_len, step_cap);
}

std::string format_record(const ProgramRecord& r) {
  return "stage " + std::to_string(r.stage) + " " + std::string(to_string(r.discipline)) +
         " prog=" + r.program.str() + " cond=" + r.condition.str() + " out=" + r.output.str() +
         " steps=" + std::to_string(r.steps);
}

}  // namespace kgame
