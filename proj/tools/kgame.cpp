// kgame: run board matches, arenas, weight games and lab stages; verify traces.
//
// Exit codes: 0 success, 1 rule violation, 2 acceptance/invariant failure,
// 64 usage error.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "kgame/arena.hpp"
#include "kgame/bits.hpp"
#include "kgame/lab.hpp"
#include "kgame/machine.hpp"
#include "kgame/record_format.hpp"
#include "kgame/strategies.hpp"
#include "kgame/trace.hpp"
#include "kgame/verify.hpp"
#include "kgame/weight_game.hpp"
#include "kgame/weight_players.hpp"

namespace {

using namespace kgame;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitFailure = 2;
constexpr int kExitUsage = 64;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Runs fn(0..count-1) on up to `jobs` threads.
template <typename Fn>
void parallel_for(size_t count, unsigned jobs, Fn fn) {
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(count)));
  if (jobs == 1) {
    for (size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mutex;
  for (unsigned t = 0; t < jobs; ++t) {
    pool.emplace_back([&] {
      for (size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

struct Options {
  unsigned jobs = 1;

  // gn
  int n = 4;
  std::string black = "greedy";
  uint64_t seed = 1;
  uint64_t seeds = 1;
  uint64_t max_moves = 1'000'000;
  int quiescence = 2;
  std::string trace;

  // arena
  int n_min = 1;
  int n_max = 8;
  std::string variant = "plain";
  std::string arena_black = "semicomputable";

  // weights
  uint64_t c = 1;
  std::string sizes;
  std::vector<uint64_t> equal;
  uint64_t kolmogorov_sets = 0;
  std::string bob = "disabler";
  uint64_t max_batches = 0;

  // lab
  uint64_t stages = 0;
  int max_len = 10;
  int cond_max_len = 2;
  uint64_t step_cap = 64;
  std::string cond_pool;
  std::string export_path;
  bool no_prefix = false;
};

std::string verdict_name(const Verdict& v) {
  switch (v.outcome) {
    case Outcome::WhiteWins: return "WhiteWins";
    case Outcome::BlackWins: return "BlackWins";
    case Outcome::RuleViolation: return "RuleViolation";
  }
  return "?";
}

int run_gn(const Options& o) {
  BoardParams params{o.n, true};
  validate_params(params);
  MatchLimits limits{o.max_moves, o.quiescence};
  validate_limits(limits);
  if (o.seeds > 1 && !o.trace.empty()) throw UsageError("--trace needs a single seed");
  make_black(o.black, o.n, o.seed);  // reject unknown names before any work

  std::vector<MatchResult> results;
  results.reserve(o.seeds);
  for (uint64_t i = 0; i < o.seeds; ++i) results.emplace_back(MatchResult{BoardState(params), {}, {}, {}});
  parallel_for(o.seeds, o.jobs, [&](size_t i) {
    StandardWhite white;
    auto black = make_black(o.black, o.n, o.seed + i);
    results[i] = play_match(params, white, *black, limits);
  });

  int code = kExitOk;
  std::cout << "seed       verdict        moves    lowest-row  floor-row  invariant-failures\n";
  for (uint64_t i = 0; i < o.seeds; ++i) {
    const MatchResult& r = results[i];
    std::cout << std::left << std::setw(11) << (o.seed + i) << std::setw(15)
              << verdict_name(r.verdict) << std::setw(9) << r.stats.moves << std::setw(12)
              << (r.stats.lowest_white_row ? std::to_string(*r.stats.lowest_white_row) : "-")
              << std::setw(11) << white_floor_row(o.n) << r.stats.invariant_failures.size()
              << "\n";
    for (const auto& f : r.stats.invariant_failures) std::cout << "  invariant: " << f << "\n";
    if (r.verdict.outcome == Outcome::RuleViolation) {
      std::cout << "  violation: " << to_string(r.verdict.culprit) << " "
                << to_string(r.verdict.reason) << ": " << r.verdict.detail << "\n";
      code = std::max(code, kExitViolation);
    } else if (r.verdict.outcome != Outcome::WhiteWins || !r.stats.invariant_failures.empty() ||
               (r.stats.lowest_white_row && *r.stats.lowest_white_row < white_floor_row(o.n))) {
      code = kExitFailure;
    }
  }
  if (o.seeds == 1) std::cout << "verdict=" << verdict_name(results[0].verdict) << "\n";
  if (!o.trace.empty()) write_trace(results[0].trace, o.trace);
  return code;
}

int run_arena_cmd(const Options& o) {
  auto variant = arena_variant_from_string(o.variant);
  if (!variant) throw UsageError("--variant must be plain or prefix");
  ArenaParams params{o.n_min, o.n_max, *variant};
  validate_params(params);
  MatchLimits limits{o.max_moves, o.quiescence};
  auto black = make_arena_black(o.arena_black, params);
  ArenaResult r = run_arena(params, *black, limits);

  std::cout << "board  verdict\n";
  bool all_white = true;
  for (const auto& [n, v] : r.verdicts) {
    std::cout << std::left << std::setw(7) << n << verdict_name(v) << "\n";
    all_white = all_white && v.outcome == Outcome::WhiteWins;
  }
  std::cout << "\nrow  white-total  white-bound  black-total  black-budget\n";
  for (int i = 0; i < params.n_max; ++i) {
    const auto row = static_cast<size_t>(i);
    std::cout << std::left << std::setw(5) << i << std::setw(13) << r.stats.white_per_row[row]
              << std::setw(13)
              << (params.variant == ArenaVariant::Plain
                      ? std::to_string(plain_white_row_bound(params, i))
                      : std::string("-"))
              << std::setw(13) << r.final.global_black_in_row(i)
              << (params.variant == ArenaVariant::Plain
                      ? std::to_string(BoardState::row_budget(i))
                      : std::string("-"))
              << "\n";
  }
  std::cout << "\nrounds=" << r.stats.rounds << " actions=" << r.stats.actions
            << " rejections=" << r.stats.rejections << "\n";
  std::cout << "black_weight=" << format_rational(r.final.global_black_weight()) << "\n";
  if (params.variant == ArenaVariant::Prefix) {
    std::cout << "max_killed_white_weight=" << format_rational(r.stats.max_killed_white_weight)
              << "\nmax_dead_white_weight=" << format_rational(r.stats.max_dead_white_weight)
              << "\nmax_alive_white_weight=" << format_rational(r.stats.max_alive_white_weight)
              << "\nalive_white_bound=" << format_rational(alive_white_weight_bound(params))
              << "\n";
  }
  for (const auto& f : r.stats.invariant_failures) std::cout << "invariant: " << f << "\n";
  if (!o.trace.empty()) write_trace(r.trace, o.trace);

  if (r.violation) {
    std::cout << "verdict=RuleViolation " << to_string(r.violation->culprit) << " "
              << to_string(r.violation->reason) << ": " << r.violation->detail << "\n";
    return kExitViolation;
  }
  std::cout << "verdict=" << (all_white ? "AllWhiteWins" : "BlackWinsSomewhere") << "\n";
  return all_white && r.stats.invariant_failures.empty() ? kExitOk : kExitFailure;
}

WeightParams weight_params(const Options& o) {
  const int given = (!o.sizes.empty()) + (!o.equal.empty()) + (o.kolmogorov_sets > 0);
  if (given != 1) throw UsageError("give exactly one of --sizes, --equal, --strings");
  if (o.kolmogorov_sets > 0) return kolmogorov_params(o.c, o.kolmogorov_sets);
  WeightParams p;
  p.c = o.c;
  if (!o.equal.empty()) {
    if (o.equal.size() != 2) throw UsageError("--equal takes SIZE COUNT");
    p.set_sizes.assign(o.equal[1], o.equal[0]);
  } else {
    for (const auto& s : split_list(o.sizes)) {
      auto v = parse_u64(s);
      if (!v) throw UsageError("bad set size '" + s + "'");
      p.set_sizes.push_back(*v);
    }
  }
  validate_params(p);
  return p;
}

int run_weights(const Options& o) {
  WeightParams params = weight_params(o);
  if (o.seeds > 1 && !o.trace.empty()) throw UsageError("--trace needs a single seed");
  make_bob(o.bob, params, o.seed);
  WeightLimits limits{o.max_batches, o.quiescence};

  struct Run {
    std::optional<WeightMatchResult> result;
    std::vector<CompletedSet> completed;
  };
  std::vector<Run> runs(o.seeds);
  parallel_for(o.seeds, o.jobs, [&](size_t i) {
    AliceStrategy alice;
    auto bob = make_bob(o.bob, params, o.seed + i);
    runs[i].result = play_weight_match(params, alice, *bob, limits);
    runs[i].completed = alice.completed();
  });

  int code = kExitOk;
  std::cout << "seed       verdict          batches  sets-completed  a_total  b_total\n";
  for (uint64_t i = 0; i < o.seeds; ++i) {
    const auto& r = *runs[i].result;
    std::string name = r.verdict.outcome == WeightOutcome::AliceWins ? "AliceWins"
                       : r.verdict.outcome == WeightOutcome::BobWins ? "BobWins"
                                                                     : "RuleViolation";
    std::cout << std::left << std::setw(11) << (o.seed + i) << std::setw(17) << name
              << std::setw(9) << r.batches << std::setw(16) << runs[i].completed.size()
              << format_rational(r.final.a_total()) << "  " << format_rational(r.final.b_total())
              << "\n";
    for (const auto& s : runs[i].completed) {
      const bool halving = 2 * s.beta < 1 && s.alpha * 2 > 1;
      std::cout << "  set " << s.set << " beta=" << format_rational(s.beta)
                << " alpha=" << format_rational(s.alpha)
                << " bob_total=" << format_rational(s.bob_total)
                << (halving ? "" : "  [2*beta < 1 fails]") << "\n";
      if (!halving) code = std::max(code, kExitFailure);
    }
    if (r.verdict.outcome == WeightOutcome::RuleViolation) {
      std::cout << "  violation: " << to_string(r.verdict.culprit) << " "
                << to_string(r.verdict.reason) << ": " << r.verdict.detail << "\n";
      code = std::max(code, kExitViolation);
    } else if (r.verdict.outcome != WeightOutcome::AliceWins) {
      code = kExitFailure;
    }
  }
  if (o.seeds == 1) {
    const auto& v = runs[0].result->verdict;
    std::cout << "verdict="
              << (v.outcome == WeightOutcome::AliceWins ? "AliceWins"
                  : v.outcome == WeightOutcome::BobWins ? "BobWins"
                                                        : "RuleViolation")
              << "\n";
  }
  if (!o.trace.empty()) write_trace(runs[0].result->trace, o.trace);
  return code;
}

int run_lab(const Options& o) {
  LabConfig config;
  config.max_len = o.max_len;
  config.cond_max_len = o.cond_max_len;
  config.step_cap = o.step_cap;
  config.prefix = !o.no_prefix;
  if (config.max_len < 0 || config.max_len > kBruteForceMaxLen || config.cond_max_len < 0) {
    throw UsageError("--max-len must be in [0, " + std::to_string(kBruteForceMaxLen) + "]");
  }
  if (config.step_cap < 1) throw UsageError("--step-cap must be >= 1");
  for (const auto& s : split_list(o.cond_pool)) {
    if (s.empty()) continue;
    try {
      config.conditions.push_back(BitString::parse(s));
    } catch (const std::invalid_argument&) {
      throw UsageError("bad condition '" + s + "'");
    }
  }

  ApproxTable table(config);
  std::vector<ProgramRecord> log;
  const uint64_t target = o.stages ? o.stages : table.limit_stage();
  while (table.stage() < target) {
    auto found = dovetail_stage(table);
    if (table.kraft_accum() > 1) {
      std::cout << "kraft_accum exceeded 1 at stage " << table.stage() << "\n";
      return kExitFailure;
    }
    log.insert(log.end(), found.begin(), found.end());
  }

  std::cout << "machine=" << kMachineId << " v" << kMachineVersion
            << " plain_header=" << kPlainLiteralHeader
            << " prefix_header=" << kPrefixLiteralHeader << "\n";
  std::cout << "stage=" << table.stage() << " saturated=" << (table.saturated() ? "yes" : "no")
            << " discoveries=" << log.size() << " plain_bounds=" << table.plain_bounds().size()
            << " prefix_bounds=" << table.prefix_bounds().size()
            << " kraft_accum=" << format_rational(table.kraft_accum()) << "\n";

  std::cout << "\nlength  strings  min-C  max-C  min-K  max-K\n";
  for (int len = 0; len <= std::min(o.max_len, 8); ++len) {
    std::optional<int> min_c, max_c, min_k, max_k;
    for (const auto& x : all_strings(len)) {
      if (auto c = table.plain_bound(x, BitString{})) {
        min_c = min_c ? std::min(*min_c, *c) : *c;
        max_c = max_c ? std::max(*max_c, *c) : *c;
      }
      if (auto k = table.prefix_bound(x)) {
        min_k = min_k ? std::min(*min_k, *k) : *k;
        max_k = max_k ? std::max(*max_k, *k) : *k;
      }
    }
    auto show = [](const std::optional<int>& v) { return v ? std::to_string(*v) : "-"; };
    std::cout << std::left << std::setw(8) << len << std::setw(9) << (uint64_t{1} << len)
              << std::setw(7) << show(min_c) << std::setw(7) << show(max_c) << std::setw(7)
              << show(min_k) << show(max_k) << "\n";
  }

  if (!o.export_path.empty()) {
    std::string text;
    for (const auto& rec : log) text += format_record(rec) + "\n";
    const std::filesystem::path path(o.export_path);
    auto tmp = path;
    tmp += ".tmp";
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) throw std::runtime_error("cannot write " + tmp.string());
      out << text;
    }
    std::filesystem::rename(tmp, path);
  }
  return kExitOk;
}

int run_verify(const Options& o) {
  VerifyReport report = verify_trace_file(o.trace);
  if (report.ok()) {
    std::cout << "ok game=" << report.game << "\n";
    for (const auto& line : report.footer) std::cout << line << "\n";
    return kExitOk;
  }
  std::cout << (report.status == VerifyStatus::RuleViolation ? "violation" : "rejected");
  if (report.line) std::cout << " line " << *report.line;
  if (!report.reason.empty()) std::cout << " " << report.reason;
  std::cout << ": " << report.message << "\n";
  return kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"kgame: complexity games, adversaries and trace verification"};
  app.set_config("--config", "", "key=value file with option defaults");
  app.add_option("--jobs,-j", o.jobs, "parallel matches")->check(CLI::Range(1u, 256u));
  app.require_subcommand(1);

  auto* gn = app.add_subcommand("gn", "White's strategy against one adversary on G_n");
  gn->add_option("--n", o.n, "rows; the board has 2^n columns")->check(CLI::Range(1, 62));
  gn->add_option("--black", o.black, "random | greedy | exhauster | semicomputable");
  gn->add_option("--seed", o.seed, "seed of the random adversary");
  gn->add_option("--seeds", o.seeds, "run seeds seed..seed+K-1")->check(CLI::Range(1u, 1000000u));
  gn->add_option("--max-moves", o.max_moves)->check(CLI::PositiveNumber);
  gn->add_option("--quiescence", o.quiescence)->check(CLI::Range(1, 1000));
  gn->add_option("--trace", o.trace, "write the match trace here");

  auto* arena = app.add_subcommand("arena", "all boards in a range against one adversary");
  arena->add_option("--n-min", o.n_min)->check(CLI::Range(1, 62));
  arena->add_option("--n-max", o.n_max)->check(CLI::Range(1, 62));
  arena->add_option("--variant", o.variant, "plain | prefix");
  arena->add_option("--black", o.arena_black, "semicomputable | greedy");
  arena->add_option("--max-moves", o.max_moves)->check(CLI::PositiveNumber);
  arena->add_option("--quiescence", o.quiescence)->check(CLI::Range(1, 1000));
  arena->add_option("--trace", o.trace);

  auto* weights = app.add_subcommand("weights", "Alice's strategy against a Bob");
  weights->add_option("--c", o.c, "win ratio C")->check(CLI::PositiveNumber);
  weights->add_option("--sizes", o.sizes, "comma-separated set sizes");
  weights->add_option("--equal", o.equal, "SIZE COUNT: COUNT sets of SIZE elements")
      ->expected(2);
  weights->add_option("--strings", o.kolmogorov_sets,
                      "N sets of all strings of lengths log2(8C)+1 .. log2(8C)+N");
  weights->add_option("--bob", o.bob, "disabler | matcher | random | kolmogorov");
  weights->add_option("--seed", o.seed);
  weights->add_option("--seeds", o.seeds)->check(CLI::Range(1u, 1000000u));
  weights->add_option("--max-batches", o.max_batches, "0: 64 x element count");
  weights->add_option("--quiescence", o.quiescence)->check(CLI::Range(1, 1000));
  weights->add_option("--trace", o.trace);

  auto* lab = app.add_subcommand("lab", "dovetail the reference machine");
  lab->add_option("--stages", o.stages, "0: run until saturated");
  lab->add_option("--max-len", o.max_len, "longest unconditional program");
  lab->add_option("--cond-max-len", o.cond_max_len, "longest conditional program");
  lab->add_option("--step-cap", o.step_cap);
  lab->add_option("--cond-pool", o.cond_pool, "comma-separated non-empty conditions");
  lab->add_flag("--no-prefix", o.no_prefix, "skip the prefix-free lane");
  lab->add_option("--export", o.export_path, "write the discovery log here");

  auto* verify = app.add_subcommand("verify", "replay a trace through the rules");
  verify->add_option("--trace", o.trace)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*gn) return run_gn(o);
    if (*arena) return run_arena_cmd(o);
    if (*weights) return run_weights(o);
    if (*lab) return run_lab(o);
    if (*verify) return run_verify(o);
  } catch (const UsageError& e) {
    std::cerr << "kgame: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "kgame: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ResourceLimitError& e) {
    std::cerr << "kgame: resource limit: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "kgame: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
