#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "groupstage/classification.hpp"
#include "groupstage/ratings.hpp"
#include "groupstage/rng.hpp"
#include "groupstage/score_models.hpp"

namespace groupstage {

enum class FormatKind { G4Top2, G3Top2, G5Top2, G4BestThirds, G5BestThirds };

struct FormatSpec {
  FormatKind kind = FormatKind::G4Top2;
  int n_groups = 8;
  int group_size = 4;
  int direct_slots = 2;   // top-Q qualification places per group
  bool best_thirds = false;
  int pool_slots = 0;     // extra places contested by third-ranked teams
};

inline FormatSpec make_format(FormatKind kind) {
  switch (kind) {
    case FormatKind::G4Top2:
      return {kind, 8, 4, 2, false, 0};
    case FormatKind::G3Top2:
      return {kind, 16, 3, 2, false, 0};
    case FormatKind::G5Top2:
      return {kind, 8, 5, 2, false, 0};
    case FormatKind::G4BestThirds:
      return {kind, 12, 4, 2, true, 8};
    case FormatKind::G5BestThirds:
      return {kind, 12, 5, 2, true, 8};
  }
  throw std::invalid_argument("unknown format kind");
}

// Which pots meet in the last round. For odd group sizes the passive pot sits
// the last round out; in groups of three setting and passive pot determine
// each other (setting 1 rests the weakest pot, setting 3 the strongest).
struct SettingChoice {
  int setting = 1;
  std::optional<int> passive_pot;  // 1 = strongest
};

struct Fixture {
  int pot_home = 0;  // 1-indexed; home is the stronger pot
  int pot_away = 0;
};

struct GroupPlan {
  std::vector<Fixture> pre_last;    // unordered bag; order never affects standings
  std::vector<Fixture> last_round;  // one or two simultaneous games
};

/// Team label of a pot slot, "A" for the strongest pot onward.
inline std::string pot_name(int pot) {
  if (pot < 1 || pot > 26) throw std::invalid_argument("pot index out of range");
  return std::string(1, static_cast<char>('A' + pot - 1));
}

namespace detail {

// Last-round pairings of four slots (strongest first) per setting:
// 1: first-fourth & second-third, 2: first-third & second-fourth,
// 3: first-second & third-fourth.
inline std::array<Fixture, 2> pair_four(const std::array<int, 4>& pots, int setting) {
  switch (setting) {
    case 1:
      return {Fixture{pots[0], pots[3]}, Fixture{pots[1], pots[2]}};
    case 2:
      return {Fixture{pots[0], pots[2]}, Fixture{pots[1], pots[3]}};
    case 3:
      return {Fixture{pots[0], pots[1]}, Fixture{pots[2], pots[3]}};
    default:
      throw std::invalid_argument("setting must be 1, 2 or 3");
  }
}

inline bool same_fixture(const Fixture& a, const Fixture& b) {
  return (a.pot_home == b.pot_home && a.pot_away == b.pot_away) ||
         (a.pot_home == b.pot_away && a.pot_away == b.pot_home);
}

}  // namespace detail

/// Slot-level fixture plan: a full single round robin split into the
/// pre-last bag and the last-round games selected by the setting.
inline GroupPlan schedule(const FormatSpec& fmt, const SettingChoice& choice) {
  if (choice.setting < 1 || choice.setting > 3)
    throw std::invalid_argument("setting must be 1, 2 or 3");
  const bool odd = fmt.group_size % 2 != 0;
  if (!odd && choice.passive_pot)
    throw std::invalid_argument("passive pot only applies to odd group sizes");

  GroupPlan plan;
  if (fmt.group_size == 4) {
    const auto last = detail::pair_four({1, 2, 3, 4}, choice.setting);
    plan.last_round.assign(last.begin(), last.end());
  } else if (fmt.group_size == 3) {
    const int derived = 4 - choice.setting;  // setting 1 rests pot 3, setting 3 pot 1
    if (choice.passive_pot && *choice.passive_pot != derived)
      throw std::invalid_argument("passive pot inconsistent with setting");
    std::array<int, 2> actives{};
    int idx = 0;
    for (int p = 1; p <= 3; ++p)
      if (p != derived) actives[static_cast<std::size_t>(idx++)] = p;
    plan.last_round.push_back({actives[0], actives[1]});
  } else if (fmt.group_size == 5) {
    if (!choice.passive_pot)
      throw std::invalid_argument("passive pot required for groups of five");
    const int passive = *choice.passive_pot;
    if (passive < 1 || passive > 5)
      throw std::invalid_argument("passive pot must be between 1 and 5");
    std::array<int, 4> actives{};
    int idx = 0;
    for (int p = 1; p <= 5; ++p)
      if (p != passive) actives[static_cast<std::size_t>(idx++)] = p;
    const auto last = detail::pair_four(actives, choice.setting);
    plan.last_round.assign(last.begin(), last.end());
  } else {
    throw std::invalid_argument("unsupported group size");
  }

  for (int x = 1; x <= fmt.group_size; ++x) {
    for (int y = x + 1; y <= fmt.group_size; ++y) {
      const Fixture fx{x, y};
      const bool in_last = std::any_of(plan.last_round.begin(), plan.last_round.end(),
                                       [&](const Fixture& l) { return detail::same_fixture(l, fx); });
      if (!in_last) plan.pre_last.push_back(fx);
    }
  }
  return plan;
}

namespace detail {

// Stream slots within one iteration: the focal group uses 0 (ratings) and
// 1..#games; simulated sibling groups get a 16-slot stride from 1024 on.
inline constexpr std::uint64_t kGroupSlotBase = 1024;
inline constexpr std::uint64_t kGroupSlotStride = 16;

inline std::vector<GameResult> play_all(const FormatSpec& fmt, const std::vector<double>& ratings,
                                        const ScoreModel& model, const RandomStream& rng,
                                        std::uint64_t first_slot) {
  std::vector<GameResult> results;
  std::uint64_t slot = first_slot;
  for (int x = 1; x <= fmt.group_size; ++x) {
    for (int y = x + 1; y <= fmt.group_size; ++y) {
      RandomStream game_rng = rng.substream(slot++);
      const Score s = sample_score(model, ratings[static_cast<std::size_t>(x - 1)],
                                   ratings[static_cast<std::size_t>(y - 1)], game_rng);
      results.push_back({pot_name(x), pot_name(y), s.home, s.away});
    }
  }
  return results;
}

}  // namespace detail

/// Simulates one group iteration up to the last round and emits one context
/// per last-round game, each using the other last-round game (when present)
/// as its scenario source. Best-thirds formats additionally play the other
/// n_groups-1 groups to completion to fill the thirds pool of the rule.
inline std::vector<GroupContext> simulate_context(const FormatSpec& fmt,
                                                  const SettingChoice& choice,
                                                  const ScoreModel& model,
                                                  const PointsSystem& ps, double gap,
                                                  const RandomStream& rng) {
  if (!is_exact_score(model)) throw std::invalid_argument("model has no goal scale");
  validate(ps);
  const GroupPlan plan = schedule(fmt, choice);
  const PotPartition pots = pot_intervals(1.0, 1.0 + std::exp(gap), fmt.group_size);

  RandomStream ratings_rng = rng.substream(0);
  const std::vector<double> ratings = draw_group(pots, ratings_rng);

  std::vector<GameResult> results;
  std::uint64_t slot = 1;
  for (const Fixture& fx : plan.pre_last) {
    RandomStream game_rng = rng.substream(slot++);
    const Score s = sample_score(model, ratings[static_cast<std::size_t>(fx.pot_home - 1)],
                                 ratings[static_cast<std::size_t>(fx.pot_away - 1)], game_rng);
    results.push_back({pot_name(fx.pot_home), pot_name(fx.pot_away), s.home, s.away});
  }
  const std::vector<TeamLine> table = compute_table(results, ps);

  QualRule rule{fmt.direct_slots, std::nullopt};
  if (fmt.best_thirds) {
    ThirdsPool pool;
    pool.pool_slots = fmt.pool_slots;
    pool.entries.reserve(static_cast<std::size_t>(fmt.n_groups - 1));
    for (int g = 0; g + 1 < fmt.n_groups; ++g) {
      const std::uint64_t base = detail::kGroupSlotBase +
                                 detail::kGroupSlotStride * static_cast<std::uint64_t>(g);
      RandomStream group_ratings_rng = rng.substream(base);
      const std::vector<double> rs = draw_group(pots, group_ratings_rng);
      const auto games = detail::play_all(fmt, rs, model, rng, base + 1);
      const auto t = compute_table(games, ps);
      pool.entries.emplace_back(t[2].points, t[2].goal_diff);
    }
    rule.thirds = std::move(pool);
  }

  std::vector<GroupContext> contexts;
  contexts.reserve(plan.last_round.size());
  for (std::size_t i = 0; i < plan.last_round.size(); ++i) {
    GroupContext ctx;
    ctx.table = table;
    ctx.ps = ps;
    ctx.rule = rule;
    ctx.focal_game = {pot_name(plan.last_round[i].pot_home),
                      pot_name(plan.last_round[i].pot_away)};
    if (plan.last_round.size() == 2) {
      const Fixture& other = plan.last_round[1 - i];
      ctx.parallel_game = {pot_name(other.pot_home), pot_name(other.pot_away)};
    }
    contexts.push_back(std::move(ctx));
  }
  return contexts;
}

}  // namespace groupstage
