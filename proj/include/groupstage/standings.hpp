#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace groupstage {

struct PointsSystem {
  int win = 3;
  int draw = 1;  // losses always score 0
};

inline void validate(const PointsSystem& ps) {
  if (!(ps.win > ps.draw && ps.draw >= 0))
    throw std::invalid_argument("points system must satisfy win > draw >= 0");
}

struct TeamLine {
  std::string team;
  int points = 0;
  int goal_diff = 0;
  int played = 0;
};

// (points, goal_diff) of the third-ranked teams of the other groups, against
// which a team ranked just below the direct slots competes for pool_slots
// places.
struct ThirdsPool {
  std::vector<std::pair<int, int>> entries;
  int pool_slots = 8;
};

struct QualRule {
  int slots = 2;  // direct qualification places per group
  std::optional<ThirdsPool> thirds;
};

// NONE < SHARED < CLEAN. CLEAN means qualified under every resolution of
// exact (points, goal_diff) ties; SHARED under at least one.
enum class QualStatus : std::uint8_t { None = 0, Shared = 1, Clean = 2 };

struct GameResult {
  std::string team_a, team_b;
  int goals_a = 0, goals_b = 0;
};

namespace detail {

struct LineScore {
  int points = 0;
  int goal_diff = 0;
};

inline bool beats(const LineScore& x, const LineScore& y) {
  return x.points != y.points ? x.points > y.points : x.goal_diff > y.goal_diff;
}

inline bool same_score(const LineScore& x, const LineScore& y) {
  return x.points == y.points && x.goal_diff == y.goal_diff;
}

// Shared by the public table API and the classification hot path, which keeps
// its own flat (points, goal_diff) copies. Enumerates the team's placements
// inside its exact-tie class; the thirds route is consulted only when a
// placement leaves the team exactly one rank below the direct slots.
inline QualStatus qual_status_core(const LineScore* lines, int n, int team,
                                   const QualRule& rule) {
  const LineScore me = lines[team];
  int better = 0;
  int tied = 0;
  for (int i = 0; i < n; ++i) {
    if (i == team) continue;
    if (beats(lines[i], me))
      ++better;
    else if (same_score(lines[i], me))
      ++tied;
  }
  bool pool_best = false;
  bool pool_worst = false;
  if (rule.thirds) {
    int pool_better = 0;
    int pool_tied = 0;
    for (const auto& [pts, gd] : rule.thirds->entries) {
      const LineScore entry{pts, gd};
      if (beats(entry, me))
        ++pool_better;
      else if (same_score(entry, me))
        ++pool_tied;
    }
    pool_best = pool_better + 1 <= rule.thirds->pool_slots;
    pool_worst = pool_better + pool_tied + 1 <= rule.thirds->pool_slots;
  }
  const auto qualifies = [&](int rank, bool worst_case) {
    if (rank <= rule.slots) return true;
    if (rank == rule.slots + 1 && rule.thirds) return worst_case ? pool_worst : pool_best;
    return false;
  };
  bool clean = true;
  bool shared = false;
  for (int placement = 1; placement <= tied + 1; ++placement) {
    const int rank = better + placement;
    clean = clean && qualifies(rank, /*worst_case=*/true);
    shared = shared || qualifies(rank, /*worst_case=*/false);
  }
  if (clean) return QualStatus::Clean;
  return shared ? QualStatus::Shared : QualStatus::None;
}

inline int find_team(const std::vector<TeamLine>& table, const std::string& team) {
  for (std::size_t i = 0; i < table.size(); ++i)
    if (table[i].team == team) return static_cast<int>(i);
  throw std::invalid_argument("team not in table: " + team);
}

inline void sort_table(std::vector<TeamLine>& table) {
  std::stable_sort(table.begin(), table.end(), [](const TeamLine& x, const TeamLine& y) {
    return x.points != y.points ? x.points > y.points : x.goal_diff > y.goal_diff;
  });
}

}  // namespace detail

/// Group table from a bag of results: points per the points system, goal
/// difference as the only tie-breaker, exact ties kept adjacent in input
/// order. Each pair may meet at most once.
inline std::vector<TeamLine> compute_table(const std::vector<GameResult>& results,
                                           const PointsSystem& ps) {
  validate(ps);
  std::vector<TeamLine> table;
  const auto index_of = [&table](const std::string& name) {
    for (std::size_t i = 0; i < table.size(); ++i)
      if (table[i].team == name) return i;
    table.push_back(TeamLine{name, 0, 0, 0});
    return table.size() - 1;
  };
  std::vector<std::pair<std::string, std::string>> seen;
  for (const auto& g : results) {
    if (g.team_a == g.team_b) throw std::invalid_argument("team cannot play itself");
    if (g.goals_a < 0 || g.goals_b < 0) throw std::invalid_argument("negative goal count");
    for (const auto& [x, y] : seen)
      if ((x == g.team_a && y == g.team_b) || (x == g.team_b && y == g.team_a))
        throw std::invalid_argument("duplicate fixture: " + g.team_a + " vs " + g.team_b);
    seen.emplace_back(g.team_a, g.team_b);
    const std::size_t ia = index_of(g.team_a);
    const std::size_t ib = index_of(g.team_b);
    TeamLine& a = table[ia];
    TeamLine& b = table[ib];
    if (g.goals_a > g.goals_b)
      a.points += ps.win;
    else if (g.goals_a < g.goals_b)
      b.points += ps.win;
    else {
      a.points += ps.draw;
      b.points += ps.draw;
    }
    a.goal_diff += g.goals_a - g.goals_b;
    b.goal_diff += g.goals_b - g.goals_a;
    ++a.played;
    ++b.played;
  }
  detail::sort_table(table);
  return table;
}

/// Three-level qualification certainty for one team of the table under a
/// top-slots rule, optionally extended by a best-thirds pool.
inline QualStatus qual_status(const std::vector<TeamLine>& table, const std::string& team,
                              const QualRule& rule) {
  if (rule.slots < 1) throw std::invalid_argument("qualification slots must be >= 1");
  const int idx = detail::find_team(table, team);
  std::vector<detail::LineScore> lines;
  lines.reserve(table.size());
  for (const auto& l : table) lines.push_back({l.points, l.goal_diff});
  return detail::qual_status_core(lines.data(), static_cast<int>(lines.size()), idx, rule);
}

/// New table with one extra game applied: team_x beats team_y by gd goals
/// (gd < 0 for a loss, 0 for a draw). The input table is left untouched.
inline std::vector<TeamLine> apply_hypothetical(const std::vector<TeamLine>& table,
                                                const std::pair<std::string, std::string>& game,
                                                int gd, const PointsSystem& ps) {
  validate(ps);
  std::vector<TeamLine> out = table;
  TeamLine& x = out[static_cast<std::size_t>(detail::find_team(out, game.first))];
  TeamLine& y = out[static_cast<std::size_t>(detail::find_team(out, game.second))];
  if (gd > 0)
    x.points += ps.win;
  else if (gd < 0)
    y.points += ps.win;
  else {
    x.points += ps.draw;
    y.points += ps.draw;
  }
  x.goal_diff += gd;
  y.goal_diff -= gd;
  ++x.played;
  ++y.played;
  detail::sort_table(out);
  return out;
}

}  // namespace groupstage
