#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "groupstage/standings.hpp"

namespace groupstage {

// Goal differences beyond +/-5 are treated as equivalent to +/-5: larger
// margins are rare enough that teams disregard them, and widening the cap
// does not change the classification outcomes.
inline constexpr int kMaxGoalDiff = 5;

// Goal difference of the simultaneous parallel game, unknown to the focal
// teams; disengaged (nullopt) when the group has no parallel game.
using Scenario = std::optional<int>;

// The decision problem of one last-round game: standings entering the round,
// the two teams about to play, the simultaneous game feeding the scenario
// set, and the qualification rule in force.
struct GroupContext {
  std::vector<TeamLine> table;
  std::pair<std::string, std::string> focal_game;
  std::optional<std::pair<std::string, std::string>> parallel_game;
  PointsSystem ps;
  QualRule rule;
};

/// The 11 parallel-game goal differences (ascending), or the single empty
/// scenario when no parallel game exists.
inline std::vector<Scenario> scenarios(const GroupContext& ctx) {
  std::vector<Scenario> out;
  if (ctx.parallel_game) {
    out.reserve(2 * kMaxGoalDiff + 1);
    for (int gd = -kMaxGoalDiff; gd <= kMaxGoalDiff; ++gd) out.emplace_back(gd);
  } else {
    out.emplace_back(std::nullopt);
  }
  return out;
}

// Qualification status per scenario, ordered by parallel goal difference
// ascending.
using ValueVector = std::vector<QualStatus>;

// A team's preferred own result: the lowest-effort goal difference whose
// value vector is maximal, or indifference when the result cannot matter.
struct Target {
  bool indifferent = false;
  int gd_star = 0;  // own-favor goal difference; meaningful when !indifferent
};

enum class Verdict { Competitive, Collusive, Stakeless };

// Closed integer range of goal differences; empty when lo > hi.
struct GdRange {
  int lo = 1;
  int hi = 0;
  bool empty() const { return lo > hi; }
  bool contains(int d) const { return d >= lo && d <= hi; }
};

struct ClassifiedGame {
  Verdict verdict = Verdict::Competitive;
  std::string team_i, team_j;
  Target target_i, target_j;
  // Focal goal differences (team-i favor) satisfying both targets at once.
  // Empty by convention for stake-less games.
  GdRange zone;
  // Stake-less diagnostics: when exactly one side is indifferent, the other
  // side's satisfied set (own favor).
  std::optional<std::string> satisfied_team;
  std::optional<GdRange> satisfied;
};

namespace detail {

struct ContextIndex {
  std::array<LineScore, 8> base{};
  int n = 0;
  int fi = -1, fj = -1;  // focal teams
  int pk = -1, pl = -1;  // parallel teams, -1 when absent
};

inline ContextIndex index_context(const GroupContext& ctx) {
  validate(ctx.ps);
  if (ctx.rule.slots < 1) throw std::invalid_argument("qualification slots must be >= 1");
  if (ctx.table.size() < 2 || ctx.table.size() > 8)
    throw std::invalid_argument("table must hold between 2 and 8 teams");
  ContextIndex ix;
  ix.n = static_cast<int>(ctx.table.size());
  for (int i = 0; i < ix.n; ++i)
    ix.base[static_cast<std::size_t>(i)] = {ctx.table[static_cast<std::size_t>(i)].points,
                                            ctx.table[static_cast<std::size_t>(i)].goal_diff};
  ix.fi = find_team(ctx.table, ctx.focal_game.first);
  ix.fj = find_team(ctx.table, ctx.focal_game.second);
  if (ix.fi == ix.fj) throw std::invalid_argument("focal game must involve two distinct teams");
  if (ctx.parallel_game) {
    ix.pk = find_team(ctx.table, ctx.parallel_game->first);
    ix.pl = find_team(ctx.table, ctx.parallel_game->second);
    if (ix.pk == ix.pl || ix.pk == ix.fi || ix.pk == ix.fj || ix.pl == ix.fi || ix.pl == ix.fj)
      throw std::invalid_argument("focal and parallel games must involve four distinct teams");
  }
  return ix;
}

inline void apply_gd(std::array<LineScore, 8>& lines, int x, int y, int gd,
                     const PointsSystem& ps) {
  if (gd > 0)
    lines[static_cast<std::size_t>(x)].points += ps.win;
  else if (gd < 0)
    lines[static_cast<std::size_t>(y)].points += ps.win;
  else {
    lines[static_cast<std::size_t>(x)].points += ps.draw;
    lines[static_cast<std::size_t>(y)].points += ps.draw;
  }
  lines[static_cast<std::size_t>(x)].goal_diff += gd;
  lines[static_cast<std::size_t>(y)].goal_diff -= gd;
}

// Status of both focal teams for every (own goal difference, scenario) pair.
// Rows are indexed by own gd + kMaxGoalDiff, from each side's own
// perspective; columns by scenario index.
struct StatusTable {
  int n_scen = 1;
  // [side][own_gd + 5][scenario]
  std::array<std::array<std::array<QualStatus, 11>, 11>, 2> cell{};
};

inline StatusTable evaluate(const GroupContext& ctx, const ContextIndex& ix) {
  StatusTable st;
  st.n_scen = ix.pk >= 0 ? 2 * kMaxGoalDiff + 1 : 1;
  for (int d = -kMaxGoalDiff; d <= kMaxGoalDiff; ++d) {
    std::array<LineScore, 8> after_focal = ix.base;
    apply_gd(after_focal, ix.fi, ix.fj, d, ctx.ps);
    for (int s = 0; s < st.n_scen; ++s) {
      std::array<LineScore, 8> lines = after_focal;
      if (ix.pk >= 0) apply_gd(lines, ix.pk, ix.pl, s - kMaxGoalDiff, ctx.ps);
      const auto qi = qual_status_core(lines.data(), ix.n, ix.fi, ctx.rule);
      const auto qj = qual_status_core(lines.data(), ix.n, ix.fj, ctx.rule);
      st.cell[0][static_cast<std::size_t>(d + kMaxGoalDiff)][static_cast<std::size_t>(s)] = qi;
      st.cell[1][static_cast<std::size_t>(-d + kMaxGoalDiff)][static_cast<std::size_t>(s)] = qj;
    }
  }
  return st;
}

inline bool row_equal(const StatusTable& st, int side, int row_a, int row_b) {
  for (int s = 0; s < st.n_scen; ++s)
    if (st.cell[static_cast<std::size_t>(side)][static_cast<std::size_t>(row_a)][static_cast<std::size_t>(s)] !=
        st.cell[static_cast<std::size_t>(side)][static_cast<std::size_t>(row_b)][static_cast<std::size_t>(s)])
      return false;
  return true;
}

// Best achievable vector is the one at +5 (value vectors are componentwise
// nondecreasing in own goal difference); the target is the least own gd
// reaching it, or indifference when even -5 reaches it.
inline Target target_from(const StatusTable& st, int side) {
  const int top = 2 * kMaxGoalDiff;
  if (row_equal(st, side, 0, top)) return {true, 0};
  for (int row = 1; row <= top; ++row)
    if (row_equal(st, side, row, top)) return {false, row - kMaxGoalDiff};
  return {false, kMaxGoalDiff};  // unreachable given row top == top
}

}  // namespace detail

/// Qualification status of a focal-game team for one own goal difference,
/// across every parallel-game scenario (ascending goal difference).
inline ValueVector value_vector(const GroupContext& ctx, const std::string& team, int own_gd) {
  const auto ix = detail::index_context(ctx);
  int self = -1, opp = -1;
  if (team == ctx.focal_game.first) {
    self = ix.fi;
    opp = ix.fj;
  } else if (team == ctx.focal_game.second) {
    self = ix.fj;
    opp = ix.fi;
  } else {
    throw std::invalid_argument("team is not in the focal game: " + team);
  }
  ValueVector out;
  for (const Scenario& s : scenarios(ctx)) {
    std::array<detail::LineScore, 8> lines = ix.base;
    detail::apply_gd(lines, self, opp, own_gd, ctx.ps);
    if (s) detail::apply_gd(lines, ix.pk, ix.pl, *s, ctx.ps);
    out.push_back(detail::qual_status_core(lines.data(), ix.n, self, ctx.rule));
  }
  return out;
}

/// Lowest-effort own goal difference maximizing the value vector, or
/// indifference when the own result cannot change it.
inline Target target(const GroupContext& ctx, const std::string& team) {
  const auto ix = detail::index_context(ctx);
  int side;
  if (team == ctx.focal_game.first)
    side = 0;
  else if (team == ctx.focal_game.second)
    side = 1;
  else
    throw std::invalid_argument("team is not in the focal game: " + team);
  const auto st = detail::evaluate(ctx, ix);
  return detail::target_from(st, side);
}

/// Verdict and compatibility zone implied by the two targets alone.
/// Stake-less takes precedence over zone-nonemptiness.
inline ClassifiedGame classify_targets(const Target& ti, const Target& tj) {
  ClassifiedGame out;
  out.target_i = ti;
  out.target_j = tj;
  out.zone = {1, 0};
  if (ti.indifferent || tj.indifferent) {
    out.verdict = Verdict::Stakeless;
    return out;
  }
  out.zone = {ti.gd_star, -tj.gd_star};
  out.verdict = out.zone.empty() ? Verdict::Competitive : Verdict::Collusive;
  return out;
}

/// Full classification of a last-round game: competitive (incompatible
/// targets), collusive (compatible targets, nobody indifferent) or
/// stake-less (at least one side indifferent).
inline ClassifiedGame classify(const GroupContext& ctx) {
  const auto ix = detail::index_context(ctx);
  const auto st = detail::evaluate(ctx, ix);
  const Target ti = detail::target_from(st, 0);
  const Target tj = detail::target_from(st, 1);
  ClassifiedGame out = classify_targets(ti, tj);
  out.team_i = ctx.focal_game.first;
  out.team_j = ctx.focal_game.second;
  if (out.verdict == Verdict::Stakeless && ti.indifferent != tj.indifferent) {
    out.satisfied_team = ti.indifferent ? ctx.focal_game.second : ctx.focal_game.first;
    const Target& live = ti.indifferent ? tj : ti;
    out.satisfied = GdRange{live.gd_star, kMaxGoalDiff};
  }
  return out;
}

}  // namespace groupstage
