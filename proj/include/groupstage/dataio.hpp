#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "groupstage/calibration.hpp"
#include "groupstage/classification.hpp"
#include "groupstage/rng.hpp"
#include "groupstage/score_models.hpp"

namespace groupstage {

// File- and schema-level problems; carries enough context to locate the
// offending line.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct HistoryDataset {
  std::vector<GameRecord> games;
  double pool_min = 0.0, pool_max = 0.0;
};

inline constexpr const char* kGamesCsvHeader =
    "edition,group_id,round,team_home,team_away,elo_home,elo_away,goals_home,goals_away";

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

inline int parse_int(const std::string& s, const std::string& column, int line_no) {
  try {
    std::size_t pos = 0;
    const int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw DataError("line " + std::to_string(line_no) + ": column '" + column +
                    "' is not an integer: '" + s + "'");
  }
}

inline double parse_double(const std::string& s, const std::string& column, int line_no) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw DataError("line " + std::to_string(line_no) + ": column '" + column +
                    "' is not a number: '" + s + "'");
  }
}

// Per-group integrity: a group of k teams holds all k(k-1)/2 games, rounds
// within 1..3 for the historical four-team layout, two simultaneous games in
// round 3, and one consistent start-of-tournament Elo per team.
inline void validate_history(const std::vector<GameRecord>& games) {
  std::map<std::pair<int, std::string>, std::vector<const GameRecord*>> groups;
  std::map<std::pair<int, std::string>, double> team_elo;
  for (const auto& g : games) {
    groups[{g.edition, g.group_id}].push_back(&g);
    for (const auto& [team, elo] :
         {std::pair{g.team_home, g.elo_home}, std::pair{g.team_away, g.elo_away}}) {
      const auto key = std::pair{g.edition, team};
      const auto it = team_elo.find(key);
      if (it == team_elo.end())
        team_elo.emplace(key, elo);
      else if (it->second != elo)
        throw DataError("inconsistent Elo for team '" + team + "' in edition " +
                        std::to_string(g.edition));
    }
  }
  for (const auto& [key, members] : groups) {
    const std::string where =
        "edition " + std::to_string(key.first) + " group '" + key.second + "'";
    std::set<std::string> teams;
    std::set<std::pair<std::string, std::string>> pairs;
    int round3 = 0;
    for (const auto* g : members) {
      teams.insert(g->team_home);
      teams.insert(g->team_away);
      if (g->round < 1 || g->round > 3)
        throw DataError(where + ": round " + std::to_string(g->round) + " out of range 1..3");
      if (g->round == 3) ++round3;
      auto p = std::pair{std::min(g->team_home, g->team_away),
                         std::max(g->team_home, g->team_away)};
      if (!pairs.insert(p).second)
        throw DataError(where + ": duplicate fixture " + p.first + " vs " + p.second);
    }
    if (teams.size() != 4)
      throw DataError(where + ": expected 4 teams, found " + std::to_string(teams.size()));
    if (members.size() != 6)
      throw DataError(where + ": expected 6 games, found " + std::to_string(members.size()));
    if (round3 != 2)
      throw DataError(where + ": expected 2 round-3 games, found " + std::to_string(round3));
  }
}

}  // namespace detail

/// Parses the games CSV schema. Columns are located by header name; every
/// schema column must be present. Errors carry 1-based line numbers.
inline HistoryDataset parse_history_csv(std::istream& in, const std::string& source_name) {
  std::string line;
  if (!std::getline(in, line)) throw DataError(source_name + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = detail::split_csv_line(line);
  const std::vector<std::string> required = {
      "edition", "group_id", "round", "team_home", "team_away",
      "elo_home", "elo_away", "goals_home", "goals_away"};
  std::map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < header.size(); ++i) col[header[i]] = i;
  for (const auto& name : required)
    if (!col.count(name)) throw DataError(source_name + ": missing column '" + name + "'");

  HistoryDataset ds;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = detail::split_csv_line(line);
    if (fields.size() < header.size())
      throw DataError("line " + std::to_string(line_no) + ": expected " +
                      std::to_string(header.size()) + " fields, found " +
                      std::to_string(fields.size()));
    const auto get = [&](const std::string& name) -> const std::string& {
      return fields[col.at(name)];
    };
    GameRecord g;
    g.edition = detail::parse_int(get("edition"), "edition", line_no);
    g.group_id = get("group_id");
    g.round = detail::parse_int(get("round"), "round", line_no);
    g.team_home = get("team_home");
    g.team_away = get("team_away");
    g.elo_home = detail::parse_double(get("elo_home"), "elo_home", line_no);
    g.elo_away = detail::parse_double(get("elo_away"), "elo_away", line_no);
    g.goals_home = detail::parse_int(get("goals_home"), "goals_home", line_no);
    g.goals_away = detail::parse_int(get("goals_away"), "goals_away", line_no);
    if (g.goals_home < 0 || g.goals_away < 0)
      throw DataError("line " + std::to_string(line_no) + ": negative goal count");
    if (!(g.elo_home > 0.0) || !(g.elo_away > 0.0))
      throw DataError("line " + std::to_string(line_no) + ": Elo ratings must be positive");
    if (g.team_home == g.team_away)
      throw DataError("line " + std::to_string(line_no) + ": team cannot play itself");
    ds.games.push_back(std::move(g));
  }
  if (ds.games.empty()) throw DataError(source_name + ": no game rows");
  detail::validate_history(ds.games);
  ds.pool_min = ds.games.front().elo_home;
  ds.pool_max = ds.games.front().elo_home;
  for (const auto& g : ds.games) {
    ds.pool_min = std::min({ds.pool_min, g.elo_home, g.elo_away});
    ds.pool_max = std::max({ds.pool_max, g.elo_home, g.elo_away});
  }
  if (!(ds.pool_min < ds.pool_max)) throw DataError(source_name + ": zero rating spread");
  return ds;
}

inline HistoryDataset load_history(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  return parse_history_csv(in, path);
}

/// The calibration sample: rounds 1 and 2 only.
inline FitDataset early_rounds(const HistoryDataset& ds) {
  std::vector<GameRecord> records;
  for (const auto& g : ds.games)
    if (g.round <= 2) records.push_back(g);
  return make_fit_dataset(std::move(records));
}

struct EditionGoalsRow {
  int edition = 0;
  int games = 0;
  double mean_goals = 0.0;
};

/// Mean goals per game per edition over the first two rounds.
inline std::vector<EditionGoalsRow> edition_goals(const HistoryDataset& ds) {
  std::map<int, std::pair<int, long>> acc;  // edition -> (games, goals)
  for (const auto& g : ds.games) {
    if (g.round > 2) continue;
    auto& [n, goals] = acc[g.edition];
    ++n;
    goals += g.goals_home + g.goals_away;
  }
  std::vector<EditionGoalsRow> rows;
  for (const auto& [edition, ng] : acc)
    rows.push_back({edition, ng.first, static_cast<double>(ng.second) / ng.first});
  return rows;
}

// Exact-score counts over rounds 1-2 with the higher-Elo side's goals as
// rows; games where either side scores more than 4 are left out of the grid.
struct ScoreGrid {
  std::array<std::array<long, 5>, 5> cells{};
  long omitted = 0;
  long total_games = 0;
};

inline ScoreGrid observed_score_grid(const HistoryDataset& ds) {
  ScoreGrid grid;
  for (const auto& g : ds.games) {
    if (g.round > 2) continue;
    ++grid.total_games;
    const bool home_is_higher = g.elo_home >= g.elo_away;
    const int hi = home_is_higher ? g.goals_home : g.goals_away;
    const int lo = home_is_higher ? g.goals_away : g.goals_home;
    if (hi > 4 || lo > 4) {
      ++grid.omitted;
      continue;
    }
    ++grid.cells[static_cast<std::size_t>(hi)][static_cast<std::size_t>(lo)];
  }
  return grid;
}

namespace detail {

// Pot rank within a historical group: 1..4 by descending start-of-tournament
// Elo (name as the deterministic tie-breaker).
inline std::map<std::string, int> pot_ranks(const std::vector<const GameRecord*>& group) {
  std::map<std::string, double> elo;
  for (const auto* g : group) {
    elo[g->team_home] = g->elo_home;
    elo[g->team_away] = g->elo_away;
  }
  std::vector<std::pair<std::string, double>> teams(elo.begin(), elo.end());
  std::sort(teams.begin(), teams.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  std::map<std::string, int> rank;
  for (std::size_t i = 0; i < teams.size(); ++i)
    rank[teams[i].first] = static_cast<int>(i) + 1;
  return rank;
}

// Which setting a group's round-3 pairing realizes: {1,4},{2,3} is setting 1,
// {1,3},{2,4} setting 2, {1,2},{3,4} setting 3.
inline int setting_of_group(const std::vector<const GameRecord*>& group) {
  const auto rank = pot_ranks(group);
  std::set<std::pair<int, int>> meet;
  for (const auto* g : group) {
    if (g->round != 3) continue;
    const int a = rank.at(g->team_home);
    const int b = rank.at(g->team_away);
    meet.insert({std::min(a, b), std::max(a, b)});
  }
  if (meet == std::set<std::pair<int, int>>{{1, 4}, {2, 3}}) return 1;
  if (meet == std::set<std::pair<int, int>>{{1, 3}, {2, 4}}) return 2;
  if (meet == std::set<std::pair<int, int>>{{1, 2}, {3, 4}}) return 3;
  throw DataError("round-3 pairing does not match any setting");
}

inline std::map<std::pair<int, std::string>, std::vector<const GameRecord*>> group_map(
    const HistoryDataset& ds) {
  std::map<std::pair<int, std::string>, std::vector<const GameRecord*>> groups;
  for (const auto& g : ds.games) groups[{g.edition, g.group_id}].push_back(&g);
  return groups;
}

}  // namespace detail

struct SettingsReport {
  std::array<int, 3> occurrences{};
  std::array<double, 3> frequencies{};
  int n_groups = 0;
};

/// How often each last-round setting occurred in the sample.
inline SettingsReport settings_frequencies(const HistoryDataset& ds) {
  SettingsReport report;
  for (const auto& [key, members] : detail::group_map(ds)) {
    const int s = detail::setting_of_group(members);
    ++report.occurrences[static_cast<std::size_t>(s - 1)];
    ++report.n_groups;
  }
  for (std::size_t i = 0; i < 3; ++i)
    report.frequencies[i] =
        static_cast<double>(report.occurrences[i]) / static_cast<double>(report.n_groups);
  return report;
}

struct ClassCounts {
  std::array<long, 3> counts{};  // competitive, collusive, stakeless
  long n_games = 0;
};

struct ClassesReport {
  std::array<ClassCounts, 3> by_setting;  // index = setting - 1
};

/// Classifies every real round-3 game from the actual round-1/2 standings,
/// with the other round-3 game of the group as the scenario source, grouped
/// by the setting the group realized.
inline ClassesReport class_frequencies(const HistoryDataset& ds,
                                       const PointsSystem& ps = {3, 1}) {
  ClassesReport report;
  for (const auto& [key, members] : detail::group_map(ds)) {
    const int setting = detail::setting_of_group(members);
    std::vector<GameResult> early;
    std::vector<const GameRecord*> last;
    for (const auto* g : members) {
      if (g->round <= 2)
        early.push_back({g->team_home, g->team_away, g->goals_home, g->goals_away});
      else
        last.push_back(g);
    }
    const auto table = compute_table(early, ps);
    auto& bucket = report.by_setting[static_cast<std::size_t>(setting - 1)];
    for (std::size_t i = 0; i < last.size(); ++i) {
      GroupContext ctx;
      ctx.table = table;
      ctx.ps = ps;
      ctx.rule = QualRule{2, std::nullopt};
      ctx.focal_game = {last[i]->team_home, last[i]->team_away};
      const auto* other = last[1 - i];
      ctx.parallel_game = {other->team_home, other->team_away};
      const auto verdict = classify(ctx).verdict;
      ++bucket.counts[static_cast<std::size_t>(
          verdict == Verdict::Competitive ? 0 : verdict == Verdict::Collusive ? 1 : 2)];
      ++bucket.n_games;
    }
  }
  return report;
}

// Model-vs-sample comparison: per-cell mean and standard deviation of exact
// score counts over re-simulations of the sample's rating pairs, the
// absolute goal-difference histogram, and draw-frequency statistics.
struct ValidationReport {
  std::array<std::array<double, 5>, 5> cell_mean{};
  std::array<std::array<double, 5>, 5> cell_std{};
  std::vector<double> diff_hist_sample;  // index = |goal difference|
  std::vector<double> diff_hist_model;
  double draw_freq_mean = 0.0;
  double draw_freq_std = 0.0;
  double draw_freq_sample = 0.0;
  long iterations = 0;
  std::uint64_t seed = 0;
  long n_games = 0;
};

inline ValidationReport model_validation(const HistoryDataset& ds, const ScoreModel& model,
                                         double gap, long iterations, std::uint64_t seed) {
  if (!is_exact_score(model)) throw std::invalid_argument("model has no goal scale");
  if (iterations < 2) throw std::invalid_argument("iterations must be >= 2");
  struct Pair {
    double hi = 0.0, lo = 0.0;
  };
  std::vector<Pair> pairs;
  std::vector<int> sample_diffs;
  long sample_draws = 0;
  const double scale = std::exp(gap);
  for (const auto& g : ds.games) {
    if (g.round > 2) continue;
    const bool home_is_higher = g.elo_home >= g.elo_away;
    const double t_hi = ((home_is_higher ? g.elo_home : g.elo_away) - ds.pool_min) /
                        (ds.pool_max - ds.pool_min);
    const double t_lo = ((home_is_higher ? g.elo_away : g.elo_home) - ds.pool_min) /
                        (ds.pool_max - ds.pool_min);
    pairs.push_back({1.0 + scale * t_hi, 1.0 + scale * t_lo});
    const int hi_goals = home_is_higher ? g.goals_home : g.goals_away;
    const int lo_goals = home_is_higher ? g.goals_away : g.goals_home;
    sample_diffs.push_back(hi_goals - lo_goals);
    if (hi_goals == lo_goals) ++sample_draws;
  }
  const long n_games = static_cast<long>(pairs.size());
  if (n_games == 0) throw DataError("no round-1/2 games to validate against");

  ValidationReport report;
  report.iterations = iterations;
  report.seed = seed;
  report.n_games = n_games;

  std::array<std::array<double, 5>, 5> sum{};
  std::array<std::array<double, 5>, 5> sumsq{};
  double draw_sum = 0.0, draw_sumsq = 0.0;
  std::vector<long> model_diff_counts;
  for (long it = 0; it < iterations; ++it) {
    std::array<std::array<int, 5>, 5> cells{};
    long draws = 0;
    for (std::size_t gi = 0; gi < pairs.size(); ++gi) {
      RandomStream rng(seed, static_cast<std::uint64_t>(it), static_cast<std::uint64_t>(gi));
      const Score s = sample_score(model, pairs[gi].hi, pairs[gi].lo, rng);
      if (s.home <= 4 && s.away <= 4)
        ++cells[static_cast<std::size_t>(s.home)][static_cast<std::size_t>(s.away)];
      if (s.home == s.away) ++draws;
      const int diff = std::abs(s.home - s.away);
      if (static_cast<std::size_t>(diff) >= model_diff_counts.size())
        model_diff_counts.resize(static_cast<std::size_t>(diff) + 1, 0);
      ++model_diff_counts[static_cast<std::size_t>(diff)];
    }
    for (std::size_t a = 0; a < 5; ++a)
      for (std::size_t b = 0; b < 5; ++b) {
        sum[a][b] += cells[a][b];
        sumsq[a][b] += static_cast<double>(cells[a][b]) * cells[a][b];
      }
    const double freq = static_cast<double>(draws) / static_cast<double>(n_games);
    draw_sum += freq;
    draw_sumsq += freq * freq;
  }

  const double iters = static_cast<double>(iterations);
  for (std::size_t a = 0; a < 5; ++a)
    for (std::size_t b = 0; b < 5; ++b) {
      const double mean = sum[a][b] / iters;
      report.cell_mean[a][b] = mean;
      report.cell_std[a][b] =
          std::sqrt(std::max(0.0, (sumsq[a][b] - iters * mean * mean) / (iters - 1.0)));
    }
  report.draw_freq_mean = draw_sum / iters;
  report.draw_freq_std = std::sqrt(
      std::max(0.0, (draw_sumsq - iters * report.draw_freq_mean * report.draw_freq_mean) /
                        (iters - 1.0)));
  report.draw_freq_sample = static_cast<double>(sample_draws) / static_cast<double>(n_games);

  std::size_t max_diff = model_diff_counts.size();
  for (const int d : sample_diffs)
    max_diff = std::max(max_diff, static_cast<std::size_t>(std::abs(d)) + 1);
  report.diff_hist_sample.assign(max_diff, 0.0);
  report.diff_hist_model.assign(max_diff, 0.0);
  for (const int d : sample_diffs)
    report.diff_hist_sample[static_cast<std::size_t>(std::abs(d))] += 1.0 / n_games;
  for (std::size_t d = 0; d < model_diff_counts.size(); ++d)
    report.diff_hist_model[d] =
        static_cast<double>(model_diff_counts[d]) / (iters * static_cast<double>(n_games));
  return report;
}

}  // namespace groupstage
