#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "groupstage/rng.hpp"
#include "groupstage/standings.hpp"
#include "support/test_helpers.hpp"

using namespace groupstage;

namespace {

// The 1982 group after five games, before West Germany vs Austria.
const std::vector<GameResult> kGijonGames = {
    {"West Germany", "Algeria", 1, 2}, {"Austria", "Chile", 1, 0},
    {"West Germany", "Chile", 4, 1},   {"Algeria", "Austria", 0, 2},
    {"Algeria", "Chile", 3, 2},
};

}  // namespace

TEST_CASE("group table for the 1982 group after five games") {
  const auto table = compute_table(kGijonGames, {2, 1});
  REQUIRE(table.size() == 4);
  REQUIRE(table[0].team == "Austria");
  REQUIRE(table[0].points == 4);
  REQUIRE(table[0].goal_diff == 3);
  REQUIRE(table[0].played == 2);
  REQUIRE(table[1].team == "Algeria");
  REQUIRE(table[1].points == 4);
  REQUIRE(table[1].goal_diff == 0);
  REQUIRE(table[1].played == 3);
  REQUIRE(table[2].team == "West Germany");
  REQUIRE(table[2].points == 2);
  REQUIRE(table[2].goal_diff == 2);
  REQUIRE(table[3].team == "Chile");
  REQUIRE(table[3].points == 0);
  REQUIRE(table[3].goal_diff == -5);
}

TEST_CASE("a one-goal win flips the final ranking") {
  const auto before = compute_table(kGijonGames, {2, 1});
  const auto after = apply_hypothetical(before, {"West Germany", "Austria"}, 1, {2, 1});
  REQUIRE(after[0].team == "West Germany");
  REQUIRE(after[0].points == 4);
  REQUIRE(after[0].goal_diff == 3);
  REQUIRE(after[0].played == 3);
  REQUIRE(after[1].team == "Austria");
  REQUIRE(after[1].points == 4);
  REQUIRE(after[1].goal_diff == 2);
  REQUIRE(after[2].team == "Algeria");
  REQUIRE(after[2].points == 4);
  REQUIRE(after[2].goal_diff == 0);
  // the original is untouched
  REQUIRE(before[0].team == "Austria");
  REQUIRE(before[2].played == 2);
}

TEST_CASE("hypothetical draws and mirrored results") {
  const auto before = compute_table(kGijonGames, {2, 1});
  const auto drawn = apply_hypothetical(before, {"West Germany", "Austria"}, 0, {2, 1});
  int wg_pts = 0, at_pts = 0, wg_gd = 0;
  for (const auto& l : drawn) {
    if (l.team == "West Germany") {
      wg_pts = l.points;
      wg_gd = l.goal_diff;
    }
    if (l.team == "Austria") at_pts = l.points;
  }
  REQUIRE(wg_pts == 3);
  REQUIRE(at_pts == 5);
  REQUIRE(wg_gd == 2);

  const auto plus = apply_hypothetical(before, {"West Germany", "Austria"}, 2, {3, 1});
  const auto minus = apply_hypothetical(before, {"Austria", "West Germany"}, -2, {3, 1});
  for (std::size_t i = 0; i < plus.size(); ++i) {
    REQUIRE(plus[i].team == minus[i].team);
    REQUIRE(plus[i].points == minus[i].points);
    REQUIRE(plus[i].goal_diff == minus[i].goal_diff);
  }
}

TEST_CASE("all-drawn groups collapse to an exact tie") {
  const std::vector<GameResult> games = {{"A", "B", 1, 1}, {"C", "D", 0, 0},
                                         {"A", "C", 2, 2}, {"B", "D", 1, 1},
                                         {"A", "D", 0, 0}, {"B", "C", 3, 3}};
  const auto table = compute_table(games, {3, 1});
  for (const auto& l : table) {
    REQUIRE(l.points == 3);
    REQUIRE(l.goal_diff == 0);
    REQUIRE(l.played == 3);
  }
}

TEST_CASE("duplicate fixtures and self-play are rejected") {
  REQUIRE_THROWS_WITH(compute_table({{"A", "B", 1, 0}, {"B", "A", 0, 0}}, {3, 1}),
                      Catch::Matchers::ContainsSubstring("duplicate fixture"));
  REQUIRE_THROWS(compute_table({{"A", "A", 1, 0}}, {3, 1}));
  REQUIRE_THROWS(compute_table({{"A", "B", 1, 0}}, {1, 2}));  // draw worth more than a win
}

TEST_CASE("points and goal difference are conserved") {
  RandomStream rng(314);
  for (int rep = 0; rep < 100; ++rep) {
    const PointsSystem ps{3, 1};
    std::vector<GameResult> games;
    int decisive = 0, drawn = 0;
    const char* names[4] = {"A", "B", "C", "D"};
    for (int a = 0; a < 4; ++a) {
      for (int b = a + 1; b < 4; ++b) {
        const int ga = static_cast<int>(rng.uniform(0.0, 5.0));
        const int gb = static_cast<int>(rng.uniform(0.0, 5.0));
        games.push_back({names[a], names[b], ga, gb});
        ga == gb ? ++drawn : ++decisive;
      }
    }
    const auto table = compute_table(games, ps);
    int pts = 0, gd = 0;
    for (const auto& l : table) {
      pts += l.points;
      gd += l.goal_diff;
    }
    REQUIRE(pts == ps.win * decisive + 2 * ps.draw * drawn);
    REQUIRE(gd == 0);
  }
}

TEST_CASE("qualification status on the final 1982 table") {
  const auto final_table = apply_hypothetical(compute_table(kGijonGames, {2, 1}),
                                              {"West Germany", "Austria"}, 1, {2, 1});
  const QualRule rule{2, std::nullopt};
  REQUIRE(qual_status(final_table, "West Germany", rule) == QualStatus::Clean);
  REQUIRE(qual_status(final_table, "Austria", rule) == QualStatus::Clean);
  REQUIRE(qual_status(final_table, "Algeria", rule) == QualStatus::None);
  REQUIRE(qual_status(final_table, "Chile", rule) == QualStatus::None);
}

TEST_CASE("an exact tie across the cut is shared for both teams") {
  const std::vector<TeamLine> table = {
      {"A", 6, 4, 2}, {"B", 3, 1, 2}, {"C", 3, 1, 2}, {"D", 0, -6, 2}};
  const QualRule rule{2, std::nullopt};
  REQUIRE(qual_status(table, "B", rule) == QualStatus::Shared);
  REQUIRE(qual_status(table, "C", rule) == QualStatus::Shared);
  REQUIRE(qual_status(table, "A", rule) == QualStatus::Clean);
  REQUIRE(qual_status(table, "D", rule) == QualStatus::None);
}

TEST_CASE("third place backed by the pool of other thirds") {
  std::vector<TeamLine> table = {{"A", 9, 5, 3}, {"B", 6, 2, 3}, {"C", 6, 1, 3}, {"D", 0, -8, 3}};
  ThirdsPool pool;
  pool.pool_slots = 8;
  for (int i = 0; i < 7; ++i) pool.entries.emplace_back(7, 3);  // strictly better
  for (int i = 0; i < 4; ++i) pool.entries.emplace_back(3, -2);
  const QualRule rule{2, ThirdsPool{pool}};
  REQUIRE(qual_status(table, "C", rule) == QualStatus::Clean);
  REQUIRE(testsupport::oracle_qual_status(table, "C", rule) == QualStatus::Clean);

  // one more strictly-better third pushes C to ninth
  ThirdsPool tight = pool;
  tight.entries[7] = {7, 3};
  const QualRule rule9{2, tight};
  REQUIRE(qual_status(table, "C", rule9) == QualStatus::None);
  REQUIRE(testsupport::oracle_qual_status(table, "C", rule9) == QualStatus::None);

  // pool ties: counted against in the worst case, in favor in the best
  ThirdsPool tied = pool;
  tied.entries[7] = {6, 1};
  tied.entries[8] = {6, 1};
  const QualRule rule_tied{2, tied};
  REQUIRE(qual_status(table, "C", rule_tied) == QualStatus::Shared);
  REQUIRE(testsupport::oracle_qual_status(table, "C", rule_tied) == QualStatus::Shared);
}

TEST_CASE("status never drops when goal difference improves") {
  RandomStream rng(2025);
  for (int rep = 0; rep < 400; ++rep) {
    auto table = testsupport::random_table(rng, 4);
    const auto rule = testsupport::random_rule(rng);
    const auto before = qual_status(table, "B", rule);
    for (auto& l : table)
      if (l.team == "B") ++l.goal_diff;
    const auto after = qual_status(table, "B", rule);
    REQUIRE(static_cast<int>(after) >= static_cast<int>(before));
  }
}

TEST_CASE("status agrees with the all-orderings oracle") {
  RandomStream rng(424242);
  for (int rep = 0; rep < 600; ++rep) {
    const int n_teams = rng.uniform() < 0.5 ? 4 : 5;
    const auto table = testsupport::random_table(rng, n_teams);
    const auto rule = testsupport::random_rule(rng);
    for (const auto& line : table) {
      REQUIRE(qual_status(table, line.team, rule) ==
              testsupport::oracle_qual_status(table, line.team, rule));
    }
  }
}
