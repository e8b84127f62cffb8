#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "groupstage/montecarlo.hpp"

using namespace groupstage;

namespace {

ExperimentConfig small_config(FormatKind kind, int setting, long iterations) {
  ExperimentConfig cfg;
  cfg.format = make_format(kind);
  cfg.choice = {setting, cfg.format.group_size == 5 ? std::optional<int>(5) : std::nullopt};
  cfg.model = SimplePoisson{2.5156};
  cfg.gap = 3.7581;
  cfg.ps = {3, 1};
  cfg.iterations = iterations;
  cfg.master_seed = 97;
  return cfg;
}

}  // namespace

TEST_CASE("reports are deterministic and thread-count invariant") {
  auto cfg = small_config(FormatKind::G4Top2, 1, 800);
  const auto once = run(cfg);
  const auto again = run(cfg);
  REQUIRE(once.counts == again.counts);

  cfg.threads = 4;
  const auto threaded = run(cfg);
  REQUIRE(once.counts == threaded.counts);
  REQUIRE(once.n_games == threaded.n_games);
}

TEST_CASE("counting units and totals") {
  const auto per_game = run(small_config(FormatKind::G4Top2, 2, 500));
  REQUIRE(per_game.n_games == 1000);  // two last-round games per iteration
  REQUIRE(per_game.counts[0] + per_game.counts[1] + per_game.counts[2] == 1000);
  REQUIRE(per_game.frequencies[0] + per_game.frequencies[1] + per_game.frequencies[2] ==
          Catch::Approx(1.0).margin(1e-12));

  const auto g3 = run(small_config(FormatKind::G3Top2, 1, 500));
  REQUIRE(g3.n_games == 500);

  auto grouped_cfg = small_config(FormatKind::G4Top2, 2, 500);
  grouped_cfg.unit = CountUnit::PerGroup;
  const auto grouped = run(grouped_cfg);
  REQUIRE(grouped.n_games == 500);
  // a group counts its worst verdict, so collusive groups can only get rarer
  // than collusive games are frequent
  REQUIRE(grouped.counts[1] * 2 >= per_game.counts[1]);
}

TEST_CASE("standard errors follow the binomial formula and shrink with n") {
  const auto small = run(small_config(FormatKind::G4Top2, 1, 600));
  for (int k = 0; k < 3; ++k) {
    const double f = small.frequencies[static_cast<std::size_t>(k)];
    REQUIRE(small.std_errors[static_cast<std::size_t>(k)] ==
            Catch::Approx(std::sqrt(f * (1.0 - f) / static_cast<double>(small.n_games)))
                .margin(1e-12));
  }
  const auto big = run(small_config(FormatKind::G4Top2, 1, 1200));
  const double ratio = big.std_errors[0] / small.std_errors[0];
  REQUIRE(ratio == Catch::Approx(1.0 / std::sqrt(2.0)).margin(0.08));
}

TEST_CASE("invalid configurations are rejected") {
  auto cfg = small_config(FormatKind::G4Top2, 1, 0);
  REQUIRE_THROWS(run(cfg));
  cfg.iterations = 10;
  cfg.threads = 0;
  REQUIRE_THROWS(run(cfg));
  cfg.threads = 1;
  cfg.model = UniformGuess{};
  REQUIRE_THROWS_WITH(run(cfg), Catch::Matchers::ContainsSubstring("iteration 0"));
}

TEST_CASE("sweeps preserve input order and reject empty input") {
  REQUIRE_THROWS(sweep({}));
  std::vector<ExperimentConfig> configs = {small_config(FormatKind::G4Top2, 3, 200),
                                           small_config(FormatKind::G3Top2, 1, 200),
                                           small_config(FormatKind::G4Top2, 1, 200)};
  const auto reports = sweep(configs);
  REQUIRE(reports.size() == 3);
  REQUIRE(reports[0].config.choice.setting == 3);
  REQUIRE(reports[1].config.format.kind == FormatKind::G3Top2);
  REQUIRE(reports[2].config.choice.setting == 1);
  // sweep must agree with standalone runs
  const auto solo = run(configs[1]);
  REQUIRE(solo.counts == reports[1].counts);
}
