#include <catch2/catch_amalgamated.hpp>

#include "groupstage/json_io.hpp"

using namespace groupstage;

TEST_CASE("model parameters round-trip through JSON") {
  const std::vector<std::pair<ScoreModel, double>> cases = {
      {SimplePoisson{2.5156}, 3.7581},
      {BivariatePoisson{2.5156, 2.7518e-10}, 3.7582},
      {NegativeBinomial{0.1747, 13}, 3.4997},
      {OrderedLogistic{0.0043, -0.55, 0.61}, 0.0},
      {UniformGuess{}, 0.0},
  };
  for (const auto& [model, gap] : cases) {
    const auto j = model_to_json(model, gap);
    const auto [back, back_gap] = model_from_json(j);
    REQUIRE(back_gap == gap);
    REQUIRE(back.index() == model.index());
    REQUIRE(model_to_json(back, back_gap) == j);
  }
}

TEST_CASE("model JSON rejects unknown or incomplete families") {
  REQUIRE_THROWS_AS(model_from_json(Json{{"family", "skellam"}}), DataError);
  REQUIRE_THROWS_AS(model_from_json(Json{{"family", "poisson"}}), DataError);
  REQUIRE_THROWS_AS(model_from_json(Json{{"alpha", 2.0}}), DataError);
  REQUIRE_THROWS_AS(model_from_json(Json{{"family", "olr"},
                                         {"coefficient", 0.1},
                                         {"thresholds", {1.0}}}),
                    DataError);
}

TEST_CASE("contexts round-trip and classify identically") {
  GroupContext ctx;
  ctx.table = {{"Austria", 4, 3, 2},
               {"Algeria", 4, 0, 3},
               {"West Germany", 2, 2, 2},
               {"Chile", 0, -5, 3}};
  ctx.focal_game = {"West Germany", "Austria"};
  ctx.ps = {2, 1};
  ctx.rule = {2, std::nullopt};

  const auto j = context_to_json(ctx);
  const auto back = context_from_json(j);
  REQUIRE(back.table.size() == 4);
  REQUIRE_FALSE(back.parallel_game.has_value());
  REQUIRE(back.ps.win == 2);

  const auto a = classify(ctx);
  const auto b = classify(back);
  REQUIRE(a.verdict == b.verdict);
  REQUIRE(a.zone.lo == b.zone.lo);
  REQUIRE(a.zone.hi == b.zone.hi);

  // with a thirds pool attached
  ThirdsPool pool;
  pool.pool_slots = 8;
  for (int i = 0; i < 11; ++i) pool.entries.emplace_back(i % 7, i - 5);
  ctx.rule.thirds = pool;
  ctx.parallel_game = std::pair<std::string, std::string>{"Algeria", "Chile"};
  const auto back2 = context_from_json(context_to_json(ctx));
  REQUIRE(back2.rule.thirds.has_value());
  REQUIRE(back2.rule.thirds->entries == pool.entries);
  REQUIRE(back2.parallel_game->first == "Algeria");
}

TEST_CASE("context JSON rejects malformed documents") {
  REQUIRE_THROWS_AS(context_from_json(Json{{"focal_game", {"A", "B"}}}), DataError);
  Json j;
  j["table"] = Json::array({Json{{"team", "A"}, {"points", 1}, {"goal_diff", 0}}});
  j["focal_game"] = {"A"};
  REQUIRE_THROWS_AS(context_from_json(j), DataError);
}

TEST_CASE("classification and report JSON carry the documented fields") {
  const auto c = classify_targets({false, 1}, {false, -2});
  const auto j = classified_to_json(c);
  REQUIRE(j.at("verdict") == "collusive");
  REQUIRE(j.at("zone").at("lo") == 1);
  REQUIRE(j.at("zone").at("hi") == 2);
  REQUIRE(j.at("target_i").at("gd_star") == 1);

  const auto stakeless = classified_to_json(classify_targets({true, 0}, {true, 0}));
  REQUIRE(stakeless.at("verdict") == "stakeless");
  REQUIRE(stakeless.at("zone").is_null());
  REQUIRE(stakeless.at("target_i").at("indifferent") == true);

  ExperimentConfig cfg;
  cfg.format = make_format(FormatKind::G4Top2);
  cfg.choice = {1, std::nullopt};
  cfg.model = SimplePoisson{2.5156};
  cfg.gap = 3.7581;
  cfg.ps = {3, 1};
  cfg.iterations = 40;
  cfg.master_seed = 5;
  const auto report = run(cfg);
  const auto rj = report_to_json(report);
  REQUIRE(rj.contains("config"));
  REQUIRE(rj.contains("n_games"));
  REQUIRE(rj.contains("frequencies"));
  REQUIRE(rj.contains("stderr"));
  REQUIRE(rj.at("config").at("format") == "g4");
  REQUIRE(rj.at("n_games") == 80);
  for (const char* key : {"competitive", "collusive", "stakeless"}) {
    REQUIRE(rj.at("frequencies").contains(key));
    REQUIRE(rj.at("stderr").contains(key));
  }
}

TEST_CASE("format names round-trip") {
  for (const auto kind : {FormatKind::G4Top2, FormatKind::G3Top2, FormatKind::G5Top2,
                          FormatKind::G4BestThirds, FormatKind::G5BestThirds})
    REQUIRE(format_from_name(format_name(kind)) == kind);
  REQUIRE_THROWS(format_from_name("g6"));
}
