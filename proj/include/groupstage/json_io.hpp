#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include <json.hpp>

#include "groupstage/calibration.hpp"
#include "groupstage/classification.hpp"
#include "groupstage/dataio.hpp"
#include "groupstage/montecarlo.hpp"

namespace groupstage {

// Insertion-ordered documents keep every emitted report byte-stable.
using Json = nlohmann::ordered_json;

inline const char* family_name(const ScoreModel& model) {
  if (std::holds_alternative<SimplePoisson>(model)) return "poisson";
  if (std::holds_alternative<BivariatePoisson>(model)) return "bipoisson";
  if (std::holds_alternative<NegativeBinomial>(model)) return "negbin";
  if (std::holds_alternative<OrderedLogistic>(model)) return "olr";
  return "uniform";
}

inline Json model_to_json(const ScoreModel& model, double gap) {
  Json j;
  j["family"] = family_name(model);
  if (const auto* m = std::get_if<SimplePoisson>(&model)) {
    j["alpha"] = m->alpha;
  } else if (const auto* m = std::get_if<BivariatePoisson>(&model)) {
    j["alpha"] = m->alpha;
    j["beta"] = m->beta;
  } else if (const auto* m = std::get_if<NegativeBinomial>(&model)) {
    j["alpha"] = m->alpha;
    j["r"] = m->r;
  } else if (const auto* m = std::get_if<OrderedLogistic>(&model)) {
    j["coefficient"] = m->coefficient;
    j["thresholds"] = {m->t1, m->t2};
  }
  j["gap"] = gap;
  return j;
}

inline std::pair<ScoreModel, double> model_from_json(const Json& j) {
  if (!j.contains("family")) throw DataError("model JSON: missing 'family'");
  const std::string family = j.at("family").get<std::string>();
  const auto need = [&](const char* key) -> const Json& {
    if (!j.contains(key))
      throw DataError("model JSON: family '" + family + "' needs '" + key + "'");
    return j.at(key);
  };
  const double gap = j.contains("gap") ? j.at("gap").get<double>() : 0.0;
  try {
    if (family == "poisson") return {SimplePoisson{need("alpha").get<double>()}, gap};
    if (family == "bipoisson")
      return {BivariatePoisson{need("alpha").get<double>(), need("beta").get<double>()}, gap};
    if (family == "negbin")
      return {NegativeBinomial{need("alpha").get<double>(), need("r").get<int>()}, gap};
    if (family == "olr") {
      const auto& t = need("thresholds");
      if (!t.is_array() || t.size() != 2)
        throw DataError("model JSON: 'thresholds' must be [t1, t2]");
      return {OrderedLogistic{need("coefficient").get<double>(), t[0].get<double>(),
                              t[1].get<double>()},
              gap};
    }
    if (family == "uniform") return {UniformGuess{}, gap};
  } catch (const Json::exception& e) {
    throw DataError(std::string("model JSON: ") + e.what());
  }
  throw DataError("model JSON: unknown family '" + family + "'");
}

inline Json fit_result_to_json(const FitResult& fr, int n_obs) {
  Json j;
  j["model"] = model_to_json(fr.model, fr.gap);
  j["metrics"] = Json{{"log_likelihood", fr.log_likelihood},
                      {"n_params", fr.n_params},
                      {"n_obs", n_obs},
                      {"aic", fr.aic},
                      {"bic", fr.bic},
                      {"logloss", fr.logloss},
                      {"brier", fr.brier}};
  j["converged"] = fr.converged;
  j["n_restarts_used"] = fr.n_restarts_used;
  return j;
}

inline Json context_to_json(const GroupContext& ctx) {
  Json j;
  j["table"] = Json::array();
  for (const auto& l : ctx.table)
    j["table"].push_back(Json{{"team", l.team},
                              {"points", l.points},
                              {"goal_diff", l.goal_diff},
                              {"played", l.played}});
  j["focal_game"] = {ctx.focal_game.first, ctx.focal_game.second};
  j["parallel_game"] =
      ctx.parallel_game ? Json{ctx.parallel_game->first, ctx.parallel_game->second} : Json();
  j["points_system"] = Json{{"win", ctx.ps.win}, {"draw", ctx.ps.draw}};
  Json rule{{"slots", ctx.rule.slots}};
  if (ctx.rule.thirds) {
    Json entries = Json::array();
    for (const auto& [pts, gd] : ctx.rule.thirds->entries) entries.push_back({pts, gd});
    rule["thirds_pool"] = Json{{"entries", entries}, {"pool_slots", ctx.rule.thirds->pool_slots}};
  } else {
    rule["thirds_pool"] = Json();
  }
  j["rule"] = rule;
  return j;
}

inline GroupContext context_from_json(const Json& j) {
  try {
    GroupContext ctx;
    if (!j.contains("table") || !j.at("table").is_array())
      throw DataError("context JSON: missing 'table' array");
    for (const auto& e : j.at("table")) {
      TeamLine l;
      l.team = e.at("team").get<std::string>();
      l.points = e.at("points").get<int>();
      l.goal_diff = e.at("goal_diff").get<int>();
      l.played = e.contains("played") ? e.at("played").get<int>() : 0;
      ctx.table.push_back(std::move(l));
    }
    const auto& focal = j.at("focal_game");
    if (!focal.is_array() || focal.size() != 2)
      throw DataError("context JSON: 'focal_game' must name two teams");
    ctx.focal_game = {focal[0].get<std::string>(), focal[1].get<std::string>()};
    if (j.contains("parallel_game") && !j.at("parallel_game").is_null()) {
      const auto& par = j.at("parallel_game");
      if (!par.is_array() || par.size() != 2)
        throw DataError("context JSON: 'parallel_game' must name two teams");
      ctx.parallel_game = {par[0].get<std::string>(), par[1].get<std::string>()};
    }
    const auto& ps = j.at("points_system");
    ctx.ps = {ps.at("win").get<int>(), ps.at("draw").get<int>()};
    const auto& rule = j.at("rule");
    ctx.rule.slots = rule.at("slots").get<int>();
    if (rule.contains("thirds_pool") && !rule.at("thirds_pool").is_null()) {
      ThirdsPool pool;
      pool.pool_slots = rule.at("thirds_pool").at("pool_slots").get<int>();
      for (const auto& e : rule.at("thirds_pool").at("entries"))
        pool.entries.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
      ctx.rule.thirds = std::move(pool);
    }
    return ctx;
  } catch (const Json::exception& e) {
    throw DataError(std::string("context JSON: ") + e.what());
  }
}

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Competitive:
      return "competitive";
    case Verdict::Collusive:
      return "collusive";
    case Verdict::Stakeless:
      return "stakeless";
  }
  return "competitive";
}

inline Json target_to_json(const Target& t) {
  Json j;
  j["indifferent"] = t.indifferent;
  if (!t.indifferent) j["gd_star"] = t.gd_star;
  return j;
}

inline Json range_to_json(const GdRange& r) {
  if (r.empty()) return Json();
  return Json{{"lo", r.lo}, {"hi", r.hi}};
}

inline Json classified_to_json(const ClassifiedGame& c) {
  Json j;
  j["verdict"] = verdict_name(c.verdict);
  j["team_i"] = c.team_i;
  j["team_j"] = c.team_j;
  j["target_i"] = target_to_json(c.target_i);
  j["target_j"] = target_to_json(c.target_j);
  j["zone"] = range_to_json(c.zone);
  if (c.satisfied_team) {
    j["satisfied_team"] = *c.satisfied_team;
    j["satisfied"] = range_to_json(*c.satisfied);
  }
  return j;
}

inline const char* format_name(FormatKind kind) {
  switch (kind) {
    case FormatKind::G4Top2:
      return "g4";
    case FormatKind::G3Top2:
      return "g3";
    case FormatKind::G5Top2:
      return "g5";
    case FormatKind::G4BestThirds:
      return "g4best3";
    case FormatKind::G5BestThirds:
      return "g5best3";
  }
  return "g4";
}

inline FormatKind format_from_name(const std::string& name) {
  if (name == "g4") return FormatKind::G4Top2;
  if (name == "g3") return FormatKind::G3Top2;
  if (name == "g5") return FormatKind::G5Top2;
  if (name == "g4best3") return FormatKind::G4BestThirds;
  if (name == "g5best3") return FormatKind::G5BestThirds;
  throw std::invalid_argument("unknown format '" + name + "' (expected g4|g3|g5|g4best3|g5best3)");
}

inline Json config_to_json(const ExperimentConfig& cfg) {
  Json j;
  j["format"] = format_name(cfg.format.kind);
  j["setting"] = cfg.choice.setting;
  j["passive_pot"] = cfg.choice.passive_pot ? Json(pot_name(*cfg.choice.passive_pot)) : Json();
  j["points"] = Json{{"win", cfg.ps.win}, {"draw", cfg.ps.draw}};
  j["iterations"] = cfg.iterations;
  j["seed"] = cfg.master_seed;
  j["unit"] = cfg.unit == CountUnit::PerGame ? "game" : "group";
  j["model"] = model_to_json(cfg.model, cfg.gap);
  return j;
}

inline Json report_to_json(const FrequencyReport& r) {
  Json j;
  j["config"] = config_to_json(r.config);
  j["n_games"] = r.n_games;
  j["counts"] = Json{{"competitive", r.counts[0]},
                     {"collusive", r.counts[1]},
                     {"stakeless", r.counts[2]}};
  j["frequencies"] = Json{{"competitive", r.frequencies[0]},
                          {"collusive", r.frequencies[1]},
                          {"stakeless", r.frequencies[2]}};
  j["stderr"] = Json{{"competitive", r.std_errors[0]},
                     {"collusive", r.std_errors[1]},
                     {"stakeless", r.std_errors[2]}};
  return j;
}

inline Json validation_to_json(const ValidationReport& v) {
  Json j;
  j["iterations"] = v.iterations;
  j["seed"] = v.seed;
  j["n_games"] = v.n_games;
  Json mean = Json::array();
  Json std = Json::array();
  for (std::size_t a = 0; a < 5; ++a) {
    mean.push_back(v.cell_mean[a]);
    std.push_back(v.cell_std[a]);
  }
  j["score_grid"] = Json{{"rows", "goals of the higher-Elo team"},
                         {"mean", mean},
                         {"std", std}};
  j["draw_frequency"] = Json{{"model_mean", v.draw_freq_mean},
                             {"model_std", v.draw_freq_std},
                             {"sample", v.draw_freq_sample}};
  return j;
}

}  // namespace groupstage
