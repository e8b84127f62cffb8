// Command-line front end: calibrate, simulate, sweep, classify, history and
// the one-shot reproduce driver. Reports go to files or stdout, diagnostics
// to stderr. Exit codes: 0 success, 1 usage error, 2 data error.

#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "groupstage/dataio.hpp"
#include "groupstage/json_io.hpp"
#include "groupstage/montecarlo.hpp"
#include "groupstage/version.hpp"

namespace {

using groupstage::DataError;
using groupstage::Json;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("GROUPSTAGE_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw std::invalid_argument("GROUPSTAGE_SEED must be an unsigned integer");
    }
  }
  return 0;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json(const std::string& path) {
  try {
    return Json::parse(read_file(path));
  } catch (const Json::exception& e) {
    throw DataError(path + ": " + e.what());
  }
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path);
  out << content;
}

// Report goes to the named file, or stdout when no path was given.
void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty())
    std::cout << content;
  else
    write_file(out_path, content);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string fnv1a64_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// UTC timestamp; SOURCE_DATE_EPOCH overrides the clock so archived runs can
// be byte-reproduced.
std::string timestamp_utc() {
  std::time_t t = 0;
  if (const char* sde = std::getenv("SOURCE_DATE_EPOCH")) {
    try {
      t = static_cast<std::time_t>(std::stoll(sde));
    } catch (const std::exception&) {
      throw std::invalid_argument("SOURCE_DATE_EPOCH must be an integer");
    }
  } else {
    t = std::time(nullptr);
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

groupstage::PointsSystem parse_points(const std::string& spec) {
  const auto comma = spec.find(',');
  if (comma == std::string::npos)
    throw std::invalid_argument("--points expects W,D (e.g. 3,1)");
  try {
    groupstage::PointsSystem ps{std::stoi(spec.substr(0, comma)),
                                std::stoi(spec.substr(comma + 1))};
    groupstage::validate(ps);
    return ps;
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception&) {
    throw std::invalid_argument("--points expects W,D (e.g. 3,1)");
  }
}

int parse_passive_pot(const std::string& spec) {
  if (spec.size() == 1 && spec[0] >= 'A' && spec[0] <= 'E') return spec[0] - 'A' + 1;
  if (spec.size() == 1 && spec[0] >= 'a' && spec[0] <= 'e') return spec[0] - 'a' + 1;
  if (spec.size() == 1 && spec[0] >= '1' && spec[0] <= '5') return spec[0] - '0';
  throw std::invalid_argument("--passive-pot expects A..E");
}

groupstage::SettingChoice resolve_choice(groupstage::FormatKind kind, int setting,
                                         bool setting_given,
                                         const std::optional<int>& passive) {
  using groupstage::FormatKind;
  const int group_size = groupstage::make_format(kind).group_size;
  groupstage::SettingChoice choice{setting, std::nullopt};
  if (group_size == 3) {
    if (passive) {
      const int derived = 4 - *passive;
      if (setting_given && setting != derived)
        throw std::invalid_argument("--setting and --passive-pot disagree for groups of 3");
      choice.setting = derived;
    }
    choice.passive_pot = 4 - choice.setting;
  } else if (group_size == 5) {
    if (!passive)
      throw std::invalid_argument("--passive-pot is required for groups of 5");
    choice.passive_pot = passive;
  } else if (passive) {
    throw std::invalid_argument("--passive-pot only applies to odd group sizes");
  }
  return choice;
}

groupstage::RescaleMode parse_rescale(const std::string& mode) {
  if (mode == "pooled") return groupstage::RescaleMode::Pooled;
  if (mode == "per-edition") return groupstage::RescaleMode::PerEdition;
  throw std::invalid_argument("--rescale expects pooled|per-edition");
}

groupstage::ModelFamily parse_family(const std::string& name) {
  if (name == "poisson") return groupstage::ModelFamily::Poisson;
  if (name == "bipoisson") return groupstage::ModelFamily::BivariatePoisson;
  if (name == "negbin") return groupstage::ModelFamily::NegativeBinomial;
  if (name == "olr") return groupstage::ModelFamily::OrderedLogistic;
  if (name == "uniform") return groupstage::ModelFamily::Uniform;
  throw std::invalid_argument("unknown family '" + name +
                              "' (expected poisson|bipoisson|negbin|olr|uniform)");
}

std::pair<groupstage::ScoreModel, double> load_exact_params(const std::string& path) {
  const auto [model, gap] = groupstage::model_from_json(read_json(path));
  if (!groupstage::is_exact_score(model))
    throw DataError(path + ": simulation needs an exact-score family (poisson|bipoisson|negbin)");
  return {model, gap};
}

// ---------------------------------------------------------------------------
// calibrate

struct CalibrateArgs {
  std::string data;
  std::string family = "poisson";
  int restarts = 3;
  double tolerance = 1e-8;
  int max_iterations = 2000;
  std::uint64_t seed = 0;
  std::string rescale = "pooled";
  std::string out;
};

int cmd_calibrate(const CalibrateArgs& a) {
  const auto history = groupstage::load_history(a.data);
  const auto ds = groupstage::early_rounds(history);
  groupstage::FitOptions opt;
  opt.restarts = a.restarts;
  opt.tolerance = a.tolerance;
  opt.max_iterations = a.max_iterations;
  opt.seed = a.seed;
  opt.rescale = parse_rescale(a.rescale);
  const auto result = groupstage::fit(parse_family(a.family), ds, opt);
  emit(a.out, dump(groupstage::fit_result_to_json(result, static_cast<int>(ds.records.size()))));
  return 0;
}

// ---------------------------------------------------------------------------
// simulate / sweep

struct SimulateArgs {
  std::string format = "g4";
  int setting = 1;
  bool setting_given = false;
  std::string passive;
  std::string points = "3,1";
  long iterations = 15000;
  std::uint64_t seed = 0;
  std::string params;
  std::string out;
  std::string unit = "game";
  int threads = 1;
};

// Everything except the model, which comes from a params file or an embedded
// sweep entry.
groupstage::ExperimentConfig build_config_shell(const SimulateArgs& a) {
  groupstage::ExperimentConfig cfg;
  const auto kind = groupstage::format_from_name(a.format);
  cfg.format = groupstage::make_format(kind);
  std::optional<int> passive;
  if (!a.passive.empty()) passive = parse_passive_pot(a.passive);
  cfg.choice = resolve_choice(kind, a.setting, a.setting_given, passive);
  cfg.ps = parse_points(a.points);
  cfg.iterations = a.iterations;
  cfg.master_seed = a.seed;
  if (a.unit == "game")
    cfg.unit = groupstage::CountUnit::PerGame;
  else if (a.unit == "group")
    cfg.unit = groupstage::CountUnit::PerGroup;
  else
    throw std::invalid_argument("--unit expects game|group");
  cfg.threads = a.threads;
  return cfg;
}

groupstage::ExperimentConfig build_config(const SimulateArgs& a) {
  groupstage::ExperimentConfig cfg = build_config_shell(a);
  const auto [model, gap] = load_exact_params(a.params);
  cfg.model = model;
  cfg.gap = gap;
  return cfg;
}

int cmd_simulate(const SimulateArgs& a) {
  const auto report = groupstage::run(build_config(a));
  std::cerr << "simulate: " << report.n_games << " games in " << report.elapsed_seconds
            << "s\n";
  emit(a.out, dump(groupstage::report_to_json(report)));
  return 0;
}

struct SweepArgs {
  std::string configs;
  std::string params;
  std::string out;
  int threads = 1;
};

int cmd_sweep(const SweepArgs& a) {
  const Json doc = read_json(a.configs);
  if (!doc.is_array() || doc.empty())
    throw DataError(a.configs + ": expected a nonempty array of configurations");
  std::optional<std::pair<groupstage::ScoreModel, double>> shared;
  if (!a.params.empty()) shared = load_exact_params(a.params);
  std::vector<groupstage::ExperimentConfig> configs;
  for (const auto& item : doc) {
    SimulateArgs sa;
    try {
      sa.format = item.at("format").get<std::string>();
      if (item.contains("setting")) {
        sa.setting = item.at("setting").get<int>();
        sa.setting_given = true;
      }
      if (item.contains("passive_pot") && !item.at("passive_pot").is_null())
        sa.passive = item.at("passive_pot").get<std::string>();
      if (item.contains("points")) {
        const auto& p = item.at("points");
        if (p.is_array())
          sa.points = std::to_string(p.at(0).get<int>()) + "," + std::to_string(p.at(1).get<int>());
        else
          sa.points =
              std::to_string(p.at("win").get<int>()) + "," + std::to_string(p.at("draw").get<int>());
      }
      if (item.contains("iterations")) sa.iterations = item.at("iterations").get<long>();
      if (item.contains("seed")) sa.seed = item.at("seed").get<std::uint64_t>();
      if (item.contains("unit")) sa.unit = item.at("unit").get<std::string>();
    } catch (const Json::exception& e) {
      throw DataError(a.configs + ": " + e.what());
    }
    sa.threads = a.threads;
    groupstage::ExperimentConfig cfg = build_config_shell(sa);
    if (item.contains("model")) {
      const auto [model, gap] = groupstage::model_from_json(item.at("model"));
      if (!groupstage::is_exact_score(model))
        throw DataError(a.configs + ": simulation needs an exact-score family");
      cfg.model = model;
      cfg.gap = gap;
    } else if (shared) {
      cfg.model = shared->first;
      cfg.gap = shared->second;
    } else {
      throw DataError(a.configs + ": configuration has no 'model' and no --params was given");
    }
    configs.push_back(std::move(cfg));
  }
  const auto reports = groupstage::sweep(configs);
  Json out = Json::array();
  for (const auto& r : reports) out.push_back(groupstage::report_to_json(r));
  emit(a.out, dump(out));
  return 0;
}

// ---------------------------------------------------------------------------
// classify

int cmd_classify(const std::string& context_path, const std::string& out) {
  const auto ctx = groupstage::context_from_json(read_json(context_path));
  const auto result = groupstage::classify(ctx);
  emit(out, dump(groupstage::classified_to_json(result)));
  return 0;
}

// ---------------------------------------------------------------------------
// history

struct HistoryArgs {
  std::string data;
  std::string report;
  long iterations = 15000;
  std::uint64_t seed = 0;
  std::string params;
  std::string out;
  std::string hist_out;
};

std::string histogram_csv(const groupstage::ValidationReport& v) {
  std::string csv = "goal_diff,sample_freq,model_freq\n";
  char buf[96];
  for (std::size_t d = 0; d < v.diff_hist_sample.size(); ++d) {
    std::snprintf(buf, sizeof buf, "%zu,%.10g,%.10g\n", d, v.diff_hist_sample[d],
                  v.diff_hist_model[d]);
    csv += buf;
  }
  return csv;
}

Json edition_goals_json(const groupstage::HistoryDataset& ds) {
  Json rows = Json::array();
  for (const auto& r : groupstage::edition_goals(ds))
    rows.push_back(Json{{"edition", r.edition}, {"games", r.games}, {"mean_goals", r.mean_goals}});
  return Json{{"report", "edition_goals"}, {"rounds", "1-2"}, {"rows", rows}};
}

Json score_grid_json(const groupstage::HistoryDataset& ds) {
  const auto grid = groupstage::observed_score_grid(ds);
  Json cells = Json::array();
  for (const auto& row : grid.cells) cells.push_back(row);
  return Json{{"report", "score_grid"},
              {"rows", "goals of the higher-Elo team"},
              {"cells", cells},
              {"omitted_games", grid.omitted},
              {"total_games", grid.total_games}};
}

Json settings_json(const groupstage::HistoryDataset& ds) {
  const auto rep = groupstage::settings_frequencies(ds);
  return Json{{"report", "settings"},
              {"occurrences", rep.occurrences},
              {"frequencies", rep.frequencies},
              {"n_groups", rep.n_groups}};
}

Json classes_json(const groupstage::HistoryDataset& ds) {
  const auto rep = groupstage::class_frequencies(ds);
  Json by_setting = Json::array();
  for (int s = 0; s < 3; ++s) {
    const auto& b = rep.by_setting[static_cast<std::size_t>(s)];
    Json entry{{"setting", s + 1}, {"n_games", b.n_games}};
    Json freq;
    const char* names[3] = {"competitive", "collusive", "stakeless"};
    for (int k = 0; k < 3; ++k) {
      entry["counts"][names[k]] = b.counts[static_cast<std::size_t>(k)];
      freq[names[k]] = b.n_games
                           ? static_cast<double>(b.counts[static_cast<std::size_t>(k)]) /
                                 static_cast<double>(b.n_games)
                           : 0.0;
    }
    entry["frequencies"] = freq;
    by_setting.push_back(entry);
  }
  return Json{{"report", "classes"}, {"by_setting", by_setting}};
}

int cmd_history(const HistoryArgs& a) {
  const auto ds = groupstage::load_history(a.data);
  if (a.report == "edition_goals") {
    emit(a.out, dump(edition_goals_json(ds)));
  } else if (a.report == "score_grid") {
    emit(a.out, dump(score_grid_json(ds)));
  } else if (a.report == "settings") {
    emit(a.out, dump(settings_json(ds)));
  } else if (a.report == "classes") {
    emit(a.out, dump(classes_json(ds)));
  } else if (a.report == "validation") {
    if (a.params.empty())
      throw std::invalid_argument("--report validation requires --params");
    const auto [model, gap] = load_exact_params(a.params);
    const auto v = groupstage::model_validation(ds, model, gap, a.iterations, a.seed);
    Json j = groupstage::validation_to_json(v);
    j["diff_histogram"] = Json{{"sample", v.diff_hist_sample}, {"model", v.diff_hist_model}};
    emit(a.out, dump(j));
    if (!a.hist_out.empty()) write_file(a.hist_out, histogram_csv(v));
  } else {
    throw std::invalid_argument(
        "unknown report (expected edition_goals|score_grid|settings|classes|validation)");
  }
  return 0;
}

// ---------------------------------------------------------------------------
// reproduce

struct ReproduceArgs {
  std::string outdir;
  std::string params;
  std::string data;
  std::uint64_t seed = 0;
  long iterations = 15000;
  int threads = 1;
};

Json quality_table(const std::string& name, groupstage::FormatKind kind,
                   const std::vector<groupstage::PointsSystem>& points_systems,
                   const std::vector<std::optional<int>>& passives, const ReproduceArgs& a,
                   const groupstage::ScoreModel& model, double gap) {
  Json cells = Json::array();
  for (const auto& ps : points_systems) {
    for (const auto& passive : passives) {
      for (int setting = 1; setting <= 3; ++setting) {
        groupstage::ExperimentConfig cfg;
        cfg.format = groupstage::make_format(kind);
        cfg.choice = resolve_choice(kind, setting, true, passive);
        cfg.model = model;
        cfg.gap = gap;
        cfg.ps = ps;
        cfg.iterations = a.iterations;
        cfg.master_seed = a.seed;
        cfg.threads = a.threads;
        const auto report = groupstage::run(cfg);
        Json cell;
        cell["points"] = Json{{"win", ps.win}, {"draw", ps.draw}};
        if (passive) cell["passive_pot"] = groupstage::pot_name(*passive);
        cell["setting"] = setting;
        cell["n_games"] = report.n_games;
        cell["frequencies"] = Json{{"competitive", report.frequencies[0]},
                                   {"collusive", report.frequencies[1]},
                                   {"stakeless", report.frequencies[2]}};
        cell["stderr"] = Json{{"competitive", report.std_errors[0]},
                              {"collusive", report.std_errors[1]},
                              {"stakeless", report.std_errors[2]}};
        cells.push_back(std::move(cell));
        std::cerr << "reproduce: " << name << " ps " << ps.win << "," << ps.draw << " setting "
                  << setting << (passive ? " passive " + groupstage::pot_name(*passive) : "")
                  << " done\n";
      }
    }
  }
  Json j;
  j["table"] = name;
  j["format"] = groupstage::format_name(kind);
  j["iterations"] = a.iterations;
  j["seed"] = a.seed;
  j["model"] = groupstage::model_to_json(model, gap);
  j["cells"] = cells;
  return j;
}

int cmd_reproduce(const ReproduceArgs& a) {
  namespace fs = std::filesystem;
  const auto [model, gap] = load_exact_params(a.params);
  std::error_code ec;
  fs::create_directories(a.outdir, ec);
  if (ec) throw DataError("cannot create " + a.outdir + ": " + ec.message());
  const fs::path dir(a.outdir);
  std::vector<std::string> written;
  const auto save = [&](const std::string& name, const std::string& content) {
    write_file((dir / name).string(), content);
    written.push_back(name);
  };

  const std::vector<std::optional<int>> no_passive{std::nullopt};
  const std::vector<std::optional<int>> five_pots{1, 2, 3, 4, 5};
  const groupstage::PointsSystem standard{3, 1};

  save("g4_last_round_quality.json",
       dump(quality_table("g4_last_round_quality", groupstage::FormatKind::G4Top2,
                          {{2, 1}, {3, 1}, {3, 2}}, no_passive, a, model, gap)));
  save("g3_last_round_quality.json",
       dump(quality_table("g3_last_round_quality", groupstage::FormatKind::G3Top2, {standard},
                          no_passive, a, model, gap)));
  save("uefa12x4_last_round_quality.json",
       dump(quality_table("uefa12x4_last_round_quality", groupstage::FormatKind::G4BestThirds,
                          {standard}, no_passive, a, model, gap)));
  save("g5_last_round_quality.json",
       dump(quality_table("g5_last_round_quality", groupstage::FormatKind::G5Top2, {standard},
                          five_pots, a, model, gap)));
  save("g5x12_best_thirds_quality.json",
       dump(quality_table("g5x12_best_thirds_quality", groupstage::FormatKind::G5BestThirds,
                          {standard}, five_pots, a, model, gap)));

  if (!a.data.empty()) {
    const auto ds = groupstage::load_history(a.data);
    const auto fit_ds = groupstage::early_rounds(ds);
    Json families = Json::array();
    for (const auto family : {groupstage::ModelFamily::Poisson,
                              groupstage::ModelFamily::BivariatePoisson,
                              groupstage::ModelFamily::NegativeBinomial,
                              groupstage::ModelFamily::OrderedLogistic,
                              groupstage::ModelFamily::Uniform}) {
      groupstage::FitOptions opt;
      opt.seed = a.seed;
      families.push_back(groupstage::fit_result_to_json(
          groupstage::fit(family, fit_ds, opt), static_cast<int>(fit_ds.records.size())));
      std::cerr << "reproduce: calibration family done\n";
    }
    save("calibration_table.json", dump(Json{{"table", "calibration_table"},
                                             {"n_obs", fit_ds.records.size()},
                                             {"families", families}}));
    save("edition_goals.json", dump(edition_goals_json(ds)));
    save("observed_scores.json", dump(score_grid_json(ds)));
    save("settings_observed.json", dump(settings_json(ds)));
    save("classes_observed.json", dump(classes_json(ds)));
    const auto v = groupstage::model_validation(ds, model, gap, a.iterations, a.seed);
    save("validation.json", dump(groupstage::validation_to_json(v)));
    save("goal_diff_histogram.csv", histogram_csv(v));
  } else {
    std::cerr << "reproduce: no --data given; skipping calibration_table.json, "
                 "edition_goals.json, observed_scores.json, settings_observed.json, "
                 "classes_observed.json, validation.json, goal_diff_histogram.csv\n";
  }

  Json manifest;
  manifest["tool"] = "groupstage";
  manifest["version"] = groupstage::kVersion;
  manifest["command"] = "reproduce";
  manifest["seed"] = a.seed;
  manifest["iterations"] = a.iterations;
  manifest["params"] = Json{{"path", a.params}, {"fnv1a64", fnv1a64_hex(read_file(a.params))}};
  manifest["data"] = a.data.empty()
                         ? Json()
                         : Json{{"path", a.data}, {"fnv1a64", fnv1a64_hex(read_file(a.data))}};
  manifest["generated_at"] = timestamp_utc();
  manifest["files"] = written;
  write_file((dir / "manifest.json").string(), dump(manifest));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Group-stage outcome models, last-round game classification and "
               "tournament-format evaluation"};
  app.require_subcommand(1);

  CalibrateArgs cal;
  SimulateArgs sim;
  SweepArgs swp;
  std::string classify_context, classify_out;
  HistoryArgs his;
  ReproduceArgs rep;

  std::uint64_t seed_default = 0;
  try {
    seed_default = default_seed();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  cal.seed = sim.seed = his.seed = rep.seed = seed_default;

  auto* c = app.add_subcommand("calibrate", "Fit a model family to a games CSV by maximum likelihood");
  c->add_option("--data", cal.data, "games CSV (" + std::string(groupstage::kGamesCsvHeader) + ")")
      ->required();
  c->add_option("--family", cal.family, "poisson|bipoisson|negbin|olr|uniform");
  c->add_option("--restarts", cal.restarts, "multi-start count (default 3)");
  c->add_option("--tolerance", cal.tolerance, "between-restart convergence tolerance");
  c->add_option("--max-iterations", cal.max_iterations, "simplex iteration cap");
  c->add_option("--seed", cal.seed, "jitter seed for extra restarts");
  c->add_option("--rescale", cal.rescale, "pooled|per-edition (default pooled)");
  c->add_option("--out", cal.out, "output JSON path (default stdout)");

  auto* s = app.add_subcommand("simulate", "Monte Carlo classification frequencies for one format cell");
  s->add_option("--format", sim.format, "g4|g3|g5|g4best3|g5best3")->required();
  auto* setting_opt = s->add_option("--setting", sim.setting, "last-round setting 1|2|3");
  s->add_option("--passive-pot", sim.passive, "passive pot A..E (odd group sizes)");
  s->add_option("--points", sim.points, "points system W,D (default 3,1)");
  s->add_option("--iterations", sim.iterations, "Monte Carlo iterations (default 15000)");
  s->add_option("--seed", sim.seed, "master seed (default $GROUPSTAGE_SEED or 0)");
  s->add_option("--params", sim.params, "model parameters JSON")->required();
  s->add_option("--out", sim.out, "report JSON path (default stdout)");
  s->add_option("--unit", sim.unit, "counting unit: game|group (default game)");
  s->add_option("--threads", sim.threads, "worker threads (does not change results)");

  auto* w = app.add_subcommand("sweep", "Run a list of simulate configurations from a JSON file");
  w->add_option("--configs", swp.configs, "JSON array of configurations")->required();
  w->add_option("--params", swp.params, "shared model parameters JSON");
  w->add_option("--out", swp.out, "output JSON path (default stdout)");
  w->add_option("--threads", swp.threads, "worker threads (does not change results)");

  auto* k = app.add_subcommand("classify", "Classify one last-round game from a context JSON");
  k->add_option("--context", classify_context, "GroupContext JSON path")->required();
  k->add_option("--out", classify_out, "output JSON path (default stdout)");

  auto* h = app.add_subcommand("history", "Empirical reports over a historical games CSV");
  h->add_option("--data", his.data, "games CSV")->required();
  h->add_option("--report", his.report, "edition_goals|score_grid|settings|classes|validation")
      ->required();
  h->add_option("--iterations", his.iterations, "validation iterations (default 15000)");
  h->add_option("--seed", his.seed, "validation seed");
  h->add_option("--params", his.params, "model parameters JSON (validation)");
  h->add_option("--out", his.out, "output JSON path (default stdout)");
  h->add_option("--hist-out", his.hist_out, "goal-difference histogram CSV path (validation)");

  auto* r = app.add_subcommand("reproduce", "Regenerate every report the library covers");
  r->add_option("--outdir", rep.outdir, "output directory")->required();
  r->add_option("--params", rep.params, "model parameters JSON")->required();
  r->add_option("--data", rep.data, "historical games CSV (optional)");
  r->add_option("--seed", rep.seed, "master seed");
  r->add_option("--iterations", rep.iterations, "iterations per cell (default 15000)");
  r->add_option("--threads", rep.threads, "worker threads (does not change results)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  }

  try {
    sim.setting_given = setting_opt->count() > 0;
    if (c->parsed()) return cmd_calibrate(cal);
    if (s->parsed()) return cmd_simulate(sim);
    if (w->parsed()) return cmd_sweep(swp);
    if (k->parsed()) return cmd_classify(classify_context, classify_out);
    if (h->parsed()) return cmd_history(his);
    if (r->parsed()) return cmd_reproduce(rep);
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
