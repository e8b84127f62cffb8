#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "groupstage/calibration.hpp"
#include "support/test_helpers.hpp"

using namespace groupstage;

namespace {

FitDataset one_game(int goals_home, int goals_away) {
  GameRecord r;
  r.edition = 1998;
  r.group_id = "G";
  r.round = 1;
  r.team_home = "H";
  r.team_away = "A";
  r.elo_home = 1500.0;
  r.elo_away = 2200.0;
  r.goals_home = goals_home;
  r.goals_away = goals_away;
  return make_fit_dataset({r});
}

}  // namespace

TEST_CASE("log-likelihood of an engineered unit-rate game") {
  // gap -> -inf zeroes the transform, so both teams sit at 1 and share
  // alpha = 2 equally: two unit-rate Poissons, ln P(0,0) = -2.
  const auto ds = one_game(0, 0);
  REQUIRE(log_likelihood(SimplePoisson{2.0}, -1000.0, ds) == Catch::Approx(-2.0).margin(1e-12));
}

TEST_CASE("uniform log-likelihood is -n ln 3") {
  const auto ds = testsupport::synth_fit_dataset(3.7581, 2.5156, 3, 12);
  REQUIRE(log_likelihood(UniformGuess{}, 0.0, ds) ==
          Catch::Approx(-static_cast<double>(ds.records.size()) * std::log(3.0)).margin(1e-9));
}

TEST_CASE("zero-probability records surface the offending index") {
  // an overwhelming favourite that lost: the saturated logit leaves no mass
  // on the realized class
  GameRecord r;
  r.edition = 2002;
  r.group_id = "G";
  r.round = 1;
  r.team_home = "H";
  r.team_away = "A";
  r.elo_home = 2200.0;
  r.elo_away = 1500.0;
  r.goals_home = 0;
  r.goals_away = 1;
  const auto ds = make_fit_dataset({r});
  std::size_t offending = 99;
  const double ll = log_likelihood(OrderedLogistic{10.0, -1.0, 1.0}, 0.0, ds,
                                   RescaleMode::Pooled, &offending);
  REQUIRE(ll == -std::numeric_limits<double>::infinity());
  REQUIRE(offending == 0);
}

TEST_CASE("information criteria identities") {
  const auto [aic, bic] = information_criteria(-535.6698, 2, 192);
  REQUIRE(aic == Catch::Approx(1075.3396).margin(1e-9));
  REQUIRE(bic == Catch::Approx(1081.8546).margin(1e-4));
  REQUIRE(aic == Catch::Approx(1075.34).margin(0.05));
  REQUIRE(bic == Catch::Approx(1081.85).margin(0.05));

  const auto [aic3, bic3] = information_criteria(-534.4337, 3, 192);
  REQUIRE(aic3 == Catch::Approx(1074.8674).margin(1e-9));
  REQUIRE(bic3 > aic3);

  const auto [a0, b0] = information_criteria(0.0, 0, 1);
  REQUIRE(a0 == 0.0);
  REQUIRE(b0 == 0.0);
  REQUIRE_THROWS(information_criteria(0.0, 1, 0));
}

TEST_CASE("win-draw-loss losses") {
  const auto ds = testsupport::synth_fit_dataset(3.7581, 2.5156, 4, 12);
  const auto [logloss, brier] = wdl_losses(UniformGuess{}, 0.0, ds);
  REQUIRE(logloss == Catch::Approx(std::log(3.0)).margin(1e-12));
  REQUIRE(brier == Catch::Approx(2.0 / 3.0).margin(1e-12));

  // perfect one-hot predictions score zero on both losses
  std::vector<OutcomeTriple> predictions = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  std::vector<int> realized = {0, 1, 2};
  const auto [pl, pb] = wdl_from_predictions(predictions, realized);
  REQUIRE(pl == 0.0);
  REQUIRE(pb == 0.0);

  std::size_t offending = 99;
  const auto [il, ib] = wdl_from_predictions({{1, 0, 0}}, {2}, &offending);
  REQUIRE(il == std::numeric_limits<double>::infinity());
  REQUIRE(offending == 0);
  REQUIRE(ib == Catch::Approx(2.0).margin(1e-12));
}

TEST_CASE("fitted simple Poisson rate equals mean goals per game") {
  for (const std::uint64_t seed : {11ULL, 12ULL, 13ULL}) {
    const auto ds = testsupport::synth_fit_dataset(3.0, 2.7, seed, 12);
    double mean = 0.0;
    for (const auto& r : ds.records) mean += r.goals_home + r.goals_away;
    mean /= static_cast<double>(ds.records.size());
    const auto result = fit(ModelFamily::Poisson, ds);
    REQUIRE(std::get<SimplePoisson>(result.model).alpha == Catch::Approx(mean).margin(1e-3));
    REQUIRE(result.n_params == 2);
    REQUIRE(result.aic == Catch::Approx(2.0 * 2 - 2.0 * result.log_likelihood).margin(1e-9));
    REQUIRE(result.bic ==
            Catch::Approx(2.0 * std::log(static_cast<double>(ds.records.size())) -
                          2.0 * result.log_likelihood)
                .margin(1e-9));
  }
}

TEST_CASE("fit is deterministic and never worse with more restarts") {
  const auto ds = testsupport::synth_fit_dataset(3.7581, 2.5156, 21, 24);
  const auto a = fit(ModelFamily::Poisson, ds);
  const auto b = fit(ModelFamily::Poisson, ds);
  REQUIRE(a.gap == b.gap);
  REQUIRE(std::get<SimplePoisson>(a.model).alpha == std::get<SimplePoisson>(b.model).alpha);
  REQUIRE(a.log_likelihood == b.log_likelihood);

  FitOptions one;
  one.restarts = 1;
  const auto single = fit(ModelFamily::Poisson, ds, one);
  REQUIRE(a.log_likelihood >= single.log_likelihood - 1e-9);
}

TEST_CASE("bivariate at beta = 0 matches the simple likelihood exactly") {
  const auto ds = testsupport::synth_fit_dataset(3.7581, 2.5156, 31, 12);
  const double gap = 3.3, alpha = 2.4;
  REQUIRE(log_likelihood(BivariatePoisson{alpha, 0.0}, gap, ds) ==
          log_likelihood(SimplePoisson{alpha}, gap, ds));
}

TEST_CASE("bivariate fit on Poisson data keeps the shared component near zero") {
  const auto ds = testsupport::synth_fit_dataset(3.7581, 2.5156, 1, 48);
  const auto simple = fit(ModelFamily::Poisson, ds);
  const auto biv = fit(ModelFamily::BivariatePoisson, ds);
  REQUIRE(std::get<BivariatePoisson>(biv.model).beta < 1e-3);
  REQUIRE(std::abs(biv.log_likelihood - simple.log_likelihood) < 0.01);
  REQUIRE(biv.n_params == 3);
}

TEST_CASE("negative binomial fit returns an integer dispersion parameter") {
  const auto ds = testsupport::synth_fit_dataset(3.7581, 2.5156, 41, 12);
  FitOptions quick;
  quick.restarts = 1;
  const auto nb = fit(ModelFamily::NegativeBinomial, ds, quick);
  const auto& model = std::get<NegativeBinomial>(nb.model);
  REQUIRE(model.r >= 1);
  REQUIRE(model.r <= 100);
  REQUIRE(model.alpha > 0.0);
  REQUIRE(nb.n_params == 3);
  // within the valid region the fitted mass must be a proper likelihood
  REQUIRE(std::isfinite(nb.log_likelihood));
}

TEST_CASE("ordered logit fit beats the uniform benchmark on its own loss") {
  const auto ds = testsupport::synth_fit_dataset(3.7581, 2.5156, 51, 24);
  const auto olr = fit(ModelFamily::OrderedLogistic, ds);
  const auto uni = fit(ModelFamily::Uniform, ds);
  REQUIRE(olr.logloss < uni.logloss);
  REQUIRE(uni.logloss == Catch::Approx(std::log(3.0)).margin(1e-9));
  REQUIRE(uni.brier == Catch::Approx(2.0 / 3.0).margin(1e-9));
  const auto& model = std::get<OrderedLogistic>(olr.model);
  REQUIRE(model.t1 < model.t2);
}

TEST_CASE("per-edition rescaling changes the likelihood but stays finite") {
  const auto ds = testsupport::synth_fit_dataset(3.7581, 2.5156, 61, 16);
  const double pooled = log_likelihood(SimplePoisson{2.5}, 3.0, ds, RescaleMode::Pooled);
  const double per_edition =
      log_likelihood(SimplePoisson{2.5}, 3.0, ds, RescaleMode::PerEdition);
  REQUIRE(std::isfinite(pooled));
  REQUIRE(std::isfinite(per_edition));
  REQUIRE(pooled != per_edition);
}
