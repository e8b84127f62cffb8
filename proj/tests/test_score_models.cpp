#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cmath>
#include <vector>

#include "groupstage/rng.hpp"
#include "groupstage/score_models.hpp"

using namespace groupstage;

namespace {

// Plain-loop Poisson pmf, independent of the library's evaluation path.
double reference_poisson(int k, double lambda) {
  double fact = 1.0;
  for (int i = 2; i <= k; ++i) fact *= i;
  return std::exp(-lambda) * std::pow(lambda, k) / fact;
}

}  // namespace

TEST_CASE("expected goals split the total by strength share") {
  const ScoreModel m = SimplePoisson{2.5156};
  REQUIRE(expected_goals(m, 5.0, 5.0) == Catch::Approx(1.2578).margin(1e-12));
  REQUIRE(expected_goals(m, 30.0, 10.0) == Catch::Approx(2.5156 * 0.75).margin(1e-12));

  const ScoreModel b0 = BivariatePoisson{2.5156, 0.0};
  RandomStream rng(5);
  for (int i = 0; i < 50; ++i) {
    const double ri = rng.uniform(1.0, 44.0);
    const double rj = rng.uniform(1.0, 44.0);
    REQUIRE(expected_goals(b0, ri, rj) == Catch::Approx(expected_goals(m, ri, rj)).margin(0.0));
  }
}

TEST_CASE("win-draw-loss families have no goal scale") {
  REQUIRE_THROWS_WITH(expected_goals(ScoreModel{UniformGuess{}}, 2.0, 2.0),
                      Catch::Matchers::ContainsSubstring("no goal scale"));
  REQUIRE_THROWS_WITH(expected_goals(ScoreModel{OrderedLogistic{0.01, -0.5, 0.5}}, 2.0, 2.0),
                      Catch::Matchers::ContainsSubstring("no goal scale"));
  RandomStream rng(1);
  REQUIRE_THROWS(sample_score(ScoreModel{UniformGuess{}}, 2.0, 2.0, rng));
  REQUIRE_THROWS(score_pmf(ScoreModel{UniformGuess{}}, 2.0, 2.0, {0, 0}));
}

TEST_CASE("simple Poisson pmf at a goalless draw between equals") {
  const ScoreModel m = SimplePoisson{2.5156};
  REQUIRE(score_pmf(m, 7.5, 7.5, {0, 0}) == Catch::Approx(std::exp(-2.5156)).margin(1e-12));
}

TEST_CASE("bivariate Poisson with beta = 0 collapses to the simple model") {
  const ScoreModel simple = SimplePoisson{2.5156};
  const ScoreModel biv = BivariatePoisson{2.5156, 0.0};
  for (int a = 0; a < 10; ++a)
    for (int b = 0; b < 10; ++b)
      REQUIRE(score_pmf(biv, 20.0, 5.0, {a, b}) ==
              Catch::Approx(score_pmf(simple, 20.0, 5.0, {a, b})).margin(1e-12));
}

TEST_CASE("negative binomial pmf at zero goals, by direct substitution") {
  const ScoreModel m = NegativeBinomial{0.1747, 13};
  const double q = 0.1747 / 2.0;
  const double expected = std::pow(1.0 - q, 13) * std::pow(1.0 - q, 13);
  REQUIRE(score_pmf(m, 3.0, 3.0, {0, 0}) == Catch::Approx(expected).margin(1e-12));
}

TEST_CASE("negative binomial rejects a success probability at or above one") {
  const ScoreModel m = NegativeBinomial{1.5, 4};  // share 0.8 -> q = 1.2
  REQUIRE_THROWS_WITH(score_pmf(m, 40.0, 10.0, {0, 0}),
                      Catch::Matchers::ContainsSubstring("success probability"));
}

TEST_CASE("grid normalization, marginal means and swap symmetry") {
  RandomStream rng(31);
  const std::array<ScoreModel, 3> models = {ScoreModel{SimplePoisson{2.5156}},
                                            ScoreModel{BivariatePoisson{2.2, 0.4}},
                                            ScoreModel{NegativeBinomial{0.1747, 13}}};
  for (const auto& m : models) {
    for (int rep = 0; rep < 8; ++rep) {
      const double ri = rng.uniform(1.0, 44.0);
      const double rj = rng.uniform(1.0, 44.0);
      double total = 0.0;
      double mean_home = 0.0;
      for (int a = 0; a <= kGoalGridMax; ++a) {
        for (int b = 0; b <= kGoalGridMax; ++b) {
          const double p = score_pmf(m, ri, rj, {a, b});
          total += p;
          mean_home += a * p;
          REQUIRE(p == Catch::Approx(score_pmf(m, rj, ri, {b, a})).margin(1e-15));
        }
      }
      REQUIRE(total >= 1.0 - 1e-9);
      REQUIRE(mean_home == Catch::Approx(expected_goals(m, ri, rj)).margin(1e-6));
    }
  }
}

TEST_CASE("simple Poisson total goals follow Poisson(alpha) whatever the split") {
  const double alpha = 2.5156;
  const ScoreModel m = SimplePoisson{alpha};
  for (const auto& [ri, rj] : std::vector<std::pair<double, double>>{{5.0, 5.0}, {40.0, 2.0}}) {
    for (int total = 0; total <= 8; ++total) {
      double mass = 0.0;
      for (int a = 0; a <= total; ++a) mass += score_pmf(m, ri, rj, {a, total - a});
      REQUIRE(mass == Catch::Approx(reference_poisson(total, alpha)).margin(1e-10));
    }
  }
}

TEST_CASE("sampling matches the pmf and the stream contract") {
  const ScoreModel m = SimplePoisson{2.5156};
  RandomStream a(99, 1);
  RandomStream b(99, 1);
  for (int i = 0; i < 100; ++i) {
    const Score sa = sample_score(m, 9.0, 3.0, a);
    const Score sb = sample_score(m, 9.0, 3.0, b);
    REQUIRE(sa.home == sb.home);
    REQUIRE(sa.away == sb.away);
  }

  const int n = 100000;
  long goals_home = 0;
  long nil_nil = 0;
  for (int i = 0; i < n; ++i) {
    RandomStream rng(4242, static_cast<std::uint64_t>(i));
    const Score s = sample_score(m, 6.0, 6.0, rng);
    goals_home += s.home;
    if (s.home == 0 && s.away == 0) ++nil_nil;
  }
  REQUIRE(static_cast<double>(goals_home) / n == Catch::Approx(1.2578).margin(0.02));
  const double p00 = std::exp(-2.5156);
  const double sigma = std::sqrt(p00 * (1.0 - p00) / n);
  REQUIRE(std::abs(static_cast<double>(nil_nil) / n - p00) < 4.0 * sigma);
}

TEST_CASE("outcome probabilities") {
  const OutcomeTriple u = outcome_probs(ScoreModel{UniformGuess{}}, 1.0, 44.0);
  REQUIRE(u.win == Catch::Approx(1.0 / 3.0).margin(1e-15));
  REQUIRE(u.draw == Catch::Approx(1.0 / 3.0).margin(1e-15));
  REQUIRE(u.loss == Catch::Approx(1.0 / 3.0).margin(1e-15));

  const ScoreModel m = SimplePoisson{2.5156};
  const OutcomeTriple t = outcome_probs(m, 12.0, 12.0);
  REQUIRE(std::abs(t.win - t.loss) < 1e-9);
  REQUIRE(t.win + t.draw + t.loss == Catch::Approx(1.0).margin(1e-9));

  // independent draw-probability oracle: sum of squared Poisson masses
  double draw_oracle = 0.0;
  for (int k = 0; k <= 30; ++k) {
    const double pk = reference_poisson(k, 1.2578);
    draw_oracle += pk * pk;
  }
  REQUIRE(t.draw == Catch::Approx(draw_oracle).margin(1e-9));
  REQUIRE(t.draw == Catch::Approx(0.26).margin(0.01));
}

TEST_CASE("outcome probabilities agree with sampled frequencies") {
  const ScoreModel m = SimplePoisson{2.5156};
  const double ri = 30.0, rj = 8.0;
  const OutcomeTriple t = outcome_probs(m, ri, rj);
  const int n = 100000;
  std::array<long, 3> counts{};
  for (int i = 0; i < n; ++i) {
    RandomStream rng(777, static_cast<std::uint64_t>(i));
    const Score s = sample_score(m, ri, rj, rng);
    ++counts[static_cast<std::size_t>(s.home > s.away ? 0 : s.home == s.away ? 1 : 2)];
  }
  const double probs[3] = {t.win, t.draw, t.loss};
  for (int k = 0; k < 3; ++k) {
    const double sigma = std::sqrt(probs[k] * (1.0 - probs[k]) / n);
    REQUIRE(std::abs(static_cast<double>(counts[static_cast<std::size_t>(k)]) / n - probs[k]) <
            4.0 * sigma);
  }
}

TEST_CASE("ordered logit turns rating edges into win probability") {
  const ScoreModel m = OrderedLogistic{0.005, -0.5, 0.5};  // symmetric cut points
  const OutcomeTriple even = outcome_probs(m, 1800.0, 1800.0);
  REQUIRE(even.win + even.draw + even.loss == Catch::Approx(1.0).margin(1e-12));
  const OutcomeTriple strong = outcome_probs(m, 2200.0, 1500.0);
  const OutcomeTriple weak = outcome_probs(m, 1500.0, 2200.0);
  REQUIRE(strong.win > even.win);
  REQUIRE(weak.win < even.win);
  REQUIRE(strong.win == Catch::Approx(weak.loss).margin(1e-12));

  REQUIRE_THROWS_WITH(outcome_probs(ScoreModel{OrderedLogistic{0.005, 0.6, -0.4}}, 1.0, 2.0),
                      Catch::Matchers::ContainsSubstring("thresholds"));
}
