#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <variant>

#include "groupstage/rng.hpp"

namespace groupstage {

// Exact-score families. A team's scoring rate is driven by its share of the
// combined strength of the two teams on the transformed rating scale.
struct SimplePoisson {
  double alpha = 0.0;  // mean total goals per game
};

struct BivariatePoisson {
  double alpha = 0.0;
  double beta = 0.0;  // rate of the shared component; mean total goals = alpha + 2 beta
};

struct NegativeBinomial {
  double alpha = 0.0;  // success-probability scale; alpha * share must stay < 1
  int r = 1;
};

// Win/draw/loss-only families.
struct OrderedLogistic {
  double coefficient = 0.0;
  double t1 = 0.0;  // cut points, t1 < t2
  double t2 = 0.0;
};

struct UniformGuess {};

using ScoreModel = std::variant<SimplePoisson, BivariatePoisson, NegativeBinomial,
                                OrderedLogistic, UniformGuess>;

struct Score {
  int home = 0;
  int away = 0;
};

struct OutcomeTriple {
  double win = 0.0;  // from the first team's perspective
  double draw = 0.0;
  double loss = 0.0;
};

// Goal counts beyond this never matter at realistic scoring rates; the tail
// mass above 25 is far below 1e-10 for alpha <= 5.
inline constexpr int kGoalGridMax = 25;

namespace detail {

inline constexpr int kSampleCap = 300;

inline double strength_share(double r_i, double r_j) {
  if (!(r_i >= 1.0) || !(r_j >= 1.0) || !std::isfinite(r_i) || !std::isfinite(r_j))
    throw std::invalid_argument("ratings must be on the rescaled scale (>= 1)");
  return r_i / (r_i + r_j);
}

inline double poisson_pmf(int k, double lambda) {
  if (k < 0) return 0.0;
  if (lambda <= 0.0) return k == 0 ? 1.0 : 0.0;
  return std::exp(k * std::log(lambda) - lambda - std::lgamma(k + 1.0));
}

inline double negbin_pmf(int k, int r, double q) {
  if (k < 0) return 0.0;
  if (q <= 0.0) return k == 0 ? 1.0 : 0.0;
  return std::exp(std::lgamma(static_cast<double>(k) + r) - std::lgamma(static_cast<double>(r)) -
                  std::lgamma(k + 1.0) + r * std::log1p(-q) + k * std::log(q));
}

// CDF inversion; consumes exactly one uniform.
inline int sample_poisson(double lambda, RandomStream& rng) {
  const double u = rng.uniform();
  double p = std::exp(-lambda);
  double cum = p;
  int k = 0;
  while (u >= cum && k < kSampleCap) {
    ++k;
    p *= lambda / k;
    cum += p;
  }
  return k;
}

inline int sample_negbin(int r, double q, RandomStream& rng) {
  const double u = rng.uniform();
  double p = std::pow(1.0 - q, r);
  double cum = p;
  int k = 0;
  while (u >= cum && k < kSampleCap) {
    p *= q * (k + r) / (k + 1.0);
    ++k;
    cum += p;
  }
  return k;
}

inline void check_negbin(const NegativeBinomial& m, double q_i, double q_j) {
  if (m.r < 1) throw std::invalid_argument("negative binomial r must be a positive integer");
  if (q_i >= 1.0 || q_j >= 1.0)
    throw std::domain_error("negative binomial success probability >= 1");
}

inline double logistic(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// Marginal pmf values 0..kGoalGridMax via the multiplicative recurrence.
inline std::array<double, kGoalGridMax + 1> poisson_row(double lambda) {
  std::array<double, kGoalGridMax + 1> row{};
  row[0] = std::exp(-lambda);
  for (int k = 1; k <= kGoalGridMax; ++k) row[k] = row[k - 1] * lambda / k;
  return row;
}

inline std::array<double, kGoalGridMax + 1> negbin_row(int r, double q) {
  std::array<double, kGoalGridMax + 1> row{};
  row[0] = std::pow(1.0 - q, r);
  for (int k = 1; k <= kGoalGridMax; ++k)
    row[k] = row[k - 1] * q * (k - 1 + r) / static_cast<double>(k);
  return row;
}

// Accumulates a win/draw/loss split from two independent marginals.
inline OutcomeTriple wdl_from_marginals(const std::array<double, kGoalGridMax + 1>& home,
                                        const std::array<double, kGoalGridMax + 1>& away) {
  OutcomeTriple t;
  for (int a = 0; a <= kGoalGridMax; ++a) {
    for (int b = 0; b <= kGoalGridMax; ++b) {
      const double p = home[a] * away[b];
      if (a > b)
        t.win += p;
      else if (a == b)
        t.draw += p;
      else
        t.loss += p;
    }
  }
  return t;
}

}  // namespace detail

/// Mean goals scored by team i against team j under an exact-score model.
inline double expected_goals(const ScoreModel& model, double r_i, double r_j) {
  const double p = detail::strength_share(r_i, r_j);
  if (const auto* m = std::get_if<SimplePoisson>(&model)) return m->alpha * p;
  if (const auto* m = std::get_if<BivariatePoisson>(&model)) return m->alpha * p + m->beta;
  if (const auto* m = std::get_if<NegativeBinomial>(&model)) {
    const double q = m->alpha * p;
    detail::check_negbin(*m, q, m->alpha * (1.0 - p));
    return m->r * q / (1.0 - q);
  }
  throw std::invalid_argument("model has no goal scale");
}

/// Joint probability of an exact final score (k_home, k_away).
inline double score_pmf(const ScoreModel& model, double r_i, double r_j, Score s) {
  if (s.home < 0 || s.away < 0) return 0.0;
  const double p = detail::strength_share(r_i, r_j);
  if (const auto* m = std::get_if<SimplePoisson>(&model))
    return detail::poisson_pmf(s.home, m->alpha * p) *
           detail::poisson_pmf(s.away, m->alpha * (1.0 - p));
  if (const auto* m = std::get_if<BivariatePoisson>(&model)) {
    const double li = m->alpha * p;
    const double lj = m->alpha * (1.0 - p);
    double total = 0.0;
    for (int z = 0; z <= std::min(s.home, s.away); ++z)
      total += detail::poisson_pmf(z, m->beta) * detail::poisson_pmf(s.home - z, li) *
               detail::poisson_pmf(s.away - z, lj);
    return total;
  }
  if (const auto* m = std::get_if<NegativeBinomial>(&model)) {
    const double qi = m->alpha * p;
    const double qj = m->alpha * (1.0 - p);
    detail::check_negbin(*m, qi, qj);
    return detail::negbin_pmf(s.home, m->r, qi) * detail::negbin_pmf(s.away, m->r, qj);
  }
  throw std::invalid_argument("model has no goal scale");
}

/// Draws one final score; distribution matches score_pmf, and the draw is a
/// deterministic function of the stream state.
inline Score sample_score(const ScoreModel& model, double r_i, double r_j,
                          RandomStream& rng) {
  const double p = detail::strength_share(r_i, r_j);
  if (const auto* m = std::get_if<SimplePoisson>(&model))
    return {detail::sample_poisson(m->alpha * p, rng),
            detail::sample_poisson(m->alpha * (1.0 - p), rng)};
  if (const auto* m = std::get_if<BivariatePoisson>(&model)) {
    const int x = detail::sample_poisson(m->alpha * p, rng);
    const int y = detail::sample_poisson(m->alpha * (1.0 - p), rng);
    const int z = detail::sample_poisson(m->beta, rng);
    return {x + z, y + z};
  }
  if (const auto* m = std::get_if<NegativeBinomial>(&model)) {
    const double qi = m->alpha * p;
    const double qj = m->alpha * (1.0 - p);
    detail::check_negbin(*m, qi, qj);
    return {detail::sample_negbin(m->r, qi, rng), detail::sample_negbin(m->r, qj, rng)};
  }
  throw std::invalid_argument("model has no goal scale");
}

/// Win/draw/loss probabilities from the first team's perspective. Exact-score
/// models are summed over the 0..kGoalGridMax score grid (no renormalization).
inline OutcomeTriple outcome_probs(const ScoreModel& model, double r_i, double r_j) {
  if (std::holds_alternative<UniformGuess>(model))
    return {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
  if (const auto* m = std::get_if<OrderedLogistic>(&model)) {
    if (!(m->t1 < m->t2))
      throw std::invalid_argument("ordered logistic thresholds must satisfy t1 < t2");
    const double x = m->coefficient * (r_i - r_j);
    const double p_loss = detail::logistic(m->t1 - x);
    const double p_loss_or_draw = detail::logistic(m->t2 - x);
    return {1.0 - p_loss_or_draw, p_loss_or_draw - p_loss, p_loss};
  }
  const double p = detail::strength_share(r_i, r_j);
  if (const auto* m = std::get_if<SimplePoisson>(&model))
    return detail::wdl_from_marginals(detail::poisson_row(m->alpha * p),
                                      detail::poisson_row(m->alpha * (1.0 - p)));
  if (const auto* m = std::get_if<NegativeBinomial>(&model)) {
    const double qi = m->alpha * p;
    const double qj = m->alpha * (1.0 - p);
    detail::check_negbin(*m, qi, qj);
    return detail::wdl_from_marginals(detail::negbin_row(m->r, qi),
                                      detail::negbin_row(m->r, qj));
  }
  const auto& m = std::get<BivariatePoisson>(model);
  const auto x = detail::poisson_row(m.alpha * p);
  const auto y = detail::poisson_row(m.alpha * (1.0 - p));
  const auto z = detail::poisson_row(m.beta);
  OutcomeTriple t;
  for (int a = 0; a <= kGoalGridMax; ++a) {
    for (int b = 0; b <= kGoalGridMax; ++b) {
      double joint = 0.0;
      for (int zz = 0; zz <= std::min(a, b); ++zz) joint += z[zz] * x[a - zz] * y[b - zz];
      if (a > b)
        t.win += joint;
      else if (a == b)
        t.draw += joint;
      else
        t.loss += joint;
    }
  }
  return t;
}

inline bool is_exact_score(const ScoreModel& model) {
  return std::holds_alternative<SimplePoisson>(model) ||
         std::holds_alternative<BivariatePoisson>(model) ||
         std::holds_alternative<NegativeBinomial>(model);
}

}  // namespace groupstage
