#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "groupstage/rng.hpp"
#include "groupstage/score_models.hpp"
#include "groupstage/simplex.hpp"

namespace groupstage {

struct GameRecord {
  int edition = 0;
  std::string group_id;
  int round = 0;
  std::string team_home, team_away;
  double elo_home = 0.0, elo_away = 0.0;
  int goals_home = 0, goals_away = 0;
};

struct FitDataset {
  std::vector<GameRecord> records;
  double pool_min = 0.0, pool_max = 0.0;  // over every rating in the sample
};

inline FitDataset make_fit_dataset(std::vector<GameRecord> records) {
  if (records.empty()) throw std::invalid_argument("empty dataset");
  FitDataset ds;
  ds.pool_min = std::numeric_limits<double>::infinity();
  ds.pool_max = -std::numeric_limits<double>::infinity();
  for (const auto& r : records) {
    if (!(r.elo_home > 0.0) || !(r.elo_away > 0.0) || !std::isfinite(r.elo_home) ||
        !std::isfinite(r.elo_away))
      throw std::invalid_argument("Elo ratings must be positive and finite");
    if (r.goals_home < 0 || r.goals_away < 0)
      throw std::invalid_argument("negative goal count");
    if (r.round < 1) throw std::invalid_argument("round must be >= 1");
    ds.pool_min = std::min({ds.pool_min, r.elo_home, r.elo_away});
    ds.pool_max = std::max({ds.pool_max, r.elo_home, r.elo_away});
  }
  if (!(ds.pool_min < ds.pool_max)) throw std::invalid_argument("zero rating spread");
  ds.records = std::move(records);
  return ds;
}

// Whether ratings are normalized over the whole sample or within each
// edition before the gap transform is applied.
enum class RescaleMode { Pooled, PerEdition };

enum class ModelFamily { Poisson, BivariatePoisson, NegativeBinomial, OrderedLogistic, Uniform };

struct FitOptions {
  int restarts = 3;
  double tolerance = 1e-8;  // between-restart improvement treated as converged
  int max_iterations = 2000;
  std::uint64_t seed = 0;  // start-point jitter for restarts beyond the fixed three
  RescaleMode rescale = RescaleMode::Pooled;
};

struct FitResult {
  ScoreModel model;
  double gap = 0.0;
  double log_likelihood = 0.0;
  int n_params = 0;
  double aic = 0.0, bic = 0.0;
  double logloss = 0.0, brier = 0.0;
  bool converged = false;
  int n_restarts_used = 0;
};

inline std::pair<double, double> information_criteria(double log_likelihood, int n_params,
                                                      int n_obs) {
  if (n_obs < 1) throw std::invalid_argument("need at least one observation");
  const double aic = 2.0 * n_params - 2.0 * log_likelihood;
  const double bic = n_params * std::log(static_cast<double>(n_obs)) - 2.0 * log_likelihood;
  return {aic, bic};
}

namespace detail {

inline double lgamma_int(int n) {
  static const auto table = [] {
    std::vector<double> t(512, 0.0);
    for (int i = 1; i < 512; ++i) t[static_cast<std::size_t>(i)] = std::lgamma(static_cast<double>(i));
    return t;
  }();
  if (n >= 1 && n < 512) return table[static_cast<std::size_t>(n)];
  return std::lgamma(static_cast<double>(n));
}

// Per-record rating positions in [0, 1] under the chosen normalization.
struct RecordView {
  double t_home = 0.0, t_away = 0.0;
  int goals_home = 0, goals_away = 0;
  double raw_diff = 0.0;  // raw Elo difference, the ordered-logit regressor
  int wdl = 0;            // 0 win, 1 draw, 2 loss from the home perspective
};

inline int realized_class(int goals_home, int goals_away) {
  if (goals_home > goals_away) return 0;
  if (goals_home == goals_away) return 1;
  return 2;
}

inline std::vector<RecordView> make_views(const FitDataset& ds, RescaleMode mode) {
  std::vector<RecordView> views;
  views.reserve(ds.records.size());
  std::map<int, std::pair<double, double>> edition_bounds;
  if (mode == RescaleMode::PerEdition) {
    for (const auto& r : ds.records) {
      auto [it, inserted] = edition_bounds.try_emplace(
          r.edition, std::pair<double, double>{r.elo_home, r.elo_home});
      auto& [lo, hi] = it->second;
      lo = std::min({lo, r.elo_home, r.elo_away});
      hi = std::max({hi, r.elo_home, r.elo_away});
    }
    for (const auto& [edition, bounds] : edition_bounds)
      if (!(bounds.first < bounds.second))
        throw std::invalid_argument("zero rating spread in edition " + std::to_string(edition));
  }
  for (const auto& r : ds.records) {
    const auto [lo, hi] = mode == RescaleMode::Pooled
                              ? std::pair<double, double>{ds.pool_min, ds.pool_max}
                              : edition_bounds.at(r.edition);
    RecordView v;
    v.t_home = (r.elo_home - lo) / (hi - lo);
    v.t_away = (r.elo_away - lo) / (hi - lo);
    v.goals_home = r.goals_home;
    v.goals_away = r.goals_away;
    v.raw_diff = r.elo_home - r.elo_away;
    v.wdl = realized_class(r.goals_home, r.goals_away);
    views.push_back(v);
  }
  return views;
}

inline double log_poisson(int k, double lambda) {
  if (lambda <= 0.0) return k == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
  return k * std::log(lambda) - lambda - lgamma_int(k + 1);
}

inline double log_negbin(int k, int r, double q) {
  if (q <= 0.0) return k == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
  return lgamma_int(k + r) - lgamma_int(r) - lgamma_int(k + 1) + r * std::log1p(-q) +
         k * std::log(q);
}

// Log-likelihood evaluators. They return -inf on a zero-probability record
// (and NaN never); `offending`, when given, receives the first such record.
template <typename PerRecord>
inline double ll_record_sum(const std::vector<RecordView>& views, PerRecord&& per_record,
                            std::size_t* offending) {
  double total = 0.0;
  for (std::size_t i = 0; i < views.size(); ++i) {
    const double term = per_record(views[i]);
    if (!(term > -std::numeric_limits<double>::infinity())) {
      if (offending) *offending = i;
      return -std::numeric_limits<double>::infinity();
    }
    total += term;
  }
  return total;
}

inline double ll_poisson(const std::vector<RecordView>& views, double gap, double alpha,
                         std::size_t* offending = nullptr) {
  const double scale = std::exp(gap);
  return ll_record_sum(
      views,
      [&](const RecordView& v) {
        const double sh = 1.0 + scale * v.t_home;
        const double sa = 1.0 + scale * v.t_away;
        const double lh = alpha * (sh / (sh + sa));
        return log_poisson(v.goals_home, lh) + log_poisson(v.goals_away, alpha - lh);
      },
      offending);
}

inline double ll_bipoisson(const std::vector<RecordView>& views, double gap, double alpha,
                           double beta, std::size_t* offending = nullptr) {
  if (beta == 0.0) return ll_poisson(views, gap, alpha, offending);
  const double scale = std::exp(gap);
  return ll_record_sum(
      views,
      [&](const RecordView& v) {
        const double sh = 1.0 + scale * v.t_home;
        const double sa = 1.0 + scale * v.t_away;
        const double lh = alpha * (sh / (sh + sa));
        const double la = alpha - lh;
        double mass = 0.0;
        for (int z = 0; z <= std::min(v.goals_home, v.goals_away); ++z)
          mass += std::exp(log_poisson(z, beta) + log_poisson(v.goals_home - z, lh) +
                           log_poisson(v.goals_away - z, la));
        return mass > 0.0 ? std::log(mass) : -std::numeric_limits<double>::infinity();
      },
      offending);
}

inline double ll_negbin(const std::vector<RecordView>& views, double gap, double alpha, int r,
                        std::size_t* offending = nullptr) {
  const double scale = std::exp(gap);
  return ll_record_sum(
      views,
      [&](const RecordView& v) {
        const double sh = 1.0 + scale * v.t_home;
        const double sa = 1.0 + scale * v.t_away;
        const double p = sh / (sh + sa);
        const double qh = alpha * p;
        const double qa = alpha * (1.0 - p);
        if (qh >= 1.0 || qa >= 1.0) return -std::numeric_limits<double>::infinity();
        return log_negbin(v.goals_home, r, qh) + log_negbin(v.goals_away, r, qa);
      },
      offending);
}

inline double ll_olr(const std::vector<RecordView>& views, double coefficient, double t1,
                     double t2, std::size_t* offending = nullptr) {
  return ll_record_sum(
      views,
      [&](const RecordView& v) {
        const double x = coefficient * v.raw_diff;
        const double p_loss = logistic(t1 - x);
        const double p_ld = logistic(t2 - x);
        const double p[3] = {1.0 - p_ld, p_ld - p_loss, p_loss};
        const double chosen = p[v.wdl];
        return chosen > 0.0 ? std::log(chosen) : -std::numeric_limits<double>::infinity();
      },
      offending);
}

}  // namespace detail

/// Sample log-likelihood of a model at a given gap. Exact-score families use
/// the joint score mass, win/draw/loss families the realized class
/// probability. A zero-probability record yields -infinity and, when
/// `offending` is non-null, its index.
inline double log_likelihood(const ScoreModel& model, double gap, const FitDataset& ds,
                             RescaleMode mode = RescaleMode::Pooled,
                             std::size_t* offending = nullptr) {
  const auto views = detail::make_views(ds, mode);
  if (const auto* m = std::get_if<SimplePoisson>(&model))
    return detail::ll_poisson(views, gap, m->alpha, offending);
  if (const auto* m = std::get_if<BivariatePoisson>(&model))
    return detail::ll_bipoisson(views, gap, m->alpha, m->beta, offending);
  if (const auto* m = std::get_if<NegativeBinomial>(&model))
    return detail::ll_negbin(views, gap, m->alpha, m->r, offending);
  if (const auto* m = std::get_if<OrderedLogistic>(&model))
    return detail::ll_olr(views, m->coefficient, m->t1, m->t2, offending);
  return -static_cast<double>(ds.records.size()) * std::log(3.0);
}

/// Mean negative log probability and Brier score of win/draw/loss
/// predictions against realized classes (0 win, 1 draw, 2 loss).
inline std::pair<double, double> wdl_from_predictions(const std::vector<OutcomeTriple>& predictions,
                                                      const std::vector<int>& realized,
                                                      std::size_t* offending = nullptr) {
  if (predictions.size() != realized.size() || predictions.empty())
    throw std::invalid_argument("predictions and outcomes must align and be nonempty");
  double logloss = 0.0;
  double brier = 0.0;
  bool infinite = false;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    const auto& t = predictions[i];
    const double p[3] = {t.win, t.draw, t.loss};
    const int c = realized[i];
    if (c < 0 || c > 2) throw std::invalid_argument("realized class must be 0, 1 or 2");
    if (!(p[c] > 0.0)) {
      if (!infinite && offending) *offending = i;
      infinite = true;
    } else if (!infinite) {
      logloss -= std::log(p[c]);
    }
    for (int k = 0; k < 3; ++k) {
      const double y = k == c ? 1.0 : 0.0;
      brier += (p[k] - y) * (p[k] - y);
    }
  }
  const double n = static_cast<double>(predictions.size());
  return {infinite ? std::numeric_limits<double>::infinity() : logloss / n, brier / n};
}

/// Win/draw/loss losses of a model over a dataset (predictions via
/// outcome_probs; exact families on the rescaled scale, the ordered logit on
/// raw Elo).
inline std::pair<double, double> wdl_losses(const ScoreModel& model, double gap,
                                            const FitDataset& ds,
                                            RescaleMode mode = RescaleMode::Pooled,
                                            std::size_t* offending = nullptr) {
  const auto views = detail::make_views(ds, mode);
  const double scale = std::exp(gap);
  std::vector<OutcomeTriple> predictions;
  std::vector<int> realized;
  predictions.reserve(views.size());
  realized.reserve(views.size());
  const bool exact = is_exact_score(model);
  for (const auto& v : views) {
    if (exact)
      predictions.push_back(
          outcome_probs(model, 1.0 + scale * v.t_home, 1.0 + scale * v.t_away));
    else if (std::holds_alternative<OrderedLogistic>(model))
      predictions.push_back(outcome_probs(model, v.raw_diff, 0.0));
    else
      predictions.push_back(outcome_probs(model, 1.0, 1.0));
    realized.push_back(v.wdl);
  }
  return wdl_from_predictions(predictions, realized, offending);
}

namespace detail {

inline constexpr double kPenalty = 1e300;
inline constexpr double kMaxGap = 50.0;

struct FitPass {
  double ll = -std::numeric_limits<double>::infinity();
  std::vector<double> x;
  int nb_r = 0;
  bool nm_converged = false;
};

inline double penalized(double ll) { return std::isfinite(ll) ? -ll : kPenalty; }

}  // namespace detail

/// Maximum-likelihood fit of one family over (gap, family parameters) by
/// multi-start Nelder-Mead. The negative binomial's integer r is scanned
/// over [1, 100]; the ordered logit keeps its cut points ordered through the
/// t2 = t1 + e^u parameterization. Deterministic for fixed options.
inline FitResult fit(ModelFamily family, const FitDataset& ds, const FitOptions& opt = {}) {
  if (ds.records.empty()) throw std::invalid_argument("empty dataset");
  if (opt.restarts < 1) throw std::invalid_argument("restarts must be >= 1");
  const auto views = detail::make_views(ds, opt.rescale);
  const int n = static_cast<int>(views.size());
  double mean_goals = 0.0;
  for (const auto& v : views) mean_goals += v.goals_home + v.goals_away;
  mean_goals /= n;

  FitResult out;
  if (family == ModelFamily::Uniform) {
    out.model = UniformGuess{};
    out.gap = 0.0;
    out.log_likelihood = -n * std::log(3.0);
    out.n_params = 0;
    out.converged = true;
    out.n_restarts_used = 0;
  } else {
    SimplexOptions nm;
    nm.max_iterations = opt.max_iterations;
    nm.f_tolerance = 1e-12;

    const auto gap_start = [&](int restart, RandomStream& jitter) {
      const double base[3] = {1.0, 3.0, 5.0};
      double g = base[restart % 3];
      if (restart >= 3) g += jitter.uniform(-1.0, 1.0);
      return g;
    };

    const auto run_pass = [&](int restart) {
      RandomStream jitter(opt.seed, static_cast<std::uint64_t>(restart));
      const double g0 = gap_start(restart, jitter);
      const double a_jitter = restart >= 3 ? jitter.uniform(0.8, 1.25) : 1.0;
      detail::FitPass pass;
      if (family == ModelFamily::Poisson) {
        const auto obj = [&](const std::vector<double>& x) {
          if (!(x[1] > 0.0) || std::fabs(x[0]) > detail::kMaxGap) return detail::kPenalty;
          return detail::penalized(detail::ll_poisson(views, x[0], x[1]));
        };
        const auto r = nelder_mead(obj, {g0, mean_goals * a_jitter}, nm);
        pass.ll = -r.f;
        pass.x = r.x;
        pass.nm_converged = r.converged;
      } else if (family == ModelFamily::BivariatePoisson) {
        const auto obj = [&](const std::vector<double>& x) {
          if (!(x[1] > 0.0) || std::fabs(x[0]) > detail::kMaxGap) return detail::kPenalty;
          return detail::penalized(detail::ll_bipoisson(views, x[0], x[1], x[2] * x[2]));
        };
        const auto r = nelder_mead(obj, {g0, mean_goals * a_jitter, 0.3}, nm);
        pass.ll = -r.f;
        pass.x = r.x;
        pass.nm_converged = r.converged;
      } else if (family == ModelFamily::NegativeBinomial) {
        for (int rr = 1; rr <= 100; ++rr) {
          const auto obj = [&](const std::vector<double>& x) {
            if (!(x[1] > 0.0) || std::fabs(x[0]) > detail::kMaxGap) return detail::kPenalty;
            return detail::penalized(detail::ll_negbin(views, x[0], x[1], rr));
          };
          const double a0 = mean_goals / (rr + mean_goals / 2.0) * a_jitter;
          const auto r = nelder_mead(obj, {g0, a0}, nm);
          if (-r.f > pass.ll) {
            pass.ll = -r.f;
            pass.x = r.x;
            pass.nb_r = rr;
            pass.nm_converged = r.converged;
          }
        }
      } else {  // OrderedLogistic
        const double base_c[3] = {0.002, 0.005, 0.02};
        double c0 = base_c[restart % 3];
        if (restart >= 3) c0 *= jitter.uniform(0.5, 2.0);
        const auto obj = [&](const std::vector<double>& x) {
          if (std::fabs(x[2]) > 30.0) return detail::kPenalty;
          return detail::penalized(
              detail::ll_olr(views, x[0], x[1], x[1] + std::exp(x[2])));
        };
        const auto r = nelder_mead(obj, {c0, -0.5, 0.0}, nm);
        pass.ll = -r.f;
        pass.x = r.x;
        pass.nm_converged = r.converged;
      }
      return pass;
    };

    detail::FitPass best;
    bool converged = false;
    int used = 0;
    for (int restart = 0; restart < opt.restarts; ++restart) {
      const double previous_best = best.ll;
      const auto pass = run_pass(restart);
      ++used;
      if (pass.ll > best.ll) best = pass;
      if (restart > 0 && best.ll - previous_best < opt.tolerance) {
        converged = true;
        break;
      }
    }

    out.n_restarts_used = used;
    out.converged = converged && best.nm_converged;
    out.log_likelihood = best.ll;
    switch (family) {
      case ModelFamily::Poisson:
        out.model = SimplePoisson{best.x[1]};
        out.gap = best.x[0];
        out.n_params = 2;
        break;
      case ModelFamily::BivariatePoisson:
        out.model = BivariatePoisson{best.x[1], best.x[2] * best.x[2]};
        out.gap = best.x[0];
        out.n_params = 3;
        break;
      case ModelFamily::NegativeBinomial:
        out.model = NegativeBinomial{best.x[1], best.nb_r};
        out.gap = best.x[0];
        out.n_params = 3;
        break;
      case ModelFamily::OrderedLogistic:
        out.model = OrderedLogistic{best.x[0], best.x[1], best.x[1] + std::exp(best.x[2])};
        out.gap = 0.0;
        out.n_params = 3;
        break;
      default:
        break;
    }
  }

  const auto [aic, bic] = information_criteria(out.log_likelihood, out.n_params, n);
  out.aic = aic;
  out.bic = bic;
  const auto [logloss, brier] = wdl_losses(out.model, out.gap, ds, opt.rescale);
  out.logloss = logloss;
  out.brier = brier;
  return out;
}

}  // namespace groupstage
