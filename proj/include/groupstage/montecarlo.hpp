#pragma once

#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "groupstage/formats.hpp"

namespace groupstage {

// One sample per last-round game (the default), or one per group iteration
// labeled by its most severe verdict (collusive > stake-less > competitive).
enum class CountUnit { PerGame, PerGroup };

struct ExperimentConfig {
  FormatSpec format;
  SettingChoice choice;
  ScoreModel model;
  double gap = 0.0;
  PointsSystem ps;
  long iterations = 15000;
  std::uint64_t master_seed = 0;
  CountUnit unit = CountUnit::PerGame;
  int threads = 1;
};

struct FrequencyReport {
  std::array<long, 3> counts{};  // competitive, collusive, stakeless
  long n_games = 0;
  std::array<double, 3> frequencies{};
  std::array<double, 3> std_errors{};
  ExperimentConfig config;
  double elapsed_seconds = 0.0;
};

namespace detail {

inline int verdict_index(Verdict v) {
  switch (v) {
    case Verdict::Competitive:
      return 0;
    case Verdict::Collusive:
      return 1;
    case Verdict::Stakeless:
      return 2;
  }
  return 0;
}

inline int severity(Verdict v) {
  switch (v) {
    case Verdict::Collusive:
      return 2;
    case Verdict::Stakeless:
      return 1;
    case Verdict::Competitive:
      return 0;
  }
  return 0;
}

inline void run_block(const ExperimentConfig& cfg, long first, long last,
                      std::array<long, 3>& counts) {
  for (long it = first; it < last; ++it) {
    try {
      const RandomStream iteration_rng(cfg.master_seed, static_cast<std::uint64_t>(it));
      const auto contexts =
          simulate_context(cfg.format, cfg.choice, cfg.model, cfg.ps, cfg.gap, iteration_rng);
      if (cfg.unit == CountUnit::PerGame) {
        for (const auto& ctx : contexts)
          ++counts[static_cast<std::size_t>(verdict_index(classify(ctx).verdict))];
      } else {
        Verdict worst = Verdict::Competitive;
        for (const auto& ctx : contexts) {
          const Verdict v = classify(ctx).verdict;
          if (severity(v) > severity(worst)) worst = v;
        }
        ++counts[static_cast<std::size_t>(verdict_index(worst))];
      }
    } catch (const std::exception& e) {
      throw std::runtime_error("iteration " + std::to_string(it) + ": " + e.what());
    }
  }
}

}  // namespace detail

/// Runs one seeded experiment. Iterations derive independent substreams from
/// (master_seed, iteration), so the report is invariant to the number of
/// worker threads.
inline FrequencyReport run(const ExperimentConfig& cfg) {
  if (cfg.iterations < 1) throw std::invalid_argument("iterations must be >= 1");
  if (cfg.threads < 1) throw std::invalid_argument("threads must be >= 1");
  const auto t0 = std::chrono::steady_clock::now();

  std::array<long, 3> counts{};
  const int workers = static_cast<int>(
      std::min<long>(cfg.threads, cfg.iterations));
  if (workers <= 1) {
    detail::run_block(cfg, 0, cfg.iterations, counts);
  } else {
    std::vector<std::array<long, 3>> partial(static_cast<std::size_t>(workers),
                                             std::array<long, 3>{});
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    const long chunk = (cfg.iterations + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        const long first = w * chunk;
        const long last = std::min<long>(cfg.iterations, first + chunk);
        try {
          detail::run_block(cfg, first, last, partial[static_cast<std::size_t>(w)]);
        } catch (...) {
          errors[static_cast<std::size_t>(w)] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (const auto& e : errors)
      if (e) std::rethrow_exception(e);
    for (const auto& p : partial)
      for (std::size_t k = 0; k < 3; ++k) counts[k] += p[k];
  }

  FrequencyReport report;
  report.counts = counts;
  report.n_games = counts[0] + counts[1] + counts[2];
  for (std::size_t k = 0; k < 3; ++k) {
    const double f = static_cast<double>(counts[k]) / static_cast<double>(report.n_games);
    report.frequencies[k] = f;
    report.std_errors[k] = std::sqrt(f * (1.0 - f) / static_cast<double>(report.n_games));
  }
  report.config = cfg;
  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

/// Independent runs over a list of configurations; report order matches the
/// input order. Failures are collected per configuration and rethrown
/// together after every run has been attempted.
inline std::vector<FrequencyReport> sweep(const std::vector<ExperimentConfig>& configs) {
  if (configs.empty()) throw std::invalid_argument("sweep needs at least one configuration");
  std::vector<FrequencyReport> reports;
  reports.reserve(configs.size());
  std::string failures;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    try {
      reports.push_back(run(configs[i]));
    } catch (const std::exception& e) {
      failures += "config " + std::to_string(i) + ": " + e.what() + "\n";
      reports.push_back(FrequencyReport{});
    }
  }
  if (!failures.empty()) throw std::runtime_error("sweep failures:\n" + failures);
  return reports;
}

}  // namespace groupstage
