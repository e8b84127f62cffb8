#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "groupstage/rng.hpp"

namespace groupstage {

/// Maps a raw Elo rating onto the transformed strength scale: the weakest
/// team of the pool maps to 1, the strongest to 1 + e^gap, linearly in
/// between. A larger gap amplifies strength differences.
inline double rescale(double raw, double min_raw, double max_raw, double gap) {
  if (!(min_raw < max_raw)) throw std::invalid_argument("zero rating spread");
  if (!(raw >= min_raw && raw <= max_raw))
    throw std::invalid_argument("rating out of pool range");
  return 1.0 + std::exp(gap) * (raw - min_raw) / (max_raw - min_raw);
}

// Equal-width strength bands over [a, b]. Pot 1 (strongest) is the topmost
// interval; a value landing exactly on a shared endpoint belongs to the
// higher pot.
struct PotPartition {
  double a = 0.0;
  double b = 0.0;
  int n_pots = 0;
  std::vector<std::pair<double, double>> intervals;  // strongest first

  const std::pair<double, double>& interval(int pot) const {  // 1-indexed
    if (pot < 1 || pot > n_pots)
      throw std::invalid_argument("pot index out of range");
    return intervals[static_cast<std::size_t>(pot - 1)];
  }
};

inline PotPartition pot_intervals(double a, double b, int n_pots) {
  if (n_pots < 2) throw std::invalid_argument("need at least two pots");
  if (!(a < b)) throw std::invalid_argument("pot bounds must satisfy a < b");
  PotPartition part;
  part.a = a;
  part.b = b;
  part.n_pots = n_pots;
  const double width = (b - a) / n_pots;
  part.intervals.reserve(static_cast<std::size_t>(n_pots));
  for (int k = 1; k <= n_pots; ++k) {
    const double lo = (k == n_pots) ? a : b - k * width;
    const double hi = (k == 1) ? b : b - (k - 1) * width;
    part.intervals.emplace_back(lo, hi);
  }
  return part;
}

/// One rating per pot, uniform on the pot's interval, strongest first.
inline std::vector<double> draw_group(const PotPartition& part, RandomStream& rng) {
  if (part.n_pots < 2 ||
      part.intervals.size() != static_cast<std::size_t>(part.n_pots))
    throw std::invalid_argument("invalid pot partition");
  std::vector<double> ratings;
  ratings.reserve(part.intervals.size());
  for (const auto& [lo, hi] : part.intervals) ratings.push_back(rng.uniform(lo, hi));
  return ratings;
}

}  // namespace groupstage
