#!/usr/bin/env python3
"""Regenerates data/synthetic_games.csv.

Six editions of eight four-team groups (288 games), with team strengths drawn
from Elo pots on [1500, 2200] and scores sampled from the simple Poisson
outcome model. Purely synthetic demo data: every game, including the last
round, is played honestly from the model. Deterministic: pure-python PRNG,
no library dependencies.
"""

import argparse

GAP = 3.7581
ALPHA = 2.5156
POOL_LO, POOL_HI = 1500.0, 2200.0
EDITIONS = [1998, 2002, 2006, 2010, 2014, 2018]
GROUPS = "ABCDEFGH"
MASK = (1 << 64) - 1

# last-round pairing per setting, by strength rank (1 strongest)
SETTING_LAST = {1: ((1, 4), (2, 3)), 2: ((1, 3), (2, 4)), 3: ((1, 2), (3, 4))}


def mix64(z: int) -> int:
    z &= MASK
    z ^= z >> 33
    z = (z * 0xFF51AFD7ED558CCD) & MASK
    z ^= z >> 33
    z = (z * 0xC4CEB9FE1A85EC53) & MASK
    z ^= z >> 33
    return z


class Stream:
    """splitmix64 over a mixed (seed, iteration, slot) key."""

    def __init__(self, seed: int, iteration: int = 0, slot: int = 0) -> None:
        self.key = mix64(seed ^ mix64(iteration ^ mix64((slot + 0x5851F42D4C957F2D) & MASK)))
        self.counter = 0

    def next_bits(self) -> int:
        self.counter = (self.counter + 0x9E3779B97F4A7C15) & MASK
        z = (self.key + self.counter) & MASK
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
        return z ^ (z >> 31)

    def uniform(self, lo: float = 0.0, hi: float = 1.0) -> float:
        return lo + (hi - lo) * ((self.next_bits() >> 11) * 2.0**-53)


def sample_poisson(lam: float, rng: Stream) -> int:
    import math

    u = rng.uniform()
    p = math.exp(-lam)
    cum = p
    k = 0
    while u >= cum and k < 300:
        k += 1
        p *= lam / k
        cum += p
    return k


def rescaled(raw: float) -> float:
    import math

    return 1.0 + math.exp(GAP) * (raw - POOL_LO) / (POOL_HI - POOL_LO)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="synthetic_games.csv")
    parser.add_argument("--seed", type=int, default=20240601)
    args = parser.parse_args()

    width = (POOL_HI - POOL_LO) / 4.0
    rows = ["edition,group_id,round,team_home,team_away,elo_home,elo_away,goals_home,goals_away"]
    for e_idx, edition in enumerate(EDITIONS):
        for g_idx, group in enumerate(GROUPS):
            iteration = e_idx * len(GROUPS) + g_idx
            pots = Stream(args.seed, iteration, 0)
            # pot k (1 strongest) is the k-th interval from the top
            elo = [round(pots.uniform(POOL_HI - k * width, POOL_HI - (k - 1) * width), 1)
                   for k in range(1, 5)]
            names = [f"T{edition}{group}{k}" for k in range(1, 5)]
            setting = g_idx % 3 + 1
            last = SETTING_LAST[setting]
            early = [p for p in ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4))
                     if p not in last]
            fixtures = [(early[0], 1), (early[1], 1), (early[2], 2), (early[3], 2),
                        (last[0], 3), (last[1], 3)]
            for game_idx, ((a, b), rnd) in enumerate(fixtures):
                rng = Stream(args.seed, iteration, 1 + game_idx)
                sa, sb = rescaled(elo[a - 1]), rescaled(elo[b - 1])
                share = sa / (sa + sb)
                ka = sample_poisson(ALPHA * share, rng)
                kb = sample_poisson(ALPHA * (1.0 - share), rng)
                rows.append(f"{edition},{group},{rnd},{names[a - 1]},{names[b - 1]},"
                            f"{elo[a - 1]},{elo[b - 1]},{ka},{kb}")
    with open(args.out, "w") as f:
        f.write("\n".join(rows) + "\n")
    print(f"wrote {args.out}: {len(rows) - 1} games")


if __name__ == "__main__":
    main()
