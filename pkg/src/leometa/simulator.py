"""Seeded Monte Carlo of the Poisson shell constellation.

Each realization draws a Poisson number of satellites on the visible cap
(uniform heights, by the hat-box theorem), maps heights to slant ranges,
and evaluates the conditional coverage of the nearest satellite either
exactly (Rayleigh fading), by averaging fresh fading draws, or through the
same alternating-sum approximation the analytic pipeline uses.  Streams
are counter-based and keyed per realization, so results are reproducible
regardless of evaluation order.
"""

import math
from dataclasses import dataclass

import numpy as np

from .analytic import conditional_coverage
from .geometry import DerivedGeometry, SystemConfig, derive, distance_from_height
from .special import regularized_upper_gamma

MODES = ("exact-m1", "fading-mc", "lemma1")
DEFAULT_FADING_DRAWS = 2000
_MAX_FADING_ELEMENTS = 1 << 22  # cap on fading matrix size per chunk


class ModeMismatchError(ValueError):
    """Evaluation mode incompatible with the scenario's fading order."""


@dataclass(frozen=True)
class ConstellationRealization:
    """Sorted slant ranges of the visible satellites; possibly empty."""

    distances: np.ndarray
    seed_info: tuple[int, int] | None = None

    @property
    def nearest(self) -> float:
        return float(self.distances[0])

    @property
    def interferers(self) -> np.ndarray:
        return self.distances[1:]


@dataclass(frozen=True)
class SimulationEstimate:
    """Moment estimates and the empirical conditional-coverage CCDF."""

    realizations: int
    m1_hat: float
    m1_se: float
    m2_hat: float
    m2_se: float
    empirical_ccdf: np.ndarray
    per_realization_ps: np.ndarray | None = None


def realization_rng(master_seed: int, index: int) -> np.random.Generator:
    """Counter-based stream for one realization.

    The Philox key packs ``(master_seed, index)`` into disjoint 64-bit
    words, so distinct (seed, realization) pairs can never collide and a
    realization's stream does not depend on how many others were drawn.
    """
    for name, value in (("master_seed", master_seed), ("index", index)):
        if not isinstance(value, (int, np.integer)) or isinstance(value, bool):
            raise ValueError(f"{name} must be an integer, got {value!r}")
        if not 0 <= value < 2**64:
            raise ValueError(f"{name} must fit in 64 bits, got {value}")
    return np.random.Generator(np.random.Philox(key=(int(master_seed) << 64) | int(index)))


def sample_constellation(
    config: SystemConfig,
    geo: DerivedGeometry,
    rng: np.random.Generator,
    seed_info: tuple[int, int] | None = None,
) -> ConstellationRealization:
    """Draw one Poisson realization of the visible satellites."""
    count = rng.poisson(config.density * geo.cap_area)
    heights = rng.uniform(config.earth_radius, geo.orbit_radius, size=count)
    distances = np.sort(distance_from_height(heights, geo, config))
    distances.setflags(write=False)
    return ConstellationRealization(distances=distances, seed_info=seed_info)


def _fading_average(
    realization: ConstellationRealization,
    theta: float,
    config: SystemConfig,
    fading_draws: int,
    rng: np.random.Generator,
) -> float:
    m_nak = config.nakagami_m
    interferers = realization.interferers
    if interferers.size == 0:
        return 1.0
    r_pow = interferers ** (-config.path_loss_exponent)
    gain = theta * realization.nearest**config.path_loss_exponent
    chunk = max(1, _MAX_FADING_ELEMENTS // interferers.size)
    acc = 0.0
    remaining = fading_draws
    while remaining > 0:
        n = min(chunk, remaining)
        fades = rng.gamma(shape=m_nak, scale=1.0 / m_nak, size=(n, interferers.size))
        interference = fades @ r_pow
        acc += float(np.sum(regularized_upper_gamma(m_nak, m_nak * gain * interference)))
        remaining -= n
    return acc / fading_draws


def conditional_ps(
    realization: ConstellationRealization,
    theta: float,
    config: SystemConfig,
    mode: str,
    fading_draws: int = DEFAULT_FADING_DRAWS,
    rng: np.random.Generator | None = None,
) -> float:
    """Conditional coverage of one realization under the chosen mode.

    ``exact-m1`` evaluates the closed-form Rayleigh product and demands
    nakagami_m = 1; ``lemma1`` applies the alternating-sum approximation
    for any fading order; ``fading-mc`` averages ``fading_draws`` fresh
    fading realizations from ``rng``.  An empty realization has coverage
    zero by convention.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")
    if mode == "exact-m1" and config.nakagami_m != 1:
        raise ModeMismatchError(f"exact-m1 requires nakagami_m=1, got {config.nakagami_m}")
    if realization.distances.size == 0:
        return 0.0
    if mode in ("exact-m1", "lemma1"):
        return conditional_coverage(theta, realization.nearest, realization.interferers, config)
    if not isinstance(fading_draws, (int, np.integer)) or fading_draws < 1:
        raise ValueError(f"fading_draws must be a positive integer, got {fading_draws!r}")
    if rng is None:
        raise ValueError("fading-mc mode needs the realization's rng")
    return _fading_average(realization, theta, config, fading_draws, rng)


def estimate(
    theta: float,
    config: SystemConfig,
    realizations: int,
    mode: str,
    fading_draws: int = DEFAULT_FADING_DRAWS,
    master_seed: int = 1,
    x_grid: np.ndarray | None = None,
    keep_ps: bool = False,
) -> SimulationEstimate:
    """Estimate conditional-coverage moments and the empirical meta CCDF.

    Realization ``i`` of a run is fully determined by
    ``(master_seed, i)``; aggregation is serial and in index order, so two
    runs with equal arguments produce bit-identical results.
    """
    if not isinstance(realizations, (int, np.integer)) or realizations < 1:
        raise ValueError(f"realizations must be a positive integer, got {realizations!r}")
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")
    if mode == "exact-m1" and config.nakagami_m != 1:
        raise ModeMismatchError(f"exact-m1 requires nakagami_m=1, got {config.nakagami_m}")
    if x_grid is None:
        x_grid = np.arange(1, 100) / 100.0
    x_grid = np.asarray(x_grid, dtype=float)
    geo = derive(config)
    ps = np.empty(realizations)
    for i in range(realizations):
        rng = realization_rng(master_seed, i)
        real = sample_constellation(config, geo, rng, seed_info=(master_seed, i))
        ps[i] = conditional_ps(real, theta, config, mode, fading_draws, rng=rng)
    m1_hat = float(np.mean(ps))
    m2_hat = float(np.mean(ps * ps))
    if realizations > 1:
        m1_se = float(np.std(ps, ddof=1) / math.sqrt(realizations))
        m2_se = float(np.std(ps * ps, ddof=1) / math.sqrt(realizations))
    else:
        m1_se = 0.0
        m2_se = 0.0
    ccdf = np.column_stack((x_grid, np.mean(ps[None, :] > x_grid[:, None], axis=1)))
    ccdf.setflags(write=False)
    kept = None
    if keep_ps:
        kept = ps.copy()
        kept.setflags(write=False)
    return SimulationEstimate(
        realizations=int(realizations),
        m1_hat=m1_hat,
        m1_se=m1_se,
        m2_hat=m2_hat,
        m2_se=m2_se,
        empirical_ccdf=ccdf,
        per_realization_ps=kept,
    )
