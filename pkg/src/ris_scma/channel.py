"""Deployment geometry, path loss, and Rician fading draws for the reflected uplink.

Conventions used throughout:

* Every small-scale coefficient is unit power: sqrt(K/(K+1)) * e^{j theta}
  + sqrt(1/(K+1)) * z with z ~ CN(0, 1) and, in the default mode, theta
  uniform on [-pi, pi) independently per coefficient.
* The direct user->BS entries are scaled by sqrt(direct_path_loss).
* The cascaded loss is attached entirely to the element->BS vector, so each
  user->element->BS product carries sqrt(cascaded_path_loss) exactly once;
  consumers never rescale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .factor_graph import FactorGraph

SPEED_OF_LIGHT = 299_792_458.0

LOS_PHASE_MODES = ("random", "common")


@dataclass(frozen=True)
class Geometry:
    """Linear deployment: BS at 0, users at ``bs_user_distance``, panel offset
    ``ris_perpendicular_offset`` from the axis at ``ris_horizontal_offset``
    from the BS."""

    bs_user_distance: float
    ris_perpendicular_offset: float
    ris_horizontal_offset: float
    carrier_frequency: float

    def __post_init__(self) -> None:
        if self.bs_user_distance <= 0:
            raise ValueError(f"bs_user_distance must be > 0, got {self.bs_user_distance}")
        if self.ris_perpendicular_offset <= 0:
            raise ValueError(
                f"ris_perpendicular_offset must be > 0, got {self.ris_perpendicular_offset}")
        if not 0 < self.ris_horizontal_offset < self.bs_user_distance:
            raise ValueError(
                f"ris_horizontal_offset must lie strictly between 0 and "
                f"bs_user_distance = {self.bs_user_distance}, got {self.ris_horizontal_offset}")
        if self.carrier_frequency <= 0:
            raise ValueError(f"carrier_frequency must be > 0, got {self.carrier_frequency}")

    @property
    def wavelength(self) -> float:
        return SPEED_OF_LIGHT / self.carrier_frequency

    @property
    def bs_ris_distance(self) -> float:
        return math.hypot(self.ris_perpendicular_offset, self.ris_horizontal_offset)

    @property
    def ris_user_distance(self) -> float:
        return math.hypot(self.ris_perpendicular_offset,
                          self.bs_user_distance - self.ris_horizontal_offset)


@dataclass(frozen=True)
class FadingConfig:
    """Fading and link-budget constants shared by all OREs.

    ``direct_loss_scale`` is a power multiplier on top of the free-space
    user->BS gain (1.0 = plain free space; < 1 models a blocked direct link;
    0 removes it).  ``los_phase`` selects per-coefficient random LoS phases
    or a common (all-ones) LoS.
    """

    rician_factor: float = 1.0
    noise_variance: float = 1e-8
    symbol_energy: float = 1.0
    los_phase: str = "random"
    direct_loss_scale: float = 1.0

    def __post_init__(self) -> None:
        if self.rician_factor < 0:
            raise ValueError(f"rician_factor must be >= 0, got {self.rician_factor}")
        if self.noise_variance <= 0:
            raise ValueError(f"noise_variance must be > 0, got {self.noise_variance}")
        if self.symbol_energy <= 0:
            raise ValueError(f"symbol_energy must be > 0, got {self.symbol_energy}")
        if self.los_phase not in LOS_PHASE_MODES:
            raise ValueError(
                f"los_phase must be one of {LOS_PHASE_MODES}, got {self.los_phase!r}")
        if self.direct_loss_scale < 0:
            raise ValueError(
                f"direct_loss_scale must be >= 0, got {self.direct_loss_scale}")


def cascaded_path_loss(geom: Geometry) -> float:
    """Power gain of one user->element->BS product:
    lambda^4 / (256 pi^2 d1^2 d2^2)."""
    lam = geom.wavelength
    d1 = geom.bs_ris_distance
    d2 = geom.ris_user_distance
    return lam**4 / (256.0 * math.pi**2 * d1**2 * d2**2)


def direct_path_loss(geom: Geometry) -> float:
    """Free-space power gain of the user->BS link: (lambda / (4 pi d))^2."""
    lam = geom.wavelength
    return (lam / (4.0 * math.pi * geom.bs_user_distance)) ** 2


@dataclass(eq=False)
class ChannelRealization:
    """One draw of all per-ORE coefficients, path loss already applied.

    Shapes: ``direct`` (R, d_f) user->BS rows ordered by ascending user index
    within each ORE's interference set, ``ris_to_bs`` (R, N), ``user_to_ris``
    (R, N, d_f) with column u holding user u's element coefficients.
    """

    direct: np.ndarray
    ris_to_bs: np.ndarray
    user_to_ris: np.ndarray

    def __post_init__(self) -> None:
        r, df = self.direct.shape
        rn, n = self.ris_to_bs.shape
        rg, ng, dfg = self.user_to_ris.shape
        if not (r == rn == rg and n == ng and df == dfg):
            raise ValueError(
                f"inconsistent shapes: direct {self.direct.shape}, "
                f"ris_to_bs {self.ris_to_bs.shape}, user_to_ris {self.user_to_ris.shape}")
        for name in ("direct", "ris_to_bs", "user_to_ris"):
            if not np.isfinite(getattr(self, name)).all():
                raise ValueError(f"{name} contains non-finite entries")

    @property
    def num_ores(self) -> int:
        return self.direct.shape[0]

    @property
    def num_interferers(self) -> int:
        return self.direct.shape[1]

    @property
    def num_elements(self) -> int:
        return self.ris_to_bs.shape[1]


def rician_small_scale(rng: np.random.Generator, shape: tuple,
                       k_factor: float, los_phase: str = "random") -> np.ndarray:
    """Unit-power Rician coefficients; K=0 is Rayleigh, K=inf pure LoS."""
    if math.isinf(k_factor):
        los_weight, diffuse_weight = 1.0, 0.0
    else:
        los_weight = math.sqrt(k_factor / (k_factor + 1.0))
        diffuse_weight = math.sqrt(1.0 / (k_factor + 1.0))
    if los_phase == "random":
        theta = rng.uniform(-math.pi, math.pi, size=shape)
        los = np.exp(1j * theta)
    elif los_phase == "common":
        los = np.ones(shape, dtype=np.complex128)
    else:
        raise ValueError(f"los_phase must be one of {LOS_PHASE_MODES}, got {los_phase!r}")
    diffuse = (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / math.sqrt(2.0)
    return los_weight * los + diffuse_weight * diffuse


def draw_link_channels(rng: np.random.Generator, num_ores: int, num_interferers: int,
                       geom: Geometry, fading: FadingConfig,
                       num_elements: int) -> ChannelRealization:
    """Draw coefficients for explicit (R, d_f, N) dimensions.

    Consumes the stream in a fixed order (direct, then element->BS, then
    user->element; within each: LoS phases, then real and imaginary diffuse
    parts), so a given seed pins the realization bit for bit.
    """
    if num_elements < 1:
        raise ValueError(f"num_elements must be >= 1, got {num_elements}")
    k = fading.rician_factor
    mode = fading.los_phase
    direct = rician_small_scale(rng, (num_ores, num_interferers), k, mode)
    ris_to_bs = rician_small_scale(rng, (num_ores, num_elements), k, mode)
    user_to_ris = rician_small_scale(rng, (num_ores, num_elements, num_interferers), k, mode)
    direct = direct * math.sqrt(direct_path_loss(geom) * fading.direct_loss_scale)
    ris_to_bs = ris_to_bs * math.sqrt(cascaded_path_loss(geom))
    return ChannelRealization(direct=direct, ris_to_bs=ris_to_bs, user_to_ris=user_to_ris)


def draw_channels(rng: np.random.Generator, graph: FactorGraph, geom: Geometry,
                  fading: FadingConfig, num_elements: int) -> ChannelRealization:
    """Draw one realization sized by the factor graph (R OREs, d_f users each)."""
    return draw_link_channels(rng, graph.num_ores, graph.users_per_ore,
                              geom, fading, num_elements)


def stack_realizations(realizations: list) -> ChannelRealization:
    """Concatenate along the ORE axis; OREs are i.i.d., so a batch of trials
    is just a taller realization."""
    return ChannelRealization(
        direct=np.concatenate([c.direct for c in realizations], axis=0),
        ris_to_bs=np.concatenate([c.ris_to_bs for c in realizations], axis=0),
        user_to_ris=np.concatenate([c.user_to_ris for c in realizations], axis=0),
    )
