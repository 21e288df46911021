"""Received-SNR objective and the discrete phase-shift optimizers.

All optimizers treat OREs independently and share the same conventions:
phases start at 0, coordinates are updated in place (so the objective can
never decrease: the incumbent value is always among the candidates), and
arg-max ties go to the smallest candidate index.

Each optimizer takes an optional ``counter`` (an :class:`~ris_scma.opcount.OpCount`
sink).  When a counter is supplied the run goes through a scalar,
operation-by-operation path that tallies real arithmetic under the documented
cost model; without one, a vectorized path computes the identical selections.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .channel import ChannelRealization, FadingConfig
from .opcount import OpCount

DEFAULT_EXHAUSTIVE_BUDGET = 2**20


@dataclass(frozen=True, eq=False)
class PhaseAlphabet:
    """The 2^b quantized phase values -pi + l * (2 pi / 2^b), l = 0..2^b-1."""

    bits: int
    values: np.ndarray      # radians, ascending
    rotations: np.ndarray   # e^{-j * values}

    @classmethod
    def from_bits(cls, bits: int) -> "PhaseAlphabet":
        if bits < 1:
            raise ValueError(f"bits must be >= 1, got {bits}")
        size = 2**bits
        step = 2.0 * math.pi / size
        values = -math.pi + step * np.arange(size)
        return cls(bits=bits, values=values, rotations=np.exp(-1j * values))

    @property
    def size(self) -> int:
        return 2**self.bits

    @property
    def zero_index(self) -> int:
        """Index of the 0-radian member (always present)."""
        return 2 ** (self.bits - 1)


@dataclass(eq=False)
class PhaseAssignment:
    """Per-ORE vector of N indices into a :class:`PhaseAlphabet`."""

    alphabet: PhaseAlphabet
    indices: np.ndarray     # (R, N) integer

    def __post_init__(self) -> None:
        if self.indices.ndim != 2:
            raise ValueError(f"indices must be (R, N), got shape {self.indices.shape}")
        if self.indices.min(initial=0) < 0 or self.indices.max(initial=0) >= self.alphabet.size:
            raise ValueError("phase index out of alphabet range")

    @property
    def num_ores(self) -> int:
        return self.indices.shape[0]

    @property
    def num_elements(self) -> int:
        return self.indices.shape[1]

    def phases(self) -> np.ndarray:
        return self.alphabet.values[self.indices]

    def rotations(self) -> np.ndarray:
        return self.alphabet.rotations[self.indices]


def db_from_linear(linear) -> float:
    """The one place linear power turns into dB."""
    with np.errstate(divide="ignore"):
        return float(10.0 * np.log10(linear))


@dataclass(eq=False)
class SnrReport:
    """Per-ORE linear SNRs plus their dB-of-mean average."""

    per_ore_linear: np.ndarray
    average_db: float

    @classmethod
    def from_linear(cls, per_ore_linear: np.ndarray) -> "SnrReport":
        per_ore_linear = np.asarray(per_ore_linear, dtype=float)
        return cls(per_ore_linear=per_ore_linear,
                   average_db=db_from_linear(per_ore_linear.mean()))


class UpdateRecord(NamedTuple):
    """One logged coordinate update: objective is the squared norm of the
    composite row (no energy/noise scaling)."""

    ore: int
    iteration: int
    element: int
    objective: float


# ---------------------------------------------------------------------------
# Objective


def composite_channel(ch: ChannelRealization, phases: PhaseAssignment) -> np.ndarray:
    """(R, d_f) composite rows: rotated cascaded paths plus the direct path."""
    if phases.indices.shape != (ch.num_ores, ch.num_elements):
        raise ValueError(
            f"phase indices shape {phases.indices.shape} does not match "
            f"channel dims (R={ch.num_ores}, N={ch.num_elements})")
    u = phases.rotations() * ch.ris_to_bs                      # (R, N)
    return np.einsum("rn,rni->ri", u, ch.user_to_ris) + ch.direct


def _composite_norms(v: np.ndarray, ch: ChannelRealization) -> np.ndarray:
    """Squared composite-row norms for explicit per-element rotations v (R, N)."""
    w = np.einsum("rn,rni->ri", v * ch.ris_to_bs, ch.user_to_ris) + ch.direct
    return (w.real**2 + w.imag**2).sum(axis=1)


def received_snr(ch: ChannelRealization, phases: PhaseAssignment,
                 fading: FadingConfig) -> SnrReport:
    """Per-ORE received SNR: (E / sigma^2) * ||composite row||^2."""
    w = composite_channel(ch, phases)
    scale = fading.symbol_energy / fading.noise_variance
    return SnrReport.from_linear(scale * (w.real**2 + w.imag**2).sum(axis=1))


def no_ris_snr(ch: ChannelRealization, fading: FadingConfig) -> SnrReport:
    """Direct link only: the cascaded term removed entirely."""
    scale = fading.symbol_energy / fading.noise_variance
    h = ch.direct
    return SnrReport.from_linear(scale * (h.real**2 + h.imag**2).sum(axis=1))


def blind_phases(alphabet: PhaseAlphabet, num_ores: int,
                 num_elements: int) -> PhaseAssignment:
    """All phases 0: the unoptimized baseline every optimizer starts from."""
    idx = np.full((num_ores, num_elements), alphabet.zero_index, dtype=np.int64)
    return PhaseAssignment(alphabet=alphabet, indices=idx)


# ---------------------------------------------------------------------------
# Cached coefficients and the objective decomposition


@dataclass(eq=False)
class LcAoWorkspace:
    """Per-ORE coefficients the cached optimizer scores candidates from.

    ``element_coupling`` (R, N, N) is Hermitian with real nonnegative
    diagonal; entry (k, n) couples elements k and n through all d_f users.
    ``direct_coupling`` (R, N) correlates each element with the direct rows.
    """

    element_coupling: np.ndarray
    direct_coupling: np.ndarray


def build_lc_workspace(ch: ChannelRealization) -> LcAoWorkspace:
    xi = ch.ris_to_bs[:, :, None] * ch.user_to_ris          # (R, N, d_f)
    coupling = np.einsum("rki,rni->rkn", xi, np.conj(xi))   # xi @ xi^H
    direct = np.einsum("rki,ri->rk", xi, np.conj(ch.direct))
    return LcAoWorkspace(element_coupling=coupling, direct_coupling=direct)


def snr_decomposition(ch: ChannelRealization, phases: PhaseAssignment) -> tuple:
    """Split the squared norm into quadratic, cross, and direct addends
    (each (R,), no energy/noise scaling): v D v^H + 2 Re{v dbar} + ||h||^2."""
    ws = build_lc_workspace(ch)
    v = phases.rotations()
    quad = np.einsum("rk,rkn,rn->r", v, ws.element_coupling, np.conj(v)).real
    cross = 2.0 * np.einsum("rn,rn->r", v, ws.direct_coupling).real
    h = ch.direct
    direct = (h.real**2 + h.imag**2).sum(axis=1)
    return quad, cross, direct


def term_split(ch: ChannelRealization, phases: PhaseAssignment, element: int) -> tuple:
    """Split each decomposition addend into its phi_n-dependent and
    phi_n-independent parts for element ``element`` (0-based).

    Returns (a1_phi, a1_rest, a2_phi, a2_rest), each (R,); a1_phi + a1_rest
    reproduces the quadratic addend and a2_phi + a2_rest the cross addend.
    """
    n = element
    if not 0 <= n < ch.num_elements:
        raise ValueError(f"element must be in [0, {ch.num_elements}), got {n}")
    ws = build_lc_workspace(ch)
    d = ws.element_coupling
    dbar = ws.direct_coupling
    v = phases.rotations()                                   # e^{-j phi}
    others = np.ones(ch.num_elements, dtype=bool)
    others[n] = False

    # 2 Re{ e^{-j phi_n} sum_{k != n} e^{j phi_k} conj(d_{k,n}) }
    a1_phi = 2.0 * (v[:, n] * np.einsum(
        "rk,rk->r", np.conj(v[:, others]), np.conj(d[:, others, n]))).real

    diag = np.einsum("rkk->rk", d).real.sum(axis=1)
    cross_terms = v[:, others, None] * d[:, others, :][:, :, others] \
        * np.conj(v[:, None, others])
    off_diag = ~np.eye(ch.num_elements - 1, dtype=bool)
    a1_rest = diag + cross_terms[:, off_diag].sum(axis=1).real

    a2_phi = 2.0 * (v[:, n] * dbar[:, n]).real
    a2_rest = 2.0 * np.einsum("rk,rk->r", v[:, others], dbar[:, others]).real
    return a1_phi, a1_rest, a2_phi, a2_rest


# ---------------------------------------------------------------------------
# Optimizers (vectorized paths)


def ao_optimize(ch: ChannelRealization, alphabet: PhaseAlphabet, iterations: int,
                counter: Optional[OpCount] = None, update_log: Optional[list] = None,
                sweep_norms: Optional[list] = None) -> PhaseAssignment:
    """Cyclic coordinate ascent with a full norm evaluation per candidate.

    For each ORE: for t = 1..iterations, for each element, score all 2^b
    candidate phases by the full composite-row norm (everything recomputed,
    matching the closed-form operation counts), keep the first maximizer.
    """
    if iterations < 1:
        raise ValueError(f"iterations must be >= 1, got {iterations}")
    if counter is not None:
        return _ao_counted(ch, alphabet, iterations, counter, update_log)
    num_ores, num_elem = ch.num_ores, ch.num_elements
    rot = alphabet.rotations
    size = alphabet.size
    idx = np.full((num_ores, num_elem), alphabet.zero_index, dtype=np.int64)
    v = np.full((num_ores, num_elem), rot[alphabet.zero_index], dtype=np.complex128)
    gbar = ch.ris_to_bs
    for t in range(iterations):
        for n in range(num_elem):
            cand_v = np.repeat(v[:, None, :], size, axis=1)
            cand_v[:, :, n] = rot[None, :]
            w = np.einsum("rln,rni->rli", cand_v * gbar[:, None, :], ch.user_to_ris) \
                + ch.direct[:, None, :]
            obj = (w.real**2 + w.imag**2).sum(axis=2)        # (R, 2^b)
            sel = obj.argmax(axis=1)                          # first max wins
            idx[:, n] = sel
            v[:, n] = rot[sel]
            if update_log is not None:
                best = obj[np.arange(num_ores), sel]
                update_log.extend(
                    UpdateRecord(r, t, n, float(best[r])) for r in range(num_ores))
        if sweep_norms is not None:
            sweep_norms.append(_composite_norms(v, ch))
    return PhaseAssignment(alphabet=alphabet, indices=idx)


def lc_ao_optimize(ch: ChannelRealization, alphabet: PhaseAlphabet, iterations: int,
                   counter: Optional[OpCount] = None, update_log: Optional[list] = None,
                   sweep_norms: Optional[list] = None) -> PhaseAssignment:
    """Same schedule and selections as :func:`ao_optimize`, but each candidate
    is scored by Re{e^{-j phi} * (direct coupling + rotated cross couplings)},
    which drops every phi_n-independent addend of the objective."""
    if iterations < 1:
        raise ValueError(f"iterations must be >= 1, got {iterations}")
    if counter is not None:
        return _lc_ao_counted(ch, alphabet, iterations, counter, update_log)
    num_ores, num_elem = ch.num_ores, ch.num_elements
    rot = alphabet.rotations
    ws = build_lc_workspace(ch)
    coupling = ws.element_coupling
    direct_c = ws.direct_coupling
    idx = np.full((num_ores, num_elem), alphabet.zero_index, dtype=np.int64)
    v = np.full((num_ores, num_elem), rot[alphabet.zero_index], dtype=np.complex128)
    for t in range(iterations):
        for n in range(num_elem):
            contrib = np.conj(v) * np.conj(coupling[:, :, n])  # e^{j phi_k} d_{k,n}^*
            contrib[:, n] = 0.0
            term3 = direct_c[:, n] + contrib.sum(axis=1)
            scores = (rot[None, :] * term3[:, None]).real      # (R, 2^b)
            sel = scores.argmax(axis=1)
            idx[:, n] = sel
            v[:, n] = rot[sel]
            if update_log is not None:
                norms = _composite_norms(v, ch)
                update_log.extend(
                    UpdateRecord(r, t, n, float(norms[r])) for r in range(num_ores))
        if sweep_norms is not None:
            sweep_norms.append(_composite_norms(v, ch))
    return PhaseAssignment(alphabet=alphabet, indices=idx)


def exhaustive_optimize(ch: ChannelRealization, alphabet: PhaseAlphabet,
                        eval_budget: int = DEFAULT_EXHAUSTIVE_BUDGET) -> PhaseAssignment:
    """Global maximizer per ORE over all 2^{bN} assignments; ties go to the
    lexicographically smallest index vector."""
    num_ores, num_elem = ch.num_ores, ch.num_elements
    size = alphabet.size
    total = size**num_elem
    if total > eval_budget:
        raise ValueError(
            f"exhaustive budget exceeded: 2^(b*N) = {total} > {eval_budget} "
            f"evaluations per ORE")
    rot = alphabet.rotations
    best_idx = np.zeros((num_ores, num_elem), dtype=np.int64)
    chunk = 4096
    shape = (size,) * num_elem
    for r in range(num_ores):
        gbar = ch.ris_to_bs[r]
        g = ch.user_to_ris[r]
        h = ch.direct[r]
        best_val = -np.inf
        for start in range(0, total, chunk):
            flat = np.arange(start, min(start + chunk, total))
            cand = np.stack(np.unravel_index(flat, shape), axis=1)   # lexicographic
            w = (rot[cand] * gbar) @ g + h
            obj = (w.real**2 + w.imag**2).sum(axis=1)
            k = int(obj.argmax())
            if obj[k] > best_val:                                    # strict: keeps first
                best_val = float(obj[k])
                best_idx[r] = cand[k]
    return PhaseAssignment(alphabet=alphabet, indices=best_idx)


# ---------------------------------------------------------------------------
# Instrumented scalar paths


class _ComplexOps:
    """Scalar complex arithmetic that tallies real operations as it goes."""

    def __init__(self, count: OpCount):
        self.count = count

    def mul(self, a: complex, b: complex) -> complex:
        self.count.real_multiplications += 4
        self.count.real_additions += 2
        return a * b

    def add(self, a: complex, b: complex) -> complex:
        self.count.real_additions += 2
        return a + b

    def abs2(self, a: complex) -> float:
        self.count.real_multiplications += 2
        self.count.real_additions += 1
        return a.real * a.real + a.imag * a.imag

    def add1(self, a, b):
        """Accumulate tallied as a single real addition (the convention the
        cached optimizer's closed-form count is built on)."""
        self.count.real_additions += 1
        return a + b


def _first_argmax(scores: list) -> int:
    best, best_val = 0, scores[0]
    for i in range(1, len(scores)):
        if scores[i] > best_val:
            best, best_val = i, scores[i]
    return best


def _ao_counted(ch, alphabet, iterations, counter, update_log):
    ops = _ComplexOps(counter)
    rot = [complex(x) for x in alphabet.rotations]
    size = alphabet.size
    num_ores, num_elem, df = ch.num_ores, ch.num_elements, ch.num_interferers
    idx = np.full((num_ores, num_elem), alphabet.zero_index, dtype=np.int64)
    for r in range(num_ores):
        gbar = [complex(x) for x in ch.ris_to_bs[r]]
        g = [[complex(x) for x in row] for row in ch.user_to_ris[r]]
        h = [complex(x) for x in ch.direct[r]]
        v = [rot[alphabet.zero_index]] * num_elem
        for t in range(iterations):
            for n in range(num_elem):
                scores = []
                for l in range(size):
                    vn = list(v)
                    vn[n] = rot[l]
                    u = [ops.mul(gbar[k], vn[k]) for k in range(num_elem)]
                    squares = []
                    for i in range(df):
                        acc = h[i]
                        for k in range(num_elem):
                            acc = ops.add(acc, ops.mul(u[k], g[k][i]))
                        squares.append(ops.abs2(acc))
                    norm = squares[0]
                    for s in squares[1:]:
                        norm = ops.add1(norm, s)
                    scores.append(norm)
                sel = _first_argmax(scores)
                idx[r, n] = sel
                v[n] = rot[sel]
                if update_log is not None:
                    update_log.append(UpdateRecord(r, t, n, scores[sel]))
    return PhaseAssignment(alphabet=alphabet, indices=idx)


def _lc_ao_counted(ch, alphabet, iterations, counter, update_log):
    ops = _ComplexOps(counter)
    rot = [complex(x) for x in alphabet.rotations]
    size = alphabet.size
    num_ores, num_elem, df = ch.num_ores, ch.num_elements, ch.num_interferers
    idx = np.full((num_ores, num_elem), alphabet.zero_index, dtype=np.int64)
    for r in range(num_ores):
        gbar = [complex(x) for x in ch.ris_to_bs[r]]
        g = [[complex(x) for x in row] for row in ch.user_to_ris[r]]
        h = [complex(x) for x in ch.direct[r]]
        v = [rot[alphabet.zero_index]] * num_elem
        for t in range(iterations):
            for n in range(num_elem):
                psi = 0j
                for k in range(num_elem):
                    if k == n:
                        continue
                    acc = None
                    for i in range(df):
                        a = ops.mul(g[k][i], gbar[k])
                        b = ops.mul(g[n][i], gbar[n])
                        p = ops.mul(a, b.conjugate())
                        acc = p if acc is None else ops.add(acc, p)
                    rotated = ops.mul(v[k].conjugate(), acc.conjugate())
                    psi = ops.add1(psi, rotated)
                dbar = None
                for i in range(df):
                    a = ops.mul(g[n][i], gbar[n])
                    p = ops.mul(a, h[i].conjugate())
                    dbar = p if dbar is None else ops.add(dbar, p)
                term3 = ops.add1(dbar, psi)
                scores = [ops.mul(rot[l], term3).real for l in range(size)]
                sel = _first_argmax(scores)
                idx[r, n] = sel
                v[n] = rot[sel]
                if update_log is not None:
                    vv = np.array(v)[None, :]
                    sub = ChannelRealization(direct=ch.direct[r:r + 1],
                                             ris_to_bs=ch.ris_to_bs[r:r + 1],
                                             user_to_ris=ch.user_to_ris[r:r + 1])
                    update_log.append(
                        UpdateRecord(r, t, n, float(_composite_norms(vv, sub)[0])))
    return PhaseAssignment(alphabet=alphabet, indices=idx)
