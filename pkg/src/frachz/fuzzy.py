"""Two-input Mamdani-type inference engine shared by all controller structures.

Fixed geometry: seven triangular membership labels per variable on the
normalized universe [-1, 1] with 50% overlap and a 49-cell diagonal rule
table.  Antecedents combine by min; each fired rule scales its consequent
triangle by the firing strength and the scaled triangles accumulate
additively before centre-of-gravity defuzzification on a uniform grid.

Activation scaling (rather than alpha-cut clipping) keeps the defuzzified
surface monotone along each input axis; clipping introduces ~1e-2 dips at
label crossovers.  Additive aggregation makes the centroid linear in the
per-label strengths, so it collapses to two precomputed moment tables and
inference costs a few arithmetic ops per call.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

LABELS = ("NL", "NM", "NS", "ZR", "PS", "PM", "PL")
_N_LABELS = 7
DEFAULT_RESOLUTION = 1001


@dataclass(frozen=True)
class MembershipSet:
    """Seven evenly spaced triangles over [-1, 1], unity partition inside."""

    labels: tuple = LABELS
    centers: tuple = tuple(np.linspace(-1.0, 1.0, _N_LABELS))
    half_width: float = 1.0 / 3.0

    def degrees(self, x: float) -> np.ndarray:
        """Membership degree of (clamped) ``x`` in each of the 7 labels."""
        x = min(1.0, max(-1.0, float(x)))
        c = np.asarray(self.centers)
        return np.maximum(0.0, 1.0 - np.abs(x - c) / self.half_width)


def mf_degrees(mset: MembershipSet, x: float) -> np.ndarray:
    """Seven membership degrees of ``x``; at most two are nonzero."""
    return mset.degrees(x)


def rule_table() -> np.ndarray:
    """7x7 output-label indices: clamp(i + j, -3, 3) on index offsets.

    Row index maps the error label, column index the error-rate label,
    both as offsets -3..3 stored at positions 0..6.
    """
    off = np.arange(-3, 4)
    return np.clip(off[:, None] + off[None, :], -3, 3)


class FuzzyEngine:
    """Min-AND, scaled-consequent, additive-aggregation fuzzy engine.

    Immutable after construction; safe to share across concurrent
    simulations.  ``resolution`` sets the number of uniform quadrature
    points over [-1, 1] for the centre-of-gravity integrals (trapezoidal
    end weights; edge labels are truncated by the universe, so plain
    end-weighting would bias their centroids).
    """

    def __init__(self, resolution: int = DEFAULT_RESOLUTION,
                 input_set: MembershipSet | None = None,
                 output_set: MembershipSet | None = None):
        if resolution < 201:
            raise ValueError(f"defuzz resolution must be >= 201, got {resolution}")
        self.resolution = int(resolution)
        self.input_set = input_set or MembershipSet()
        self.output_set = output_set or MembershipSet()
        self.rules = rule_table()
        self.grid = np.linspace(-1.0, 1.0, self.resolution)
        w = np.ones(self.resolution)
        w[0] = w[-1] = 0.5
        # per-label area and first moment of the consequent triangles
        self._m0 = np.empty(_N_LABELS)
        self._m1 = np.empty(_N_LABELS)
        hw = self.output_set.half_width
        for k, c in enumerate(self.output_set.centers):
            tri = np.maximum(0.0, 1.0 - np.abs(self.grid - c) / hw)
            self._m0[k] = float(w @ tri)
            self._m1[k] = float((w * self.grid) @ tri)
        # mirror labels share geometry; force it so antisymmetry is exact
        self._m0 = (self._m0 + self._m0[::-1]) / 2.0
        self._m1 = (self._m1 - self._m1[::-1]) / 2.0
        self._in_hw = self.input_set.half_width

    def _active(self, x: float):
        """(label index, degree) pairs of the at-most-two fired input labels."""
        x = min(1.0, max(-1.0, x))
        pos = (x + 1.0) / self._in_hw
        i0 = int(pos)
        if i0 >= _N_LABELS - 1:
            return ((_N_LABELS - 1, 1.0),)
        frac = pos - i0
        if frac == 0.0:
            return ((i0, 1.0),)
        return ((i0, 1.0 - frac), (i0 + 1, frac))

    def strengths(self, e_norm: float, de_norm: float) -> np.ndarray:
        """Accumulated firing strength of each output label (min AND)."""
        out = np.zeros(_N_LABELS)
        for i, di in self._active(float(e_norm)):
            for j, dj in self._active(float(de_norm)):
                k = self.rules[i, j] + 3
                out[k] += di if di < dj else dj
        return out

    def infer(self, e_norm: float, de_norm: float) -> float:
        """FLC output in [-1, 1] for (clamped) normalized error and rate."""
        num = 0.0
        den = 0.0
        for i, di in self._active(float(e_norm)):
            for j, dj in self._active(float(de_norm)):
                k = self.rules[i, j] + 3
                s = di if di < dj else dj
                num += s * self._m1[k]
                den += s * self._m0[k]
        if den == 0.0:
            return 0.0
        return float(num) / float(den)

    def control_surface(self, grid_n: int) -> np.ndarray:
        """Inference evaluated on a uniform grid over [-1, 1]^2.

        Row index varies the error input, column index the rate input.
        """
        if grid_n < 2:
            raise ValueError(f"grid must have at least 2 points, got {grid_n}")
        pts = np.linspace(-1.0, 1.0, grid_n)
        out = np.empty((grid_n, grid_n))
        for a, e in enumerate(pts):
            for b, de in enumerate(pts):
                out[a, b] = self.infer(e, de)
        return out


@lru_cache(maxsize=8)
def default_engine(resolution: int = DEFAULT_RESOLUTION) -> FuzzyEngine:
    """Shared immutable engine instance (construction is not free)."""
    return FuzzyEngine(resolution=resolution)
