"""Fractional-order differ-integrators.

Band-limited rational (zeros/poles/gain) approximations of ``s**beta``
built with Oustaloup's recursive pole/zero placement, their causal
discrete-time execution as a cascade of first-order sections, and a
Grunwald-Letnikov finite-difference reference used to cross-validate the
filters.

Orders with ``abs(beta) >= 1`` are split into an exact integer power and
a fractional remainder in (-1, 1); only the remainder is approximated,
the integer part is realized as exact discrete differentiation
(backward difference) or integration (trapezoidal accumulation).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.signal import fftconvolve

DEFAULT_BAND = (1e-2, 1e2)
DEFAULT_HALF_ORDER = 2  # N; the rational filter has 2N+1 pole/zero pairs

_DISCRETIZATIONS = ("bilinear", "backward_euler")


def split_order(beta: float) -> tuple[int, float]:
    """Split a differ-integration order into (integer part, remainder).

    The remainder always lies in (-1, 1); the integer part is truncated
    toward zero so both carry the sign of ``beta``.
    """
    if not math.isfinite(beta):
        raise ValueError(f"differ-integration order must be finite, got {beta!r}")
    ipart = math.trunc(beta)
    return ipart, beta - ipart


@dataclass(frozen=True)
class OustaloupSpec:
    """Synthesis request for a band-limited approximation of s**beta."""

    beta: float
    N: int = DEFAULT_HALF_ORDER
    wb: float = DEFAULT_BAND[0]
    wh: float = DEFAULT_BAND[1]

    def __post_init__(self):
        if not math.isfinite(self.beta):
            raise ValueError(f"order must be finite, got {self.beta!r}")
        if abs(self.beta) > 2.0:
            raise ValueError(f"order out of supported range [-2, 2]: {self.beta}")
        if self.N < 1:
            raise ValueError(f"filter half-order must be >= 1, got {self.N}")
        if not (0.0 < self.wb < self.wh):
            raise ValueError(f"need 0 < wb < wh, got ({self.wb}, {self.wh})")


class FilterRealization:
    """Zeros/poles/gain approximation of s**beta plus its discrete form.

    ``zeros``/``poles``/``gain`` describe the continuous rational part
    (fractional remainder only); ``integer_power`` is the exact integer
    factor split off the requested order.  Call :meth:`discretize` to
    attach executable first-order sections at a sampling step, then
    :meth:`step` to advance them sample by sample.  Instances own their
    state: use :meth:`fresh` to get an independent zero-state copy.
    """

    def __init__(self, zeros, poles, gain, integer_power, dt=None,
                 method="bilinear"):
        self.zeros = np.asarray(zeros, dtype=float)
        self.poles = np.asarray(poles, dtype=float)
        self.gain = float(gain)
        self.integer_power = int(integer_power)
        self.dt = dt
        self.method = method
        self._b0: list[float] = []
        self._b1: list[float] = []
        self._a1: list[float] = []
        self._sect: list[float] = []
        self._int_prev: list[float] = []   # previous stage inputs
        self._int_acc: list[float] = []    # trapezoidal accumulators
        if dt is not None:
            self._build_sections(dt, method)

    # -- synthesis-side surface -------------------------------------------

    def freq_response(self, omega):
        """Continuous-domain complex gain at angular frequency ``omega``.

        Accepts a scalar or an array of rad/s values (all > 0).
        """
        w = np.asarray(omega, dtype=float)
        if np.any(w <= 0):
            raise ValueError("freq_response requires omega > 0")
        jw = 1j * w
        h = np.full_like(jw, self.gain, dtype=complex)
        for z, p in zip(self.zeros, self.poles):
            h *= (jw + z) / (jw + p)
        if self.integer_power:
            h *= jw ** self.integer_power
        if np.isscalar(omega):
            return complex(h)
        return h

    # -- discrete-time surface --------------------------------------------

    def discretize(self, dt: float, method: str = "bilinear") -> "FilterRealization":
        """Return a copy carrying executable sections at step ``dt``."""
        return FilterRealization(self.zeros, self.poles, self.gain,
                                 self.integer_power, dt=dt, method=method)

    def _build_sections(self, dt, method):
        if dt <= 0:
            raise ValueError(f"dt must be positive, got {dt}")
        if method not in _DISCRETIZATIONS:
            raise ValueError(f"unknown discretization {method!r}")
        self.dt = float(dt)
        self.method = method
        b0, b1, a1 = [], [], []
        if method == "bilinear":
            c = 2.0 / dt
            for z, p in zip(self.zeros, self.poles):
                d = c + p
                b0.append((c + z) / d)
                b1.append((z - c) / d)
                a1.append((p - c) / d)
        else:  # backward Euler
            c = 1.0 / dt
            for z, p in zip(self.zeros, self.poles):
                d = c + p
                b0.append((c + z) / d)
                b1.append(-c / d)
                a1.append(-c / d)
        self._b0, self._b1, self._a1 = b0, b1, a1
        self.reset()

    def reset(self):
        """Zero all internal state (sections and integer stages)."""
        n = len(self._b0)
        self._sect = [0.0] * n
        k = abs(self.integer_power)
        self._int_prev = [0.0] * k
        self._int_acc = [0.0] * k

    def fresh(self) -> "FilterRealization":
        """Independent zero-state copy; requires a discretized filter."""
        if self.dt is None:
            raise ValueError("discretize the filter before cloning state")
        return FilterRealization(self.zeros, self.poles, self.gain,
                                 self.integer_power, dt=self.dt,
                                 method=self.method)

    def step(self, x: float) -> float:
        """Advance the filter by one input sample and return the output."""
        if self.dt is None:
            raise RuntimeError("filter has no discrete sections; "
                               "synthesize with dt or call discretize first")
        u = self.gain * x
        sect = self._sect
        b0, b1, a1 = self._b0, self._b1, self._a1
        for k in range(len(sect)):
            y = b0[k] * u + sect[k]
            sect[k] = b1[k] * u - a1[k] * y
            u = y
        p = self.integer_power
        if p > 0:
            dt = self.dt
            prev = self._int_prev
            for k in range(p):
                d = (u - prev[k]) / dt
                prev[k] = u
                u = d
        elif p < 0:
            dt = self.dt
            prev, acc = self._int_prev, self._int_acc
            for k in range(-p):
                acc[k] += 0.5 * dt * (u + prev[k])
                prev[k] = u
                u = acc[k]
        return u

    def run(self, x) -> np.ndarray:
        """Filter a whole sequence from zero initial state."""
        f = self.fresh()
        out = np.empty(len(x), dtype=float)
        for i, v in enumerate(np.asarray(x, dtype=float)):
            out[i] = f.step(v)
        return out


def oustaloup_synthesize(spec: OustaloupSpec, dt: float | None = None,
                         method: str = "bilinear") -> FilterRealization:
    """Recursively place 2N+1 zero/pole pairs approximating s**beta.

    The integer part of ``spec.beta`` is factored out first; the rational
    network only covers the fractional remainder, keeping the recursion
    in its accurate range.  With ``dt`` given the result is immediately
    executable via :meth:`FilterRealization.step`.
    """
    ipart, frac = split_order(spec.beta)
    n = spec.N
    ratio = spec.wh / spec.wb
    count = 2 * n + 1
    ks = np.arange(-n, n + 1, dtype=float)
    zeros = spec.wb * ratio ** ((ks + n + 0.5 * (1.0 - frac)) / count)
    poles = spec.wb * ratio ** ((ks + n + 0.5 * (1.0 + frac)) / count)
    gain = spec.wh ** frac
    return FilterRealization(zeros, poles, gain, ipart, dt=dt, method=method)


def gl_differintegral(signal, beta: float, dt: float) -> np.ndarray:
    """Grunwald-Letnikov differ-integral of a sampled series.

    Full-history convolution with the binomial weights
    w_0 = 1, w_j = w_{j-1} * (1 - (beta + 1)/j), scaled by dt**(-beta).
    Zero history is assumed before the first sample.  Serves as the
    brute-force oracle for the band-limited filters.
    """
    if dt <= 0:
        raise ValueError(f"dt must be positive, got {dt}")
    if not math.isfinite(beta):
        raise ValueError(f"order must be finite, got {beta!r}")
    x = np.asarray(signal, dtype=float)
    n = x.size
    if n == 0:
        return np.zeros(0)
    j = np.arange(1, n, dtype=float)
    w = np.empty(n)
    w[0] = 1.0
    if n > 1:
        w[1:] = np.cumprod(1.0 - (beta + 1.0) / j)
    y = fftconvolve(x, w)[:n]
    return y * dt ** (-beta)
