"""Non-integer-order plus dead-time plant family (K e^{-Ls}/(T s^a + 1)).

The fractional lag is realized by substituting the Oustaloup rational
approximation for the fractional power of s, reducing the plant to an
ordinary rational transfer function plus an input transport delay.  The
rational part steps as a discrete state-space model; the delay is a ring
buffer of whole samples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import signal

from .fracops import DEFAULT_BAND, DEFAULT_HALF_ORDER, OustaloupSpec, \
    oustaloup_synthesize, split_order


@dataclass(frozen=True)
class PlantModel:
    """Continuous-time template K·e^{-Ls}/(T·s^alpha + 1)."""

    K: float
    T: float
    alpha: float
    L: float = 0.0

    def __post_init__(self):
        if self.K == 0 or not np.isfinite(self.K):
            raise ValueError(f"plant gain must be nonzero, got {self.K}")
        if self.T <= 0:
            raise ValueError(f"time constant must be positive, got {self.T}")
        if not 0 < self.alpha < 2:
            raise ValueError(f"alpha must lie in (0, 2), got {self.alpha}")
        if self.L < 0:
            raise ValueError(f"dead time must be nonnegative, got {self.L}")


def relative_dead_time(m: PlantModel) -> float:
    """Dead time as a fraction of total lag, L/(L+T)."""
    return m.L / (m.L + m.T)


# the three benchmark processes; gp1 is lag-dominated, gp2 balanced,
# gp3 delay-dominated (tau ~ 0.95)
PRESETS: dict[str, PlantModel] = {
    "gp1": PlantModel(K=1.0, T=1.11, alpha=1.5, L=0.105),
    "gp2": PlantModel(K=5.0, T=1.5, alpha=1.5, L=1.0),
    "gp3": PlantModel(K=1.0, T=0.05, alpha=1.5, L=1.0),
}

# default sample times; gp1's short delay needs the finer grid
DEFAULT_DT: dict[str, float] = {"gp1": 0.005, "gp2": 0.01, "gp3": 0.01}


class PlantRealization:
    """Discrete stepping form of one PlantModel at a fixed dt."""

    def __init__(self, model: PlantModel, dt: float,
                 band: tuple[float, float] = DEFAULT_BAND,
                 N: int = DEFAULT_HALF_ORDER,
                 method: str = "bilinear"):
        if dt <= 0:
            raise ValueError(f"dt must be positive, got {dt}")
        if model.L > 0 and dt > model.L:
            raise ValueError(
                f"dt={dt} cannot resolve dead time L={model.L}")
        self.model = model
        self.dt = float(dt)
        self.band = band
        self.N = int(N)
        self.method = method

        m, frac = split_order(model.alpha)
        wb, wh = band
        filt = oustaloup_synthesize(OustaloupSpec(beta=frac, N=N, wb=wb, wh=wh))
        num_r = filt.gain * np.poly(-np.asarray(filt.zeros))
        den_r = np.poly(-np.asarray(filt.poles))
        # T*s^alpha + 1 = (T*K_f*s^m*num_r + den_r)/den_r
        shifted = np.concatenate([model.T * num_r, np.zeros(m)])
        den = np.polyadd(shifted, den_r)
        num = model.K * den_r
        A, B, C, D = signal.tf2ss(num, den)
        Ad, Bd, Cd, Dd, _ = signal.cont2discrete((A, B, C, D), dt,
                                                 method=method)
        self._A = Ad
        self._B = Bd[:, 0]
        self._C = Cd[0]
        self._D = float(Dd[0, 0])
        self.n_states = Ad.shape[0]
        self.n_delay = round(model.L / dt)
        self.reset()

    def reset(self):
        self._x = np.zeros(self.n_states)
        self._buf = [0.0] * self.n_delay
        self._head = 0

    def fresh(self) -> "PlantRealization":
        """Zero-state copy sharing the synthesized matrices (no re-fit)."""
        twin = object.__new__(PlantRealization)
        twin.__dict__.update(self.__dict__)
        twin.reset()
        return twin

    def step(self, u: float) -> float:
        """Push one actuation sample, return the resulting plant output."""
        if self.n_delay:
            head = self._head
            delayed = self._buf[head]
            self._buf[head] = u
            self._head = (head + 1) % self.n_delay
        else:
            delayed = u
        x = self._x
        y = float(self._C @ x) + self._D * delayed
        self._x = self._A @ x + self._B * delayed
        return y

    def run(self, u) -> np.ndarray:
        """Response to a whole input sequence from rest."""
        f = self.fresh()
        out = np.empty(len(u))
        for i, v in enumerate(np.asarray(u, dtype=float)):
            out[i] = f.step(v)
        return out


def plant_realize(model: PlantModel, dt: float,
                  band: tuple[float, float] = DEFAULT_BAND,
                  N: int = DEFAULT_HALF_ORDER,
                  method: str = "bilinear") -> PlantRealization:
    """Realize a plant template for closed-loop stepping at dt."""
    return PlantRealization(model, dt, band=band, N=N, method=method)


def plant_step(p: PlantRealization, u: float) -> float:
    return p.step(u)
