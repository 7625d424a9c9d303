"""Closed-loop step/disturbance scenarios and the tuning performance indices.

The sample loop reads the plant output, forms the error, steps the
controller and finally steps the plant with the (possibly disturbed)
actuation, so each sample sees strictly causal data.  Indices follow the
time-weighted squared-error family: J1 = ISTSE and J2 = ISDCO over the
set-point window, J3 = ISTSE over the load window with time re-zeroed at
the disturbance instant.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .controllers import Controller, ControllerSpec
from .fracops import DEFAULT_BAND, DEFAULT_HALF_ORDER
from .plantsim import DEFAULT_DT, PRESETS, PlantModel, PlantRealization

PENALTY = 1e10
_GUARD = 1e9  # loop divergence cutoff, well above any sane trajectory

USS_MODES = ("dc", "zero")


@dataclass(frozen=True)
class Scenario:
    """Step set-point at ``setpoint_time``, step load at ``disturbance_time``."""

    horizon: float
    dt: float
    setpoint_time: float = 0.0
    setpoint_mag: float = 1.0
    disturbance_time: float | None = None
    disturbance_mag: float = 1.0

    def __post_init__(self):
        if self.dt <= 0:
            raise ValueError(f"dt must be positive, got {self.dt}")
        if not 0 <= self.setpoint_time < self.horizon:
            raise ValueError("setpoint_time must lie inside the horizon")
        if self.disturbance_time is not None and not (
                self.setpoint_time < self.disturbance_time < self.horizon):
            raise ValueError("disturbance_time must lie strictly between "
                             "setpoint_time and horizon")

    @property
    def n_samples(self) -> int:
        return round(self.horizon / self.dt)


def default_scenario(process: str, **overrides) -> Scenario:
    """Benchmark settings: disturbance at half-horizon, preset dt."""
    if process not in PRESETS:
        raise ValueError(f"unknown process {process!r}")
    horizon = {"gp1": 40.0, "gp2": 60.0, "gp3": 40.0}[process]
    base = dict(horizon=horizon, dt=DEFAULT_DT[process],
                disturbance_time=horizon / 2.0)
    base.update(overrides)
    return Scenario(**base)


@dataclass
class Trajectory:
    t: np.ndarray
    r: np.ndarray
    e: np.ndarray
    u: np.ndarray
    y: np.ndarray
    dt: float
    plant: PlantModel
    unstable: bool = False


@dataclass(frozen=True)
class IndexReport:
    istse_setpoint: float   # J1
    isdco_setpoint: float   # J2
    istse_load: float       # J3
    j_weighted: float
    weights: tuple
    uss_mode: str
    u_ss: float


@lru_cache(maxsize=32)
def _plant_template(model: PlantModel, dt: float, band, N) -> PlantRealization:
    return PlantRealization(model, dt, band=band, N=N)


def simulate(plant: PlantModel, spec: ControllerSpec, sc: Scenario,
             band: tuple[float, float] = DEFAULT_BAND,
             N: int = DEFAULT_HALF_ORDER,
             u_limit: float | None = None) -> Trajectory:
    """Run the closed loop from rest; truncate and flag on divergence."""
    n = sc.n_samples
    dt = sc.dt
    ctl = Controller(spec, dt, band=band, N=N, u_limit=u_limit)
    pl = _plant_template(plant, dt, band, N).fresh()

    t = np.arange(n) * dt
    r = np.where(t >= sc.setpoint_time, sc.setpoint_mag, 0.0)
    e = np.empty(n)
    u = np.empty(n)
    y = np.empty(n)

    k_dist = n + 1
    if sc.disturbance_time is not None:
        k_dist = int(np.ceil(sc.disturbance_time / dt - 1e-12))
    d_mag = sc.disturbance_mag

    step_c = ctl.step
    step_p = pl.step
    y_now = 0.0
    unstable = False
    for k in range(n):
        rk = r[k]
        ek = rk - y_now
        uk = step_c(ek, y_now)
        e[k] = ek
        u[k] = uk
        y[k] = y_now
        if k >= k_dist:
            uk += d_mag
        y_now = step_p(uk)
        if not (-_GUARD < y_now < _GUARD):
            n = k + 1
            t, r, e, u, y = t[:n], r[:n], e[:n], u[:n], y[:n]
            unstable = True
            break
    return Trajectory(t=t, r=r, e=e, u=u, y=y, dt=dt, plant=plant,
                      unstable=unstable)


def steady_state_u(tr: Trajectory, sc: Scenario, uss_mode: str) -> float:
    if uss_mode == "dc":
        return sc.setpoint_mag / tr.plant.K
    if uss_mode == "zero":
        return 0.0
    raise ValueError(f"uss_mode must be one of {USS_MODES}, got {uss_mode!r}")


def compute_indices(tr: Trajectory, sc: Scenario,
                    weights: tuple[float, float] = (1.0, 1.0),
                    uss_mode: str = "dc") -> IndexReport:
    """Left-rectangle ISTSE/ISDCO sums over the two scenario windows."""
    if tr.unstable:
        raise ValueError("cannot score a truncated unstable trajectory")
    u_ss = steady_state_u(tr, sc, uss_mode)
    t, e, u = tr.t, tr.e, tr.u
    dt = tr.dt
    if sc.disturbance_time is not None:
        sp = t < sc.disturbance_time - 1e-12
    else:
        sp = np.ones(len(t), dtype=bool)
    j1 = dt * float(np.sum((t[sp] * e[sp]) ** 2))
    j2 = dt * float(np.sum((u[sp] - u_ss) ** 2))
    j3 = 0.0
    if sc.disturbance_time is not None:
        ld = ~sp
        tl = t[ld] - sc.disturbance_time
        j3 = dt * float(np.sum((tl * e[ld]) ** 2))
    w1, w2 = weights
    return IndexReport(istse_setpoint=j1, isdco_setpoint=j2, istse_load=j3,
                       j_weighted=w1 * j1 + w2 * j2, weights=(w1, w2),
                       uss_mode=uss_mode, u_ss=u_ss)


def evaluate_candidate(plant: PlantModel, spec: ControllerSpec, sc: Scenario,
                       weights: tuple[float, float] = (1.0, 1.0),
                       uss_mode: str = "dc",
                       band: tuple[float, float] = DEFAULT_BAND,
                       N: int = DEFAULT_HALF_ORDER) -> float:
    """Weighted J of one candidate, or PENALTY for divergent loops."""
    tr = simulate(plant, spec, sc, band=band, N=N)
    if tr.unstable or not np.all(np.isfinite(tr.y)) \
            or np.max(np.abs(tr.y)) > 1e3:
        return PENALTY
    return compute_indices(tr, sc, weights, uss_mode).j_weighted
