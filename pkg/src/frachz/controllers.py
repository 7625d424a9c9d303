"""Five hybrid fractional-order fuzzy PID control laws.

Each structure wraps the shared two-input FLC with its own arrangement of
fractional differintegrators: derivative filters shape the FLC rate input,
and integral or feedback-derivative filters shape the output path.  All
filters run at the loop sample time with zero initial state.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .fracops import (
    DEFAULT_BAND,
    DEFAULT_HALF_ORDER,
    FilterRealization,
    OustaloupSpec,
    oustaloup_synthesize,
)
from .fuzzy import default_engine


class Structure(enum.Enum):
    """The five controller families, tagged as used in configs and the CLI."""

    FUZZY_PID = "fuzzy-pid"
    FUZZY_PI_PD = "fuzzy-pi-pd"
    FUZZY_P_ID = "fuzzy-p-id"
    FUZZY_PI_D = "fuzzy-pi-d"
    FUZZY_PD_I = "fuzzy-pd-i"

    @classmethod
    def from_tag(cls, tag: str) -> "Structure":
        for s in cls:
            if s.value == tag:
                return s
        raise ValueError(f"unknown controller structure {tag!r}; "
                         f"expected one of {[s.value for s in cls]}")


# parameter kinds: input scaling factors live on the FLC universe [0, 1],
# output-path gains may reach 40, differintegral orders stay in [0, 2]
_SF = (0.0, 1.0)
_GAIN = (0.0, 40.0)
_ORDER = (0.0, 2.0)

# per-structure parameter names in table column order, with bounds.
# K_d2 is an FLC input scaling factor only in the PI+PD structure; in the
# P+ID and PI+D structures it multiplies the feedback derivative, so it is
# an output gain there (published values exceed 1).
PARAM_BOUNDS: dict[Structure, tuple[tuple[str, tuple[float, float]], ...]] = {
    Structure.FUZZY_PID: (
        ("K_e", _SF), ("K_d", _SF), ("K_PI", _GAIN), ("K_PD", _GAIN),
        ("lambda", _ORDER), ("mu", _ORDER),
    ),
    Structure.FUZZY_PI_PD: (
        ("K_e1", _SF), ("K_d1", _SF), ("K_PI", _GAIN), ("K_e2", _SF),
        ("K_d2", _SF), ("K_PD", _GAIN), ("lambda", _ORDER), ("mu", _ORDER),
    ),
    Structure.FUZZY_P_ID: (
        ("K_e", _SF), ("K_d1", _SF), ("K_p", _GAIN), ("K_d2", _GAIN),
        ("K_i", _GAIN), ("lambda", _ORDER), ("mu1", _ORDER), ("mu2", _ORDER),
    ),
    Structure.FUZZY_PI_D: (
        ("K_e", _SF), ("K_d1", _SF), ("K_PI", _GAIN), ("K_d2", _GAIN),
        ("lambda", _ORDER), ("mu1", _ORDER), ("mu2", _ORDER),
    ),
    Structure.FUZZY_PD_I: (
        ("K_e", _SF), ("K_d", _SF), ("K_i", _GAIN), ("K_PD", _GAIN),
        ("lambda", _ORDER), ("mu", _ORDER),
    ),
}

_ORDER_NAMES = frozenset({"lambda", "mu", "mu1", "mu2"})


def param_names(structure: Structure) -> tuple[str, ...]:
    return tuple(name for name, _ in PARAM_BOUNDS[structure])


def param_bounds(structure: Structure) -> tuple[tuple[float, float], ...]:
    return tuple(bounds for _, bounds in PARAM_BOUNDS[structure])


@dataclass(frozen=True)
class ControllerSpec:
    """A structure tag plus its named parameter values.

    Parameters are keyed exactly as the result-table headers (orders use
    the names lambda, mu, mu1, mu2).  Validation enforces the exact name
    set and per-kind bounds at construction.
    """

    structure: Structure
    params: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self):
        expected = param_names(self.structure)
        got = set(self.params)
        missing = set(expected) - got
        extra = got - set(expected)
        if missing or extra:
            raise ValueError(
                f"{self.structure.value} parameters must be exactly "
                f"{list(expected)}; missing {sorted(missing)}, "
                f"extra {sorted(extra)}")
        for name, (lo, hi) in PARAM_BOUNDS[self.structure]:
            v = float(self.params[name])
            if not np.isfinite(v) or not lo <= v <= hi:
                raise ValueError(
                    f"{self.structure.value}: {name}={v} outside [{lo}, {hi}]")
        object.__setattr__(self, "params", dict(self.params))

    @property
    def gains(self) -> dict[str, float]:
        return {k: v for k, v in self.params.items() if k not in _ORDER_NAMES}

    @property
    def orders(self) -> dict[str, float]:
        return {k: v for k, v in self.params.items() if k in _ORDER_NAMES}

    def as_vector(self) -> np.ndarray:
        """Parameter values in table column order (tuner genome layout)."""
        return np.array([self.params[n] for n in param_names(self.structure)])

    @classmethod
    def from_vector(cls, structure: Structure, vec) -> "ControllerSpec":
        names = param_names(structure)
        if len(vec) != len(names):
            raise ValueError(f"{structure.value} expects {len(names)} "
                             f"parameters, got {len(vec)}")
        return cls(structure, dict(zip(names, (float(v) for v in vec))))


class Controller:
    """Stateful discrete-time realization of one ControllerSpec.

    ``step`` consumes the current error and plant output and returns the
    actuation sample.  Instances are single-owner; use ``fresh`` to clone
    zero-state copies for parallel evaluations.
    """

    def __init__(self, spec: ControllerSpec, dt: float,
                 band: tuple[float, float] = DEFAULT_BAND,
                 N: int = DEFAULT_HALF_ORDER,
                 u_limit: float | None = None):
        if dt <= 0:
            raise ValueError(f"dt must be positive, got {dt}")
        if u_limit is not None and u_limit <= 0:
            raise ValueError(f"u_limit must be positive, got {u_limit}")
        self.spec = spec
        self.dt = float(dt)
        self.band = band
        self.N = int(N)
        self.u_limit = u_limit
        self.engine = default_engine()
        p = spec.params

        def make(beta: float) -> FilterRealization:
            wb, wh = band
            return oustaloup_synthesize(
                OustaloupSpec(beta=beta, N=self.N, wb=wb, wh=wh), dt=self.dt)

        s = spec.structure
        self._p = dict(p)
        if s in (Structure.FUZZY_PID, Structure.FUZZY_PD_I):
            self._d_err = make(p["mu"])
        elif s is Structure.FUZZY_PI_PD:
            self._d_err = make(p["mu"])  # one rate filter feeds both FLCs
        else:
            self._d_err = make(p["mu1"])
        self._i_filt = make(-p["lambda"])
        self._d_fb = make(p["mu2"]) if s in (Structure.FUZZY_P_ID,
                                             Structure.FUZZY_PI_D) else None
        self.last_u = 0.0

    def reset(self):
        self._d_err.reset()
        self._i_filt.reset()
        if self._d_fb is not None:
            self._d_fb.reset()
        self.last_u = 0.0

    def fresh(self) -> "Controller":
        return Controller(self.spec, self.dt, band=self.band, N=self.N,
                          u_limit=self.u_limit)

    def step(self, e: float, y: float) -> float:
        p = self._p
        s = self.spec.structure
        de = self._d_err.step(e)
        infer = self.engine.infer
        if s is Structure.FUZZY_PID:
            v = infer(p["K_e"] * e, p["K_d"] * de)
            u = p["K_PI"] * self._i_filt.step(v) + p["K_PD"] * v
        elif s is Structure.FUZZY_PI_PD:
            v1 = infer(p["K_e1"] * e, p["K_d1"] * de)
            v2 = infer(p["K_e2"] * e, p["K_d2"] * de)
            u = p["K_PI"] * self._i_filt.step(v1) + p["K_PD"] * v2
        elif s is Structure.FUZZY_P_ID:
            v = infer(p["K_e"] * e, p["K_d1"] * de)
            u = (p["K_p"] * v + p["K_i"] * self._i_filt.step(e)
                 - p["K_d2"] * self._d_fb.step(y))
        elif s is Structure.FUZZY_PI_D:
            v = infer(p["K_e"] * e, p["K_d1"] * de)
            u = (p["K_PI"] * self._i_filt.step(v)
                 - p["K_d2"] * self._d_fb.step(y))
        else:  # FUZZY_PD_I
            v = infer(p["K_e"] * e, p["K_d"] * de)
            u = p["K_PD"] * v + p["K_i"] * self._i_filt.step(e)
        if self.u_limit is not None:
            u = min(self.u_limit, max(-self.u_limit, u))
        self.last_u = u
        return u


def build_controller(spec: ControllerSpec, dt: float,
                     band: tuple[float, float] = DEFAULT_BAND,
                     N: int = DEFAULT_HALF_ORDER,
                     u_limit: float | None = None) -> Controller:
    """Instantiate the discrete controller for a validated spec."""
    return Controller(spec, dt, band=band, N=N, u_limit=u_limit)
