"""Published optimal tuning results for the five controller families.

Each row pairs a controller structure with one of the three benchmark
processes and carries the reported objective value J_min plus the tuned
parameters, transcribed verbatim.  The rows double as regression fixtures:
re-simulating them must give bounded, tracking loops, and re-evaluating J
under this artifact's loop settings must land within documented factors of
the reported values.
"""

from __future__ import annotations

from dataclasses import dataclass

from .controllers import ControllerSpec, Structure, param_names

PROCESSES = ("gp1", "gp2", "gp3")


@dataclass(frozen=True)
class PublishedRow:
    structure: Structure
    process: str
    j_min: float
    values: tuple  # parameter values in table column order

    @property
    def spec(self) -> ControllerSpec:
        return ControllerSpec.from_vector(self.structure, self.values)

    @property
    def params(self) -> dict:
        return dict(zip(param_names(self.structure), self.values))


_ROWS = (
    # structure, process, J_min, parameter values in column order
    (Structure.FUZZY_PID, "gp1", 38.20247,
     (0.887976, 0.63353, 1.417276, 0.820367, 0.959188, 0.994714)),
    (Structure.FUZZY_PID, "gp2", 7.630405,
     (0.098897, 0.102872, 0.728721, 0.787448, 0.998849, 0.992102)),
    (Structure.FUZZY_PID, "gp3", 39.6631,
     (0.666385, 0.214853, 0.801473, 0.321055, 0.998524, 0.288179)),
    (Structure.FUZZY_PI_PD, "gp1", 38.17563,
     (0.957059, 0.74568, 1.506117, 0.725838, 0.872039, 0.882793,
      0.932188, 0.982342)),
    (Structure.FUZZY_PI_PD, "gp2", 3.752172,
     (0.177834, 0.016532, 0.636613, 0.299998, 0.765192, 0.287097,
      0.976782, 0.810926)),
    (Structure.FUZZY_PI_PD, "gp3", 39.64602,
     (0.848295, 0.209849, 0.843522, 0.295589, 0.209216, 0.487242,
      0.971632, 0.436048)),
    (Structure.FUZZY_P_ID, "gp1", 38.1687,
     (0.339126, 0.81547, 0.594271, 1.924765, 1.806937, 0.882179,
      0.973166, 0.177353)),
    (Structure.FUZZY_P_ID, "gp2", 3.631472,
     (0.007836, 0.288275, 0.650441, 0.131799, 0.17253, 0.973567,
      0.769968, 0.05902)),
    (Structure.FUZZY_P_ID, "gp3", 39.69599,
     (0.64044, 0.094509, 0.301722, 0.161946, 0.657659, 0.972741,
      0.998061, 0.00964)),
    (Structure.FUZZY_PI_D, "gp1", 38.21658,
     (0.658696, 0.328859, 2.02627, 1.314265, 0.883782, 0.707495, 0.432665)),
    (Structure.FUZZY_PI_D, "gp2", 6.67324,
     (0.435695, 0.240776, 0.379578, 0.314335, 0.873519, 0.59048, 0.753619)),
    (Structure.FUZZY_PI_D, "gp3", 39.89151,
     (0.712596, 0.20361, 1.06411, 0.220181, 0.940606, 0.607729, 0.429407)),
    (Structure.FUZZY_PD_I, "gp1", 38.22424,
     (0.207274, 0.59619, 0.639649, 1.039919, 0.983022, 0.599213)),
    (Structure.FUZZY_PD_I, "gp2", 3.297377,
     (0.056807, 0.211725, 0.113836, 0.828508, 0.989822, 0.723279)),
    (Structure.FUZZY_PD_I, "gp3", 39.67555,
     (0.344379, 0.5251, 0.626799, 0.33055, 0.96105, 0.28574)),
)

PUBLISHED: tuple[PublishedRow, ...] = tuple(
    PublishedRow(structure, process, j_min, values)
    for structure, process, j_min, values in _ROWS)


def rows_for_process(process: str) -> tuple[PublishedRow, ...]:
    if process not in PROCESSES:
        raise ValueError(f"unknown process {process!r}; expected {PROCESSES}")
    return tuple(r for r in PUBLISHED if r.process == process)


def row(structure: Structure, process: str) -> PublishedRow:
    for r in rows_for_process(process):
        if r.structure is structure:
            return r
    raise ValueError(f"no published row for {structure.value} on {process}")


def best_for_process(process: str) -> PublishedRow:
    """Row with the lowest reported J_min for the given process."""
    return min(rows_for_process(process), key=lambda r: r.j_min)
