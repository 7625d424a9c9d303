"""Real-coded GA and NSGA-II over box-bounded controller parameter vectors.

Both optimizers share the same variation operators: binary tournament
selection, per-gene blend crossover, per-gene Gaussian mutation with
sigma at 10% of the gene range, and clipping to the box.  Instability is
handled upstream by the loop module's penalty fitness, so the search
itself is unconstrained beyond the bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .controllers import Structure, param_bounds, param_names


@dataclass(frozen=True)
class SearchSpace:
    """Ordered parameter names with inclusive (lower, upper) bounds."""

    names: tuple
    lower: tuple
    upper: tuple

    def __post_init__(self):
        if not (len(self.names) == len(self.lower) == len(self.upper)):
            raise ValueError("names and bounds must have equal lengths")
        for n, lo, hi in zip(self.names, self.lower, self.upper):
            if not (np.isfinite(lo) and np.isfinite(hi) and lo <= hi):
                raise ValueError(f"bad bounds for {n}: [{lo}, {hi}]")

    @classmethod
    def for_structure(cls, structure: Structure) -> "SearchSpace":
        bounds = param_bounds(structure)
        return cls(names=param_names(structure),
                   lower=tuple(lo for lo, _ in bounds),
                   upper=tuple(hi for _, hi in bounds))

    @property
    def dim(self) -> int:
        return len(self.names)

    def arrays(self):
        return np.asarray(self.lower, float), np.asarray(self.upper, float)

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        lo, hi = self.arrays()
        return rng.uniform(lo, hi, size=(n, self.dim))

    def clip(self, x: np.ndarray) -> np.ndarray:
        lo, hi = self.arrays()
        return np.clip(x, lo, hi)


@dataclass(frozen=True)
class GaConfig:
    pop_size: int = 20
    elite_count: int = 2
    crossover_ratio: float = 0.8
    mutation_ratio: float = 0.2
    mutation_sigma: float = 0.1  # fraction of each gene's range
    max_generations: int = 100
    rng_seed: int = 0
    target_fitness: float | None = None  # early-stop tolerance level

    def __post_init__(self):
        if not 0 < self.pop_size:
            raise ValueError("pop_size must be positive")
        if not 0 <= self.elite_count < self.pop_size:
            raise ValueError("elite_count must be < pop_size")
        for name in ("crossover_ratio", "mutation_ratio"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {v}")


@dataclass(frozen=True)
class Nsga2Config:
    pop_size: int = 100
    pareto_fraction: float = 0.7
    crossover_ratio: float = 0.8
    mutation_ratio: float = 0.2
    mutation_sigma: float = 0.1
    max_generations: int = 50
    rng_seed: int = 0

    def __post_init__(self):
        if not 0 < self.pop_size:
            raise ValueError("pop_size must be positive")
        if not 0.0 < self.pareto_fraction <= 1.0:
            raise ValueError("pareto_fraction must lie in (0, 1]")


@dataclass
class GaResult:
    best_params: np.ndarray
    best_fitness: float
    history: np.ndarray  # best-so-far per generation (index 0 = initial pop)
    generations: int
    evaluations: int


@dataclass
class ParetoArchive:
    params: np.ndarray      # (n, dim)
    objectives: np.ndarray  # (n, 2)
    ranks: np.ndarray       # all 1 in the returned archive
    crowding: np.ndarray


def _init_population(space: SearchSpace, rng: np.random.Generator,
                     n: int) -> np.ndarray:
    """Half uniform, half log-fraction draws per gene.

    Gain-like parameters span decades within their box; pure uniform
    sampling all but ignores the conservative low-gain corner where
    sluggish plants stay stable.  Log-fraction draws (range fractions
    from 1e-3 up to 1 above the lower bound) spread candidates across
    scales without biasing problems that do not care.
    """
    lo, hi = space.arrays()
    pop = rng.uniform(lo, hi, size=(n, space.dim))
    frac = 10.0 ** (-3.0 * rng.random((n, space.dim)))
    mask = rng.random((n, space.dim)) < 0.5
    pop[mask] = (lo + (hi - lo) * frac)[mask]
    return pop


def _blend(rng, p1, p2, lo, hi, cfg):
    """Per-gene intermediate crossover followed by Gaussian mutation."""
    if rng.random() < cfg.crossover_ratio:
        u = rng.random(p1.size)
        child = p1 + u * (p2 - p1)
    else:
        child = p1.copy()
    mask = rng.random(p1.size) < cfg.mutation_ratio
    if mask.any():
        child = child.copy()
        child[mask] += rng.normal(0.0, cfg.mutation_sigma * (hi - lo)[mask])
    return np.clip(child, lo, hi)


def ga_optimize(space: SearchSpace, fitness, cfg: GaConfig = GaConfig()
                ) -> GaResult:
    """Elitist single-objective GA; minimizes ``fitness`` over the box."""
    rng = np.random.default_rng(cfg.rng_seed)
    lo, hi = space.arrays()
    pop = _init_population(space, rng, cfg.pop_size)
    fit = np.array([fitness(x) for x in pop])
    evals = cfg.pop_size
    ibest = int(np.argmin(fit))
    best_x, best_f = pop[ibest].copy(), float(fit[ibest])
    history = [best_f]
    gens = 0
    for gens in range(1, cfg.max_generations + 1):
        if cfg.target_fitness is not None and best_f <= cfg.target_fitness:
            gens -= 1
            break
        order = np.argsort(fit, kind="stable")
        elites = pop[order[:cfg.elite_count]].copy()
        n_children = cfg.pop_size - cfg.elite_count
        if fit.max() == fit.min():
            # flat landscape (e.g. every candidate at the instability
            # penalty): selection is blind, so resample instead of
            # letting blend crossover contract the cloud
            children = _init_population(space, rng, n_children)
        else:
            children = np.empty((n_children, space.dim))
            for i in range(n_children):
                a, b = rng.integers(cfg.pop_size, size=2)
                p1 = pop[a] if fit[a] <= fit[b] else pop[b]
                a, b = rng.integers(cfg.pop_size, size=2)
                p2 = pop[a] if fit[a] <= fit[b] else pop[b]
                children[i] = _blend(rng, p1, p2, lo, hi, cfg)
        child_fit = np.array([fitness(x) for x in children])
        evals += len(children)
        pop = np.vstack([elites, children])
        fit = np.concatenate([fit[order[:cfg.elite_count]], child_fit])
        ibest = int(np.argmin(fit))
        if fit[ibest] < best_f:
            best_x, best_f = pop[ibest].copy(), float(fit[ibest])
        history.append(best_f)
    return GaResult(best_params=best_x, best_fitness=best_f,
                    history=np.array(history), generations=gens,
                    evaluations=evals)


def ga_multistart(space: SearchSpace, fitness, cfg: GaConfig,
                  seeds) -> tuple[GaResult, list[GaResult]]:
    """Best-of-restarts over a seed list; ties keep the earliest seed."""
    seeds = list(seeds)
    if not seeds:
        raise ValueError("seed list is empty")
    results = []
    for seed in seeds:
        run_cfg = GaConfig(pop_size=cfg.pop_size, elite_count=cfg.elite_count,
                           crossover_ratio=cfg.crossover_ratio,
                           mutation_ratio=cfg.mutation_ratio,
                           mutation_sigma=cfg.mutation_sigma,
                           max_generations=cfg.max_generations,
                           rng_seed=seed, target_fitness=cfg.target_fitness)
        results.append(ga_optimize(space, fitness, run_cfg))
        if cfg.target_fitness is not None \
                and results[-1].best_fitness <= cfg.target_fitness:
            break
    best = min(results, key=lambda r: r.best_fitness)
    return best, results


def nondominated_sort(points) -> np.ndarray:
    """1-based Pareto ranks for a set of minimization objective vectors."""
    pts = np.asarray(points, dtype=float)
    n = len(pts)
    ranks = np.zeros(n, dtype=int)
    # dominance matrix: d[i, j] = True when i dominates j
    le = (pts[:, None, :] <= pts[None, :, :]).all(axis=2)
    lt = (pts[:, None, :] < pts[None, :, :]).any(axis=2)
    dom = le & lt
    n_dominators = dom.sum(axis=0)
    current = np.nonzero(n_dominators == 0)[0]
    rank = 1
    remaining = n
    counts = n_dominators.copy()
    while remaining:
        ranks[current] = rank
        remaining -= len(current)
        nxt = []
        for i in current:
            dominated = np.nonzero(dom[i])[0]
            counts[dominated] -= 1
            nxt.extend(j for j in dominated if counts[j] == 0)
        current = np.unique(np.array(nxt, dtype=int))
        rank += 1
    return ranks


def crowding_distance(front) -> np.ndarray:
    """Per-member crowding distance within one nondominated front."""
    pts = np.asarray(front, dtype=float)
    n = len(pts)
    if n <= 2:
        return np.full(n, np.inf)
    dist = np.zeros(n)
    for m in range(pts.shape[1]):
        col = pts[:, m]
        idx = np.argsort(col, kind="stable")
        span = col[idx[-1]] - col[idx[0]]
        dist[idx[0]] = dist[idx[-1]] = np.inf
        if span == 0:
            continue  # degenerate objective adds no spread information
        dist[idx[1:-1]] += (col[idx[2:]] - col[idx[:-2]]) / span
    return dist


def _peel_by_crowding(objs, members, cap):
    """Drop lowest-crowding members one at a time until ``cap`` remain.

    Recomputing after every removal keeps the survivors evenly spread;
    a single batch cut can delete adjacent members and tear holes in the
    front.
    """
    keep = list(members)
    while len(keep) > cap:
        dist = crowding_distance(objs[keep])
        keep.pop(int(np.argmin(dist)))
    return keep


def _crowded_pick(rng, ranks, crowd):
    a, b = rng.integers(len(ranks), size=2)
    if ranks[a] != ranks[b]:
        return a if ranks[a] < ranks[b] else b
    return a if crowd[a] >= crowd[b] else b


def _rank_crowd(objs):
    ranks = nondominated_sort(objs)
    crowd = np.empty(len(objs))
    for r in np.unique(ranks):
        sel = ranks == r
        crowd[sel] = crowding_distance(objs[sel])
    return ranks, crowd


def nsga2_optimize(space: SearchSpace, objectives,
                   cfg: Nsga2Config = Nsga2Config()) -> ParetoArchive:
    """Standard elitist NSGA-II; returns the truncated rank-1 archive."""
    rng = np.random.default_rng(cfg.rng_seed)
    lo, hi = space.arrays()
    ga_like = GaConfig(pop_size=cfg.pop_size,
                       crossover_ratio=cfg.crossover_ratio,
                       mutation_ratio=cfg.mutation_ratio,
                       mutation_sigma=cfg.mutation_sigma)
    pop = _init_population(space, rng, cfg.pop_size)
    objs = np.array([objectives(x) for x in pop])
    ranks, crowd = _rank_crowd(objs)
    for _ in range(cfg.max_generations):
        children = np.empty_like(pop)
        for i in range(cfg.pop_size):
            p1 = pop[_crowded_pick(rng, ranks, crowd)]
            p2 = pop[_crowded_pick(rng, ranks, crowd)]
            children[i] = _blend(rng, p1, p2, lo, hi, ga_like)
        child_objs = np.array([objectives(x) for x in children])
        pool = np.vstack([pop, children])
        pool_objs = np.vstack([objs, child_objs])
        pool_ranks = nondominated_sort(pool_objs)
        next_idx = []
        for r in range(1, pool_ranks.max() + 1):
            front = np.nonzero(pool_ranks == r)[0]
            if len(next_idx) + len(front) <= cfg.pop_size:
                next_idx.extend(front.tolist())
            else:
                room = cfg.pop_size - len(next_idx)
                next_idx.extend(_peel_by_crowding(pool_objs, front, room))
                break
        pop = pool[next_idx]
        objs = pool_objs[next_idx]
        ranks, crowd = _rank_crowd(objs)
    # archive: deduplicated rank-1 members trimmed to the pareto fraction
    first = np.nonzero(ranks == 1)[0]
    _, uniq = np.unique(pop[first].round(12), axis=0, return_index=True)
    cap = math.ceil(cfg.pareto_fraction * cfg.pop_size)
    keep = _peel_by_crowding(objs, first[np.sort(uniq)], cap)
    keep = np.asarray(keep, dtype=int)
    keep = keep[np.argsort(objs[keep, 0], kind="stable")]
    return ParetoArchive(params=pop[keep].copy(),
                         objectives=objs[keep].copy(),
                         ranks=np.ones(len(keep), dtype=int),
                         crowding=crowding_distance(objs[keep]))
