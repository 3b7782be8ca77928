"""
Subchannel-count search.

Single-antenna scenarios sweep every M in closed form. For arrays, every M
at which the power-limited vector already meets the interference caps is
solved exactly in closed form, so the best of those is read off in one
vectorized pass. The remaining M need one relaxation each: they are searched
on a geometric grid at the looser search tolerance, largest M first, and
refined between the best grid point's neighbours, exhaustively at the full
tolerance when the bracket is small and by integer golden-section otherwise.
An M whose interference-free rate ceiling cannot beat the best rate found so
far is skipped.
"""

import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional

import numpy as np

from .closed_form import solve_scenario1_slot
from .feasible import FeasibleResult, NeighborCache, feasible_slot
from .problem import Method, SlotProblem, SlotSolution
from .relaxation import interference_free_m, power_limited_vector, upper_bound_rate
from .snr import interference_check, receive_bf

logger = logging.getLogger(__name__)

GOLDEN = 0.381966


@dataclass
class MEvaluation:
    m: int
    feasible: FeasibleResult
    upper_bound_bps: float
    sdp_solves: int
    max_iter_hits: int
    exact: bool = True
    pruned: bool = False


def geometric_grid(n_sub: int) -> List[int]:
    """{1, 2, 4, ...} up to n_sub, plus n_sub itself."""
    grid = set()
    m = 1
    while m <= n_sub:
        grid.add(m)
        m *= 2
    grid.add(n_sub)
    return sorted(grid)


def rate_ceilings(p: SlotProblem, ms) -> np.ndarray:
    """Rate of the power-limited vector at each M with the interference caps ignored; no vector does better."""
    w = power_limited_vector(p)
    gain = float(np.abs(np.vdot(p.effective_vector, w)) ** 2)
    ms = np.asarray(ms, dtype=float)
    occupied = ms * p.b if p.bandwidth is None else np.minimum(ms * p.b, p.bandwidth)
    return occupied * np.atleast_1d(p.mcs.efficiency(gain / (ms * p.b * p.noise_psd)))


def evaluate_m(
    p: SlotProblem, m: int, neighbor_cache: Optional[NeighborCache] = None, tol: Optional[float] = None
) -> MEvaluation:
    """Feasible rate and relaxation upper bound for one subchannel count."""
    result = feasible_slot(p, m, neighbor_cache=neighbor_cache, tol=tol)
    relaxation = result.relaxation
    upper = upper_bound_rate(p, m, relaxation.solution)
    exact = relaxation.closed_form or tol is None or tol <= p.settings.tol
    return MEvaluation(m, result, upper, result.sdp_solves, result.max_iter_hits, exact)


def _pruned(p: SlotProblem, m: int, ceiling: float) -> MEvaluation:
    silent = FeasibleResult(np.zeros(p.n_plane, dtype=complex), 0.0, Method.RANK_ONE_DIRECT, 0.0, True)
    return MEvaluation(m, silent, ceiling, 0, 0, exact=True, pruned=True)


def _best(evaluations: Iterable[MEvaluation]) -> MEvaluation:
    return max(evaluations, key=lambda e: (e.feasible.rate_bps, -e.m))


def sweep_M(p: SlotProblem, neighbor_cache: Optional[NeighborCache] = None) -> SlotSolution:
    """
    Best subchannel count and transmit vector for one slot.

    Args:
        p: Slot problem
        neighbor_cache: Cache of solved slots and warm starts (array scenarios only)

    Returns:
        SlotSolution: Best feasible solution; the upper bound is the maximum
        over every evaluated M
    """
    if p.scenario in (1, 2):
        return solve_scenario1_slot(p)

    settings = p.settings
    search_tol = settings.search_tol if settings.search_tol > settings.tol else None
    evaluations: Dict[int, MEvaluation] = {}
    totals = {"solves": 0, "hits": 0, "upper": 0.0}

    def run(values: Iterable[int], coarse: bool = False, prune: bool = True):
        for m in dict.fromkeys(values):
            current = evaluations.get(m)
            if current is not None and (current.exact or coarse):
                continue
            if prune and evaluations:
                ceiling = float(rate_ceilings(p, [m])[0])
                if ceiling < _best(evaluations.values()).feasible.rate_bps:
                    evaluations[m] = _pruned(p, m, ceiling)
                    continue
            evaluation = evaluate_m(p, m, neighbor_cache, search_tol if coarse else None)
            totals["solves"] += evaluation.sdp_solves
            totals["hits"] += evaluation.max_iter_hits
            totals["upper"] = max(totals["upper"], evaluation.upper_bound_bps)
            evaluations[m] = evaluation

    n = p.n_sub
    if settings.full_bandwidth:
        run([n], prune=False)
    elif settings.exhaustive_m:
        run(range(1, n + 1), prune=False)
    else:
        m_free = interference_free_m(p, power_limited_vector(p))
        if m_free <= n:
            closed = np.arange(m_free, n + 1)
            run([int(closed[int(np.argmax(rate_ceilings(p, closed)))])], prune=False)
        top = min(n, m_free - 1)
        if top >= 1 and not (
            evaluations
            and float(np.max(rate_ceilings(p, np.arange(1, top + 1)))) < _best(evaluations.values()).feasible.rate_bps
        ):
            grid = geometric_grid(top)
            run(reversed(grid), coarse=True)
            index = grid.index(_best(evaluations[m] for m in grid).m)
            lo = grid[index - 1] if index > 0 else grid[index]
            hi = grid[index + 1] if index + 1 < len(grid) else grid[index]
            while hi - lo - 1 > settings.refine_limit:
                m1 = max(lo + int(round(GOLDEN * (hi - lo))), lo + 1)
                m2 = min(max(hi - int(round(GOLDEN * (hi - lo))), m1 + 1), hi - 1)
                run([m2, m1], coarse=True)
                if evaluations[m1].feasible.rate_bps >= evaluations[m2].feasible.rate_bps:
                    hi = m2
                else:
                    lo = m1
            run(reversed(range(lo + 1, hi)))

    # the winner is always taken from a full-tolerance or closed-form evaluation
    best = _best(evaluations.values())
    while not best.exact:
        run([best.m], prune=False)
        best = _best(evaluations.values())

    if neighbor_cache is not None:
        for evaluation in evaluations.values():
            if evaluation.exact and not evaluation.pruned:
                neighbor_cache.store_vector(p.snapshot.slot_index, evaluation.m, evaluation.feasible.w)

    hits = totals["hits"]
    report = interference_check(best.feasible.w, p.snapshot, best.m, p.delta)
    logger.debug(
        f"Slot {p.snapshot.slot_index}: M*={best.m} over {len(evaluations)} values "
        f"({totals['solves']} SDP solves), rate={best.feasible.rate_bps / 1e6:.3f} Mbps"
    )
    return SlotSolution(
        m_star=best.m,
        w=best.feasible.w,
        v_tilde=receive_bf(p.snapshot.u_A),
        rate_bps=best.feasible.rate_bps,
        upper_bound_bps=max(totals["upper"], max(e.upper_bound_bps for e in evaluations.values())),
        snr_linear=best.feasible.snr,
        interference_margin_db=report.margin_db,
        max_interference_w=report.max_w,
        rank1=best.feasible.rank1,
        method=best.feasible.method,
        solver_status="max_iterations" if hits else "optimal",
        sdp_solves=totals["solves"],
        max_iter_hits=hits,
        residuals={
            (e.m, "relaxed"): e.feasible.relaxation.solution.history
            for e in evaluations.values()
            if e.feasible.relaxation is not None and e.feasible.relaxation.solution.history
        },
    )
