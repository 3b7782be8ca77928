"""
Feasible transmit vectors from relaxed solutions.

One uncapped relaxation is solved per M and each surrogate's relaxation is
derived from it. A relaxed matrix counts as rank-one when its numerical rank
is one or when its principal factor, scaled to the constraints, already
reaches the relaxed objective; its principal factor is then used directly.
Otherwise it is randomized: unit-circle draws e give b = V Lambda^(1/2) e,
the unit-modulus vector b / |b| is scaled to the largest power meeting the
power, interference and saturation limits, and the best draw by true rate is
kept. The vector of the nearest solved slot with the same M, rescaled onto
the current constraints, competes as well.
"""

import bisect
import logging
import math
import threading
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np
from scipy.linalg import eigh

from src.linkrate.surrogate import Surrogate, snr_cap
from src.sdp.factor import principal_factor
from src.sdp.problem import AdmmState, SdpSolution

from .problem import METHOD_PRIORITY, Method, SlotProblem
from .relaxation import Relaxation, cap_relaxation, relax_slot
from .snr import feasible_scale, frontier_scale

logger = logging.getLogger(__name__)

TIGHTNESS_FACTOR = 10.0  # relative objective slack, in multiples of the solver tolerance


def surrogate_key(surrogate: Optional[Surrogate]) -> str:
    if surrogate is None:
        return "shannon"
    return f"{surrogate.a:g}/{surrogate.c:g}/{surrogate.d:g}/{surrogate.e_max:g}"


class NeighborCache:
    """
    Transmit vectors of solved slots keyed by (slot index, M), plus the
    latest ADMM iterates per M for warm starts.
    """

    def __init__(self):
        self._vectors: Dict[int, Dict[int, np.ndarray]] = {}
        self._states: Dict[int, AdmmState] = {}
        self._lock = threading.Lock()

    def store_vector(self, slot_index: int, m: int, w: np.ndarray):
        with self._lock:
            self._vectors.setdefault(slot_index, {})[m] = np.array(w, copy=True)

    def nearest_vector(self, slot_index: int, m: int) -> Optional[np.ndarray]:
        """Closest other slot holding a vector for m: earlier slots first, then later ones."""
        with self._lock:
            earlier = sorted((i for i in self._vectors if i < slot_index), reverse=True)
            later = sorted(i for i in self._vectors if i > slot_index)
            for index in earlier + later:
                vector = self._vectors[index].get(m)
                if vector is not None:
                    return vector
        return None

    def warm_start(self, m: int) -> Optional[AdmmState]:
        """Iterates stored for m, else those of the nearest stored M (the smaller one on ties)."""
        with self._lock:
            if m in self._states:
                return self._states[m]
            if not self._states:
                return None
            stored = sorted(self._states)
            position = bisect.bisect_left(stored, m)
            nearby = stored[max(position - 1, 0):position + 1]
            return self._states[min(nearby, key=lambda k: (abs(k - m), k))]

    def store_warm_start(self, m: int, state: Optional[AdmmState]):
        if state is None:
            return
        with self._lock:
            self._states[m] = state


@dataclass
class Candidate:
    w: np.ndarray
    rate_bps: float
    snr: float
    method: Method
    rank1: bool


@dataclass
class FeasibleResult:
    w: np.ndarray
    rate_bps: float
    method: Method
    snr: float
    rank1: bool
    relaxed: Dict[str, SdpSolution] = field(default_factory=dict)
    sdp_solves: int = 0
    max_iter_hits: int = 0
    relaxation: Optional[Relaxation] = None


def _finalize(p: SlotProblem, m: int, vectors: np.ndarray) -> np.ndarray:
    if p.settings.frontier_rescale:
        return frontier_scale(p, m, vectors)
    z = np.minimum(feasible_scale(p, m, vectors), 1.0)
    return vectors * np.sqrt(z)[:, None]


def _score(p: SlotProblem, m: int, vectors: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    snrs = np.abs(vectors @ p.effective_vector.conj()) ** 2 / p.noise(m)
    return snrs, p.occupied(m) * np.atleast_1d(p.mcs.efficiency(snrs))


def randomize(
    p: SlotProblem, m: int, W: np.ndarray, surrogate: Optional[Surrogate], rng: np.random.Generator
) -> np.ndarray:
    """
    Randomized unit-modulus candidates scaled to their largest admissible power.

    Returns:
        np.ndarray: (n_trials, N_P) candidate transmit vectors
    """
    n = p.n_plane
    eigenvalues, eigenvectors = eigh(W)
    root = eigenvectors * np.sqrt(np.clip(eigenvalues, 0.0, None))
    draws = np.exp(2j * np.pi * rng.random((p.settings.n_trials, n)))
    directions = draws @ root.T
    magnitudes = np.abs(directions)
    unit = np.where(magnitudes > 0, directions / np.where(magnitudes > 0, magnitudes, 1.0), 1.0)

    level = np.full(len(unit), min(p.p_ant, p.p_max / n))
    with np.errstate(divide="ignore"):
        if p.snapshot.n_tbs and math.isfinite(p.delta):
            worst = np.max(np.abs(unit @ p.snapshot.h.conj().T) ** 2, axis=1)
            level = np.minimum(level, m * p.delta / worst)
        if surrogate is not None and not p.shannon:
            cap = snr_cap(surrogate, printed_form=p.settings.printed_l3)
            gain = np.abs(unit @ p.effective_vector.conj()) ** 2
            level = np.minimum(level, p.noise(m) * cap / gain)
    level = np.where(np.isfinite(level), level, 0.0)
    return unit * np.sqrt(level)[:, None]


def is_tight(p: SlotProblem, m: int, relaxation: Relaxation) -> bool:
    """
    Whether the relaxation is rank-one for practical purposes.

    True when W has numerical rank one, or when its principal factor scaled
    to the largest feasible power reaches the relaxed objective to within
    TIGHTNESS_FACTOR times the solver tolerance.
    """
    solution = relaxation.solution
    if solution.numerical_rank <= 1:
        return True
    raw = principal_factor(solution.W_star)[None, :]
    z = float(feasible_scale(p, m, raw)[0])
    if not math.isfinite(z):
        return False
    gain = z * float(np.abs(raw[0] @ p.effective_vector.conj()) ** 2)
    return gain >= (1.0 - TIGHTNESS_FACTOR * relaxation.tol) * solution.objective_value


def _relaxation_candidates(
    p: SlotProblem,
    m: int,
    surrogate: Optional[Surrogate],
    solution: SdpSolution,
    rank1: bool,
    rng: np.random.Generator,
) -> List[Candidate]:
    n = p.n_plane
    if solution.objective_value <= 0:
        return [Candidate(np.zeros(n, dtype=complex), 0.0, 0.0, Method.RANK_ONE_DIRECT, True)]

    raw = principal_factor(solution.W_star)[None, :]
    if rank1:
        principal = _finalize(p, m, raw)
        snrs, rates = _score(p, m, principal)
        return [Candidate(principal[0], float(rates[0]), float(snrs[0]), Method.RANK_ONE_DIRECT, True)]

    vectors = _finalize(p, m, np.vstack([raw, randomize(p, m, solution.W_star, surrogate, rng)]))
    snrs, rates = _score(p, m, vectors)
    best = int(np.argmax(rates))
    return [Candidate(vectors[best], float(rates[best]), float(snrs[best]), Method.RANDOMIZATION, False)]


def _neighbor_candidate(p: SlotProblem, m: int, previous: np.ndarray) -> Candidate:
    previous = np.asarray(previous, dtype=complex)[None, :]
    if p.settings.frontier_rescale:
        scaled = frontier_scale(p, m, previous)
    else:
        z = feasible_scale(p, m, previous)
        scaled = previous * np.sqrt(np.where(np.isfinite(z), z, 0.0))[:, None]
    snrs, rates = _score(p, m, scaled)
    return Candidate(scaled[0], float(rates[0]), float(snrs[0]), Method.NEIGHBOR_SCALED, True)


def feasible_slot(
    p: SlotProblem,
    m: int,
    relaxation: Optional[Relaxation] = None,
    neighbor_cache: Optional[NeighborCache] = None,
    tol: Optional[float] = None,
) -> FeasibleResult:
    """
    Best feasible transmit vector for subchannel count m.

    Args:
        p: Slot problem (scenario 3 or 4)
        m: Subchannel count
        relaxation: Already solved uncapped relaxation for m
        neighbor_cache: Vectors of other slots and ADMM warm starts
        tol: Solver tolerance, the configured one when None

    Returns:
        FeasibleResult: Chosen vector, its true rate and the method that produced it
    """
    if p.scenario not in (3, 4):
        raise ValueError(f"feasible-solution search applies to scenarios 3 and 4, got {p.scenario}")

    solves = hits = 0
    if relaxation is None:
        warm = neighbor_cache.warm_start(m) if neighbor_cache is not None else None
        relaxation = relax_slot(p, m, warm, tol)
        solves, hits = relaxation.sdp_solves, relaxation.max_iter_hits
        if neighbor_cache is not None and not relaxation.closed_form:
            neighbor_cache.store_warm_start(m, relaxation.solution.warm_start)

    rng = np.random.default_rng([p.seed, p.snapshot.slot_index, m])
    rank1 = relaxation.solution.objective_value > 0 and is_tight(p, m, relaxation)
    surrogates: List[Optional[Surrogate]] = [None] if p.shannon else list(p.surrogates)
    relaxed: Dict[str, SdpSolution] = {}
    candidates: List[Candidate] = []
    for surrogate in surrogates:
        solution = cap_relaxation(p, m, surrogate, relaxation.solution)
        relaxed[surrogate_key(surrogate)] = solution
        candidates.extend(_relaxation_candidates(p, m, surrogate, solution, rank1, rng))

    if neighbor_cache is not None:
        previous = neighbor_cache.nearest_vector(p.snapshot.slot_index, m)
        if previous is not None and len(previous) == p.n_plane:
            candidates.append(_neighbor_candidate(p, m, previous))

    # highest rate; ties go to the preferred method, then to the earliest candidate
    best = max(
        enumerate(candidates),
        key=lambda item: (item[1].rate_bps, -METHOD_PRIORITY[item[1].method], -item[0]),
    )[1]
    logger.debug(
        f"Slot {p.snapshot.slot_index}, M={m}: {best.method.value} rate={best.rate_bps / 1e6:.3f} Mbps"
    )
    return FeasibleResult(best.w, best.rate_bps, best.method, best.snr, best.rank1, relaxed, solves, hits, relaxation)
