"""Exhaustive verification sweeps over small labeled loop graphs.

Every labeled graph of order ``n`` is identified by an integer whose bit ``i``
selects the ``i``-th vertex pair in lexicographic order; every loop set by a
vertex bitmask. For each order the eigenvalues of all ``(graph, loops)``
instances are computed once (batched Jacobi) and shared by the sweeps.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

import numpy as np

from .closed_form import bipartite_with_loops
from .energy import energy, energy_from_eigenvalues, energy_ordinary
from .graph import (Graph, GraphError, LoopGraph, components, format_graph_text,
                    graph_from_index, is_bipartite, is_connected, loops_from_mask, vertex_pairs)
from .spectral import (BATCH_CHUNK, CLUSTER_TOL, distinct_counts, eigenvalues_batch,
                       power_traces_batch)

REFLECTION_TOL = 1e-8
ENERGY_TOL = 1e-8
SIGN_TOL = 1e-8
CONJECTURE_GAIN_TOL = 1e-8
MAX_SWEEP_ORDER = 6
MAX_TRACE_ORDER = 7
MAX_EXPLORE_ORDER = 20
MAX_REPORTED_FAILURES = 200
TIE_TOL = 1e-9


@dataclass
class Failure:
    graph: Graph
    loops: frozenset[int]
    detail: str

    def to_json(self) -> dict:
        return {"graph_encoding": encode_graph(self.graph), "loops": sorted(self.loops),
                "detail": self.detail}


@dataclass
class VerificationOutcome:
    theorem_id: str
    instances_checked: int = 0
    failures: list[Failure] = field(default_factory=list)
    failure_count: int = 0
    elapsed: float = 0.0
    observations: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.failure_count == 0

    def record(self, g: Graph, loops, detail: str) -> None:
        self.failure_count += 1
        if len(self.failures) < MAX_REPORTED_FAILURES:
            self.failures.append(Failure(g, frozenset(loops), detail))

    def to_json(self) -> dict:
        return {
            "theorem_id": self.theorem_id,
            "instances_checked": self.instances_checked,
            "passed": self.passed,
            "failure_count": self.failure_count,
            "failures": [f.to_json() for f in self.failures],
            "elapsed_ms": round(self.elapsed * 1000.0, 3),
            "observations": self.observations,
        }


def encode_graph(g: Graph) -> str:
    """One-line form of the graph text format, lines joined by ``;``."""
    return format_graph_text(g).strip().replace("\n", ";")


# -- per-order sweep data -----------------------------------------------------

def base_stack(n: int, lo: int = 0, hi: int | None = None) -> np.ndarray:
    """Adjacency matrices (int8) of labeled graphs ``lo..hi-1`` of order ``n``."""
    pairs = vertex_pairs(n)
    hi = (1 << len(pairs)) if hi is None else hi
    idx = np.arange(lo, hi, dtype=np.int64)
    a = np.zeros((idx.size, n, n), dtype=np.int8)
    if pairs:
        bits = ((idx[:, None] >> np.arange(len(pairs))) & 1).astype(np.int8)
        iu, ju = np.array(pairs).T
        a[:, iu, ju] = bits
        a[:, ju, iu] = bits
    return a


def loop_bits(n: int) -> np.ndarray:
    """``(2^n, n)`` 0/1 array; row ``mask`` marks the vertices of that loop set."""
    return ((np.arange(1 << n)[:, None] >> np.arange(n)) & 1).astype(np.int8)


def loop_stack(base: np.ndarray, bits: np.ndarray) -> np.ndarray:
    """All loop placements over each base matrix: ``(g, masks, n, n)``."""
    n = base.shape[-1]
    out = np.repeat(base[:, None], bits.shape[0], axis=1)
    d = np.arange(n)
    out[:, :, d, d] = bits[None]
    return out


def _eig_shard(n: int, lo: int, hi: int) -> np.ndarray:
    bits = loop_bits(n)
    step = max(1, BATCH_CHUNK // bits.shape[0])
    out = np.empty((hi - lo, bits.shape[0], n))
    for g0 in range(lo, hi, step):
        g1 = min(hi, g0 + step)
        stack = loop_stack(base_stack(n, g0, g1), bits)
        out[g0 - lo:g1 - lo] = eigenvalues_batch(stack.reshape(-1, n, n)).reshape(g1 - g0, -1, n)
    return out


_EIG_CACHE: dict[int, np.ndarray] = {}


def instance_eigenvalues(n: int, workers: int = 1) -> np.ndarray:
    """``(graphs, masks, n)`` descending eigenvalues of every instance of order ``n``.

    With ``workers > 1`` the graph index range is sharded over processes and
    results are concatenated in index order. Cached per process.
    """
    if n in _EIG_CACHE:
        return _EIG_CACHE[n]
    total = 1 << (n * (n - 1) // 2)
    if workers > 1 and total > 1:
        bounds = np.linspace(0, total, min(workers, total) + 1).astype(int)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = pool.map(_eig_shard, [n] * (len(bounds) - 1), bounds[:-1], bounds[1:])
            eig = np.concatenate(list(parts))
    else:
        eig = _eig_shard(n, 0, total)
    eig.setflags(write=False)
    _EIG_CACHE[n] = eig
    return eig


@dataclass(frozen=True)
class GraphTable:
    """Structural facts for every labeled graph of one order."""

    n: int
    graphs: list[Graph]
    m: np.ndarray
    degrees: np.ndarray
    connected: np.ndarray
    bipartite: np.ndarray
    comps: list[list[tuple[int, int, bool]]]  # (vertex mask, size, complete) per component


@lru_cache(maxsize=None)
def graph_table(n: int) -> GraphTable:
    base = base_stack(n)
    degs = base.sum(axis=2).astype(np.int64)
    graphs, conn, bip, comps = [], [], [], []
    for index in range(base.shape[0]):
        g = graph_from_index(n, index)
        graphs.append(g)
        cs = components(g)
        conn.append(len(cs) == 1)
        bip.append(is_bipartite(g) is not None)
        info = []
        for c in cs:
            size = len(c)
            inside = sum(1 for u, v in g.edges if u in c)
            info.append((sum(1 << v for v in c), size, inside == size * (size - 1) // 2))
        comps.append(info)
    return GraphTable(n, graphs, degs.sum(axis=1) // 2, degs, np.array(conn), np.array(bip),
                      comps)


def _sigmas(n: int) -> np.ndarray:
    return loop_bits(n).sum(axis=1).astype(np.int64)


def _check_order(max_n: int, cap: int) -> None:
    if not 1 <= max_n <= cap:
        raise ValueError(f"max_n must be in [1, {cap}], got {max_n}")


def _timed(fn):
    def wrapper(*args, **kwargs):
        t0 = time.perf_counter()
        out = fn(*args, **kwargs)
        out.elapsed = time.perf_counter() - t0
        return out
    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    wrapper.__wrapped__ = fn
    return wrapper


# -- trace identities ---------------------------------------------------------

@_timed
def verify_trace_identities(max_n: int,
                            traces: Callable[[np.ndarray, int], np.ndarray] = power_traces_batch
                            ) -> VerificationOutcome:
    """``tr A = sigma`` and ``tr A^2 = 2m + sigma`` exactly, for every labeled
    graph up to ``max_n`` and every loop set.

    ``traces`` is injectable so the harness itself can be tested.
    """
    _check_order(max_n, MAX_TRACE_ORDER)
    out = VerificationOutcome("traces")
    by_order: dict[int, int] = {}
    out.observations["instances_by_order"] = by_order
    for n in range(1, max_n + 1):
        bits = loop_bits(n)
        sig = bits.sum(axis=1).astype(np.int64)
        total = 1 << (n * (n - 1) // 2)
        step = max(1, BATCH_CHUNK // bits.shape[0])
        for g0 in range(0, total, step):
            g1 = min(total, g0 + step)
            base = base_stack(n, g0, g1)
            m = base.sum(axis=(1, 2)).astype(np.int64) // 2
            tr = traces(loop_stack(base, bits).reshape(-1, n, n), 2).reshape(g1 - g0, -1, 2)
            bad = (tr[..., 0] != sig[None]) | (tr[..., 1] != 2 * m[:, None] + sig[None])
            out.instances_checked += bad.size
            by_order[n] = by_order.get(n, 0) + bad.size
            for gi, mask in zip(*np.nonzero(bad)):
                t = tr[gi, mask]
                out.record(graph_from_index(n, g0 + int(gi)), loops_from_mask(int(mask)),
                           f"traces ({t[0]}, {t[1]}) != ({sig[mask]}, {2 * m[gi] + sig[mask]})")
    return out


@_timed
def verify_closed_walks3(max_part: int = 6) -> VerificationOutcome:
    """``tr A^3 = 3(m sigma_N + n sigma_M) + sigma`` on ``K_{m,n}`` for every
    loop subset (hence every ``(sigma_M, sigma_N)`` placement)."""
    if max_part < 1:
        raise ValueError(f"max_part must be >= 1, got {max_part}")
    out = VerificationOutcome("closed-walks")
    for p in range(1, max_part + 1):
        for q in range(1, max_part + 1):
            lg = bipartite_with_loops(p, q, 0)
            order = p + q
            base = np.zeros((1, order, order), dtype=np.int8)
            for u, v in lg.base.edges:
                base[0, u, v] = base[0, v, u] = 1
            bits = loop_bits(order)
            tr = power_traces_batch(loop_stack(base, bits)[0], 3)[:, 2]
            sig_m = bits[:, :p].sum(axis=1).astype(np.int64)
            sig_n = bits[:, p:].sum(axis=1).astype(np.int64)
            expected = 3 * (p * sig_n + q * sig_m) + sig_m + sig_n
            out.instances_checked += bits.shape[0]
            for mask in np.nonzero(tr != expected)[0]:
                out.record(lg.base, loops_from_mask(int(mask)),
                           f"K_{p},{q}: tr A^3 = {tr[mask]} != {expected[mask]}")
    return out


# -- reflection and bipartite energy ------------------------------------------

def reflection_gaps(eig: np.ndarray) -> np.ndarray:
    """Max gap between sorted ``1 - lambda(G_S)`` and ``lambda(G_{V-S})`` for
    every mask; ``eig`` is ``(..., masks, n)`` descending."""
    full = eig.shape[-2] - 1
    complement = full ^ np.arange(eig.shape[-2])
    reflected = (1.0 - eig)[..., ::-1]
    return np.abs(reflected - eig[..., complement, :]).max(axis=-1)


@_timed
def verify_reflection(max_n: int, workers: int = 1) -> VerificationOutcome:
    """On connected graphs: ``{1 - lambda_i(G_S)} = Spec(G_{V-S})`` holds for
    a loop set exactly when the graph is bipartite. Both directions, every S."""
    _check_order(max_n, MAX_SWEEP_ORDER)
    out = VerificationOutcome("reflection")
    holds_on_bip = fails_on_nonbip = 0
    for n in range(1, max_n + 1):
        tab = graph_table(n)
        eig = instance_eigenvalues(n, workers)
        idx = np.nonzero(tab.connected)[0]
        gaps = reflection_gaps(eig[idx])
        holds = gaps <= REFLECTION_TOL
        bip = tab.bipartite[idx][:, None]
        out.instances_checked += holds.size
        holds_on_bip += int((holds & bip).sum())
        fails_on_nonbip += int((~holds & ~bip).sum())
        for row, mask in zip(*np.nonzero(holds != bip)):
            g = tab.graphs[idx[row]]
            what = "fails on bipartite" if bip[row, 0] else "holds on non-bipartite"
            out.record(g, loops_from_mask(int(mask)),
                       f"reflection {what} graph (max gap {gaps[row, mask]:.3e})")
    out.observations = {"bipartite_instances_reflecting": holds_on_bip,
                        "nonbipartite_instances_not_reflecting": fails_on_nonbip}
    return out


def instance_energies(n: int, workers: int = 1) -> np.ndarray:
    return energy_from_eigenvalues(instance_eigenvalues(n, workers), _sigmas(n)[None, :])


@_timed
def verify_energy_equality_bipartite(max_n: int, workers: int = 1) -> VerificationOutcome:
    """``E(G_S) = E(G_{V-S})`` for every bipartite graph and loop set."""
    _check_order(max_n, MAX_SWEEP_ORDER)
    out = VerificationOutcome("energy-equality")
    for n in range(1, max_n + 1):
        tab = graph_table(n)
        en = instance_energies(n, workers)
        idx = np.nonzero(tab.bipartite)[0]
        full = (1 << n) - 1
        diff = np.abs(en[idx] - en[idx][:, full ^ np.arange(1 << n)])
        out.instances_checked += diff.size
        for row, mask in zip(*np.nonzero(diff > ENERGY_TOL)):
            out.record(tab.graphs[idx[row]], loops_from_mask(int(mask)),
                       f"|E(G_S) - E(G_V-S)| = {diff[row, mask]:.3e}")
    return out


@_timed
def verify_energy_dominance_bipartite(max_n: int, workers: int = 1) -> VerificationOutcome:
    """``E(G_S) >= E(G)`` for every bipartite graph and loop set."""
    _check_order(max_n, MAX_SWEEP_ORDER)
    out = VerificationOutcome("energy-dominance")
    min_margin = np.inf
    for n in range(1, max_n + 1):
        tab = graph_table(n)
        en = instance_energies(n, workers)
        idx = np.nonzero(tab.bipartite)[0]
        margin = en[idx] - en[idx][:, :1]
        out.instances_checked += margin.size
        min_margin = min(min_margin, float(margin.min()))
        for row, mask in zip(*np.nonzero(margin < -ENERGY_TOL)):
            out.record(tab.graphs[idx[row]], loops_from_mask(int(mask)),
                       f"E(G_S) - E(G) = {margin[row, mask]:.3e}")
    out.observations = {"min_margin": min_margin}
    return out


# -- energy and lambda_1 bounds -----------------------------------------------

@_timed
def verify_bounds(max_n: int, workers: int = 1) -> VerificationOutcome:
    """Energy upper bound, ``(2m+sigma)/n <= lambda_1 <= Delta+1``,
    ``lambda_1 = n`` only for the fully looped complete graph, and the degree
    pattern forced when the energy bound is attained."""
    _check_order(max_n, MAX_SWEEP_ORDER)
    out = VerificationOutcome("bounds")
    energy_equal = lower_equal = disconnected = 0
    for n in range(1, max_n + 1):
        tab = graph_table(n)
        eig = instance_eigenvalues(n, workers)
        sig = _sigmas(n)[None, :].astype(float)
        m = tab.m[:, None].astype(float)
        en = energy_from_eigenvalues(eig, sig)
        bound = np.sqrt(np.maximum(0.0, n * (2 * m + sig - sig * sig / n)))
        lam1 = eig[..., 0]
        lower = (2 * m + sig) / n
        upper = tab.degrees.max(axis=1)[:, None] + 1.0
        s = sig / n
        a = 2 * m / n + 3 * s - 2 * s * s - 1
        b = 2 * m / n + s - 2 * s * s
        bits = loop_bits(n).astype(bool)
        expected = np.where(bits[None], a[..., None], b[..., None])
        pattern = np.all(np.abs(tab.degrees[:, None, :] - expected) < 1e-9, axis=-1)
        attained = np.abs(en - bound) <= ENERGY_TOL
        khat = np.zeros_like(lam1, dtype=bool)
        khat[-1, -1] = True  # last index: all pairs; last mask: all loops
        checks = {
            "energy above upper bound": en > bound + ENERGY_TOL,
            "lambda_1 below (2m+sigma)/n": lam1 < lower - ENERGY_TOL,
            "lambda_1 above Delta+1": lam1 > upper + ENERGY_TOL,
            "lambda_1 = n iff complete fully looped": (np.abs(lam1 - n) <= ENERGY_TOL) != khat,
            "energy bound attained without forced degree pattern": attained & ~pattern,
        }
        out.instances_checked += lam1.size
        energy_equal += int(attained.sum())
        lower_equal += int((np.abs(lam1 - lower) <= ENERGY_TOL).sum())
        disconnected += int((~tab.connected).sum()) << n
        for label, bad in checks.items():
            for gi, mask in zip(*np.nonzero(bad)):
                out.record(tab.graphs[gi], loops_from_mask(int(mask)),
                           f"{label}: E={en[gi, mask]:.6f} bound={bound[gi, mask]:.6f} "
                           f"lambda_1={lam1[gi, mask]:.6f}")
    out.observations = {"energy_bound_attained": energy_equal,
                        "lambda1_lower_attained": lower_equal,
                        "disconnected_instances_checked": disconnected}
    return out


# -- structural classifiers ---------------------------------------------------

@dataclass(frozen=True)
class ComponentClass:
    """Structural type of one component: ``K1`` (unlooped vertex), ``Kr``
    (unlooped complete, r >= 2), ``Kr_hat`` (complete, every vertex looped,
    r >= 1) or ``other``."""

    kind: str
    r: int
    loops: int = 0

    def __str__(self) -> str:
        return self.kind if self.kind == "K1" else f"{self.kind}({self.r})"


def _classify(size: int, complete: bool, loops: int) -> ComponentClass:
    if complete and loops == size:
        return ComponentClass("Kr_hat", size, loops)
    if complete and loops == 0:
        return ComponentClass("K1" if size == 1 else "Kr", size, 0)
    return ComponentClass("other", size, loops)


def classify_components(lg: LoopGraph) -> list[ComponentClass]:
    """Classify every component of ``lg`` from its structure alone."""
    out = []
    for c in components(lg.base):
        size = len(c)
        inside = sum(1 for u, v in lg.base.edges if u in c)
        out.append(_classify(size, inside == size * (size - 1) // 2, len(c & lg.loops)))
    return out


def all_positive_structure(classes: list[ComponentClass]) -> bool:
    """Every component is a single looped vertex."""
    return all(c.kind == "Kr_hat" and c.r == 1 for c in classes)


def all_nonnegative_structure(classes: list[ComponentClass]) -> bool:
    """Every component is an unlooped vertex or a fully looped complete graph."""
    return all(c.kind in ("K1", "Kr_hat") for c in classes)


def one_distinct_structure(classes: list[ComponentClass]) -> bool:
    """Edgeless and loopless, or every component a single looped vertex."""
    return all(c.kind == "K1" for c in classes) or all_positive_structure(classes)


def _kinds(classes):
    return {(c.kind, c.r) for c in classes}


def two_distinct_structure_stated(classes: list[ComponentClass]) -> bool:
    """The literal two-value characterization of exactly two distinct eigenvalues:
    identical unlooped ``K_r`` (r >= 2); or unlooped vertices together with
    fully looped ``K_r`` of one common order, not all ``K_1``-hat alone."""
    kinds = _kinds(classes)
    if len(kinds) == 1:
        kind, r = next(iter(kinds))
        return kind in ("Kr", "Kr_hat") and r >= 2
    hats = {r for kind, r in kinds if kind == "Kr_hat"}
    return len(hats) == 1 and kinds <= {("K1", 1), ("Kr_hat", next(iter(hats)))}


def two_distinct_structure(classes: list[ComponentClass]) -> bool:
    """Exactly two distinct eigenvalues, characterized structurally.

    Extends the literal form by two families it omits: ``K_2`` with
    one loop (eigenvalues ``(1 +- sqrt 5)/2``), possibly repeated, and
    unlooped ``K_2`` components mixed with isolated looped vertices
    (eigenvalues ``1, -1``).
    """
    if two_distinct_structure_stated(classes):
        return True
    kinds = {(c.kind, c.r, c.loops) for c in classes}
    if kinds == {("other", 2, 1)}:
        return True
    return kinds == {("Kr", 2, 0), ("Kr_hat", 1, 1)}


@lru_cache(maxsize=None)
def _predicates(signature: tuple[tuple[int, bool, int], ...]) -> tuple[bool, bool, bool, bool, bool]:
    classes = [_classify(*sig) for sig in signature]
    return (all_positive_structure(classes), all_nonnegative_structure(classes),
            one_distinct_structure(classes), two_distinct_structure(classes),
            two_distinct_structure_stated(classes))


def _structure_table(tab: GraphTable) -> np.ndarray:
    """``(graphs, masks, 5)`` booleans from :func:`_predicates` per instance."""
    n = tab.n
    masks = np.arange(1 << n)
    out = np.empty((len(tab.graphs), 1 << n, 5), dtype=bool)
    for gi, info in enumerate(tab.comps):
        loops_per = [np.bitwise_count(masks & cm).tolist() for cm, _, _ in info]
        sizes = [(size, complete) for _, size, complete in info]
        for mask in masks:
            sig = tuple(sorted((size, complete, lp[mask])
                               for (size, complete), lp in zip(sizes, loops_per)))
            out[gi, mask] = _predicates(sig)
    return out


def _gap_stats(eig: np.ndarray) -> tuple[float, float]:
    gaps = -np.diff(eig, axis=-1)
    within = gaps[gaps <= CLUSTER_TOL]
    between = gaps[gaps > CLUSTER_TOL]
    return (float(within.max()) if within.size else 0.0,
            float(between.min()) if between.size else np.inf)


@_timed
def verify_sign_characterizations(max_n: int, workers: int = 1) -> VerificationOutcome:
    """All eigenvalues positive iff every component is a looped vertex; all
    non-negative iff every component is ``K_1`` or a fully looped ``K_r``."""
    _check_order(max_n, MAX_SWEEP_ORDER)
    out = VerificationOutcome("signs")
    positive = nonneg = 0
    for n in range(1, max_n + 1):
        tab = graph_table(n)
        eig = instance_eigenvalues(n, workers)
        struct = _structure_table(tab)
        lam_min = eig[..., -1]
        spec_pos, spec_nonneg = lam_min > SIGN_TOL, lam_min > -SIGN_TOL
        out.instances_checked += lam_min.size
        positive += int(spec_pos.sum())
        nonneg += int(spec_nonneg.sum())
        for label, spec_side, struct_side in (("positive", spec_pos, struct[..., 0]),
                                              ("non-negative", spec_nonneg, struct[..., 1])):
            for gi, mask in zip(*np.nonzero(spec_side != struct_side)):
                out.record(tab.graphs[gi], loops_from_mask(int(mask)),
                           f"{label}: spectral={bool(spec_side[gi, mask])} "
                           f"structural={bool(struct_side[gi, mask])} "
                           f"lambda_min={lam_min[gi, mask]:.6f}")
    out.observations = {"all_positive_instances": positive, "all_nonnegative_instances": nonneg}
    return out


@_timed
def verify_distinct_count_characterizations(max_n: int, workers: int = 1) -> VerificationOutcome:
    """Exactly one / exactly two distinct eigenvalues against the structural
    predicates. Instances where the literal two-value statement disagrees
    with the spectrum are counted in ``observations`` (not failures)."""
    _check_order(max_n, MAX_SWEEP_ORDER)
    out = VerificationOutcome("distinct-counts")
    stated_misses: list[str] = []
    stated_miss_count = 0
    counts = {1: 0, 2: 0}
    max_within, min_between = 0.0, np.inf
    for n in range(1, max_n + 1):
        tab = graph_table(n)
        eig = instance_eigenvalues(n, workers)
        struct = _structure_table(tab)
        ndist = distinct_counts(eig.reshape(-1, n)).reshape(eig.shape[:2])
        w, b = _gap_stats(eig)
        max_within, min_between = max(max_within, w), min(min_between, b)
        out.instances_checked += ndist.size
        counts[1] += int((ndist == 1).sum())
        counts[2] += int((ndist == 2).sum())
        for label, spec_side, struct_side in (("one distinct", ndist == 1, struct[..., 2]),
                                              ("two distinct", ndist == 2, struct[..., 3])):
            for gi, mask in zip(*np.nonzero(spec_side != struct_side)):
                out.record(tab.graphs[gi], loops_from_mask(int(mask)),
                           f"{label}: spectral={bool(spec_side[gi, mask])} "
                           f"structural={bool(struct_side[gi, mask])} "
                           f"distinct={ndist[gi, mask]}")
        miss = (ndist == 2) != struct[..., 4]
        stated_miss_count += int(miss.sum())
        for gi, mask in zip(*np.nonzero(miss)):
            if len(stated_misses) < 20:
                stated_misses.append(f"{encode_graph(tab.graphs[gi])} loops="
                                     f"{sorted(loops_from_mask(int(mask)))}")
    out.observations = {
        "one_distinct_instances": counts[1],
        "two_distinct_instances": counts[2],
        "stated_two_distinct_disagreements": stated_miss_count,
        "stated_two_distinct_examples": stated_misses,
        "max_within_cluster_gap": max_within,
        "min_between_cluster_gap": min_between,
    }
    return out


# -- conjecture explorer ------------------------------------------------------

@dataclass
class ConjectureResult:
    graph: Graph
    best_loops: frozenset[int]
    gain: float
    energy_base: float
    energy_best: float

    def to_json(self) -> dict:
        return {"graph_encoding": encode_graph(self.graph), "best_loops": sorted(self.best_loops),
                "energy_base": self.energy_base, "energy_best": self.energy_best,
                "gain": self.gain}


def explore_conjecture(g: Graph) -> ConjectureResult:
    """Maximize ``E(G_S) - E(G)`` over all non-empty loop sets ``S``.

    Ties (within ``TIE_TOL``) keep the smallest mask.
    """
    n = g.n
    if n > MAX_EXPLORE_ORDER:
        raise GraphError(f"exhaustive loop-set search is limited to order {MAX_EXPLORE_ORDER}, got {n}")
    if n < 1:
        raise GraphError("graph has no vertices")
    base = np.zeros((1, n, n), dtype=np.int8)
    for u, v in g.edges:
        base[0, u, v] = base[0, v, u] = 1
    e0 = energy_ordinary(g)
    energies = np.empty(1 << n)
    energies[0] = -np.inf
    step = max(1, BATCH_CHUNK // max(1, n))
    d = np.arange(n)
    for lo in range(1, 1 << n, step):
        masks = np.arange(lo, min(1 << n, lo + step))
        bits = ((masks[:, None] >> d) & 1).astype(np.int8)
        stack = np.repeat(base, masks.size, axis=0)
        stack[:, d, d] = bits
        energies[masks] = energy_from_eigenvalues(eigenvalues_batch(stack), bits.sum(axis=1))
    # symmetric loop sets tie up to rounding; take the smallest such mask
    best_mask = int(np.argmax(energies >= energies.max() - TIE_TOL))
    best_e = float(energies[best_mask])
    return ConjectureResult(g, loops_from_mask(best_mask), best_e - e0, e0, best_e)


@_timed
def sweep_conjecture(max_n: int, workers: int = 1) -> VerificationOutcome:
    """Best gain over non-empty loop sets for every connected graph up to
    ``max_n``; a non-positive best gain on order >= 2 is a failure, ``K_1`` is
    recorded as a boundary case."""
    _check_order(max_n, MAX_SWEEP_ORDER)
    out = VerificationOutcome("conjecture")
    min_gain, min_graph = np.inf, None
    for n in range(1, max_n + 1):
        tab = graph_table(n)
        en = instance_energies(n, workers)
        idx = np.nonzero(tab.connected)[0]
        gains = en[idx, 1:] - en[idx, :1]
        best = gains.max(axis=1)
        out.instances_checked += idx.size
        if n == 1:
            out.observations["K1_boundary"] = {"best_gain": float(best[0]),
                                               "note": "only S={0}; E(K1_S) = E(K1) = 0"}
            continue
        i = int(np.argmin(best))
        if best[i] < min_gain:
            min_gain, min_graph = float(best[i]), encode_graph(tab.graphs[idx[i]])
        for row in np.nonzero(best <= CONJECTURE_GAIN_TOL)[0]:
            out.record(tab.graphs[idx[row]], frozenset(),
                       f"no loop set raises energy (best gain {best[row]:.3e})")
    out.observations["min_best_gain"] = min_gain
    out.observations["min_best_gain_graph"] = min_graph
    return out


# -- K_{3,3} energy table ---------------------------------------------------

def table_k33() -> list[tuple[int, float]]:
    """Energy of ``K_{3,3}`` with ``sigma = 0..6`` loops, left part first."""
    return [(s, energy(bipartite_with_loops(3, 3, s))) for s in range(7)]


def table_k33_placements() -> list[tuple[int, int, float]]:
    """Energy for every split ``(sigma_left, sigma_right)`` of loops on ``K_{3,3}``."""
    lg = bipartite_with_loops(3, 3, 0)
    return [(sl, sr, energy(LoopGraph(lg.base, frozenset(range(sl)) | frozenset(range(3, 3 + sr)))))
            for sl in range(4) for sr in range(4)]


THEOREMS: dict[str, Callable[..., VerificationOutcome]] = {
    "traces": verify_trace_identities,
    "reflection": verify_reflection,
    "energy-equality": verify_energy_equality_bipartite,
    "energy-dominance": verify_energy_dominance_bipartite,
    "signs": verify_sign_characterizations,
    "distinct-counts": verify_distinct_count_characterizations,
    "bounds": verify_bounds,
    "conjecture": sweep_conjecture,
}


def run_theorem(theorem_id: str, max_n: int, workers: int = 1) -> VerificationOutcome:
    try:
        fn = THEOREMS[theorem_id]
    except KeyError:
        raise ValueError(f"unknown theorem id {theorem_id!r}; choose from {sorted(THEOREMS)}") from None
    if theorem_id == "traces":
        return fn(max_n)
    return fn(max_n, workers=workers)
