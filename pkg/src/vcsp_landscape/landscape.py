"""Landscape analysis: sign dependence, orientation, peaks, and brute force.

Sign comparisons are three-valued: 0 is its own sign, distinct from + and -.
A gradient that hits 0 therefore differs in sign from both a positive and a
negative one.  Generated instances never produce a 0 gradient (their
self-validation asserts it), but arbitrary instances may.

The brute-force oracles (peak enumeration, semismoothness, ascent graphs) are
exponential by nature and guarded by size caps; they exist to certify the
polynomial-time paths on small instances.
"""
from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass
from itertools import product
from typing import Sequence

import numpy as np

from .core import Bits, Instance, flip
from .errors import (
    CyclicOrientationError,
    TooLargeError,
    UnreachableError,
    ZeroGradientError,
)

PEAKS_CAP = 24
SEMISMOOTH_CAP = 12
ASCENT_GRAPH_CAP = 1 << 18


def _sign(v: int) -> int:
    return (v > 0) - (v < 0)


@dataclass(frozen=True)
class SignDependence:
    """Witness that flipping `source` can change the gradient sign of `target`.

    The witness maps every neighbor of target (source included) to a bit;
    sign_at is the gradient sign there and sign_flipped the sign after
    flipping source.
    """
    target: int
    source: int
    witness: dict[int, int]
    sign_at: int
    sign_flipped: int


def sign_depends(inst: Instance, i: int, j: int) -> SignDependence | None:
    """First witness (in neighborhood enumeration order) that i sign-depends
    on j, or None if no background assignment produces one.

    Only assignments to i's neighborhood are enumerated (at most 2^deg(i),
    never the full hypercube); the gradient of i depends on nothing else.
    """
    if i == j:
        raise ValueError("sign dependence needs two distinct variables")
    inst._check_index(i)
    inst._check_index(j)
    nbrs = inst.neighbors[i]
    if j not in [v for v, _ in nbrs]:
        return None
    base = inst.unaries.get(i, 0)
    for bits in product((0, 1), repeat=len(nbrs)):
        g = base
        gf = base
        for (v, w), b in zip(nbrs, bits):
            if v == j:
                g += w * b
                gf += w * (1 - b)
            else:
                g += w * b
                gf += w * b
        sa, sf = _sign(g), _sign(gf)
        if sa != sf:
            witness = {v: b for (v, _), b in zip(nbrs, bits)}
            return SignDependence(i, j, witness, sa, sf)
    return None


@dataclass(frozen=True)
class Orientation:
    """Result of sign-dependence analysis over all constraint-graph edges.

    When oriented, arcs holds one directed edge (i, j) for every edge where j
    sign-depends on i (edges with no dependence either way carry no arc) and
    topo_order is a topological order of all variables consistent with the
    arcs, ties broken by index.  When not oriented, conflict names an edge
    whose endpoints sign-depend on each other, with both witnesses.
    """
    oriented: bool
    arcs: tuple[tuple[int, int], ...] = ()
    topo_order: tuple[int, ...] = ()
    conflict: tuple[int, int] | None = None
    conflict_witnesses: tuple[SignDependence, SignDependence] | None = None


def orient(inst: Instance) -> Orientation:
    arcs: list[tuple[int, int]] = []
    for (i, j) in sorted(inst.binaries):
        j_on_i = sign_depends(inst, j, i)
        i_on_j = sign_depends(inst, i, j)
        if j_on_i and i_on_j:
            return Orientation(False, conflict=(i, j),
                               conflict_witnesses=(i_on_j, j_on_i))
        if j_on_i:
            arcs.append((i, j))
        elif i_on_j:
            arcs.append((j, i))

    out: list[list[int]] = [[] for _ in range(inst.num_vars)]
    indeg = [0] * inst.num_vars
    for a, b in arcs:
        out[a].append(b)
        indeg[b] += 1
    ready = [v for v in range(inst.num_vars) if indeg[v] == 0]
    heapq.heapify(ready)
    topo: list[int] = []
    while ready:
        v = heapq.heappop(ready)
        topo.append(v)
        for u in out[v]:
            indeg[u] -= 1
            if indeg[u] == 0:
                heapq.heappush(ready, u)
    if len(topo) != inst.num_vars:
        # one-directional sign dependence cannot produce a directed cycle
        raise CyclicOrientationError("sign-dependence arcs form a directed cycle")
    return Orientation(True, tuple(arcs), tuple(topo))


def is_local_peak(inst: Instance, x: Sequence[int]) -> bool:
    return not inst.improving_moves(x)


def peak_of_oriented(inst: Instance, orientation: Orientation | None = None) -> Bits:
    """The unique peak of an oriented instance, in polynomial time.

    Walks the topological order fixing each variable to its preferred value;
    by orientation, that preference cannot depend on the variables not yet
    fixed.  Raises ZeroGradientError if a gradient is 0 at fixing time, since
    no preferred value is defined then.
    """
    if orientation is None:
        orientation = orient(inst)
    if not orientation.oriented:
        raise ValueError("instance is not oriented")
    x = [0] * inst.num_vars
    for v in orientation.topo_order:
        g = inst.unaries.get(v, 0)
        for j, w in inst.neighbors[v]:
            if x[j]:
                g += w
        if g == 0:
            raise ZeroGradientError(f"variable {v} has gradient 0 at fixing time")
        x[v] = 1 if g > 0 else 0
    return tuple(x)


# ---------------------------------------------------------------------------
# Brute-force oracles.  Fitness over the full hypercube is materialized as a
# d-dimensional (2, 2, ..., 2) array, axis v = variable v, so flipping along
# an axis compares every assignment with its neighbor in that direction.
# ---------------------------------------------------------------------------

def _fitness_cube(inst: Instance) -> np.ndarray:
    d = inst.num_vars
    bound = abs(inst.constant) + sum(abs(w) for w in inst.unaries.values()) \
        + sum(abs(w) for w in inst.binaries.values())
    dtype = np.int64 if bound < 2 ** 62 else object
    v = np.full((2,) * d, inst.constant, dtype=dtype)
    for i, w in inst.unaries.items():
        sl: list = [slice(None)] * d
        sl[i] = 1
        v[tuple(sl)] += w
    for (i, j), w in inst.binaries.items():
        sl = [slice(None)] * d
        sl[i] = 1
        sl[j] = 1
        v[tuple(sl)] += w
    return v


def _index_to_bits(idx: int, d: int) -> Bits:
    # axis 0 is the most significant bit of the raveled index
    return tuple(idx >> (d - 1 - v) & 1 for v in range(d))


def enumerate_peaks(inst: Instance, cap: int = PEAKS_CAP) -> list[Bits]:
    """All local peaks by exhaustive scan, sorted by fitness descending
    (ties by assignment).  Requires num_vars <= cap."""
    d = inst.num_vars
    if d > cap:
        raise TooLargeError(f"{d} variables exceeds the enumeration cap {cap}")
    cube = _fitness_cube(inst)
    peak = np.ones((2,) * d, dtype=bool)
    for v in range(d):
        peak &= cube >= np.flip(cube, axis=v)
    flat = cube.reshape(-1)
    idxs = np.flatnonzero(peak.reshape(-1))
    out = [(int(i), flat[int(i)]) for i in idxs]
    out.sort(key=lambda t: (-t[1], t[0]))
    return [_index_to_bits(i, d) for i, _ in out]


@dataclass(frozen=True)
class FaceViolation:
    """A hypercube face (free variables + fixed background) with != 1 peak."""
    free_vars: tuple[int, ...]
    fixed: dict[int, int]
    peaks: tuple[Bits, ...]  # full assignments, face-local peaks


@dataclass(frozen=True)
class SemismoothResult:
    semismooth: bool
    violation: FaceViolation | None = None


def check_semismooth(inst: Instance, cap: int = SEMISMOOTH_CAP) -> SemismoothResult:
    """Check that every face of the hypercube has exactly one face-local peak.

    A vertex is a peak of a face if no neighbor inside the face improves on
    it.  All faces with the same free-variable set share one vectorized pass,
    so the total work is one O(2^d) sweep per subset.  Faces are scanned in
    subset-mask order and the first violation is returned.
    """
    d = inst.num_vars
    if d > cap:
        raise TooLargeError(f"{d} variables exceeds the semismoothness cap {cap}")
    cube = _fitness_cube(inst)
    cmp = [np.asarray(cube >= np.flip(cube, axis=v), dtype=bool) for v in range(d)]
    for mask in range(1, 1 << d):
        free = [v for v in range(d) if mask >> v & 1]
        peak = cmp[free[0]].copy()
        for v in free[1:]:
            peak &= cmp[v]
        counts = peak.sum(axis=tuple(free))
        if not (counts == 1).all():
            fixed_vars = [v for v in range(d) if not (mask >> v & 1)]
            bad = np.argwhere(counts != 1)[0]
            fixed = {v: int(b) for v, b in zip(fixed_vars, bad)}
            sl: list = [slice(None)] * d
            for v, b in fixed.items():
                sl[v] = b
            face_peaks = np.argwhere(peak[tuple(sl)])
            peaks = []
            for row in face_peaks:
                bits = [0] * d
                for v, b in fixed.items():
                    bits[v] = b
                for v, b in zip(free, row):
                    bits[v] = int(b)
                peaks.append(tuple(bits))
            return SemismoothResult(False, FaceViolation(tuple(free), fixed, tuple(peaks)))
    return SemismoothResult(True)


@dataclass(frozen=True)
class AscentGraph:
    """All assignments reachable from start by improving flips.

    Every edge strictly increases fitness, so the graph is acyclic; sinks are
    the reachable local peaks.
    """
    start: Bits
    nodes: dict[Bits, int]                          # assignment -> fitness
    edges: tuple[tuple[Bits, Bits, int, int], ...]  # (from, to, var, gain)
    sinks: tuple[Bits, ...]


def ascent_graph(inst: Instance, start: Sequence[int], cap: int = ASCENT_GRAPH_CAP) -> AscentGraph:
    start = tuple(start)
    f0 = inst.fitness(start)
    nodes: dict[Bits, int] = {start: f0}
    edges: list[tuple[Bits, Bits, int, int]] = []
    sinks: list[Bits] = []
    queue = deque([start])
    while queue:
        x = queue.popleft()
        moves = inst.improving_moves(x)
        if not moves:
            sinks.append(x)
            continue
        fx = nodes[x]
        for v, gain in moves:
            y = flip(x, v)
            edges.append((x, y, v, gain))
            if y not in nodes:
                if len(nodes) >= cap:
                    raise TooLargeError(f"ascent graph exceeds the node cap {cap}")
                nodes[y] = fx + gain
                queue.append(y)
    return AscentGraph(start, nodes, tuple(edges), tuple(sorted(sinks)))


def shortest_ascent_length(graph: AscentGraph, target: Sequence[int]) -> int:
    """Length of the shortest improving path from the graph's start to target."""
    target = tuple(target)
    if target not in graph.nodes:
        raise UnreachableError("target is not reachable from the start")
    adj: dict[Bits, list[Bits]] = {}
    for a, b, _, _ in graph.edges:
        adj.setdefault(a, []).append(b)
    dist = {graph.start: 0}
    queue = deque([graph.start])
    while queue:
        x = queue.popleft()
        if x == target:
            return dist[x]
        for y in adj.get(x, ()):
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    raise UnreachableError("target is not reachable from the start")
