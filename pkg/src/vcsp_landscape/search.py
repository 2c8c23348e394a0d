"""Local-search ascent engines with full trace recording.

All engines share one incremental state: per-variable gradients plus the set
of currently improving variables, updated in O(degree) per flip.  Fitness
strictly increases every step, so every run terminates.

The random engine draws from Python's Mersenne Twister (random.Random), whose
bitstream is stable across platforms and versions; a run is reproducible from
its seed, and trial batches derive per-trial seeds by counter from the master
seed (seed * 2^32 + trial index).
"""
from __future__ import annotations

import csv
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .core import Bits, Instance
from .errors import EmptyTrialError, TieEncounteredError

TIE_POLICIES = ("lowest-index", "error")
METHODS = ("steepest", "random", "first")


@dataclass(frozen=True)
class Trace:
    """Record of one ascent.

    steps holds (flipped variable, gain, fitness after) per step when
    recording is on, else None (summary fields are always filled, which keeps
    multi-million-step runs in constant memory).  tie_events counts steps
    where two or more moves shared the maximal gain; it is only meaningful
    for the steepest engine and 0 elsewhere.  complete is False only when a
    max_steps guard stopped the run early, in which case end need not be a
    peak.
    """
    method: str
    start: Bits
    end: Bits
    num_steps: int
    fitness_start: int
    fitness_end: int
    min_gain: int | None
    tie_events: int
    steps: tuple[tuple[int, int, int], ...] | None
    seed: int | None = None
    complete: bool = True


def _setup(inst: Instance, start: Sequence[int]):
    fit = inst.fitness(start)  # validates length and bit values
    x = bytearray(start)
    grad = []
    imp = {}
    unaries = inst.unaries
    for i, nbrs in enumerate(inst.neighbors):
        g = unaries.get(i, 0)
        for j, w in nbrs:
            if x[j]:
                g += w
        grad.append(g)
        gain = -g if x[i] else g
        if gain > 0:
            imp[i] = gain
    return x, grad, imp, fit


def _finish(method, start, x, nsteps, fit0, fit, min_gain, ties, steps, seed, complete):
    return Trace(method, tuple(start), tuple(x), nsteps, fit0, fit, min_gain,
                 ties, tuple(steps) if steps is not None else None, seed, complete)


def steepest_ascent(
    inst: Instance,
    start: Sequence[int],
    tie_policy: str = "lowest-index",
    record_steps: bool = True,
    max_steps: int | None = None,
) -> Trace:
    """Follow the steepest ascent: always flip a variable of maximal gain.

    Ties are resolved by lowest variable index (or raised, under policy
    "error") and counted either way.  The loop is the package's hot path:
    only the flipped variable's neighbors change gradient, so each step costs
    O(degree) plus a scan of the improving set.
    """
    if tie_policy not in TIE_POLICIES:
        raise ValueError(f"tie_policy must be one of {TIE_POLICIES}, got {tie_policy!r}")
    x, grad, imp, fit = _setup(inst, start)
    fit0 = fit
    start = tuple(start)
    neighbors = inst.neighbors
    raise_on_tie = tie_policy == "error"
    steps: list[tuple[int, int, int]] | None = [] if record_steps else None
    nsteps = 0
    ties = 0
    min_gain = None
    complete = True
    limit = -1 if max_steps is None else max_steps
    while imp:
        if nsteps == limit:
            complete = False
            break
        best = -1
        best_g = 0
        nmax = 1
        for v, g in imp.items():
            if g > best_g:
                best_g = g
                best = v
                nmax = 1
            elif g == best_g:
                nmax += 1
                if v < best:
                    best = v
        if nmax > 1:
            if raise_on_tie:
                raise TieEncounteredError(
                    f"step {nsteps + 1}: {nmax} moves share the maximal gain {best_g}")
            ties += 1
        del imp[best]
        fit += best_g
        bit = x[best] = x[best] ^ 1
        for u, w in neighbors[best]:
            g = grad[u] = grad[u] + (w if bit else -w)
            if x[u]:
                g = -g
            if g > 0:
                imp[u] = g
            elif u in imp:
                del imp[u]
        nsteps += 1
        if min_gain is None or best_g < min_gain:
            min_gain = best_g
        if steps is not None:
            steps.append((best, best_g, fit))
    return _finish("steepest", start, x, nsteps, fit0, fit, min_gain, ties, steps, None, complete)


def random_ascent(
    inst: Instance,
    start: Sequence[int],
    seed: int,
    record_steps: bool = True,
    max_steps: int | None = None,
) -> Trace:
    """Flip a uniformly random improving variable each step.

    Deterministic given the seed (Mersenne Twister over the sorted improving
    set), so experiment runs are reproducible in CI.
    """
    rng = random.Random(seed)
    x, grad, imp, fit = _setup(inst, start)
    fit0 = fit
    start = tuple(start)
    neighbors = inst.neighbors
    steps: list[tuple[int, int, int]] | None = [] if record_steps else None
    nsteps = 0
    min_gain = None
    complete = True
    limit = -1 if max_steps is None else max_steps
    while imp:
        if nsteps == limit:
            complete = False
            break
        cands = sorted(imp)
        v = cands[rng.randrange(len(cands))]
        gain = imp.pop(v)
        fit += gain
        bit = x[v] = x[v] ^ 1
        for u, w in neighbors[v]:
            g = grad[u] = grad[u] + (w if bit else -w)
            if x[u]:
                g = -g
            if g > 0:
                imp[u] = g
            elif u in imp:
                del imp[u]
        nsteps += 1
        if min_gain is None or gain < min_gain:
            min_gain = gain
        if steps is not None:
            steps.append((v, gain, fit))
    return _finish("random", start, x, nsteps, fit0, fit, min_gain, 0, steps, seed, complete)


def first_improvement_ascent(
    inst: Instance,
    start: Sequence[int],
    scan_order: Sequence[int] | None = None,
    record_steps: bool = True,
    max_steps: int | None = None,
) -> Trace:
    """Flip the first improving variable found in cyclic scan order.

    After a flip, scanning resumes just past the flipped position; the run
    ends once a full cycle finds nothing improving.
    """
    d = inst.num_vars
    if scan_order is None:
        order = tuple(range(d))
    else:
        order = tuple(scan_order)
        if sorted(order) != list(range(d)):
            raise ValueError("scan_order must be a permutation of the variable indices")
    x, grad, imp, fit = _setup(inst, start)
    fit0 = fit
    start = tuple(start)
    neighbors = inst.neighbors
    steps: list[tuple[int, int, int]] | None = [] if record_steps else None
    nsteps = 0
    min_gain = None
    complete = True
    limit = -1 if max_steps is None else max_steps
    pos = 0
    misses = 0
    while misses < d and d:
        if nsteps == limit:
            complete = False
            break
        v = order[pos]
        pos = (pos + 1) % d
        g = grad[v]
        gain = -g if x[v] else g
        if gain <= 0:
            misses += 1
            continue
        misses = 0
        fit += gain
        bit = x[v] = x[v] ^ 1
        for u, w in neighbors[v]:
            grad[u] += w if bit else -w
        nsteps += 1
        if min_gain is None or gain < min_gain:
            min_gain = gain
        if steps is not None:
            steps.append((v, gain, fit))
    return _finish("first", start, x, nsteps, fit0, fit, min_gain, 0, steps, None, complete)


def replay(inst: Instance, trace: Trace) -> None:
    """Re-apply a recorded trace and verify every recorded quantity.

    Raises ValueError on the first mismatch (wrong gain, wrong running
    fitness, non-increasing step, wrong endpoint, or an endpoint that is not
    a peak despite the trace claiming completion).
    """
    if trace.steps is None:
        raise ValueError("trace has no recorded steps to replay")
    x = list(trace.start)
    fit = inst.fitness(x)
    if fit != trace.fitness_start:
        raise ValueError(f"recorded start fitness {trace.fitness_start}, computed {fit}")
    for t, (v, gain, after) in enumerate(trace.steps, start=1):
        g = inst.gradient(v, x)
        actual = -g if x[v] else g
        if actual != gain:
            raise ValueError(f"step {t}: recorded gain {gain}, computed {actual}")
        if gain <= 0:
            raise ValueError(f"step {t}: non-improving recorded step")
        x[v] ^= 1
        fit += gain
        if fit != after:
            raise ValueError(f"step {t}: recorded fitness {after}, computed {fit}")
    if tuple(x) != trace.end:
        raise ValueError("replayed end differs from recorded end")
    if fit != trace.fitness_end:
        raise ValueError("replayed final fitness differs from recorded value")
    if len(trace.steps) != trace.num_steps:
        raise ValueError("num_steps differs from the recorded step list")
    if trace.complete and inst.improving_moves(x):
        raise ValueError("trace claims completion but end is not a local peak")


@dataclass(frozen=True)
class TrialStats:
    """Aggregates over independent trials; mean is exact (a Fraction)."""
    method: str
    trials: int
    step_counts: tuple[int, ...]
    mean: Fraction
    min: int
    max: int
    seed: int | None


def run_trials(
    inst: Instance,
    start: Sequence[int],
    method: str = "random",
    trials: int = 100,
    seed: int = 0,
    **kwargs,
) -> TrialStats:
    """Run independent ascents and aggregate their step counts.

    Per-trial seeds are seed * 2^32 + t for trial t, so a batch is fully
    determined by the master seed.  Deterministic methods take no seed and
    simply repeat.
    """
    if trials < 1:
        raise EmptyTrialError(f"need at least 1 trial, got {trials}")
    if method not in METHODS:
        raise ValueError(f"method must be one of {METHODS}, got {method!r}")
    counts = []
    for t in range(trials):
        if method == "random":
            tr = random_ascent(inst, start, seed=seed * 2 ** 32 + t,
                               record_steps=False, **kwargs)
        elif method == "steepest":
            tr = steepest_ascent(inst, start, record_steps=False, **kwargs)
        else:
            tr = first_improvement_ascent(inst, start, record_steps=False, **kwargs)
        counts.append(tr.num_steps)
    return TrialStats(method, trials, tuple(counts), Fraction(sum(counts), trials),
                      min(counts), max(counts), seed if method == "random" else None)


def write_trace_csv(trace: Trace, inst: Instance, path) -> None:
    """Write a recorded trace as CSV with metadata comment lines.

    Columns: step, var_index, var_label, gain, fitness_after.  var_label is
    "(k,i)" for labeled variables, empty otherwise.
    """
    if trace.steps is None:
        raise ValueError("trace has no recorded steps to write")
    with open(path, "w", newline="") as fh:
        fh.write(f"# method={trace.method}\n")
        fh.write(f"# seed={trace.seed if trace.seed is not None else ''}\n")
        fh.write(f"# instance=sha256:{inst.content_hash()}\n")
        writer = csv.writer(fh)
        writer.writerow(["step", "var_index", "var_label", "gain", "fitness_after"])
        for t, (v, gain, after) in enumerate(trace.steps, start=1):
            lab = inst.labels.get(v)
            writer.writerow([t, v, f"({lab[0]},{lab[1]})" if lab else "", gain, after])
