"""Binary Boolean VCSP instances: exact fitness, gradients, and bit-flip moves.

An instance is a set of integer-weighted unary and binary constraints over
Boolean variables indexed 0..num_vars-1, plus a constant term.  The fitness of
an assignment x is

    constant + sum_i unary[i]*x[i] + sum_{i<j} binary[i,j]*x[i]*x[j]

and "solving" the instance means maximizing it.  All weights and fitness
values are Python ints, so arithmetic is exact at any magnitude; there is no
integer width to overflow.

Assignments are plain tuples of 0/1 ints.  Variables may optionally carry
(k, i) labels (gadget index k >= 1, position i in 1..6), used by the instance
generator; labeled instances render assignment strings with variables ordered
by decreasing k and, within a gadget, increasing i.
"""
from __future__ import annotations

import hashlib
from typing import Iterable, Mapping, Sequence

from .errors import (
    DuplicateScopeError,
    IndexOutOfRangeError,
    LengthMismatchError,
    MalformedTableError,
    ParseError,
    SelfLoopError,
    ZeroWeightError,
)

Bits = tuple[int, ...]
Label = tuple[int, int]


class Instance:
    """An immutable weighted-constraint instance.

    Attributes:
        num_vars: number of Boolean variables.
        constant: the constant fitness term.
        unaries: dict index -> nonzero weight.
        binaries: dict (i, j) with i < j -> nonzero weight.
        labels: dict index -> (k, i) label, possibly empty.
        neighbors: per-variable tuple of (other, weight) pairs, one per
            binary constraint touching the variable.

    Instances never mutate after construction and are safe to share across
    threads; searches copy assignments and never write back.
    """

    __slots__ = ("num_vars", "constant", "unaries", "binaries", "labels",
                 "_index_by_label", "neighbors")

    def __init__(
        self,
        num_vars: int,
        constant: int = 0,
        unaries: Iterable[tuple[int, int]] | Mapping[int, int] = (),
        binaries: Iterable[tuple[int, int, int]] | Mapping[tuple[int, int], int] = (),
        labels: Iterable[tuple[int, int, int]] | Mapping[int, Label] | None = None,
    ):
        if num_vars < 0:
            raise IndexOutOfRangeError(f"num_vars must be >= 0, got {num_vars}")
        self.num_vars = int(num_vars)
        self.constant = int(constant)

        if isinstance(unaries, Mapping):
            unaries = unaries.items()
        udict: dict[int, int] = {}
        for i, w in unaries:
            self._check_index(i)
            if w == 0:
                raise ZeroWeightError(f"unary on variable {i} has weight 0")
            if i in udict:
                raise DuplicateScopeError(f"duplicate unary scope {{{i}}}")
            udict[i] = int(w)
        self.unaries = udict

        if isinstance(binaries, Mapping):
            binaries = [(i, j, w) for (i, j), w in binaries.items()]
        bdict: dict[tuple[int, int], int] = {}
        for i, j, w in binaries:
            self._check_index(i)
            self._check_index(j)
            if i == j:
                raise SelfLoopError(f"binary scope pairs variable {i} with itself")
            if w == 0:
                raise ZeroWeightError(f"binary on {{{i},{j}}} has weight 0")
            key = (i, j) if i < j else (j, i)
            if key in bdict:
                raise DuplicateScopeError(f"duplicate binary scope {{{key[0]},{key[1]}}}")
            bdict[key] = int(w)
        self.binaries = bdict

        ldict: dict[int, Label] = {}
        if labels is not None:
            if isinstance(labels, Mapping):
                labels = [(idx, k, i) for idx, (k, i) in labels.items()]
            seen: set[Label] = set()
            for idx, k, i in labels:
                self._check_index(idx)
                if k < 1 or not (1 <= i <= 6):
                    raise ParseError(f"label ({k},{i}) out of range: need k >= 1, 1 <= i <= 6")
                if idx in ldict:
                    raise DuplicateScopeError(f"variable {idx} labeled twice")
                if (k, i) in seen:
                    raise DuplicateScopeError(f"label ({k},{i}) used twice")
                ldict[idx] = (k, i)
                seen.add((k, i))
        self.labels = ldict
        self._index_by_label = {lab: idx for idx, lab in ldict.items()}

        nbrs: list[list[tuple[int, int]]] = [[] for _ in range(self.num_vars)]
        for (i, j), w in bdict.items():
            nbrs[i].append((j, w))
            nbrs[j].append((i, w))
        self.neighbors = tuple(tuple(sorted(v)) for v in nbrs)

    def _check_index(self, i: int) -> None:
        if not (0 <= i < self.num_vars):
            raise IndexOutOfRangeError(f"variable index {i} not in [0, {self.num_vars})")

    def check_assignment(self, x: Sequence[int]) -> None:
        if len(x) != self.num_vars:
            raise LengthMismatchError(
                f"assignment has length {len(x)}, instance has {self.num_vars} variables")
        for b in x:
            if b != 0 and b != 1:
                raise ValueError(f"assignment entries must be 0 or 1, got {b!r}")

    def fitness(self, x: Sequence[int]) -> int:
        self.check_assignment(x)
        f = self.constant
        for i, w in self.unaries.items():
            if x[i]:
                f += w
        for (i, j), w in self.binaries.items():
            if x[i] and x[j]:
                f += w
        return f

    def gradient(self, i: int, x: Sequence[int]) -> int:
        """Fitness change from setting variable i to 1 rather than 0 in
        background x.  Depends only on x restricted to i's neighbors."""
        self._check_index(i)
        self.check_assignment(x)
        g = self.unaries.get(i, 0)
        for j, w in self.neighbors[i]:
            if x[j]:
                g += w
        return g

    def improving_moves(self, x: Sequence[int]) -> list[tuple[int, int]]:
        """All (variable, gain) pairs whose flip strictly increases fitness,
        in ascending variable order.  Empty exactly at the local peaks."""
        self.check_assignment(x)
        out = []
        for i in range(self.num_vars):
            g = self.unaries.get(i, 0)
            for j, w in self.neighbors[i]:
                if x[j]:
                    g += w
            gain = -g if x[i] else g
            if gain > 0:
                out.append((i, gain))
        return out

    @property
    def fully_labeled(self) -> bool:
        return len(self.labels) == self.num_vars

    def index_of(self, label: Label) -> int:
        try:
            return self._index_by_label[label]
        except KeyError:
            raise IndexOutOfRangeError(f"no variable labeled {label!r}") from None

    def label_of(self, i: int) -> Label | None:
        self._check_index(i)
        return self.labels.get(i)

    def display_order(self) -> tuple[int, ...]:
        """Variable indices in assignment-string position order.

        Fully labeled instances order by decreasing gadget index k, then
        increasing position i; unlabeled (or partially labeled) instances use
        plain index order.
        """
        if self.fully_labeled:
            return tuple(sorted(range(self.num_vars),
                                key=lambda v: (-self.labels[v][0], self.labels[v][1])))
        return tuple(range(self.num_vars))

    def content_hash(self) -> str:
        """Stable hex digest of the instance content (used in trace metadata)."""
        return hashlib.sha256(to_text(self).encode()).hexdigest()[:16]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Instance):
            return NotImplemented
        return (self.num_vars == other.num_vars
                and self.constant == other.constant
                and self.unaries == other.unaries
                and self.binaries == other.binaries
                and self.labels == other.labels)

    def __repr__(self) -> str:
        return (f"Instance(num_vars={self.num_vars}, constant={self.constant}, "
                f"unaries={len(self.unaries)}, binaries={len(self.binaries)})")


def new_instance(num_vars, constant=0, unaries=(), binaries=(), labels=None) -> Instance:
    """Convenience alias for the Instance constructor."""
    return Instance(num_vars, constant, unaries, binaries, labels)


def flip(x: Sequence[int], i: int) -> Bits:
    """Copy of x with bit i flipped."""
    if not (0 <= i < len(x)):
        raise IndexOutOfRangeError(f"variable index {i} not in [0, {len(x)})")
    y = list(x)
    y[i] ^= 1
    return tuple(y)


def parse_bits(s: str) -> Bits:
    s = s.strip()
    if any(c not in "01" for c in s):
        raise ParseError(f"assignment string must consist of 0/1 characters: {s!r}")
    return tuple(int(c) for c in s)


def format_assignment(inst: Instance, x: Sequence[int], raw: bool = False) -> str:
    """Render x as a bit string, in display order unless raw (index order)."""
    inst.check_assignment(x)
    order = range(inst.num_vars) if raw else inst.display_order()
    return "".join(str(x[v]) for v in order)


def parse_assignment(inst: Instance, s: str, raw: bool = False) -> Bits:
    """Inverse of format_assignment."""
    bits = parse_bits(s)
    if len(bits) != inst.num_vars:
        raise LengthMismatchError(
            f"assignment string has length {len(bits)}, instance has {inst.num_vars} variables")
    order = range(inst.num_vars) if raw else inst.display_order()
    x = [0] * inst.num_vars
    for pos, v in enumerate(order):
        x[v] = bits[pos]
    return tuple(x)


def from_constraint_tables(
    num_vars: int,
    tables: Iterable[tuple[Sequence[int], Mapping[tuple, int]]],
    labels=None,
) -> Instance:
    """Build an instance from explicit constraint value tables.

    Each table is (scope, values) where scope lists 1 or 2 distinct variable
    indices and values maps every bit tuple over the scope (in scope order) to
    an integer.  Alike monomials are aggregated across tables: constants into
    the constant term, per-variable coefficients into unaries, and the product
    coefficient C(1,1) - C(0,1) - C(1,0) + C(0,0) into the binary weight.
    Coefficients that cancel to zero are dropped.  The returned instance's
    fitness equals the pointwise sum of the tables.
    """
    constant = 0
    unary: dict[int, int] = {}
    binary: dict[tuple[int, int], int] = {}
    for scope, values in tables:
        scope = tuple(scope)
        if len(scope) == 1:
            (i,) = scope
            if not (0 <= i < num_vars):
                raise IndexOutOfRangeError(f"variable index {i} not in [0, {num_vars})")
            try:
                c0, c1 = values[(0,)], values[(1,)]
            except KeyError as e:
                raise MalformedTableError(f"unary table on {scope} missing entry {e}") from None
            constant += c0
            unary[i] = unary.get(i, 0) + (c1 - c0)
        elif len(scope) == 2:
            i, j = scope
            if i == j:
                raise MalformedTableError(f"binary table scope pairs variable {i} with itself")
            for v in (i, j):
                if not (0 <= v < num_vars):
                    raise IndexOutOfRangeError(f"variable index {v} not in [0, {num_vars})")
            try:
                c00 = values[(0, 0)]
                c01 = values[(0, 1)]
                c10 = values[(1, 0)]
                c11 = values[(1, 1)]
            except KeyError as e:
                raise MalformedTableError(f"binary table on {scope} missing entry {e}") from None
            constant += c00
            unary[i] = unary.get(i, 0) + (c10 - c00)
            unary[j] = unary.get(j, 0) + (c01 - c00)
            key = (i, j) if i < j else (j, i)
            binary[key] = binary.get(key, 0) + (c11 - c01 - c10 + c00)
        else:
            raise MalformedTableError(f"scope must have 1 or 2 variables, got {scope}")
    return Instance(
        num_vars,
        constant,
        [(i, w) for i, w in sorted(unary.items()) if w != 0],
        [(i, j, w) for (i, j), w in sorted(binary.items()) if w != 0],
        labels,
    )


# ---------------------------------------------------------------------------
# Text format "vcsp-text v1": line oriented, '#' comments, whitespace tokens.
#
#   vcsp 1
#   n <num_vars>
#   label <index> <k> <i>     (optional, one per labeled variable)
#   c0 <weight>               (optional constant term)
#   u <index> <weight>
#   b <index> <index> <weight>
# ---------------------------------------------------------------------------

def to_text(inst: Instance) -> str:
    lines = ["vcsp 1", f"n {inst.num_vars}"]
    for idx in sorted(inst.labels):
        k, i = inst.labels[idx]
        lines.append(f"label {idx} {k} {i}")
    if inst.constant != 0:
        lines.append(f"c0 {inst.constant}")
    for i in sorted(inst.unaries):
        lines.append(f"u {i} {inst.unaries[i]}")
    for (i, j) in sorted(inst.binaries):
        lines.append(f"b {i} {j} {inst.binaries[(i, j)]}")
    return "\n".join(lines) + "\n"


def from_text(text: str) -> Instance:
    num_vars = None
    constant = 0
    saw_c0 = False
    unaries: list[tuple[int, int]] = []
    binaries: list[tuple[int, int, int]] = []
    labels: list[tuple[int, int, int]] = []
    saw_header = False

    def fail(lineno, msg):
        raise ParseError(f"line {lineno}: {msg}")

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        if not saw_header:
            if tok != ["vcsp", "1"]:
                fail(lineno, f"expected header 'vcsp 1', got {line!r}")
            saw_header = True
            continue
        kind = tok[0]
        try:
            args = [int(t) for t in tok[1:]]
        except ValueError:
            fail(lineno, f"non-integer token in {line!r}")
        if kind == "n":
            if num_vars is not None:
                fail(lineno, "duplicate 'n' line")
            if len(args) != 1:
                fail(lineno, "'n' takes one argument")
            num_vars = args[0]
            continue
        if num_vars is None:
            fail(lineno, f"'{kind}' line before 'n' line")
        if kind == "label":
            if len(args) != 3:
                fail(lineno, "'label' takes index, k, i")
            labels.append((args[0], args[1], args[2]))
        elif kind == "c0":
            if len(args) != 1:
                fail(lineno, "'c0' takes one argument")
            if saw_c0:
                fail(lineno, "duplicate 'c0' line")
            constant = args[0]
            saw_c0 = True
        elif kind == "u":
            if len(args) != 2:
                fail(lineno, "'u' takes index and weight")
            unaries.append((args[0], args[1]))
        elif kind == "b":
            if len(args) != 3:
                fail(lineno, "'b' takes two indices and a weight")
            binaries.append((args[0], args[1], args[2]))
        else:
            fail(lineno, f"unknown directive {kind!r}")
    if not saw_header:
        raise ParseError("empty input: missing 'vcsp 1' header")
    if num_vars is None:
        raise ParseError("missing 'n' line")
    return Instance(num_vars, constant, unaries, binaries, labels or None)


def write_instance(inst: Instance, path) -> None:
    with open(path, "w") as fh:
        fh.write(to_text(inst))


def read_instance(path) -> Instance:
    with open(path) as fh:
        return from_text(fh.read())
