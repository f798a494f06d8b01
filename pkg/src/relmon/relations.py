"""Exact binary relations on {0..n-1} as dense boolean matrices.

Everything here is immutable and pure: every operation returns a fresh
Relation.  The "restricted" operations (alternating chains, chain-length
search) require reflexive inputs; the full-algebra operations (union,
complement, residuals) do not.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

__all__ = [
    "Relation",
    "GraphOpSpec",
    "boolean_op",
    "constant",
    "alternating_chain",
    "min_length_to_total",
    "residuals",
    "graph_op_eval",
    "named_relation",
    "named_graph",
    "fence",
    "crown",
]


def _bool_compose(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    # boolean matrix product: (i,k) iff some j with a[i,j] and b[j,k]
    return (a.astype(np.uint8) @ b.astype(np.uint8)) > 0


class Relation:
    """A binary relation on {0..n-1}, stored as an n x n boolean matrix."""

    __slots__ = ("n", "matrix")

    def __init__(self, matrix):
        m = np.array(matrix, dtype=bool)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"relation matrix must be square, got shape {m.shape}")
        if m.shape[0] == 0:
            raise ValueError("empty index set is not allowed")
        m.setflags(write=False)
        object.__setattr__(self, "n", m.shape[0])
        object.__setattr__(self, "matrix", m)

    def __setattr__(self, name, value):
        raise AttributeError("Relation is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]],
                   reflexive: bool = True) -> "Relation":
        if n < 1:
            raise ValueError("n must be >= 1")
        m = np.eye(n, dtype=bool) if reflexive else np.zeros((n, n), dtype=bool)
        for i, j in pairs:
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"pair ({i},{j}) out of range for n={n}")
            m[i, j] = True
        return cls(m)

    @classmethod
    def diagonal(cls, n: int) -> "Relation":
        if n < 1:
            raise ValueError("n must be >= 1")
        return cls(np.eye(n, dtype=bool))

    @classmethod
    def total(cls, n: int) -> "Relation":
        if n < 1:
            raise ValueError("n must be >= 1")
        return cls(np.ones((n, n), dtype=bool))

    @classmethod
    def empty(cls, n: int) -> "Relation":
        if n < 1:
            raise ValueError("n must be >= 1")
        return cls(np.zeros((n, n), dtype=bool))

    # -- basics ------------------------------------------------------------

    def __contains__(self, pair) -> bool:
        i, j = pair
        return bool(self.matrix[i, j])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Relation):
            return NotImplemented
        return self.n == other.n and bool((self.matrix == other.matrix).all())

    def __hash__(self) -> int:
        return hash((self.n, self.matrix.tobytes()))

    def __le__(self, other: "Relation") -> bool:
        """Containment as sets of pairs."""
        self._require_same_size(other)
        return bool((~self.matrix | other.matrix).all())

    def __repr__(self) -> str:
        return f"Relation.from_pairs({self.n}, {self.true_pairs()}, reflexive=False)"

    def true_pairs(self) -> list[tuple[int, int]]:
        return [(int(i), int(j)) for i, j in zip(*np.nonzero(self.matrix))]

    def off_diagonal_pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i, j in self.true_pairs() if i != j]

    def is_reflexive(self) -> bool:
        return bool(self.matrix.diagonal().all())

    def is_total(self) -> bool:
        return bool(self.matrix.all())

    def _require_same_size(self, other: "Relation") -> None:
        if self.n != other.n:
            raise ValueError(f"size mismatch: {self.n} vs {other.n}")

    def _require_reflexive(self) -> None:
        if not self.is_reflexive():
            raise ValueError("operation requires a reflexive relation")

    # -- algebra -----------------------------------------------------------

    def compose(self, other: "Relation") -> "Relation":
        """(i,k) related iff some j with (i,j) in self and (j,k) in other."""
        self._require_same_size(other)
        return Relation(_bool_compose(self.matrix, other.matrix))

    def converse(self) -> "Relation":
        return Relation(self.matrix.T)

    def intersect(self, other: "Relation") -> "Relation":
        self._require_same_size(other)
        return Relation(self.matrix & other.matrix)

    def union(self, other: "Relation") -> "Relation":
        self._require_same_size(other)
        return Relation(self.matrix | other.matrix)

    def complement(self) -> "Relation":
        return Relation(~self.matrix)

    def classify(self) -> str:
        """One of 'not_reflexive', 'reflexive_only', 'preorder', 'equivalence'."""
        if not self.is_reflexive():
            return "not_reflexive"
        if not (self.compose(self) <= self):
            return "reflexive_only"
        if self == self.converse():
            return "equivalence"
        return "preorder"

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        refl = self.is_reflexive()
        pairs = self.off_diagonal_pairs() if refl else self.true_pairs()
        return {"n": self.n, "reflexive": refl,
                "pairs": [[i, j] for i, j in sorted(pairs)]}

    @classmethod
    def from_json(cls, data: dict) -> "Relation":
        try:
            n = int(data["n"])
            pairs = [(int(i), int(j)) for i, j in data["pairs"]]
            reflexive = bool(data.get("reflexive", True))
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed relation object: {exc}") from exc
        return cls.from_pairs(n, pairs, reflexive=reflexive)


# -- dispatch wrappers used by the CLI ------------------------------------

def boolean_op(kind: str, rho: Relation, sigma: Optional[Relation] = None) -> Relation:
    if kind == "complement":
        return rho.complement()
    if sigma is None:
        raise ValueError(f"boolean_op '{kind}' needs a second relation")
    if kind == "intersect":
        return rho.intersect(sigma)
    if kind == "union":
        return rho.union(sigma)
    raise ValueError(f"unknown boolean_op kind {kind!r}")


def constant(kind: str, n: int) -> Relation:
    if kind == "diagonal":
        return Relation.diagonal(n)
    if kind == "total":
        return Relation.total(n)
    if kind == "empty":
        return Relation.empty(n)
    raise ValueError(f"unknown constant kind {kind!r}")


# -- alternating chains ----------------------------------------------------

def _check_start(start: str) -> None:
    if start not in ("forward", "converse"):
        raise ValueError(f"start must be 'forward' or 'converse', got {start!r}")


def alternating_chain(rho: Relation, m: int, start: str = "forward") -> Relation:
    """The m-fold composite rho . rho^-1 . rho ... (or starting with rho^-1).

    Requires rho reflexive, which makes the chain monotone in m.
    """
    _check_start(start)
    rho._require_reflexive()
    if m < 1:
        raise ValueError("chain length must be >= 1")
    fwd, conv = rho, rho.converse()
    cur = fwd if start == "forward" else conv
    for step in range(2, m + 1):
        odd = step % 2 == 1
        factor = (fwd if odd else conv) if start == "forward" else (conv if odd else fwd)
        cur = cur.compose(factor)
    return cur


def min_length_to_total(rho: Relation, start: str = "forward") -> Optional[int]:
    """Least m with the alternating chain total, or None if it stabilizes below.

    Monotonicity (reflexive factors) makes consecutive-equality a sound
    stabilization test; the chain can grow at most n^2 - n times.
    """
    _check_start(start)
    rho._require_reflexive()
    fwd, conv = rho, rho.converse()
    cur = fwd if start == "forward" else conv
    m = 1
    while True:
        if cur.is_total():
            return m
        m += 1
        odd = m % 2 == 1
        factor = (fwd if odd else conv) if start == "forward" else (conv if odd else fwd)
        nxt = cur.compose(factor)
        if nxt == cur:
            return None
        cur = nxt


# -- residuals (full algebra, results may be non-reflexive) ----------------

def residuals(rho: Relation, sigma: Relation) -> tuple[Relation, Relation]:
    """Left and right residuals (rho/sigma, sigma\\rho).

    rho/sigma is the largest tau with tau.compose(sigma) <= rho;
    sigma\\rho is the largest tau with sigma.compose(tau) <= rho.
    """
    rho._require_same_size(sigma)
    not_r = ~rho.matrix
    # (i,j) in rho/sigma iff no k with sigma(j,k) and not rho(i,k)
    left = ~_bool_compose(not_r, sigma.matrix.T)
    # (i,j) in sigma\rho iff no k with sigma(k,i) and not rho(k,j)
    right = ~_bool_compose(sigma.matrix.T, not_r)
    return Relation(left), Relation(right)


# -- graph-defined operations ----------------------------------------------

@dataclass(frozen=True)
class GraphOpSpec:
    """An operation on relations given by a digraph with source/sink vertices.

    Vertices are 0..vertices-1; each edge (u, v, slot) constrains the pair of
    values assigned to u and v to lie in argument number `slot`.
    """

    vertices: int
    source: int
    sink: int
    edges: tuple[tuple[int, int, int], ...]
    arity: int

    def __post_init__(self):
        object.__setattr__(self, "edges",
                           tuple((int(u), int(v), int(s)) for u, v, s in self.edges))
        if self.vertices < 1:
            raise ValueError("graph needs at least one vertex")
        for v in (self.source, self.sink):
            if not 0 <= v < self.vertices:
                raise ValueError(f"distinguished vertex {v} out of range")
        for u, v, slot in self.edges:
            if not (0 <= u < self.vertices and 0 <= v < self.vertices):
                raise ValueError(f"edge ({u},{v}) references unknown vertex")
            if not 0 <= slot < self.arity:
                raise ValueError(f"edge slot {slot} >= arity {self.arity}")

    def to_json(self) -> dict:
        return {"vertices": self.vertices, "source": self.source,
                "sink": self.sink, "edges": [list(e) for e in self.edges],
                "arity": self.arity}

    @classmethod
    def from_json(cls, data: dict) -> "GraphOpSpec":
        try:
            return cls(vertices=int(data["vertices"]), source=int(data["source"]),
                       sink=int(data["sink"]),
                       edges=tuple(tuple(e) for e in data["edges"]),
                       arity=int(data["arity"]))
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed graph spec: {exc}") from exc


def graph_op_eval(spec: GraphOpSpec, args: Sequence[Relation]) -> Relation:
    """Evaluate a graph-defined operation by exhaustive vertex assignment."""
    if len(args) != spec.arity:
        raise ValueError(f"expected {spec.arity} arguments, got {len(args)}")
    if not args and spec.arity == 0:
        raise ValueError("nullary graph op needs an explicit index-set size; "
                         "use graph_op_eval_sized")
    n = args[0].n
    for a in args:
        if a.n != n:
            raise ValueError("argument size mismatch")
    return graph_op_eval_sized(spec, args, n)


def graph_op_eval_sized(spec: GraphOpSpec, args: Sequence[Relation], n: int) -> Relation:
    if len(args) != spec.arity:
        raise ValueError(f"expected {spec.arity} arguments, got {len(args)}")
    for a in args:
        if a.n != n:
            raise ValueError("argument size mismatch")
    inner = [v for v in range(spec.vertices) if v not in (spec.source, spec.sink)]
    out = np.zeros((n, n), dtype=bool)
    val = [0] * spec.vertices
    for i in range(n):
        val[spec.source] = i
        for j in range(n):
            if spec.source == spec.sink and i != j:
                continue
            val[spec.sink] = j
            found = False
            for assign in itertools.product(range(n), repeat=len(inner)):
                for v, x in zip(inner, assign):
                    val[v] = x
                if all(args[slot].matrix[val[u], val[v]] for u, v, slot in spec.edges):
                    found = True
                    break
            out[i, j] = found
    return Relation(out)


_NAMED_GRAPHS = {
    # the five basic operations as labeled digraphs, plus the 5-ary diamond
    "intersect": lambda: GraphOpSpec(2, 0, 1, ((0, 1, 0), (0, 1, 1)), 2),
    "compose": lambda: GraphOpSpec(3, 0, 2, ((0, 1, 0), (1, 2, 1)), 2),
    "converse": lambda: GraphOpSpec(2, 0, 1, ((1, 0, 0),), 1),
    "diagonal": lambda: GraphOpSpec(1, 0, 0, (), 0),
    "total": lambda: GraphOpSpec(2, 0, 1, (), 0),
    # diamond: source->k->sink, source->l->sink, k->l; args (r1, s1, r2, s2, t)
    "diamond": lambda: GraphOpSpec(4, 0, 3, ((0, 1, 0), (1, 3, 1),
                                             (0, 2, 2), (2, 3, 3), (1, 2, 4)), 5),
}


def named_graph(name: str) -> GraphOpSpec:
    try:
        return _NAMED_GRAPHS[name]()
    except KeyError:
        raise ValueError(f"unknown graph name {name!r}; "
                         f"choices: {sorted(_NAMED_GRAPHS)}") from None


# -- named relations --------------------------------------------------------

def fence(n: int) -> Relation:
    """Zigzag partial order on n elements (0-indexed).

    Odd 0-based indices sit below both in-range neighbors; everything else
    is related only to itself.  fence(3) has off-diagonal pairs (1,0),(1,2).
    """
    if n < 2:
        raise ValueError("fence needs n >= 2")
    pairs = []
    for i in range(1, n, 2):
        pairs.append((i, i - 1))
        if i + 1 < n:
            pairs.append((i, i + 1))
    return Relation.from_pairs(n, pairs)


def crown(n: int) -> Relation:
    """Cyclic zigzag order on Z/2(n-1)Z: even residues below both neighbors."""
    if n < 3:
        raise ValueError("crown needs n >= 3")
    size = 2 * (n - 1)
    pairs = []
    for e in range(0, size, 2):
        pairs.append((e, (e - 1) % size))
        pairs.append((e, (e + 1) % size))
    return Relation.from_pairs(size, pairs)


def _chain_order(n: int, sequence: Sequence[int]) -> Relation:
    # reflexive-transitive closure of consecutive steps in `sequence`
    m = np.eye(n, dtype=bool)
    for a, b in zip(sequence, sequence[1:]):
        m[a, b] = True
    for _ in range(n):
        m = m | _bool_compose(m, m)
    return Relation(m)


def _k135(which: int) -> Relation:
    # three chain orders on 6 elements (0-indexed); each leaves one element
    # incomparable to everything else
    starts = {1: 0, 3: 2, 5: 4}
    s = starts[which]
    return _chain_order(6, [(s + d) % 6 for d in range(5)])


def named_relation(name: str, n: Optional[int] = None) -> Relation:
    """Look up a named relation: fence(n), crown(n), k135_1, k135_3, k135_5."""
    if name == "fence":
        if n is None:
            raise ValueError("fence needs n")
        return fence(n)
    if name == "crown":
        if n is None:
            raise ValueError("crown needs n")
        return crown(n)
    if name in ("k135_1", "k135_3", "k135_5"):
        return _k135(int(name[-1]))
    raise ValueError(f"unknown relation name {name!r}")
