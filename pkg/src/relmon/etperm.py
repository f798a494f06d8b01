"""Eventually-translation permutations of {0..n-1} x Z.

A value acts on points (block, offset).  Away from a finite seam it
translates each block's upper tail (offset >= 0) by a per-block amount and
the lower tail (offset < 0) by another; finitely many exceptional points may
go anywhere, including into other blocks.  The canonical form stores only
the exceptions whose image differs from the tail default, which makes
structural equality coincide with pointwise equality.

The bookkeeping identity that makes these maps bijections is the flow law:
for every block, top_shift - bottom_shift equals the number of exceptional
points arriving in the block minus the number leaving it.
"""

from __future__ import annotations

import random
from typing import Mapping, Optional

import numpy as np

from .relations import Relation, alternating_chain

__all__ = [
    "Point",
    "EventualPermutation",
    "identity",
    "translation",
    "swap",
    "mover",
    "transfer",
    "factorize",
    "min_product_length",
    "sample",
    "distinguishing_witness",
]

Point = tuple[int, int]  # (block, offset)


def _default_image(p: Point, top, bottom) -> Point:
    i, k = p
    return (i, k + top[i]) if k >= 0 else (i, k + bottom[i])


class EventualPermutation:
    """An exact bijection of {0..n-1} x Z in canonical eventually-translation form."""

    __slots__ = ("n", "top", "bottom", "exceptions")

    def __init__(self, n: int, top, bottom,
                 exceptions: Mapping[Point, Point] = (), check: bool = True):
        top = tuple(int(s) for s in top)
        bottom = tuple(int(t) for t in bottom)
        exc = {(int(i), int(k)): (int(j), int(l))
               for (i, k), (j, l) in dict(exceptions).items()}
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "top", top)
        object.__setattr__(self, "bottom", bottom)
        object.__setattr__(self, "exceptions", exc)
        if check:
            reason = self.invalidity_reason()
            if reason is not None:
                raise ValueError(f"not a valid eventually-translation bijection: {reason}")

    def __setattr__(self, name, value):
        raise AttributeError("EventualPermutation is immutable")

    # -- validity ------------------------------------------------------------

    def invalidity_reason(self) -> Optional[str]:
        """None if this is a canonical bijection, else a human-readable reason."""
        n, top, bottom, exc = self.n, self.top, self.bottom, self.exceptions
        if n < 1:
            return "index-set size must be >= 1"
        if len(top) != n or len(bottom) != n:
            return "shift vectors must have length n"
        for p, q in exc.items():
            for (i, _) in (p, q):
                if not 0 <= i < n:
                    return f"block {i} out of range"
        images = list(exc.values())
        if len(set(images)) != len(images):
            seen = set()
            for q in images:
                if q in seen:
                    return f"collision: two points map to {q}"
                seen.add(q)
        for p, q in exc.items():
            if q == _default_image(p, top, bottom):
                return f"redundant exception entry at {p}"
        inflow = [0] * n
        for p, q in exc.items():
            inflow[p[0]] -= 1
            inflow[q[0]] += 1
        for i in range(n):
            if top[i] - bottom[i] != inflow[i]:
                return (f"flow law violated in block {i}: "
                        f"top-bottom={top[i] - bottom[i]}, inflow={inflow[i]}")
        # exact once-coverage of a window wide enough that outside it only a
        # single tail default can reach each point
        bound = self._coverage_bound()
        sources = set(exc)
        image_count: dict[Point, int] = {}
        for q in exc.values():
            image_count[q] = image_count.get(q, 0) + 1
        for i in range(n):
            for k in range(-bound, bound + 1):
                cnt = image_count.get((i, k), 0)
                ks = k - top[i]
                if ks >= 0 and (i, ks) not in sources:
                    cnt += 1
                kb = k - bottom[i]
                if kb < 0 and (i, kb) not in sources:
                    cnt += 1
                if cnt == 0:
                    return f"point ({i},{k}) uncovered"
                if cnt > 1:
                    return f"point ({i},{k}) covered {cnt} times"
        return None

    def is_valid(self) -> bool:
        return self.invalidity_reason() is None

    def _coverage_bound(self) -> int:
        offs = [abs(k) for (_, k) in self.exceptions] + \
               [abs(k) for (_, k) in self.exceptions.values()]
        shift = max([abs(s) for s in self.top + self.bottom] or [0])
        return (max(offs) if offs else 0) + shift + 1

    # -- basics ---------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, EventualPermutation):
            return NotImplemented
        return (self.n == other.n and self.top == other.top
                and self.bottom == other.bottom
                and self.exceptions == other.exceptions)

    def __hash__(self) -> int:
        return hash((self.n, self.top, self.bottom,
                     frozenset(self.exceptions.items())))

    def __repr__(self) -> str:
        return (f"EventualPermutation({self.n}, top={list(self.top)}, "
                f"bottom={list(self.bottom)}, exceptions={self.exceptions})")

    def apply(self, p: Point) -> Point:
        i, k = p
        if not 0 <= i < self.n:
            raise ValueError(f"block {i} out of range for n={self.n}")
        return self.exceptions.get((i, k)) or _default_image((i, k), self.top, self.bottom)

    __call__ = apply

    # -- group structure --------------------------------------------------------

    def compose(self, other: "EventualPermutation") -> "EventualPermutation":
        """Apply self, then other (points are written left of permutations)."""
        if self.n != other.n:
            raise ValueError(f"size mismatch: {self.n} vs {other.n}")
        n = self.n
        top = tuple(self.top[i] + other.top[i] for i in range(n))
        bottom = tuple(self.bottom[i] + other.bottom[i] for i in range(n))
        bound = self._coverage_bound() + other._coverage_bound() + 1
        mapping = {}
        for i in range(n):
            for k in range(-bound, bound + 1):
                q = other.apply(self.apply((i, k)))
                if q != _default_image((i, k), top, bottom):
                    mapping[(i, k)] = q
        return EventualPermutation(n, top, bottom, mapping)

    def invert(self) -> "EventualPermutation":
        top = tuple(-s for s in self.top)
        bottom = tuple(-t for t in self.bottom)
        bound = 2 * self._coverage_bound() + 1
        mapping = {}
        for i in range(self.n):
            for k in range(-bound, bound + 1):
                q = self.apply((i, k))
                if _default_image(q, top, bottom) != (i, k):
                    mapping[q] = (i, k)
        return EventualPermutation(self.n, top, bottom, mapping)

    def block_relation(self) -> Relation:
        """The reflexive relation of block moves this permutation performs."""
        pairs = [(p[0], q[0]) for p, q in self.exceptions.items() if p[0] != q[0]]
        return Relation.from_pairs(self.n, pairs)

    def respects(self, rho: Relation) -> bool:
        """True iff every cross-block move goes along a pair of rho."""
        if not rho.is_reflexive():
            raise ValueError("membership test needs a reflexive relation")
        if rho.n != self.n:
            raise ValueError(f"size mismatch: {self.n} vs {rho.n}")
        return all(rho.matrix[p[0], q[0]] for p, q in self.exceptions.items())

    # -- serialization ------------------------------------------------------------

    def to_json(self) -> dict:
        return {"n": self.n, "top": list(self.top), "bottom": list(self.bottom),
                "exceptions": [[list(p), list(q)]
                               for p, q in sorted(self.exceptions.items())]}

    @classmethod
    def from_json(cls, data: dict) -> "EventualPermutation":
        try:
            exc = {tuple(p): tuple(q) for p, q in data["exceptions"]}
            return cls(int(data["n"]), data["top"], data["bottom"], exc)
        except (KeyError, TypeError) as exc_info:
            raise ValueError(f"malformed permutation object: {exc_info}") from exc_info


def _build(n: int, top, bottom, mapping: Mapping[Point, Point]) -> EventualPermutation:
    # drop entries that agree with the tail default, then construct
    top = tuple(top)
    bottom = tuple(bottom)
    canon = {p: q for p, q in mapping.items() if q != _default_image(p, top, bottom)}
    return EventualPermutation(n, top, bottom, canon)


# -- constructors ---------------------------------------------------------------

def identity(n: int) -> EventualPermutation:
    if n < 1:
        raise ValueError("n must be >= 1")
    return EventualPermutation(n, (0,) * n, (0,) * n, {})


def translation(n: int, i: int, step: int = 1) -> EventualPermutation:
    """Shift every offset of block i by `step`; all other points fixed."""
    if not 0 <= i < n:
        raise ValueError(f"block {i} out of range for n={n}")
    top = [0] * n
    bottom = [0] * n
    top[i] = bottom[i] = step
    return EventualPermutation(n, top, bottom, {})


def swap(n: int, i: int) -> EventualPermutation:
    """Interchange offsets 0 and 1 of block i; all other points fixed."""
    if not 0 <= i < n:
        raise ValueError(f"block {i} out of range for n={n}")
    return EventualPermutation(n, (0,) * n, (0,) * n,
                               {(i, 0): (i, 1), (i, 1): (i, 0)})


def mover(n: int, i: int, j: int) -> EventualPermutation:
    """Move offset 0 of block i to offset 0 of block j.

    Block i's upper tail closes the gap (shift -1), block j's upper tail
    opens one (shift +1); all negative offsets stay fixed.
    """
    if i == j:
        raise ValueError("mover needs two distinct blocks")
    for b in (i, j):
        if not 0 <= b < n:
            raise ValueError(f"block {b} out of range for n={n}")
    top = [0] * n
    top[i] = -1
    top[j] = 1
    return EventualPermutation(n, top, (0,) * n, {(i, 0): (j, 0)})


def transfer(n: int, moves: Mapping[Point, Point]) -> EventualPermutation:
    """A permutation realizing the given moves and keeping all other points home.

    Per-block flow imbalance is absorbed by shifting the block's upper tail;
    the construction is deterministic: the remaining points of each block are
    matched to the remaining slots in offset order.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    moves = {(int(i), int(k)): (int(j), int(l))
             for (i, k), (j, l) in dict(moves).items()}
    if len(set(moves.values())) != len(moves):
        raise ValueError("moves must be injective")
    for p, q in moves.items():
        for (b, _) in (p, q):
            if not 0 <= b < n:
                raise ValueError(f"block {b} out of range for n={n}")
    src_offsets = [[] for _ in range(n)]
    tgt_offsets = [[] for _ in range(n)]
    for (i, k), (j, l) in moves.items():
        src_offsets[i].append(k)
        tgt_offsets[j].append(l)
    top = [len(tgt_offsets[i]) - len(src_offsets[i]) for i in range(n)]
    mapping = dict(moves)
    for i in range(n):
        touched = src_offsets[i] + tgt_offsets[i]
        if not touched:
            continue
        # wide enough that every touched offset falls inside both matching
        # ranges, including when the block's net shift is negative
        window = max(abs(k) for k in touched) + 1 + max(0, -top[i])
        srcs = set(src_offsets[i])
        tgts = set(tgt_offsets[i])
        free_src = [k for k in range(-window, window) if k not in srcs]
        free_tgt = [k for k in range(-window, window + top[i]) if k not in tgts]
        for k, l in zip(free_src, free_tgt):
            mapping[(i, k)] = (i, l)
    return _build(n, top, (0,) * n, mapping)


# -- the constructive factorization -----------------------------------------------

def factorize(f: EventualPermutation, rho: Relation,
              sigma: Relation) -> tuple[EventualPermutation, EventualPermutation]:
    """Split f into g.h with g confined to rho and h confined to sigma.

    Requires f's block relation to sit inside rho.compose(sigma).  Each
    cross-block point is routed through the least admissible middle block,
    landing on a fresh offset beyond f's seam window; h is then forced as
    g^-1 . f.
    """
    for r in (rho, sigma):
        if not r.is_reflexive():
            raise ValueError("factorize needs reflexive relations")
    composite = rho.compose(sigma)
    br = f.block_relation()
    if not br <= composite:
        bad = next((i, j) for (i, j) in br.true_pairs() if (i, j) not in composite)
        raise ValueError(f"permutation moves block {bad[0]} to {bad[1]}, "
                         f"not allowed by the composite relation")
    cross = sorted(p for p, q in f.exceptions.items() if q[0] != p[0])
    base = f._coverage_bound() + 1
    next_offset = {}
    moves = {}
    for p in cross:
        i = p[0]
        j_target = f.exceptions[p][0]
        middle = next(j for j in range(f.n)
                      if (i, j) in rho and (j, j_target) in sigma)
        off = next_offset.get(middle, base)
        next_offset[middle] = off + 1
        moves[p] = (middle, off)
    g = transfer(f.n, moves)
    h = g.invert().compose(f)
    return g, h


def min_product_length(f: EventualPermutation, rho: Relation,
                       start: str = "forward") -> Optional[int]:
    """Least m with f's block relation inside the m-step alternating chain."""
    br = f.block_relation()
    prev = None
    m = 1
    while True:
        cur = alternating_chain(rho, m, start)
        if br <= cur:
            return m
        if cur == prev:
            return None
        prev = cur
        m += 1


# -- randomized instances ------------------------------------------------------------

def _random_intra(rng: random.Random, n: int, length: int) -> EventualPermutation:
    f = identity(n)
    for _ in range(length):
        i = rng.randrange(n)
        kind = rng.randrange(3)
        if kind == 0:
            g = translation(n, i, 1)
        elif kind == 1:
            g = translation(n, i, -1)
        else:
            g = swap(n, i)
        f = f.compose(g)
    return f


def sample(rho: Relation, seed: int, budget: int = 4) -> EventualPermutation:
    """A pseudorandom permutation whose block moves respect rho.

    One multi-move transfer along pairs of rho, sandwiched between random
    intra-block rearrangements, so the result respects rho even when rho is
    not transitive.  Deterministic in the seed.
    """
    if not rho.is_reflexive():
        raise ValueError("sample needs a reflexive relation")
    rng = random.Random(seed)
    n = rho.n
    moves = {}
    used_targets = set()
    for _ in range(rng.randint(0, 3)):
        i = rng.randrange(n)
        k = rng.randint(-3, 3)
        if (i, k) in moves:
            continue
        choices = [j for j in range(n) if (i, j) in rho]
        j = rng.choice(choices)
        l = rng.randint(-3, 3)
        if (j, l) in used_targets:
            continue
        moves[(i, k)] = (j, l)
        used_targets.add((j, l))
    middle = transfer(n, moves)
    pre = _random_intra(rng, n, rng.randint(0, budget))
    post = _random_intra(rng, n, rng.randint(0, budget))
    return pre.compose(middle).compose(post)


def distinguishing_witness(rho: Relation, sigma: Relation) -> EventualPermutation:
    """A permutation lying in exactly one of the two block-move classes."""
    if rho.n != sigma.n:
        raise ValueError(f"size mismatch: {rho.n} vs {sigma.n}")
    for r in (rho, sigma):
        if not r.is_reflexive():
            raise ValueError("distinguishing_witness needs reflexive relations")
    if rho == sigma:
        raise ValueError("relations are equal; nothing separates them")
    only_rho = rho.matrix & ~sigma.matrix
    diff = only_rho if only_rho.any() else sigma.matrix & ~rho.matrix
    i, j = min((int(a), int(b)) for a, b in zip(*np.nonzero(diff)))
    return transfer(rho.n, {(i, 0): (j, 0)})
