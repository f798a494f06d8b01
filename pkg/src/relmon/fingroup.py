"""Finite groups as Cayley tables, and algebra on their identity-containing subsets.

Element ids are dense integers 0..order-1 with the identity fixed at id 0.
Subsets form an algebra under setwise product, elementwise inverse and
intersection; the embedding into relations sends a subset S to the relation
"g is related to h iff g^-1 h is in S" on the element ids (or on the left
cosets of a subgroup, for bi-invariant subsets).
"""

from __future__ import annotations

import itertools
from typing import Optional, Sequence

import numpy as np

from .relations import GraphOpSpec, Relation

__all__ = [
    "FiniteGroup",
    "GroupSubset",
    "Subgroup",
    "group_make",
    "subset_op",
    "cayley_embed",
    "coset_embed",
    "is_bi_invariant",
    "graph_op_group",
    "submonoid_closure",
    "subgroups",
]


class FiniteGroup:
    """A group given by its full composition table; identity is element 0."""

    __slots__ = ("order", "table", "_inverse")

    def __init__(self, table):
        t = np.array(table, dtype=np.int64)
        if t.ndim != 2 or t.shape[0] != t.shape[1]:
            raise ValueError("composition table must be square")
        n = t.shape[0]
        if n < 1:
            raise ValueError("group must be nonempty")
        if t.min() < 0 or t.max() >= n:
            raise ValueError("table entries must be element ids")
        ids = np.arange(n)
        if not ((t[0] == ids).all() and (t[:, 0] == ids).all()):
            raise ValueError("element 0 must be the identity")
        if (np.sort(t, axis=1) != ids[None, :]).any():
            raise ValueError("table is not a Latin square (bad row)")
        if (np.sort(t, axis=0) != ids[:, None]).any():
            raise ValueError("table is not a Latin square (bad column)")
        if (t[t, :] != t[:, t]).any():
            raise ValueError("table is not associative")
        inv = np.empty(n, dtype=np.int64)
        for a in range(n):
            inv[a] = int(np.nonzero(t[a] == 0)[0][0])
        t.setflags(write=False)
        inv.setflags(write=False)
        object.__setattr__(self, "order", n)
        object.__setattr__(self, "table", t)
        object.__setattr__(self, "_inverse", inv)

    def __setattr__(self, name, value):
        raise AttributeError("FiniteGroup is immutable")

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self._inverse[a])

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return self.order == other.order and bool((self.table == other.table).all())

    def __hash__(self) -> int:
        return hash((self.order, self.table.tobytes()))

    def __repr__(self) -> str:
        return f"FiniteGroup(order={self.order})"

    def is_abelian(self) -> bool:
        return bool((self.table == self.table.T).all())

    # -- constructors ---------------------------------------------------------

    @classmethod
    def cyclic(cls, n: int) -> "FiniteGroup":
        if n < 1:
            raise ValueError("n must be >= 1")
        ids = np.arange(n)
        return cls((ids[:, None] + ids[None, :]) % n)

    @classmethod
    def symmetric(cls, n: int) -> "FiniteGroup":
        """The permutations of n letters; capped at n <= 5 (order 120)."""
        if not 1 <= n <= 5:
            raise ValueError("symmetric(n) supports 1 <= n <= 5")
        perms = sorted(itertools.permutations(range(n)))
        index = {p: i for i, p in enumerate(perms)}
        order = len(perms)
        table = np.empty((order, order), dtype=np.int64)
        for a, p in enumerate(perms):
            for b, q in enumerate(perms):
                table[a, b] = index[tuple(q[p[x]] for x in range(n))]
        return cls(table)

    # -- serialization ----------------------------------------------------------

    def to_json(self) -> dict:
        return {"order": self.order, "table": self.table.tolist()}

    @classmethod
    def from_json(cls, data: dict) -> "FiniteGroup":
        try:
            return cls(data["table"])
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed group object: {exc}") from exc


def group_make(kind: str, n: int = 1, table=None) -> FiniteGroup:
    if kind == "cyclic":
        return FiniteGroup.cyclic(n)
    if kind == "symmetric":
        return FiniteGroup.symmetric(n)
    if kind == "from_table":
        if table is None:
            raise ValueError("from_table needs a table")
        return FiniteGroup(table)
    raise ValueError(f"unknown group kind {kind!r}")


class GroupSubset:
    """A subset of a group's elements that contains the identity."""

    __slots__ = ("group", "members")

    def __init__(self, group: FiniteGroup, members):
        members = frozenset(int(m) for m in members)
        if 0 not in members:
            raise ValueError("subset must contain the identity")
        for m in members:
            if not 0 <= m < group.order:
                raise ValueError(f"element id {m} out of range")
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "members", members)

    def __setattr__(self, name, value):
        raise AttributeError("GroupSubset is immutable")

    def __contains__(self, elem: int) -> bool:
        return elem in self.members

    def __len__(self) -> int:
        return len(self.members)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupSubset):
            return NotImplemented
        return self.group == other.group and self.members == other.members

    def __hash__(self) -> int:
        return hash((self.group, self.members))

    def __repr__(self) -> str:
        return f"GroupSubset({sorted(self.members)})"

    def _require_same_group(self, other: "GroupSubset") -> None:
        if self.group != other.group:
            raise ValueError("subsets live in different groups")

    def product(self, other: "GroupSubset") -> "GroupSubset":
        self._require_same_group(other)
        g = self.group
        return GroupSubset(g, {g.mul(a, b) for a in self.members for b in other.members})

    def inverse(self) -> "GroupSubset":
        g = self.group
        return GroupSubset(g, {g.inv(a) for a in self.members})

    def intersect(self, other: "GroupSubset") -> "GroupSubset":
        self._require_same_group(other)
        return GroupSubset(self.group, self.members & other.members)

    def is_subgroup(self) -> bool:
        g = self.group
        return all(g.mul(a, b) in self.members
                   for a in self.members for b in self.members) \
            and all(g.inv(a) in self.members for a in self.members)

    def to_json(self) -> list[int]:
        return sorted(self.members)


class Subgroup(GroupSubset):
    """A GroupSubset verified closed under product and inverse."""

    def __init__(self, group: FiniteGroup, members):
        super().__init__(group, members)
        if not self.is_subgroup():
            raise ValueError("subset is not closed under product and inverse")

    def left_cosets(self) -> list[tuple[int, ...]]:
        """Left cosets gH, each sorted, the list ordered by least member."""
        g = self.group
        seen = set()
        cosets = []
        for a in range(g.order):
            if a in seen:
                continue
            coset = tuple(sorted(g.mul(a, h) for h in self.members))
            seen.update(coset)
            cosets.append(coset)
        return sorted(cosets, key=lambda c: c[0])


def subset_op(kind: str, s: GroupSubset,
              t: Optional[GroupSubset] = None) -> GroupSubset:
    if kind == "inverse":
        return s.inverse()
    if kind == "total":
        return GroupSubset(s.group, range(s.group.order))
    if t is None:
        raise ValueError(f"subset_op '{kind}' needs a second subset")
    if kind == "product":
        return s.product(t)
    if kind == "intersect":
        return s.intersect(t)
    raise ValueError(f"unknown subset_op kind {kind!r}")


def cayley_embed(group: FiniteGroup, s: GroupSubset) -> Relation:
    """The relation on element ids with (g,h) related iff g^-1 h is in s."""
    if s.group != group:
        raise ValueError("subset belongs to a different group")
    n = group.order
    m = np.zeros((n, n), dtype=bool)
    for g in range(n):
        for x in s.members:
            m[g, group.mul(g, x)] = True
    return Relation(m)


def is_bi_invariant(s: GroupSubset, h: Subgroup) -> bool:
    """True iff s equals HsH."""
    return h.product(s).product(h) == s


def coset_embed(group: FiniteGroup, h: Subgroup, s: GroupSubset) -> Relation:
    """The relation on left cosets of h with (gH, gsH) for all g and s.

    Requires s to be bi-invariant under h (s == HsH); cosets are indexed in
    order of their least element id.
    """
    if h.group != group or s.group != group:
        raise ValueError("subgroup/subset belong to a different group")
    if not is_bi_invariant(s, h):
        closure = h.product(s).product(h)
        witness = min(closure.members - s.members)
        raise ValueError(f"subset is not bi-invariant: element {witness} "
                         f"is in HSH but not in S")
    cosets = h.left_cosets()
    index = {}
    for ci, coset in enumerate(cosets):
        for g in coset:
            index[g] = ci
    n = len(cosets)
    m = np.zeros((n, n), dtype=bool)
    for g in range(group.order):
        for x in s.members:
            m[index[g], index[group.mul(g, x)]] = True
    return Relation(m)


def graph_op_group(spec: GraphOpSpec, args: Sequence[GroupSubset],
                   group: Optional[FiniteGroup] = None) -> GroupSubset:
    """Evaluate a graph-defined operation on group subsets by brute force.

    f is in the result iff the graph's vertices can be assigned group
    elements with source -> identity, sink -> f, and every edge (u,v,slot)
    satisfying val(u)^-1 val(v) in args[slot].
    """
    if len(args) != spec.arity:
        raise ValueError(f"expected {spec.arity} arguments, got {len(args)}")
    if group is None:
        if not args:
            raise ValueError("nullary graph op needs an explicit group")
        group = args[0].group
    for a in args:
        if a.group != group:
            raise ValueError("argument group mismatch")
    n = group.order
    inner = [v for v in range(spec.vertices) if v not in (spec.source, spec.sink)]
    members = set()
    val = [0] * spec.vertices
    for f in range(n):
        if spec.source == spec.sink and f != 0:
            continue
        val[spec.source] = 0
        val[spec.sink] = f
        for assign in itertools.product(range(n), repeat=len(inner)):
            for v, x in zip(inner, assign):
                val[v] = x
            if all(group.mul(group.inv(val[u]), val[v]) in args[slot].members
                   for u, v, slot in spec.edges):
                members.add(f)
                break
    return GroupSubset(group, members)


def submonoid_closure(s: GroupSubset) -> GroupSubset:
    """Least product-closed superset of s; a subgroup, the group being finite."""
    g = s.group
    members = set(s.members)
    frontier = set(members)
    while frontier:
        new = {g.mul(a, b) for a in members for b in frontier} - members
        new |= {g.mul(b, a) for a in members for b in frontier} - members
        members |= new
        frontier = new
    return GroupSubset(g, members)


def subgroups(group: FiniteGroup) -> list[Subgroup]:
    """All subgroups, by exhaustive search; meant for small orders."""
    out = []
    rest = list(range(1, group.order))
    for r in range(len(rest) + 1):
        for extra in itertools.combinations(rest, r):
            candidate = GroupSubset(group, (0,) + extra)
            if candidate.is_subgroup():
                out.append(Subgroup(group, candidate.members))
    return out
