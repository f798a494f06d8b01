"""Freely reduced words, one-generator double cosets, and the intersection
failure of the double-coset relation map.

Words live in the free group on a finite alphabet.  For a single generator h,
two words lie in the same <h>-double coset iff stripping all boundary powers
of h leaves equal words; infinite unions of double cosets are therefore
representable by finite sets of stripped normal forms.
"""

from __future__ import annotations

import re
from typing import Iterable

__all__ = [
    "Word",
    "word_multiply",
    "double_coset_normal",
    "CosetUnion",
    "verify_counterexample",
]

DEFAULT_ALPHABET = ("x", "y", "z")

_TOKEN = re.compile(r"^([A-Za-z]+)(?:\^(-?\d+))?$")


class Word:
    """A freely reduced word: a sequence of (symbol, +1|-1) letters."""

    __slots__ = ("alphabet", "letters")

    def __init__(self, letters: Iterable[tuple[str, int]] = (),
                 alphabet: tuple[str, ...] = DEFAULT_ALPHABET):
        alphabet = tuple(alphabet)
        reduced: list[tuple[str, int]] = []
        for sym, sign in letters:
            if sym not in alphabet:
                raise ValueError(f"letter {sym!r} not in alphabet {alphabet}")
            if sign not in (1, -1):
                raise ValueError("letter signs must be +1 or -1")
            if reduced and reduced[-1] == (sym, -sign):
                reduced.pop()
            else:
                reduced.append((sym, sign))
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "letters", tuple(reduced))

    def __setattr__(self, name, value):
        raise AttributeError("Word is immutable")

    @classmethod
    def parse(cls, text: str,
              alphabet: tuple[str, ...] = DEFAULT_ALPHABET) -> "Word":
        """Parse whitespace-separated letters with optional ^k exponents."""
        letters = []
        for tok in text.split():
            m = _TOKEN.match(tok)
            if m is None:
                raise ValueError(f"cannot parse word token {tok!r}")
            sym, exp = m.group(1), int(m.group(2) or 1)
            sign = 1 if exp > 0 else -1
            letters.extend([(sym, sign)] * abs(exp))
        return cls(letters, alphabet)

    def __mul__(self, other: "Word") -> "Word":
        if self.alphabet != other.alphabet:
            raise ValueError("alphabet mismatch")
        return Word(self.letters + other.letters, self.alphabet)

    def inverse(self) -> "Word":
        return Word([(sym, -sign) for sym, sign in reversed(self.letters)],
                    self.alphabet)

    def is_identity(self) -> bool:
        return not self.letters

    def __eq__(self, other) -> bool:
        if not isinstance(other, Word):
            return NotImplemented
        return self.alphabet == other.alphabet and self.letters == other.letters

    def __hash__(self) -> int:
        return hash((self.alphabet, self.letters))

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return " ".join(sym if sign == 1 else f"{sym}^-1"
                        for sym, sign in self.letters)

    __repr__ = __str__


def word_multiply(u: Word, v: Word) -> Word:
    return u * v


def double_coset_normal(w: Word, h: str) -> Word:
    """Strip all leading and trailing powers of generator h.

    Words in the same <h>-double coset have the same stripped form; pure
    powers of h (the subgroup itself) normalize to the empty word.
    """
    if h not in w.alphabet:
        raise ValueError(f"generator {h!r} not in alphabet {w.alphabet}")
    letters = list(w.letters)
    while letters and letters[0][0] == h:
        letters.pop(0)
    while letters and letters[-1][0] == h:
        letters.pop()
    return Word(letters, w.alphabet)


class CosetUnion:
    """A union of <h>-double cosets, stored as the set of stripped normal forms.

    The empty normal form stands for the subgroup <h> itself.
    """

    __slots__ = ("h", "forms")

    def __init__(self, h: str, words: Iterable[Word]):
        forms = frozenset(double_coset_normal(w, h) for w in words)
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "forms", forms)

    def __setattr__(self, name, value):
        raise AttributeError("CosetUnion is immutable")

    def __contains__(self, w: Word) -> bool:
        return double_coset_normal(w, self.h) in self.forms

    def intersect(self, other: "CosetUnion") -> "CosetUnion":
        if self.h != other.h:
            raise ValueError("coset unions over different subgroups")
        out = CosetUnion.__new__(CosetUnion)
        object.__setattr__(out, "h", self.h)
        object.__setattr__(out, "forms", self.forms & other.forms)
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, CosetUnion):
            return NotImplemented
        return self.h == other.h and self.forms == other.forms


def verify_counterexample() -> dict:
    """Check that the double-coset relation map fails to respect intersections.

    Over the free group on {x,y,z} with H = <x>, the subsets S = H u HyH and
    T = H u Hz^-1xzyH both put the pair (HzH, HzyH) in their images, yet
    S n T = H, whose image contains only pairs with equal components.
    Returns a report dict with one pass/fail row per clause.
    """
    x, y, z = (Word([(s, 1)]) for s in ("x", "y", "z"))
    h = "x"
    empty = Word()
    s_set = CosetUnion(h, [empty, y])
    t_elt = z.inverse() * x * z * y  # z^-1 x z y
    t_set = CosetUnion(h, [empty, t_elt])

    target = (double_coset_normal(z, h), double_coset_normal(z * y, h))

    clauses = []

    # (a) the pair is in the image of S, via g = z, s = y
    g, s = z, y
    pair = (double_coset_normal(g, h), double_coset_normal(g * s, h))
    clauses.append({
        "clause": "pair_in_image_of_S",
        "detail": f"witness g={g}, s={s}: pair ({pair[0]}, {pair[1]})",
        "pass": s in s_set and pair == target,
    })

    # (b) the pair is in the image of T, via g = z, s = z^-1 x z y
    g, s = z, t_elt
    pair = (double_coset_normal(g, h), double_coset_normal(g * s, h))
    clauses.append({
        "clause": "pair_in_image_of_T",
        "detail": f"witness g={g}, s={s}: pair ({pair[0]}, {pair[1]})",
        "pass": s in t_set and pair == target,
    })

    # (c) S n T is exactly H
    inter = s_set.intersect(t_set)
    only_h = CosetUnion(h, [empty])
    clauses.append({
        "clause": "intersection_is_H",
        "detail": f"normal forms of y and {t_elt} are distinct and nonempty",
        "pass": (inter == only_h
                 and double_coset_normal(y, h) != double_coset_normal(t_elt, h)
                 and not double_coset_normal(y, h).is_identity()
                 and not double_coset_normal(t_elt, h).is_identity()),
    })

    # (d) the image of H only relates a double coset to itself, and the
    # target pair has distinct components
    clauses.append({
        "clause": "pair_not_in_image_of_H",
        "detail": f"components {target[0]} and {target[1]} differ",
        "pass": target[0] != target[1],
    })

    return {"scenario": "double_coset_intersection_failure",
            "clauses": clauses,
            "pass": all(c["pass"] for c in clauses)}
