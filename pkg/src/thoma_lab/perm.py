"""Permutations of {0, ..., n-1} in word form, and the stabilizer subgroups T_n.

A permutation is stored as the tuple of its images: ``images[i]`` is where
``i`` goes.  The degree is explicit; embedding into a larger degree appends
fixed points, so the cycle type only grows by 1-cycles.  ``T_n`` denotes the
subgroup of S_n fixing 0, i.e. the permutations of {1, ..., n-1}.

The textual syntax used by the CLI writes a permutation as a product of
cycles, e.g. ``"(0 1)(2 3 4)"``, with the identity written ``"e"``.
"""
from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import CapExceededError, ParseError

DEFAULT_ENUMERATION_CAP = math.factorial(10)


@dataclass(frozen=True)
class Permutation:
    """A bijection of {0, ..., n-1} in word form.

    >>> Permutation((1, 0, 2)).cycle_type()
    (2, 1)
    """

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"not a permutation word: {self.images!r}")

    @property
    def degree(self) -> int:
        return len(self.images)

    def act(self, i: int) -> int:
        """Image of the point ``i``; points beyond the degree are fixed."""
        return self.images[i] if i < len(self.images) else i

    __call__ = act

    def embedded(self, degree: int) -> "Permutation":
        """The same permutation viewed in a larger symmetric group."""
        if degree < self.degree:
            raise ValueError(f"cannot embed degree {self.degree} into {degree}")
        if degree == self.degree:
            return self
        return Permutation(self.images + tuple(range(self.degree, degree)))

    def trimmed(self) -> "Permutation":
        """Canonical form with trailing fixed points removed."""
        images = list(self.images)
        while images and images[-1] == len(images) - 1:
            images.pop()
        return Permutation(tuple(images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def is_identity(self) -> bool:
        return all(j == i for i, j in enumerate(self.images))

    def fixes_prefix(self, k: int) -> bool:
        """True when every point below ``k`` is fixed."""
        return all(self.act(i) == i for i in range(k))

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        """Disjoint cycles, each starting at its smallest element."""
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cycle = []
            i = start
            while not seen[i]:
                seen[i] = True
                cycle.append(i)
                i = self.images[i]
            if len(cycle) > 1 or include_fixed:
                out.append(tuple(cycle))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        """Cycle lengths, fixed points included, as a nonincreasing partition."""
        lengths = [len(c) for c in self.cycles(include_fixed=True)]
        return tuple(sorted(lengths, reverse=True))

    def sign(self) -> int:
        return -1 if (self.degree - len(self.cycles(include_fixed=True))) % 2 else 1


def identity(n: int) -> Permutation:
    return Permutation(tuple(range(n)))


def transposition(n: int, i: int, j: int) -> Permutation:
    images = list(range(n))
    images[i], images[j] = images[j], images[i]
    return Permutation(tuple(images))


def from_cycles(cycles: Iterable[Sequence[int]], degree: int | None = None) -> Permutation:
    """Product of cycles, the rightmost applied first.

    Each cycle ``(m_1, ..., m_k)`` sends ``m_i`` to ``m_{i+1}`` and ``m_k``
    back to ``m_1``.
    """
    cycles = [tuple(c) for c in cycles]
    top = max((max(c) for c in cycles if c), default=-1) + 1
    n = max(degree or 0, top)
    result = identity(n)
    for cycle in cycles:
        if len(set(cycle)) != len(cycle):
            raise ValueError(f"repeated point in cycle {cycle!r}")
        images = list(range(n))
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            images[a] = b
        result = compose(result, Permutation(tuple(images)))
    return result


def compose(p: Permutation, q: Permutation) -> Permutation:
    """The product p*q, applying q first: (p*q)(i) = p(q(i)).

    Degrees are reconciled by embedding the smaller permutation.
    """
    n = max(p.degree, q.degree)
    return Permutation(tuple(p.act(q.act(i)) for i in range(n)))


def conjugate(t: Permutation, p: Permutation) -> Permutation:
    """t * p * t^{-1}."""
    return compose(compose(t, p), t.inverse())


@dataclass(frozen=True)
class DoubleCosetClass:
    """Position of a permutation relative to the stabilizer of 0.

    ``tag`` is ``"inside-stabilizer"`` when the permutation fixes 0 and
    ``"transposition-coset"`` otherwise; in the latter case ``t1, t2`` are
    witnesses fixing 0 with ``p = t1 * (0,1) * t2``.
    """

    tag: str
    t1: Permutation | None = None
    t2: Permutation | None = None


def double_coset_class(p: Permutation) -> DoubleCosetClass:
    """Classify p by the double cosets of the stabilizer of 0.

    Every permutation either fixes 0 or factors through the transposition
    (0,1) with stabilizer elements on both sides; the witnesses are
    constructed and re-verified before returning.
    """
    if p.degree < 2:
        raise ValueError("double coset classification needs degree >= 2")
    if p.act(0) == 0:
        return DoubleCosetClass("inside-stabilizer")
    n = p.degree
    pre = p.inverse().act(0)
    t2 = identity(n) if pre == 1 else transposition(n, 1, pre)
    t1 = compose(compose(p, t2.inverse()), transposition(n, 0, 1))
    assert t1.act(0) == 0 and t2.act(0) == 0
    assert compose(compose(t1, transposition(n, 0, 1)), t2) == p
    return DoubleCosetClass("transposition-coset", t1, t2)


def enumerate_group(
    n: int, fixing: int = 0, cap: int = DEFAULT_ENUMERATION_CAP
) -> Iterator[Permutation]:
    """All permutations of degree n fixing {0, ..., fixing-1}, in a fixed order.

    Yields exactly (n - fixing)! permutations; the order is the lexicographic
    order of the image words.
    """
    if not 0 <= fixing <= n:
        raise ValueError(f"fixing must lie in [0, {n}]")
    count = math.factorial(n - fixing)
    if count > cap:
        raise CapExceededError("group enumeration", count, cap)
    prefix = tuple(range(fixing))
    for tail in itertools.permutations(range(fixing, n)):
        yield Permutation(prefix + tail)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_permutation(text: str, degree: int | None = None) -> Permutation:
    """Parse the cycle syntax, e.g. "(0 1)(2 3 4)"; "e" is the identity."""
    stripped = text.strip()
    if stripped in ("e", "()", ""):
        return identity(degree or 0)
    cycles = []
    pos = 0
    for match in _CYCLE_RE.finditer(stripped):
        outside = stripped[pos:match.start()].strip()
        if outside:
            raise ParseError(f"unexpected text {outside!r}", pos)
        entries = [e for e in re.split(r"[,\s]+", match.group(1).strip()) if e]
        if not entries:
            raise ParseError("empty cycle", match.start())
        try:
            cycle = [int(e) for e in entries]
        except ValueError:
            raise ParseError(f"non-integer entry in cycle {match.group(0)!r}", match.start())
        if any(e < 0 for e in cycle):
            raise ParseError("negative point in cycle", match.start())
        cycles.append(cycle)
        pos = match.end()
    if pos != len(stripped):
        raise ParseError(f"unexpected trailing text {stripped[pos:]!r}", pos)
    if not cycles:
        raise ParseError("expected cycles or 'e'", 0)
    try:
        return from_cycles(cycles, degree=degree)
    except ValueError as exc:
        raise ParseError(str(exc), 0)


def format_permutation(p: Permutation) -> str:
    """Inverse of parse_permutation: nontrivial cycles, or "e"."""
    cycles = p.cycles()
    if not cycles:
        return "e"
    return "".join("(" + " ".join(str(i) for i in c) + ")" for c in cycles)
