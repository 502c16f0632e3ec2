"""Young diagram combinatorics: hook lengths, irreducible characters, partitions.

Diagrams are plain tuples of nonincreasing positive row lengths.  Everything
here is exact integer or rational arithmetic; the only real-valued output,
the decaying staircase bound, is evaluated exactly first and converted last.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache, reduce
from operator import mul

from .errors import CapExceededError

Diagram = tuple[int, ...]

DEFAULT_PARTITION_CAP = 14


def check_diagram(rows) -> Diagram:
    rows = tuple(int(r) for r in rows)
    if any(r <= 0 for r in rows):
        raise ValueError(f"rows must be positive: {rows!r}")
    if any(a < b for a, b in zip(rows, rows[1:])):
        raise ValueError(f"rows must be nonincreasing: {rows!r}")
    return rows


def size(diagram: Diagram) -> int:
    return sum(diagram)


def transpose(diagram: Diagram) -> Diagram:
    rows = check_diagram(diagram)
    if not rows:
        return ()
    return tuple(sum(1 for r in rows if r > j) for j in range(rows[0]))


def hook_lengths(diagram: Diagram) -> list[list[int]]:
    rows = check_diagram(diagram)
    cols = transpose(rows)
    return [
        [(rows[i] - j) + (cols[j] - i) - 1 for j in range(rows[i])]
        for i in range(len(rows))
    ]


def dimension(diagram: Diagram) -> int:
    """Number of standard tableaux: n! over the product of hook lengths."""
    rows = check_diagram(diagram)
    n = sum(rows)
    product = reduce(mul, (h for line in hook_lengths(rows) for h in line), 1)
    d, rem = divmod(math.factorial(n), product)
    assert rem == 0
    return d


def character_value(diagram: Diagram, cycle_type) -> int:
    """Irreducible character of S_n at the class with the given cycle type."""
    rows = check_diagram(diagram)
    cycles = tuple(sorted((int(c) for c in cycle_type), reverse=True))
    if any(c <= 0 for c in cycles):
        raise ValueError(f"cycle lengths must be positive: {cycle_type!r}")
    if sum(rows) != sum(cycles):
        raise ValueError(
            f"diagram size {sum(rows)} does not match class size {sum(cycles)}"
        )
    return _strip_recursion(rows, cycles)


@lru_cache(maxsize=None)
def _strip_recursion(diagram: Diagram, cycles: tuple[int, ...]) -> int:
    # Border-strip removal on first-column hook lengths (beta numbers),
    # always stripping the largest remaining cycle.
    if not cycles:
        return 1
    m, rest = cycles[0], cycles[1:]
    length = len(diagram)
    betas = [diagram[j] + (length - 1 - j) for j in range(length)]
    beta_set = set(betas)
    total = 0
    for b in betas:
        nb = b - m
        if nb < 0 or nb in beta_set:
            continue
        height = sum(1 for c in betas if nb < c < b)
        new_betas = sorted((beta_set - {b}) | {nb}, reverse=True)
        k = len(new_betas)
        parts = [new_betas[j] - (k - 1 - j) for j in range(k)]
        smaller = tuple(v for v in parts if v > 0)
        total += (-1) ** height * _strip_recursion(smaller, rest)
    return total


def enumerate_partitions(n: int, cap: int = DEFAULT_PARTITION_CAP) -> list[Diagram]:
    """All partitions of n, lexicographically descending."""
    if n < 1:
        raise ValueError("n must be positive")
    if n > cap:
        raise CapExceededError("partition enumeration", n, cap)
    return list(_partitions(n, n))


def _partitions(n: int, max_part: int):
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


def triangle_diagram(k: int) -> Diagram:
    """The staircase (k, k-1, ..., 1)."""
    if k < 1:
        raise ValueError("k must be positive")
    return tuple(range(k, 0, -1))


def triangle_bound_exact(ratio, k: int) -> Fraction:
    """R^{k(k+1)/2} * k!(k-1)!...1! / (k(k+1)/2)! as an exact rational."""
    r = Fraction(ratio)
    if r <= 0:
        raise ValueError("ratio must be positive")
    n = k * (k + 1) // 2
    numerator = r ** n
    for i in range(1, k + 1):
        numerator *= math.factorial(i)
    return numerator / math.factorial(n)


def triangle_bound_sequence(ratio, k: int) -> float:
    """Real value of the staircase bound; underflows to 0.0 for large k."""
    exact = triangle_bound_exact(ratio, k)
    try:
        return float(exact)
    except OverflowError:
        # Numerator and denominator individually exceed float range.
        log_value = math.log(exact.numerator) - math.log(exact.denominator)
        return math.exp(log_value) if log_value < 700.0 else math.inf
