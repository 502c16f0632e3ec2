"""Thoma parameters and exact evaluation of the extremal characters of S_infinity.

A Thoma parameter is a triple (alpha; beta; gamma) of a nonincreasing tuple
alpha, a nonincreasing tuple beta, and a remainder gamma, all nonnegative
rationals summing to 1.  Only finitely supported rational parameters are
representable; this keeps every predicate below decidable by exact
comparison.  The associated character is multiplicative over disjoint
cycles, with an m-cycle (m >= 2) contributing

    sum_i alpha_i^m - sum_i (-beta_i)^m

and fixed points contributing 1.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from . import young
from .errors import ParameterError


def as_fraction(value) -> Fraction:
    """Coerce to an exact rational.

    Accepts integers, Fractions, and strings ("3/4" or "0.75"); floats are
    read through their decimal repr so 0.75 means 3/4, not its binary value.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    try:
        if isinstance(value, float):
            return Fraction(str(value))
        if isinstance(value, str):
            return Fraction(value.strip())
    except (ValueError, ZeroDivisionError, OverflowError):
        raise ParameterError(f"non-rational input: {value!r}")
    raise ParameterError(f"non-rational input: {value!r}")


@dataclass(frozen=True)
class ThomaParameter:
    alpha: tuple[Fraction, ...]
    beta: tuple[Fraction, ...]
    gamma: Fraction

    def __post_init__(self):
        for seq in (self.alpha, self.beta):
            if any(v <= 0 for v in seq):
                raise ParameterError("alpha and beta entries must be positive")
            if any(a < b for a, b in zip(seq, seq[1:])):
                raise ParameterError("alpha and beta must be nonincreasing")
        if self.gamma < 0:
            raise ParameterError("gamma must be nonnegative")
        if sum(self.alpha) + sum(self.beta) + self.gamma != 1:
            raise ParameterError("alpha, beta, gamma must sum to 1")

    @property
    def m_alpha(self) -> int:
        return len(self.alpha)

    @property
    def m_beta(self) -> int:
        return len(self.beta)

    def __str__(self) -> str:
        def row(seq):
            return ",".join(str(v) for v in seq)

        return f"(a={row(self.alpha)}; b={row(self.beta)}; g={self.gamma})"


def validate(alpha: Iterable = (), beta: Iterable = (), gamma=None) -> ThomaParameter:
    """Normalize raw data into a ThomaParameter.

    Zeros are dropped, rows are sorted nonincreasing, and a missing gamma is
    inferred as 1 - sum(alpha) - sum(beta).  An explicitly supplied gamma
    must make the total exactly 1.
    """
    a = tuple(sorted((x for x in map(as_fraction, alpha) if x != 0), reverse=True))
    b = tuple(sorted((x for x in map(as_fraction, beta) if x != 0), reverse=True))
    if any(x < 0 for x in a + b):
        raise ParameterError("negative entry in alpha or beta")
    used = sum(a) + sum(b)
    if used > 1:
        raise ParameterError(f"sum exceeds one: sum(alpha)+sum(beta) = {used}")
    if gamma is None:
        g = 1 - used
    else:
        g = as_fraction(gamma)
        if g < 0:
            raise ParameterError(f"negative gamma: {g}")
        if used + g != 1:
            raise ParameterError(f"entries sum to {used + g}, expected 1")
    return ThomaParameter(a, b, g)


def merged_values(kappa: ThomaParameter) -> dict[int, Fraction]:
    """The sequence gamma_i: alpha_i at i > 0 and beta_{-i} at i < 0."""
    values = {i + 1: v for i, v in enumerate(kappa.alpha)}
    values.update({-(j + 1): v for j, v in enumerate(kappa.beta)})
    return values


@lru_cache(maxsize=None)
def _power_sum(kappa: ThomaParameter, m: int) -> Fraction:
    return sum((a ** m for a in kappa.alpha), Fraction(0)) - sum(
        ((-b) ** m for b in kappa.beta), Fraction(0)
    )


def character(kappa: ThomaParameter, cycle_type: Sequence[int]) -> Fraction:
    """Exact character value on the class with the given cycle type."""
    value = Fraction(1)
    for m in cycle_type:
        if m < 1:
            raise ValueError(f"cycle lengths must be positive: {cycle_type!r}")
        if m >= 2:
            value *= _power_sum(kappa, m)
    return value


def sign_of_class(cycle_type: Sequence[int]) -> int:
    """Sign character on the class: (-1)^(n - number of cycles)."""
    return -1 if (sum(cycle_type) - len(cycle_type)) % 2 else 1


def theta_dual(kappa: ThomaParameter) -> ThomaParameter:
    """Swap alpha and beta; twists the character by the sign character."""
    return ThomaParameter(kappa.beta, kappa.alpha, kappa.gamma)


UNIFORM_ALPHA = "uniform-alpha"
UNIFORM_BETA = "uniform-beta"
REGULAR = "regular"
NOT_IRREDUCIBLE = "not-irreducible"


@dataclass(frozen=True)
class Classification:
    """Irreducibility classification of the stabilizer inclusion.

    ``kind`` is one of the three irreducible forms (uniform row, uniform
    column, or the regular case gamma = 1) or ``not-irreducible``.
    ``moment_identity_holds`` records whether

        sum alpha^3 + sum beta^3 = (sum alpha^2 - sum beta^2)^2

    holds exactly; it does iff the parameter is of a listed form.
    ``degenerate`` flags alpha_1 = 1 or beta_1 = 1, for which no factor
    (hence no subfactor) statement is made.
    """

    kind: str
    n: int | None
    moment_identity_holds: bool
    degenerate: bool

    @property
    def irreducible(self) -> bool:
        return self.kind != NOT_IRREDUCIBLE


def moment_identity_holds(kappa: ThomaParameter) -> bool:
    third = sum(a ** 3 for a in kappa.alpha) + sum(b ** 3 for b in kappa.beta)
    second = sum(a ** 2 for a in kappa.alpha) - sum(b ** 2 for b in kappa.beta)
    return third == second ** 2


def classify_irreducible(kappa: ThomaParameter) -> Classification:
    identity = moment_identity_holds(kappa)
    degenerate = (kappa.alpha and kappa.alpha[0] == 1) or (
        kappa.beta and kappa.beta[0] == 1
    )
    if kappa.gamma == 1:
        return Classification(REGULAR, None, identity, bool(degenerate))
    if kappa.gamma == 0 and not kappa.beta and len(set(kappa.alpha)) == 1:
        return Classification(UNIFORM_ALPHA, len(kappa.alpha), identity, bool(degenerate))
    if kappa.gamma == 0 and not kappa.alpha and len(set(kappa.beta)) == 1:
        return Classification(UNIFORM_BETA, len(kappa.beta), identity, bool(degenerate))
    return Classification(NOT_IRREDUCIBLE, None, identity, bool(degenerate))


def is_faithful(kappa: ThomaParameter) -> bool:
    """Faithfulness of the trace for finitely supported parameters.

    With finite alpha and beta supports the trace is faithful exactly when
    gamma > 0 (otherwise the supporting tableaux have bounded shape).
    """
    return kappa.gamma > 0


def has_infinite_index(kappa: ThomaParameter) -> bool:
    """The stabilizer subfactor has infinite index iff the trace is faithful."""
    return is_faithful(kappa)


def standard_battery() -> tuple[ThomaParameter, ...]:
    """A deterministic battery of exact parameters for classification sweeps.

    Covers the uniform rows/columns, the regular case, two-sided and
    gamma-positive mixes, duplicated and distinct entries.
    """
    params: dict[str, ThomaParameter] = {}

    def add(p: ThomaParameter):
        params.setdefault(str(p), p)

    for n in range(1, 6):
        add(validate(alpha=[Fraction(1, n)] * n))
        add(validate(beta=[Fraction(1, n)] * n))
    add(validate(gamma=1))
    for den in (6, 8):
        for total in (den, den - 1, den - 2):
            for parts in young.enumerate_partitions(total):
                values = [Fraction(p, den) for p in parts]
                add(validate(alpha=values))
                add(validate(beta=values))
                add(
                    validate(
                        alpha=values[0::2],
                        beta=values[1::2],
                    )
                )
    return tuple(params[key] for key in sorted(params))
