"""Entropy quantities attached to a Thoma trace.

The shift entropy of a parameter is the entropy of its weight rows,
sum eta(alpha_i) + sum eta(beta_j) with eta(t) = -t log t; twice that value
bounds the relative entropy of the stabilizer inclusion from above, with
equality when gamma = 0 and neither row repeats a positive value.  The
growth experiment tabulates the finite-stage algebra entropies for
inspection; it asserts nothing about their limit.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Sequence

from . import groupalg
from .groupalg import DEFAULT_WEIGHT_CAP
from .thoma import ThomaParameter


def eta(t) -> float:
    """-t log t on [0, 1], with eta(0) = 0; natural logarithm."""
    if t < 0 or t > 1:
        raise ValueError(f"eta is only defined on [0, 1], got {t}")
    if t == 0 or t == 1:
        return 0.0
    return -float(t) * math.log(t)


def shift_entropy(kappa: ThomaParameter) -> float:
    """Dynamical entropy of the index shift: sum of eta over both rows."""
    return sum(eta(a) for a in kappa.alpha) + sum(eta(b) for b in kappa.beta)


@dataclass(frozen=True)
class GrowthRow:
    degree: int
    total: float
    center: float

    @property
    def total_over_n(self) -> float:
        return self.total / self.degree


@dataclass(frozen=True)
class EntropyReport:
    shift_entropy: float
    upper_bound: float
    equality_applicable: bool
    equality_value: float | None
    growth_table: tuple[GrowthRow, ...] = ()

    def __post_init__(self):
        assert self.upper_bound == 2 * self.shift_entropy
        assert (self.equality_value is not None) == self.equality_applicable


def _rows_duplicate_free(kappa: ThomaParameter) -> bool:
    return len(set(kappa.alpha)) == len(kappa.alpha) and len(set(kappa.beta)) == len(
        kappa.beta
    )


def relative_entropy_bounds(kappa: ThomaParameter) -> EntropyReport:
    """Upper bound 2 * shift entropy, and the exact value when it is attained.

    Equality is only asserted for gamma = 0 with duplicate-free rows; the
    duplicate test is an exact rational comparison.
    """
    h = shift_entropy(kappa)
    applicable = kappa.gamma == 0 and _rows_duplicate_free(kappa)
    return EntropyReport(h, 2 * h, applicable, 2 * h if applicable else None)


def block_traces(kappa: ThomaParameter) -> list[Fraction]:
    """Trace of each spectral block: sums of equal entries, rows then columns."""
    if kappa.gamma != 0:
        raise ValueError("block traces need gamma = 0")
    traces = []
    for row in (kappa.alpha, kappa.beta):
        groups: dict[Fraction, Fraction] = {}
        for value in row:
            groups[value] = groups.get(value, Fraction(0)) + value
        traces.extend(groups[v] for v in sorted(groups, reverse=True))
    return traces


def pimsner_popa_block_formula(
    kappa: ThomaParameter, reduced_indices: Sequence | None = None
) -> float:
    """Evaluate 2 sum eta(tau(f_k)) + sum tau(f_k) log(index_k) over the blocks.

    The reduced indices default to 1 per block, which reproduces the
    equality value of the relative entropy bound in the duplicate-free case.
    """
    traces = block_traces(kappa)
    if reduced_indices is None:
        reduced_indices = [1] * len(traces)
    if len(reduced_indices) != len(traces):
        raise ValueError(f"expected {len(traces)} reduced indices")
    value = 2 * sum(eta(t) for t in traces)
    value += sum(float(t) * math.log(float(r)) for t, r in zip(traces, reduced_indices))
    return value


def entropy_growth_experiment(
    kappa: ThomaParameter, n_max: int, cap: int = DEFAULT_WEIGHT_CAP
) -> tuple[GrowthRow, ...]:
    """Finite-stage entropies for n = 1..n_max; observational output only."""
    rows = []
    for n in range(1, n_max + 1):
        total, center = groupalg.algebra_entropy(kappa, n, cap=cap)
        rows.append(GrowthRow(n, total, center))
    return tuple(rows)


def entropy_report(
    kappa: ThomaParameter, n_max: int = 0, cap: int = DEFAULT_WEIGHT_CAP
) -> EntropyReport:
    report = relative_entropy_bounds(kappa)
    if n_max > 0:
        report = replace(report, growth_table=entropy_growth_experiment(kappa, n_max, cap=cap))
    return report
