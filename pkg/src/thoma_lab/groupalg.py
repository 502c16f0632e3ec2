"""Exact computations in the group algebra of S_n under a Thoma trace.

Elements are finitely supported rational combinations of permutations; the
trace of an element is the coefficient-weighted sum of character values.
Conditional expectations come in two flavors: averaging over a stabilizer
subgroup (lands in its relative commutant) and orthogonal projection onto
the span of a subgroup in the trace inner product <x, y> = tau(y* x).  The
latter handles a degenerate form by solving modulo its null space with free
coefficients pinned to zero, which fixes a deterministic representative.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import linalg, perm, thoma, young
from .errors import CapExceededError
from .perm import DEFAULT_ENUMERATION_CAP, Permutation
from .thoma import ThomaParameter
from .young import Diagram

DEFAULT_WEIGHT_CAP = 10
DEFAULT_FULL_SQUARE_CAP = 6


@dataclass(frozen=True, eq=False)
class AlgebraElement:
    """A finitely supported map Permutation -> Fraction.

    Keys are stored trimmed (no trailing fixed points) so equal elements of
    nested group algebras compare equal; ``degree`` records the ambient
    group.
    """

    degree: int
    coeffs: Mapping[Permutation, Fraction]

    def __eq__(self, other) -> bool:
        return isinstance(other, AlgebraElement) and dict(self.coeffs) == dict(other.coeffs)

    def support(self) -> list[Permutation]:
        return sorted(self.coeffs, key=lambda p: p.images)

    def coefficient(self, p: Permutation) -> Fraction:
        return self.coeffs.get(p.trimmed(), Fraction(0))

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        merged = dict(self.coeffs)
        for p, c in other.coeffs.items():
            merged[p] = merged.get(p, Fraction(0)) + c
        return element(max(self.degree, other.degree), merged)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-1) * other

    def __rmul__(self, scalar) -> "AlgebraElement":
        c = Fraction(scalar)
        return element(self.degree, {p: c * v for p, v in self.coeffs.items()})

    def __mul__(self, other) -> "AlgebraElement":
        if not isinstance(other, AlgebraElement):
            return self.__rmul__(other)
        out: dict[Permutation, Fraction] = {}
        for p, c in self.coeffs.items():
            for q, d in other.coeffs.items():
                key = perm.compose(p, q).trimmed()
                out[key] = out.get(key, Fraction(0)) + c * d
        return element(max(self.degree, other.degree), out)

    def adjoint(self) -> "AlgebraElement":
        return element(self.degree, {p.inverse(): c for p, c in self.coeffs.items()})

    def conjugated_by(self, t: Permutation) -> "AlgebraElement":
        return element(
            max(self.degree, t.degree),
            {perm.conjugate(t, p).trimmed(): c for p, c in self.coeffs.items()},
        )

    def is_zero(self) -> bool:
        return not self.coeffs


def element(degree: int, coeffs: Mapping[Permutation, object]) -> AlgebraElement:
    cleaned: dict[Permutation, Fraction] = {}
    top = degree
    for p, c in coeffs.items():
        value = Fraction(c)
        if value == 0:
            continue
        key = p.trimmed()
        top = max(top, key.degree)
        cleaned[key] = cleaned.get(key, Fraction(0)) + value
    cleaned = {p: v for p, v in cleaned.items() if v != 0}
    return AlgebraElement(top, cleaned)


def delta(p: Permutation, degree: int | None = None) -> AlgebraElement:
    """The basis element supported on a single permutation."""
    return element(degree if degree is not None else p.degree, {p: Fraction(1)})


def zero(degree: int = 0) -> AlgebraElement:
    return AlgebraElement(degree, {})


def trace_of(kappa: ThomaParameter, x: AlgebraElement) -> Fraction:
    return sum(
        (c * thoma.character(kappa, p.cycle_type()) for p, c in x.coeffs.items()),
        Fraction(0),
    )


def two_norm_sq(kappa: ThomaParameter, x: AlgebraElement) -> Fraction:
    """Squared trace 2-norm tau(x* x)."""
    return trace_of(kappa, x.adjoint() * x)


def cond_exp_relcomm_Tk(
    x: AlgebraElement, k: int, cap: int = DEFAULT_ENUMERATION_CAP
) -> AlgebraElement:
    """Expectation onto the relative commutant of the stabilizer stage T_k.

    Averages the conjugates t x t^{-1} over the (k-1)! permutations t fixing
    0 and supported on {1, ..., k-1}.  The trace value of any Thoma
    parameter is preserved, so no parameter argument is needed.
    """
    if k < 1:
        raise ValueError("k must be positive")
    acc: dict[Permutation, Fraction] = {}
    count = 0
    for t in perm.enumerate_group(k, fixing=1, cap=cap):
        for p, c in x.coeffs.items():
            key = perm.conjugate(t, p).trimmed()
            acc[key] = acc.get(key, Fraction(0)) + c
        count += 1
    return element(max(x.degree, k), {p: v / count for p, v in acc.items()})


class SpanProjector:
    """Trace-orthogonal projection onto the span of a list of group elements.

    Factors the Gram matrix once so repeated projections (e.g. sweeping a
    spanning set) stay cheap.
    """

    def __init__(self, kappa: ThomaParameter, members: Sequence[Permutation]):
        self.kappa = kappa
        self.members = [h.trimmed() for h in members]
        self.degree = max((h.degree for h in self.members), default=0)
        inverses = [h.inverse() for h in self.members]
        gram = [
            [
                thoma.character(kappa, perm.compose(hi_inv, hj).cycle_type())
                for hj in self.members
            ]
            for hi_inv in inverses
        ]
        self._inverses = inverses
        self._solver = linalg.FractionSolver(gram)

    def project(self, x: AlgebraElement) -> AlgebraElement:
        rhs = [
            sum(
                (
                    c * thoma.character(self.kappa, perm.compose(h_inv, p).cycle_type())
                    for p, c in x.coeffs.items()
                ),
                Fraction(0),
            )
            for h_inv in self._inverses
        ]
        coefficients = self._solver.solve(rhs)
        return element(
            max(x.degree, self.degree),
            {h: c for h, c in zip(self.members, coefficients)},
        )


def cond_exp_subalgebra(
    kappa: ThomaParameter,
    x: AlgebraElement,
    subgroup: Iterable[Permutation],
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> AlgebraElement:
    """Trace-preserving expectation onto the subalgebra spanned by a subgroup.

    Computed as the orthogonal projection in <x, y> = tau(y* x); with a
    degenerate form the result is the canonical representative modulo null
    vectors.  Since the subgroup contains the identity, tau is preserved.
    """
    members = list(subgroup)
    if len(members) > cap:
        raise CapExceededError("subgroup span projection", len(members), cap)
    return SpanProjector(kappa, members).project(x)


@dataclass(frozen=True)
class CommutingSquareReport:
    """Result of testing one stage of the stabilizer ladder of inclusions."""

    degree: int
    quick_pair: tuple[Fraction, Fraction]
    quick_equal: bool
    full_commuting: bool | None

    @property
    def commuting(self) -> bool:
        return self.full_commuting if self.full_commuting is not None else self.quick_equal


def quick_commuting_pair(kappa: ThomaParameter) -> tuple[Fraction, Fraction]:
    """Necessary test values: tau on (0,1)(1,2) versus the product of transpositions."""
    three_cycle = thoma.character(kappa, (3,))
    transposition = thoma.character(kappa, (2,))
    return three_cycle, transposition * transposition


def commuting_square_check(
    kappa: ThomaParameter,
    n: int,
    include_full: bool = True,
    full_degree_cap: int = DEFAULT_FULL_SQUARE_CAP,
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> CommutingSquareReport:
    """Test whether the square of inclusions at stage n commutes for this trace.

    The full check verifies, on every basis permutation of degree n+1, that
    projecting first onto the span of T_{n+1} and then onto the span of S_n
    agrees with projecting onto the span of T_n, where equality is taken in
    trace 2-norm (exactly zero distance).  The quick pair is a necessary
    condition available at any size.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    lhs, rhs = quick_commuting_pair(kappa)
    full: bool | None = None
    if include_full:
        if n + 1 > full_degree_cap:
            raise CapExceededError("full commuting-square check degree", n + 1, full_degree_cap)
        onto_t_next = SpanProjector(kappa, perm.enumerate_group(n + 1, fixing=1, cap=cap))
        onto_s = SpanProjector(kappa, perm.enumerate_group(n, fixing=0, cap=cap))
        onto_t = SpanProjector(kappa, perm.enumerate_group(n, fixing=1, cap=cap))
        full = True
        for s in perm.enumerate_group(n + 1, fixing=0, cap=cap):
            x = delta(s)
            composed = onto_s.project(onto_t_next.project(x))
            corner = onto_t.project(x)
            if two_norm_sq(kappa, composed - corner) != 0:
                full = False
                break
    return CommutingSquareReport(n, (lhs, rhs), lhs == rhs, full)


@dataclass(frozen=True)
class WeightVector:
    """Block weights of the trace restricted to C*S_n.

    weights[d] is the coefficient of the normalized irreducible character of
    the diagram d; the trace of a minimal projection in that block is
    weights[d] / dimension(d).
    """

    degree: int
    weights: Mapping[Diagram, Fraction]

    def sorted_items(self) -> list[tuple[Diagram, Fraction]]:
        return sorted(self.weights.items(), key=lambda kv: kv[0], reverse=True)


def _class_size_denominator(cycle_type: Diagram) -> int:
    # Centralizer order: prod m^(mult_m) * mult_m!
    z = 1
    for m in set(cycle_type):
        k = cycle_type.count(m)
        z *= m ** k * math.factorial(k)
    return z


def block_weight_single(kappa: ThomaParameter, diagram: Diagram) -> Fraction:
    """Weight of one block: d * sum over classes of chi * tau / centralizer order."""
    n = sum(diagram)
    total = Fraction(0)
    for cycle_type in young.enumerate_partitions(n):
        value = thoma.character(kappa, cycle_type)
        if value == 0:
            continue
        total += (
            Fraction(young.character_value(diagram, cycle_type))
            * value
            / _class_size_denominator(cycle_type)
        )
    return young.dimension(diagram) * total


def block_weights(
    kappa: ThomaParameter, n: int, cap: int = DEFAULT_WEIGHT_CAP
) -> WeightVector:
    if n > cap:
        raise CapExceededError("block weights degree", n, cap)
    weights = {
        diagram: block_weight_single(kappa, diagram)
        for diagram in young.enumerate_partitions(n)
    }
    assert sum(weights.values()) == 1
    return WeightVector(n, weights)


@dataclass(frozen=True)
class SmallProjection:
    degree: int
    diagram: Diagram
    trace: Fraction


def find_small_projection(
    kappa: ThomaParameter,
    epsilon,
    k_max: int = 4,
    exhaustive: bool = False,
) -> SmallProjection | None:
    """Search staircase blocks for a projection with tiny trace.

    Walks k = 1, 2, ... and the diagram (k, k-1, ..., 1) of n = k(k+1)/2
    boxes, returning the first block with positive weight whose minimal
    projection trace is strictly below epsilon^n.  With ``exhaustive`` every
    diagram of each n is scanned instead of just the staircase.  Returns
    None when the limit is reached; that is the expected outcome for traces
    that vanish on tall diagrams.
    """
    eps = Fraction(epsilon)
    if eps <= 0:
        raise ValueError("epsilon must be positive")
    for k in range(1, k_max + 1):
        n = k * (k + 1) // 2
        candidates = (
            young.enumerate_partitions(n) if exhaustive else [young.triangle_diagram(k)]
        )
        for diagram in candidates:
            weight = block_weight_single(kappa, diagram)
            if weight <= 0:
                continue
            trace = weight / young.dimension(diagram)
            if trace < eps ** n:
                return SmallProjection(n, diagram, trace)
    return None


def algebra_entropy(
    kappa: ThomaParameter, n: int, cap: int = DEFAULT_WEIGHT_CAP
) -> tuple[float, float]:
    """Entropy of the trace on C*S_n and on its center.

    Returns (total, center) where total = sum over blocks of
    eta(w) + w * log(dim) (equivalently sum of dim * eta(w / dim)) and
    center = sum of eta(w), with natural logarithms and eta(0) = 0.
    """
    weights = block_weights(kappa, n, cap=cap)
    total = 0.0
    center = 0.0
    for diagram, w in weights.weights.items():
        if w == 0:
            continue
        h = -float(w) * math.log(w)
        center += h
        total += h + float(w) * math.log(young.dimension(diagram))
    return total, center
