"""Signed permutation action on tensor powers of a weighted index space.

For a parameter with gamma = 0 the index space has one point per positive
row entry (labelled 1, ..., m_alpha) and one per column entry (labelled
-1, ..., -m_beta), carrying the entry itself as a weight; the weights sum
to 1.  A permutation s acts on basis tuples x of length n by

    s . delta_x = tau(s, x) * delta_{s.x},    (s.x)_i = x_{s^{-1}(i)},

where tau(s, x) = (-1)^(number of position pairs k < l, 0-based, with both
entries negative and s(k) > s(l)).  Pulling the product state back along
this action recovers the trace character, exactly.

Operators are sparse maps (row tuple, column tuple) -> value; values stay
exact rationals except where a square root forces floats (the chain of
projections satisfying the Temperley-Lieb relations).
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import perm, thoma
from .errors import CapExceededError
from .perm import Permutation
from .thoma import ThomaParameter

DEFAULT_DIMENSION_CAP = 2 ** 20

IndexTuple = tuple[int, ...]
EntryKey = tuple[IndexTuple, IndexTuple]


@dataclass(frozen=True)
class IndexSet:
    """The weighted index space of a gamma = 0 parameter."""

    points: tuple[int, ...]
    density: Mapping[int, Fraction]

    @property
    def size(self) -> int:
        return len(self.points)

    def weight(self, x: Iterable[int]) -> Fraction:
        w = Fraction(1)
        for i in x:
            w *= self.density[i]
        return w


def index_set(kappa: ThomaParameter) -> IndexSet:
    if kappa.gamma != 0:
        raise ValueError("tensor model needs gamma = 0")
    density = thoma.merged_values(kappa)
    points = tuple(sorted(density))
    return IndexSet(points, density)


class TensorOperator:
    """A sparse operator on the n-fold tensor power of the index space."""

    __slots__ = ("degree", "points", "entries")

    def __init__(self, degree: int, points: tuple[int, ...], entries: Mapping[EntryKey, object]):
        self.degree = degree
        self.points = points
        self.entries = {k: v for k, v in entries.items() if v != 0}

    @classmethod
    def identity(cls, points: tuple[int, ...], degree: int) -> "TensorOperator":
        return cls(
            degree,
            points,
            {(x, x): 1 for x in itertools.product(points, repeat=degree)},
        )

    def _check_compatible(self, other: "TensorOperator"):
        if self.degree != other.degree or self.points != other.points:
            raise ValueError("operators live on different tensor powers")

    def __add__(self, other: "TensorOperator") -> "TensorOperator":
        self._check_compatible(other)
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out.get(k, 0) + v
        return TensorOperator(self.degree, self.points, out)

    def __sub__(self, other: "TensorOperator") -> "TensorOperator":
        return self + (-1) * other

    def __rmul__(self, scalar) -> "TensorOperator":
        return TensorOperator(
            self.degree, self.points, {k: scalar * v for k, v in self.entries.items()}
        )

    def __matmul__(self, other: "TensorOperator") -> "TensorOperator":
        self._check_compatible(other)
        by_row: dict[IndexTuple, list[tuple[IndexTuple, object]]] = {}
        for (r, c), v in other.entries.items():
            by_row.setdefault(r, []).append((c, v))
        out: dict[EntryKey, object] = {}
        for (r, c), v in self.entries.items():
            for c2, v2 in by_row.get(c, ()):
                key = (r, c2)
                out[key] = out.get(key, 0) + v * v2
        return TensorOperator(self.degree, self.points, out)

    def adjoint(self) -> "TensorOperator":
        # Real entries throughout, so the adjoint is the transpose.
        return TensorOperator(
            self.degree, self.points, {(c, r): v for (r, c), v in self.entries.items()}
        )

    def commutator(self, other: "TensorOperator") -> "TensorOperator":
        return self @ other - other @ self

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TensorOperator)
            and self.degree == other.degree
            and self.points == other.points
            and self.entries == other.entries
        )

    def max_abs(self) -> float:
        return max((abs(float(v)) for v in self.entries.values()), default=0.0)

    def to_dense(self) -> np.ndarray:
        basis = list(itertools.product(self.points, repeat=self.degree))
        index = {x: i for i, x in enumerate(basis)}
        dense = np.zeros((len(basis), len(basis)))
        for (r, c), v in self.entries.items():
            dense[index[r], index[c]] = float(v)
        return dense

    @classmethod
    def from_dense(
        cls, matrix: np.ndarray, points: tuple[int, ...], degree: int
    ) -> "TensorOperator":
        basis = list(itertools.product(points, repeat=degree))
        entries = {}
        for i, r in enumerate(basis):
            for j, c in enumerate(basis):
                if matrix[i, j] != 0:
                    entries[(r, c)] = matrix[i, j]
        return cls(degree, points, entries)

    def to_coordinate_text(self) -> str:
        """Coordinate-list export: a header line, then one entry per line.

        Format: "degree <n> points <p...>" followed by lines
        "<row tuple> <column tuple> <value>" with tuples comma-separated,
        in sorted order.
        """
        lines = [
            "degree "
            + str(self.degree)
            + " points "
            + " ".join(str(p) for p in self.points)
        ]
        for (r, c) in sorted(self.entries):
            value = self.entries[(r, c)]
            lines.append(
                ",".join(map(str, r)) + " " + ",".join(map(str, c)) + f" {value}"
            )
        return "\n".join(lines) + "\n"

    @classmethod
    def from_coordinate_text(cls, text: str) -> "TensorOperator":
        lines = [line for line in text.splitlines() if line.strip()]
        header = lines[0].split()
        if header[0] != "degree" or header[2] != "points":
            raise ValueError(f"bad coordinate header: {lines[0]!r}")
        degree = int(header[1])
        points = tuple(int(p) for p in header[3:])
        entries: dict[EntryKey, object] = {}
        for line in lines[1:]:
            row_text, col_text, value_text = line.split()
            row = tuple(int(v) for v in row_text.split(","))
            col = tuple(int(v) for v in col_text.split(","))
            try:
                value: object = Fraction(value_text)
            except ValueError:
                value = float(value_text)
            entries[(row, col)] = value
        return cls(degree, points, entries)


def sign_factor(s: Permutation, x: Sequence[int]) -> int:
    """The sign picked up when s permutes the basis tuple x.

    Counts inversions of s among the positions holding negative points;
    positions are 0-based and s may have smaller degree (it fixes the rest).
    """
    if s.degree > len(x):
        raise ValueError(f"tuple of length {len(x)} is too short for degree {s.degree}")
    negatives = [k for k, v in enumerate(x) if v < 0]
    inversions = 0
    for a in range(len(negatives)):
        for b in range(a + 1, len(negatives)):
            if s.act(negatives[a]) > s.act(negatives[b]):
                inversions += 1
    return -1 if inversions % 2 else 1


def represent(
    kappa: ThomaParameter,
    s: Permutation,
    n: int,
    cap: int = DEFAULT_DIMENSION_CAP,
) -> TensorOperator:
    """The signed permutation matrix of s on the n-fold tensor power."""
    space = index_set(kappa)
    if s.degree > n:
        raise ValueError(f"degree {s.degree} exceeds tensor degree {n}")
    if space.size ** n > cap:
        raise CapExceededError("tensor dimension", space.size ** n, cap)
    inv = s.inverse()
    inv_images = [inv.act(i) for i in range(n)]
    entries: dict[EntryKey, object] = {}
    for x in itertools.product(space.points, repeat=n):
        row = tuple(x[j] for j in inv_images)
        entries[(row, x)] = sign_factor(s, x)
    return TensorOperator(n, space.points, entries)


def state_value(kappa: ThomaParameter, operator: TensorOperator):
    """Product-state value: weighted sum of the diagonal."""
    space = index_set(kappa)
    total = Fraction(0)
    for (r, c), v in operator.entries.items():
        if r == c:
            total = total + space.weight(r) * v
    return total


def state_two_norm_sq(kappa: ThomaParameter, operator: TensorOperator):
    """Squared 2-norm of the operator in the product state, phi(T* T).

    For real entries phi(T* T) = sum over entries T[r, c]^2 * weight(c).
    """
    space = index_set(kappa)
    total = Fraction(0)
    for (r, c), v in operator.entries.items():
        total = total + space.weight(c) * v * v
    return total


def limit_commutant_operator(kappa: ThomaParameter, n: int) -> TensorOperator:
    """The diagonal operator with entry +alpha_i / -beta_j read off the first leg."""
    space = index_set(kappa)
    entries = {}
    for x in itertools.product(space.points, repeat=n):
        value = space.density[x[0]]
        entries[(x, x)] = value if x[0] > 0 else -value
    return TensorOperator(n, space.points, entries)


def relcomm_expectation_matrix(
    kappa: ThomaParameter,
    k: int,
    n: int,
    cap: int = DEFAULT_DIMENSION_CAP,
) -> tuple[TensorOperator, Fraction]:
    """Average of the conjugates of the first transposition over the stage T_k.

    Returns the averaged operator together with the exact squared 2-norm of
    its deviation from the limiting first-leg diagonal; the deviation equals
    (1 - m3) / (k - 1) with m3 the third power sum of the parameter.
    """
    if k < 2 or k > n:
        raise ValueError("need 2 <= k <= n")
    swap = perm.transposition(2, 0, 1)
    cache: dict[Permutation, TensorOperator] = {}
    total: TensorOperator | None = None
    count = 0
    for t in perm.enumerate_group(k, fixing=1):
        conj = perm.conjugate(t, swap).trimmed()
        if conj not in cache:
            cache[conj] = represent(kappa, conj, n, cap=cap)
        total = cache[conj] if total is None else total + cache[conj]
        count += 1
    averaged = Fraction(1, count) * total
    deviation_sq = state_two_norm_sq(
        kappa, limit_commutant_operator(kappa, n) - averaged
    )
    return averaged, deviation_sq


def slice_expectation(kappa: ThomaParameter, operator: TensorOperator) -> TensorOperator:
    """Contract the first tensor leg against the state, then re-tensor identity.

    Idempotent, with range the operators of the form 1 (x) S.  On group
    elements it is a bimodule map over the stabilizer stage; see
    ``slice_factorization_holds`` and ``slice_membership_residual`` for the
    two finite-stage commuting-square checks built on it.
    """
    if operator.degree < 1:
        raise ValueError("need tensor degree >= 1")
    space = index_set(kappa)
    if operator.degree == 1:
        scalar = sum(
            (space.density[r[0]] * v for (r, c), v in operator.entries.items() if r == c),
            Fraction(0),
        )
        return scalar * TensorOperator.identity(operator.points, 1)
    contracted: dict[EntryKey, object] = {}
    for (r, c), v in operator.entries.items():
        if r[0] != c[0]:
            continue
        key = (r[1:], c[1:])
        term = space.density[r[0]] * v
        contracted[key] = contracted.get(key, 0) + term
    entries: dict[EntryKey, object] = {}
    for (r, c), v in contracted.items():
        if v == 0:
            continue
        for b in space.points:
            entries[((b,) + r, (b,) + c)] = v
    return TensorOperator(operator.degree, operator.points, entries)


def first_leg_expectation(kappa: ThomaParameter, operator: TensorOperator) -> TensorOperator:
    """Contract every leg except the first against the state; degree-1 output."""
    space = index_set(kappa)
    out: dict[EntryKey, object] = {}
    for (r, c), v in operator.entries.items():
        if r[1:] != c[1:]:
            continue
        key = ((r[0],), (c[0],))
        out[key] = out.get(key, 0) + space.weight(r[1:]) * v
    return TensorOperator(1, space.points, out)


def span_residual(target: TensorOperator, basis: Sequence[TensorOperator]) -> float:
    """Least-squares distance from target to the linear span of basis operators."""
    matrix = np.stack([op.to_dense().ravel() for op in basis], axis=1)
    vector = target.to_dense().ravel()
    coeffs, *_ = np.linalg.lstsq(matrix, vector, rcond=None)
    return float(np.linalg.norm(matrix @ coeffs - vector))


def slice_membership_residual(
    kappa: ThomaParameter, n: int, cap: int = DEFAULT_DIMENSION_CAP
) -> float:
    """Worst distance of a sliced group element from the stabilizer span.

    Vanishes for the uniform parameters, where the stabilizer span equals
    the full commutant at every finite degree.  For other parameters the
    sliced first transposition is a non-scalar diagonal that no finite
    stabilizer stage can reach (it only appears in the limit of the stage
    averages), so this residual is strictly positive; use
    ``slice_factorization_holds`` for the finite-stage statement valid for
    every parameter.
    """
    basis = [represent(kappa, t, n, cap=cap) for t in perm.enumerate_group(n, fixing=1)]
    worst = 0.0
    for s in perm.enumerate_group(n):
        sliced = slice_expectation(kappa, represent(kappa, s, n, cap=cap))
        worst = max(worst, span_residual(sliced, basis))
    return worst


def slice_factorization_holds(
    kappa: ThomaParameter, n: int, cap: int = DEFAULT_DIMENSION_CAP
) -> bool:
    """Exact finite-stage form of the commuting-square property.

    Checks, for every s of degree n: elements fixing 0 slice to themselves;
    the first transposition slices to the limiting diagonal shifted onto
    the second leg; and a general s = t1 (0,1) t2 slices to
    rep(t1) @ slice(rep((0,1))) @ rep(t2), the slice being a bimodule map
    over the stabilizer.  All comparisons are exact.
    """
    if n < 2:
        raise ValueError("need tensor degree >= 2")
    space = index_set(kappa)
    swap_sliced = slice_expectation(
        kappa, represent(kappa, perm.transposition(2, 0, 1), n, cap=cap)
    )
    # The sliced transposition must equal the limit diagonal on the second leg.
    expected = {}
    for x in itertools.product(space.points, repeat=n):
        value = space.density[x[1]]
        expected[(x, x)] = value if x[1] > 0 else -value
    if swap_sliced != TensorOperator(n, space.points, expected):
        return False
    for s in perm.enumerate_group(n):
        sliced = slice_expectation(kappa, represent(kappa, s, n, cap=cap))
        coset = perm.double_coset_class(s)
        if coset.tag == "inside-stabilizer":
            if sliced != represent(kappa, s, n, cap=cap):
                return False
        else:
            left = represent(kappa, coset.t1, n, cap=cap)
            right = represent(kappa, coset.t2, n, cap=cap)
            if sliced != left @ swap_sliced @ right:
                return False
    return True


@dataclass(frozen=True)
class Block:
    """A group of index points sharing one weight value (one spectral block)."""

    label: int
    points: tuple[int, ...]
    value: Fraction

    @property
    def signed_value(self) -> Fraction:
        return self.value if self.label > 0 else -self.value


def spectral_blocks(kappa: ThomaParameter) -> list[Block]:
    """Partition the index points by equal weight, rows and columns separately.

    Positive labels 1..p walk the distinct row values in decreasing order,
    negative labels -1..-q the distinct column values.
    """
    space = index_set(kappa)
    blocks: list[Block] = []
    for sign in (1, -1):
        groups: dict[Fraction, list[int]] = {}
        for point in space.points:
            if (point > 0) == (sign > 0):
                groups.setdefault(space.density[point], []).append(point)
        for rank, value in enumerate(sorted(groups, reverse=True), start=1):
            blocks.append(Block(sign * rank, tuple(sorted(groups[value])), value))
    return blocks


def block_projection(block: Block, points: tuple[int, ...], degree: int) -> TensorOperator:
    """The projection onto tuples whose first entry lies in the block."""
    member = set(block.points)
    entries = {
        (x, x): 1
        for x in itertools.product(points, repeat=degree)
        if x[0] in member
    }
    return TensorOperator(degree, points, entries)


def compressed_slice_scalar(
    kappa: ThomaParameter, s: Permutation, block: Block
) -> Fraction:
    """Closed-form scalar of f E(rep(s)) f on the block, from the orbit data.

    The orbit of 0 contributes (signed block value)^(orbit size - 1); every
    other nontrivial orbit of size m contributes the m-th signed power sum
    of the weights; fixed points contribute 1.
    """
    orbits = s.cycles(include_fixed=True)
    zero_orbit = next(c for c in orbits if 0 in c)
    scalar = block.signed_value ** (len(zero_orbit) - 1)
    space = index_set(kappa)
    for orbit in orbits:
        if orbit is zero_orbit or len(orbit) == 1:
            continue
        m = len(orbit)
        term = Fraction(0)
        for point in space.points:
            power = space.density[point] ** m
            term += power if point > 0 or m % 2 == 1 else -power
        scalar *= term
    return scalar


@dataclass(frozen=True)
class PsiCheck:
    permutation: Permutation
    block_label: int
    formula_value: Fraction
    matrix_value: Fraction

    @property
    def exact_match(self) -> bool:
        return self.formula_value == self.matrix_value

    @property
    def deviation(self) -> float:
        return abs(float(self.formula_value - self.matrix_value))


@dataclass(frozen=True)
class MinimalProjectionReport:
    """Verification that the block projections behave as the minimal ones.

    ``partition_ok``: the blocks are orthogonal and sum to the identity.
    ``commutation_ok``: each lifted block projection commutes with every
    stabilizer permutation.  ``psi_checks``: the compressed first-leg
    expectation of each group element against its closed-form scalar.
    """

    degree: int
    blocks: tuple[Block, ...]
    partition_ok: bool
    commutation_ok: bool
    psi_checks: tuple[PsiCheck, ...] = field(repr=False)

    @property
    def psi_max_deviation(self) -> float:
        return max((c.deviation for c in self.psi_checks), default=0.0)

    @property
    def psi_all_exact(self) -> bool:
        return all(c.exact_match for c in self.psi_checks)

    @property
    def all_ok(self) -> bool:
        return self.partition_ok and self.commutation_ok and self.psi_all_exact


def minimal_projection_suite(
    kappa: ThomaParameter, n: int, cap: int = DEFAULT_DIMENSION_CAP
) -> MinimalProjectionReport:
    space = index_set(kappa)
    if space.size ** n > cap:
        raise CapExceededError("tensor dimension", space.size ** n, cap)
    blocks = tuple(spectral_blocks(kappa))
    lifted = {b.label: block_projection(b, space.points, n) for b in blocks}
    one = TensorOperator.identity(space.points, n)

    summed = None
    partition_ok = True
    for b in blocks:
        p = lifted[b.label]
        if not (p @ p == p):
            partition_ok = False
        summed = p if summed is None else summed + p
    for a in blocks:
        for b in blocks:
            if a.label < b.label and not (lifted[a.label] @ lifted[b.label]).is_zero():
                partition_ok = False
    if summed != one:
        partition_ok = False

    commutation_ok = True
    for t in perm.enumerate_group(n, fixing=1):
        rep_t = represent(kappa, t, n, cap=cap)
        for b in blocks:
            if not lifted[b.label].commutator(rep_t).is_zero():
                commutation_ok = False

    checks = []
    for s in perm.enumerate_group(n, fixing=0):
        compressed = first_leg_expectation(kappa, represent(kappa, s, n, cap=cap))
        for b in blocks:
            f = block_projection(b, space.points, 1)
            sandwiched = f @ compressed @ f
            matrix_value = _scalar_on_block(sandwiched, f, b)
            formula_value = compressed_slice_scalar(kappa, s, b)
            checks.append(PsiCheck(s, b.label, formula_value, matrix_value))
    return MinimalProjectionReport(n, blocks, partition_ok, commutation_ok, tuple(checks))


def _scalar_on_block(sandwiched: TensorOperator, f: TensorOperator, block: Block) -> Fraction:
    """Extract c with sandwiched = c * f, checking the shape exactly."""
    probe = ((block.points[0],), (block.points[0],))
    scalar = Fraction(sandwiched.entries.get(probe, 0))
    if not (sandwiched - scalar * f).is_zero():
        raise AssertionError("compressed expectation is not a scalar on its block")
    return scalar


@dataclass(frozen=True)
class TemperleyLiebReport:
    """Deviations of the projection chain from the defining relations."""

    delta: Fraction
    chain_length: int
    idempotent_dev: float
    selfadjoint_dev: float
    braid_dev: float
    far_commutation_dev: float

    def passes(self, tolerance: float) -> bool:
        return (
            self.idempotent_dev <= tolerance
            and self.selfadjoint_dev <= tolerance
            and self.braid_dev <= tolerance
            and self.far_commutation_dev <= tolerance
        )


def jones_projections(
    alpha1, chain_length: int, cap: int = DEFAULT_DIMENSION_CAP
) -> tuple[list[TensorOperator], TemperleyLiebReport]:
    """The chain of projections p_1, ..., p_L on a two-point index space.

    Requires 1/2 < alpha_1 < 1 and uses alpha_2 = 1 - alpha_1.  Each p_n
    couples legs n and n+1 through the weighted swap; the chain satisfies

        p_n^2 = p_n,  p_n p_{n+1} p_n = delta p_n,  [p_i, p_j] = 0 (|i-j| > 1)

    with delta = alpha_1 * alpha_2.  The square root in the off-diagonal
    entries makes these operators floating point.
    """
    a1 = Fraction(str(alpha1)) if isinstance(alpha1, float) else Fraction(alpha1)
    if not Fraction(1, 2) < a1 < 1:
        raise ValueError("alpha1 must lie strictly between 1/2 and 1")
    if chain_length < 1:
        raise ValueError("chain length must be positive")
    a2 = 1 - a1
    degree = chain_length + 1
    points = (1, 2)
    if 2 ** degree > cap:
        raise CapExceededError("tensor dimension", 2 ** degree, cap)
    root = math.sqrt(float(a1 * a2))
    couplings = {
        ((1, 2), (1, 2)): float(a2),
        ((2, 1), (2, 1)): float(a1),
        ((1, 2), (2, 1)): root,
        ((2, 1), (1, 2)): root,
    }
    chain = []
    for leg in range(chain_length):
        entries: dict[EntryKey, object] = {}
        for (rpair, cpair), value in couplings.items():
            for rest in itertools.product(points, repeat=degree - 2):
                row = rest[:leg] + rpair + rest[leg:]
                col = rest[:leg] + cpair + rest[leg:]
                entries[(row, col)] = value
        chain.append(TensorOperator(degree, points, entries))

    delta = a1 * a2
    idem = max((p @ p - p).max_abs() for p in chain)
    selfadj = max((p.adjoint() - p).max_abs() for p in chain)
    braid = 0.0
    for i in range(chain_length - 1):
        p, q = chain[i], chain[i + 1]
        braid = max(braid, (p @ q @ p - float(delta) * p).max_abs())
        braid = max(braid, (q @ p @ q - float(delta) * q).max_abs())
    far = max(
        (
            chain[i].commutator(chain[j]).max_abs()
            for i in range(chain_length)
            for j in range(i + 2, chain_length)
        ),
        default=0.0,
    )
    report = TemperleyLiebReport(delta, chain_length, idem, selfadj, braid, far)
    return chain, report


@dataclass(frozen=True)
class IndexBound:
    """Pimsner-Popa data for the stabilizer inclusion."""

    finite: bool
    constant: Fraction | None = None
    index_bound: Fraction | None = None


def pimsner_popa_bound(kappa: ThomaParameter) -> IndexBound:
    """Lower constant and index bound; the faithful case signals infinite index.

    For a non-faithful parameter (gamma = 0, finite support) the slice
    expectation dominates delta * (m_alpha + m_beta)^{-2} times the
    identity, where delta is the smallest positive entry, so the index is
    at most the reciprocal of that constant.
    """
    if thoma.is_faithful(kappa):
        return IndexBound(False)
    candidates = [seq[-1] for seq in (kappa.alpha, kappa.beta) if seq]
    delta = min(candidates)
    size = kappa.m_alpha + kappa.m_beta
    constant = delta / (size * size)
    return IndexBound(True, constant, 1 / constant)
